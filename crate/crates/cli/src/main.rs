mod args;
mod commands;
mod failure;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use commands::{cmd_classify, cmd_frames, cmd_selftest, cmd_sphere, Outcome, RunConfig};
use failure::Failure;

/// Caps rayon's global pool at `ISOKIT_THREADS` when set.
fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var("ISOKIT_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::validation(format!("ISOKIT_THREADS must be a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::validation(format!("cannot configure thread pool: {e}")))
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    configure_threads()?;
    match &cli.command {
        Command::Frames(a) => cmd_frames(&RunConfig::from_args(a)?),
        Command::Classify(a) => cmd_classify(&RunConfig::from_args(a)?),
        Command::Sphere(a) => cmd_sphere(&RunConfig::from_args(a)?),
        Command::Selftest(a) => Ok(cmd_selftest(a)),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { failure::EXIT_ERROR } else { 0 });
        }
    };
    let json = match &cli.command {
        Command::Frames(a) | Command::Classify(a) | Command::Sphere(a) => a.json,
        Command::Selftest(a) => a.json,
    };
    match run(&cli) {
        Ok(o) => {
            if json {
                println!("{}", o.json);
            } else if o.exit == 0 {
                println!("{}", o.text);
            } else {
                eprintln!("{}", o.text);
            }
            ExitCode::from(o.exit)
        }
        Err(f) => {
            if json {
                println!("{}", f.to_json());
            } else {
                eprintln!("error: {}", f.message);
                for (k, v) in &f.context {
                    eprintln!("  {k}: {v}");
                }
            }
            ExitCode::from(f.exit)
        }
    }
}
