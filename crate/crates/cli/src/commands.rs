use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use isokit::classify::{classify_curve, ClassifyConfig};
use isokit::curve::{load_curve, DEFAULT_ADMISSIBILITY_TOL};
use isokit::frames::full_frames;
use isokit::selftest::{format_results, run_all, run_criterion, SelftestConfig};
use isokit::spheres::{osculating_sphere, OsculatingSphere, Reduction, Sphere};
use isokit::{Curve, FdConfig, SpaceKind};
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::{RunArgs, SelftestArgs};
use crate::failure::{Failure, EXIT_ERROR, EXIT_NOT_ADMISSIBLE};

pub const MIN_SAMPLES: usize = 64;

/// `|c₃|` below this (relative) counts as zero when reducing sampled
/// osculating spheres, which carry finite-difference noise.
pub const SAMPLED_SPHERE_TOL: f64 = 1e-6;

/// What a successful (or partially successful) run prints and returns.
pub struct Outcome {
    pub exit: u8,
    pub text: String,
    pub json: Value,
}

/// Validated settings shared by the curve pipelines.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub inputs: Vec<PathBuf>,
    pub space: Option<SpaceKind>,
    pub samples: Option<usize>,
    pub fd: Option<(usize, Option<f64>)>,
    pub tau0: f64,
    pub tol: Option<f64>,
    pub origin_tol: Option<f64>,
    pub out: PathBuf,
}

fn positive(name: &str, v: Option<f64>) -> Result<(), Failure> {
    match v {
        Some(x) if !(x > 0.0 && x.is_finite()) => {
            Err(Failure::validation(format!("--{name} must be a positive number, got {x}")))
        }
        _ => Ok(()),
    }
}

impl RunConfig {
    pub fn from_args(a: &RunArgs) -> Result<RunConfig, Failure> {
        if let Some(n) = a.samples {
            if n < MIN_SAMPLES {
                return Err(Failure::validation(format!(
                    "--samples must be at least {MIN_SAMPLES}, got {n}"
                )));
            }
        }
        positive("tol", a.tol)?;
        positive("origin-tol", a.origin_tol)?;
        positive("fd-step", a.fd_step)?;
        if let Some(o) = a.fd_order {
            if ![2, 4, 6].contains(&o) {
                return Err(Failure::validation(format!("--fd-order must be 2, 4 or 6, got {o}")));
            }
        }
        if !a.tau0.is_finite() {
            return Err(Failure::validation("--tau0 must be finite"));
        }
        let fd = match (a.fd_order, a.fd_step) {
            (None, None) => None,
            (o, s) => Some((o.unwrap_or(4), s)),
        };
        Ok(RunConfig {
            inputs: a.input.clone(),
            space: a.space,
            samples: a.samples,
            fd,
            tau0: a.tau0,
            tol: a.tol,
            origin_tol: a.origin_tol,
            out: a.out.clone(),
        })
    }

    fn load(&self, path: &Path) -> Result<Curve, Failure> {
        if !path.exists() {
            return Err(Failure::io(path, std::io::Error::from(std::io::ErrorKind::NotFound)));
        }
        let mut c = load_curve(path, self.space).map_err(|e| tag(e.into(), path))?;
        if let Some(n) = self.samples {
            c = c.with_samples(n).map_err(|e| tag(e.into(), path))?;
        }
        if let Some((order, step)) = self.fd {
            let (a, b) = c.domain();
            let step = step.unwrap_or(FdConfig::default_for(a, b).step);
            let cfg = FdConfig::new(order, step).map_err(|e| tag(e.into(), path))?;
            c = c.with_finite_differences(cfg);
        }
        Ok(c)
    }

    /// Output directory for one input: `out` itself, or `out/<stem>` when
    /// several inputs are given.
    fn out_dir(&self, path: &Path) -> Result<PathBuf, Failure> {
        let dir = if self.inputs.len() > 1 {
            let stem = path.file_stem().map_or("input".into(), |s| s.to_string_lossy().into_owned());
            self.out.join(stem)
        } else {
            self.out.clone()
        };
        fs::create_dir_all(&dir).map_err(|e| Failure::io(&dir, e))?;
        Ok(dir)
    }
}

fn tag(f: Failure, path: &Path) -> Failure {
    f.with("input", path.display().to_string())
}

fn create(path: &Path) -> Result<BufWriter<File>, Failure> {
    File::create(path).map(BufWriter::new).map_err(|e| Failure::io(path, e))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), Failure> {
    let mut w = create(path)?;
    serde_json::to_writer_pretty(&mut w, value)
        .map_err(|e| Failure::validation(format!("serialization failed: {e}")))?;
    writeln!(w).and_then(|_| w.flush()).map_err(|e| Failure::io(path, e))
}

fn finish_csv(path: &Path, r: isokit::Result<()>) -> Result<(), Failure> {
    r.map_err(|e| Failure::from(e).with("path", path.display().to_string()))
}

/// Runs `per_input` over every input and merges the outcomes; the exit code
/// is the worst one seen.
fn over_inputs(
    cfg: &RunConfig,
    mut per_input: impl FnMut(&Path, &Path) -> Result<Outcome, Failure>,
) -> Result<Outcome, Failure> {
    let mut texts = Vec::new();
    let mut jsons = Vec::new();
    let mut exit = 0;
    for input in &cfg.inputs {
        let dir = cfg.out_dir(input)?;
        let o = per_input(input, &dir)?;
        exit = exit.max(o.exit);
        texts.push(o.text);
        jsons.push(o.json);
    }
    let json = if jsons.len() == 1 {
        jsons.pop().unwrap_or(Value::Null)
    } else {
        Value::Array(jsons)
    };
    Ok(Outcome {
        exit,
        text: texts.join("\n"),
        json,
    })
}

pub fn cmd_frames(cfg: &RunConfig) -> Result<Outcome, Failure> {
    over_inputs(cfg, |input, dir| {
        let curve = cfg.load(input)?;
        match full_frames(&curve, cfg.tau0) {
            Ok(frames) => {
                let csv_path = dir.join("frames.csv");
                let json_path = dir.join("frames.json");
                finish_csv(&csv_path, frames.write_csv(create(&csv_path)?))?;
                write_json(&json_path, &frames)?;
                let (lo, hi) = frames
                    .samples
                    .iter()
                    .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), f| (lo.min(f.kappa), hi.max(f.kappa)));
                Ok(Outcome {
                    exit: 0,
                    text: format!(
                        "{}: {} samples over arclength {:.6}, kappa in [{lo:.6}, {hi:.6}]; wrote {} and {}",
                        input.display(),
                        frames.len(),
                        frames.length,
                        csv_path.display(),
                        json_path.display()
                    ),
                    json: json!({
                        "command": "frames",
                        "input": input.display().to_string(),
                        "samples": frames.len(),
                        "length": frames.length,
                        "outputs": [csv_path.display().to_string(), json_path.display().to_string()],
                    }),
                })
            }
            Err(e) if e.is_non_admissible() => {
                let report = curve.admissibility(DEFAULT_ADMISSIBILITY_TOL);
                let failure = tag(Failure::from(e), input);
                let json_path = dir.join("frames.json");
                write_json(&json_path, &json!({ "admissibility": report, "error": failure.to_json()["error"] }))?;
                let mut text = format!("{}: {}", input.display(), failure.message);
                for d in report.diagnostics.iter().filter(|d| !failure.message.contains(d.as_str())) {
                    text.push_str(&format!("\n  {d}"));
                }
                text.push_str(&format!("\n  report written to {}", json_path.display()));
                Ok(Outcome {
                    exit: EXIT_NOT_ADMISSIBLE,
                    text,
                    json: json!({
                        "command": "frames",
                        "input": input.display().to_string(),
                        "error": failure.to_json()["error"],
                        "admissibility": report,
                        "outputs": [json_path.display().to_string()],
                    }),
                })
            }
            Err(e) => Err(tag(e.into(), input)),
        }
    })
}

pub fn cmd_classify(cfg: &RunConfig) -> Result<Outcome, Failure> {
    let classify_cfg = ClassifyConfig {
        tau0: cfg.tau0,
        tol: cfg.tol,
        origin_tol: cfg.origin_tol,
        ..ClassifyConfig::default()
    };
    over_inputs(cfg, |input, dir| {
        let curve = cfg.load(input)?;
        let report = classify_curve(&curve, &classify_cfg).map_err(|e| tag(e.into(), input))?;
        let json_path = dir.join("report.json");
        let csv_path = dir.join("development.csv");
        write_json(&json_path, &report)?;
        finish_csv(&csv_path, report.development.write_csv(create(&csv_path)?))?;
        let d = &report.development;
        let mut text = format!(
            "{}: {} (line {:.6} k1 + {:.6} k2 = {:.6}, rms {:.3e}, tol {:.3e}, origin tol {:.3e})",
            input.display(),
            d.verdict,
            d.line.a1,
            d.line.a2,
            d.line.c,
            d.rms_residual,
            d.tol,
            d.origin_tol
        );
        if let Some(r) = d.cylinder_radius {
            text.push_str(&format!("\n  cylinder radius {r:.6}"));
        }
        if let Some(r) = d.sphere_radius {
            text.push_str(&format!("\n  sphere radius {r:.6}"));
        }
        if let Some(c) = &report.cross_check {
            text.push_str(&format!("\n  osculating-sphere drift {:.3e}", c.drift));
        }
        for n in &report.notes {
            text.push_str(&format!("\n  {n}"));
        }
        Ok(Outcome {
            exit: 0,
            text,
            json: json!({
                "command": "classify",
                "input": input.display().to_string(),
                "verdict": d.verdict,
                "origin_distance": d.origin_distance,
                "rms_residual": d.rms_residual,
                "outputs": [json_path.display().to_string(), csv_path.display().to_string()],
            }),
        })
    })
}

#[derive(Serialize)]
struct SphereRow {
    s: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    sphere: Option<OsculatingSphere>,
    #[serde(skip_serializing_if = "Option::is_none")]
    normal_form: Option<Reduction>,
    #[serde(skip_serializing_if = "Option::is_none")]
    degenerate: Option<String>,
}

fn is_sphere_spec(path: &Path) -> bool {
    let is_json = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"));
    is_json
        && fs::read_to_string(path)
            .ok()
            .and_then(|t| serde_json::from_str::<Value>(&t).ok())
            .is_some_and(|v| v.get("form").is_some())
}

fn sphere_from_spec(cfg: &RunConfig, input: &Path, dir: &Path) -> Result<Outcome, Failure> {
    let text = fs::read_to_string(input).map_err(|e| Failure::io(input, e))?;
    let sphere: Sphere = serde_json::from_str(&text).map_err(|e| tag(isokit::Error::from(e).into(), input))?;
    if let Some(space) = cfg.space {
        if space != sphere.space {
            return Err(tag(isokit::Error::SpaceMismatch { spec: sphere.space, requested: space }.into(), input));
        }
    }
    let general = sphere.to_general().map_err(|e| tag(e.into(), input))?;
    let reduction = if sphere.space.is_isotropic() {
        Some(sphere.reduce().map_err(|e| tag(e.into(), input))?)
    } else {
        None
    };
    let json_path = dir.join("sphere.json");
    write_json(&json_path, &json!({ "input": sphere, "general": general, "reduction": reduction }))?;
    let form = reduction.as_ref().map_or_else(
        || serde_json::to_string(&general.form).unwrap_or_default(),
        |r| serde_json::to_string(&r.normal.form).unwrap_or_default(),
    );
    Ok(Outcome {
        exit: 0,
        text: format!("{}: normal form {form}; wrote {}", input.display(), json_path.display()),
        json: json!({
            "command": "sphere",
            "input": input.display().to_string(),
            "general": general,
            "reduction": reduction,
            "outputs": [json_path.display().to_string()],
        }),
    })
}

fn write_sphere_csv(path: &Path, kind: SpaceKind, rows: &[SphereRow]) -> Result<(), Failure> {
    let mut w = csv::Writer::from_writer(create(path)?);
    let csv_err = |e: csv::Error| Failure::from(isokit::Error::from(e)).with("path", path.display().to_string());
    let euclidean = kind == SpaceKind::Euclidean;
    let header: &[&str] = if euclidean {
        &["s", "center.x", "center.y", "center.z", "radius"]
    } else {
        &["s", "lambda", "u.x", "u.y", "u.z", "c1", "c2", "c3", "c4"]
    };
    w.write_record(header).map_err(csv_err)?;
    for row in rows {
        let mut rec = vec![row.s.to_string()];
        match &row.sphere {
            Some(o) if euclidean => {
                let c = o.center.unwrap_or(isokit::Vec3::ZERO);
                rec.extend([c.x, c.y, c.z, o.radius.unwrap_or(f64::NAN)].map(|v| v.to_string()));
            }
            Some(o) => {
                rec.extend([o.lambda, o.u.x, o.u.y, o.u.z].map(|v| v.to_string()));
                let c = o.sphere.coefficients().map_err(Failure::from)?;
                rec.extend(c.map(|v| v.to_string()));
            }
            None => rec.extend(std::iter::repeat_n(String::new(), header.len() - 1)),
        }
        w.write_record(&rec).map_err(csv_err)?;
    }
    w.flush().map_err(|e| Failure::io(path, e))
}

pub fn cmd_sphere(cfg: &RunConfig) -> Result<Outcome, Failure> {
    over_inputs(cfg, |input, dir| {
        if is_sphere_spec(input) {
            return sphere_from_spec(cfg, input, dir);
        }
        let curve = cfg.load(input)?;
        let frames = full_frames(&curve, cfg.tau0).map_err(|e| tag(e.into(), input))?;
        let mut rows = Vec::with_capacity(frames.len());
        for (i, f) in frames.samples.iter().enumerate() {
            rows.push(match osculating_sphere(&frames, i) {
                Ok(o) => SphereRow {
                    s: f.s,
                    normal_form: o.sphere.reduce_with_tol(SAMPLED_SPHERE_TOL).ok(),
                    sphere: Some(o),
                    degenerate: None,
                },
                Err(e @ isokit::Error::DegenerateOsculatingSphere { .. }) => SphereRow {
                    s: f.s,
                    sphere: None,
                    normal_form: None,
                    degenerate: Some(e.to_string()),
                },
                Err(e) => return Err(tag(e.into(), input)),
            });
        }
        let degenerate = rows.iter().filter(|r| r.degenerate.is_some()).count();
        let json_path = dir.join("spheres.json");
        let csv_path = dir.join("spheres.csv");
        write_json(&json_path, &rows)?;
        write_sphere_csv(&csv_path, frames.kind, &rows)?;
        Ok(Outcome {
            exit: 0,
            text: format!(
                "{}: {} osculating spheres ({degenerate} degenerate); wrote {} and {}",
                input.display(),
                rows.len(),
                csv_path.display(),
                json_path.display()
            ),
            json: json!({
                "command": "sphere",
                "input": input.display().to_string(),
                "samples": rows.len(),
                "degenerate": degenerate,
                "outputs": [csv_path.display().to_string(), json_path.display().to_string()],
            }),
        })
    })
}

pub fn cmd_selftest(a: &SelftestArgs) -> Outcome {
    let cfg = SelftestConfig {
        seed: a.seed,
        quick: a.quick,
    };
    let results = match a.criterion {
        Some(id) => vec![run_criterion(id, &cfg)],
        None => run_all(&cfg),
    };
    let passed = results.iter().all(|r| r.passed);
    let mut text = format_results(&results);
    text.push_str(if passed { "all criteria pass" } else { "some criteria failed" });
    Outcome {
        exit: if passed { 0 } else { EXIT_ERROR },
        text,
        json: json!({
            "command": "selftest",
            "seed": a.seed,
            "quick": a.quick,
            "passed": passed,
            "criteria": results,
        }),
    }
}
