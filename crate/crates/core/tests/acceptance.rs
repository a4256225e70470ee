//! Acceptance criteria 1 to 8. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.
//!
//! Set `ISOKIT_SEED` to rerun with a different random stream.

use std::process::ExitCode;

use isokit::frames::frenet;
use isokit::gcnum::{DualNumber, LorentzNumber};
use isokit::selftest::{format_results, run_criterion, SelftestConfig, CRITERIA, DEFAULT_SEED};
use isokit::{Curve, FdConfig, SpaceKind, Vec3};

/// Order-4 central stencils for the first three derivatives, written out.
fn stencil_derivatives(f: impl Fn(f64) -> [f64; 3], t: f64, h: f64) -> [[f64; 3]; 3] {
    let p: Vec<[f64; 3]> = (-3..=3).map(|k| f(t + k as f64 * h)).collect();
    let at = |k: i32, i: usize| p[(k + 3) as usize][i];
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        out[0][i] = (at(-2, i) - 8.0 * at(-1, i) + 8.0 * at(1, i) - at(2, i)) / (12.0 * h);
        out[1][i] = (-at(-2, i) + 16.0 * at(-1, i) - 30.0 * at(0, i) + 16.0 * at(1, i) - at(2, i))
            / (12.0 * h * h);
        out[2][i] = (at(-3, i) - 8.0 * at(-2, i) + 13.0 * at(-1, i) - 13.0 * at(1, i) + 8.0 * at(2, i)
            - at(3, i))
            / (8.0 * h * h * h);
    }
    out
}

/// Isotropic curvature and torsion from top-view and spatial determinants.
fn determinant_curvatures(d: [[f64; 3]; 3]) -> (f64, f64) {
    let [a, b, c] = d;
    let det2 = a[0] * b[1] - b[0] * a[1];
    let det3 = a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0]);
    let speed = a[0].hypot(a[1]);
    (det2 / speed.powi(3), det3 / (det2 * det2))
}

/// Independent check of criterion 4: the library helix values against the
/// determinant oracle, with the oracle's own O(h⁴) convergence observed.
fn helix_oracle() -> Result<String, String> {
    let helix = |t: f64| [t.cos(), t.sin(), t];
    let ts = [0.9, 2.2, 3.7, 5.0];
    let oracle = |t: f64, h: f64| determinant_curvatures(stencil_derivatives(helix, t, h));
    let err = |h: f64| {
        ts.iter()
            .map(|&t| {
                let (k, tau) = oracle(t, h);
                (k - 1.0).abs().max((tau - 1.0).abs())
            })
            .fold(0.0f64, f64::max)
    };
    let (e1, e2) = (err(0.1), err(0.05));
    let ratio = e1 / e2;
    if !(12.0..=20.0).contains(&ratio) || e2 > 1e-6 {
        return Err(format!("oracle error {e2:e}, convergence ratio {ratio:.2}"));
    }
    let tau_max = std::f64::consts::TAU;
    let curve = Curve::from_fn(
        SpaceKind::SimplyIsotropic,
        move |t| {
            let [x, y, z] = helix(t);
            Vec3::new(x, y, z)
        },
        0.0,
        tau_max,
        200,
    )
    .map_err(|e| e.to_string())?
    .with_finite_differences(FdConfig::new(4, tau_max * 1e-3).map_err(|e| e.to_string())?);
    let fr = frenet(&curve).map_err(|e| e.to_string())?;
    let mut worst: f64 = 0.0;
    for s in &fr.samples {
        let (k, tau) = oracle(s.param, 0.05);
        worst = worst.max((s.kappa - k).abs()).max((s.tau - tau).abs());
        worst = worst.max((s.kappa - 1.0).abs()).max((s.tau - 1.0).abs());
    }
    if worst > 1e-6 {
        return Err(format!("library helix deviates from oracle by {worst:e}"));
    }
    Ok(format!("oracle ratio {ratio:.2}, library deviation {worst:.1e}"))
}

/// Independent check of criterion 1 on fixed pairs.
fn ring_spot_checks() -> Result<String, String> {
    let p = DualNumber::new(2.0, 3.0);
    let q = DualNumber::new(-1.5, 0.25);
    let pq = p * q;
    if (pq.re, pq.im) != (-3.0, 2.0 * 0.25 + 3.0 * -1.5) {
        return Err(format!("dual product {pq}"));
    }
    let p = LorentzNumber::new(2.0, 3.0);
    let q = LorentzNumber::new(-1.5, 0.25);
    let pq = p * q;
    if (pq.re, pq.im) != (-3.0 + 0.75, 0.5 - 4.5) {
        return Err(format!("Lorentz product {pq}"));
    }
    let (a, b) = (pq.plus(), p.plus() * q.plus());
    if (a - b).abs() > 1e-12 {
        return Err(format!("light-cone plus {a} vs {b}"));
    }
    Ok("fixed products exact".into())
}

fn main() -> ExitCode {
    let seed = std::env::var("ISOKIT_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_SEED);
    let cfg = SelftestConfig { seed, quick: false };
    println!("acceptance suite (seed {seed})");
    let mut all_pass = true;
    for (id, _) in CRITERIA {
        let mut result = run_criterion(id, &cfg);
        let extra = match id {
            1 => Some(ring_spot_checks()),
            4 => Some(helix_oracle()),
            _ => None,
        };
        let mut note = String::new();
        match extra {
            Some(Ok(msg)) => note = format!("    independent oracle: {msg}\n"),
            Some(Err(msg)) => {
                result.passed = false;
                result.failures.push(format!("independent oracle: {msg}"));
            }
            None => {}
        }
        all_pass &= result.passed;
        print!("{}{note}", format_results(std::slice::from_ref(&result)));
    }
    println!("acceptance: {}", if all_pass { "all criteria pass" } else { "FAILURES" });
    if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
