//! Shared fixtures for the benchmarks.

use isokit::testcurves::{helix, hyperbolic_helix, parabolic_curve, spherical_spiral};
use isokit::{Curve, SpaceKind};

pub const SIZES: [usize; 3] = [256, 1024, 4096];

/// One curve per space, all with exact derivatives.
pub fn fixtures(samples: usize) -> Vec<(&'static str, Curve)> {
    vec![
        ("isotropic_helix", helix(samples).expect("helix")),
        ("pseudo_helix", hyperbolic_helix(samples).expect("hyperbolic helix")),
        (
            "isotropic_parabolic",
            parabolic_curve(SpaceKind::SimplyIsotropic, 1.0, false, samples).expect("parabolic curve"),
        ),
        ("euclidean_spiral", spherical_spiral(1.0, false, samples).expect("spiral")),
    ]
}

/// Deterministic operand pairs spread over a few magnitudes.
pub fn operands(n: usize) -> Vec<(f64, f64)> {
    (0..n)
        .map(|i| {
            let t = i as f64 * 0.618_033_988_749_895;
            ((t * 3.1).sin() * 4.0, (t * 1.7).cos() * 0.5 + 0.1 * t.fract())
        })
        .collect()
}
