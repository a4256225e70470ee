use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{speed_of, Curve, SPEED_FLOOR};
use crate::spaces::{causal_character_tol, CausalClass, SpaceKind};

/// Default bound on the unit-speed-normalized `|x′y″ − x″y′|`.
pub const DEFAULT_ADMISSIBILITY_TOL: f64 = 1e-6;

const CAUSAL_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AdmissibilityReport {
    pub kind: SpaceKind,
    pub regular: bool,
    /// Parameters where `‖α′×α″‖/‖α′‖³` vanishes.
    pub inflection_points: Vec<f64>,
    /// Parameters where `x′y″ − x″y′` changes sign (isotropic osculating plane).
    pub isotropic_plane_points: Vec<f64>,
    pub admissible: bool,
    /// Minimum over samples of `|x′y″ − x″y′| / speed³`; the Euclidean
    /// curvature in Euclidean space.
    pub min_abs_det: f64,
    pub tolerance: f64,
    pub min_speed: f64,
    pub causal: Option<CausalClass>,
    pub causal_constant: bool,
    pub diagnostics: Vec<String>,
}

impl AdmissibilityReport {
    pub fn summary(&self) -> String {
        if self.diagnostics.is_empty() {
            "admissible".to_string()
        } else {
            self.diagnostics.join("; ")
        }
    }
}

struct Sample {
    t: f64,
    speed: f64,
    euclid_speed: f64,
    bend: f64,
    det: f64,
    causal: CausalClass,
}

fn sample(c: &Curve, t: f64) -> Sample {
    let d = c.derivatives(t);
    let (d1, d2) = (d[1], d[2]);
    let euclid_speed = d1.norm();
    Sample {
        t,
        speed: speed_of(c.kind(), d1),
        euclid_speed,
        bend: d1.cross(d2).norm() / euclid_speed.powi(3),
        det: d1.x * d2.y - d2.x * d1.y,
        causal: causal_character_tol(d1, CAUSAL_TOL),
    }
}

fn bend_at(c: &Curve, t: f64) -> f64 {
    let d = c.derivatives(t);
    d[1].cross(d[2]).norm() / d[1].norm().powi(3)
}

fn det_at(c: &Curve, t: f64) -> f64 {
    let d = c.derivatives(t);
    d[1].x * d[2].y - d[2].x * d[1].y
}

fn golden_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> (f64, f64) {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = b - g * (b - a);
    let mut x2 = a + g * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..60 {
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = f(x2);
        }
    }
    if f1 < f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

fn bisect(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let fa = f(a);
    for _ in 0..60 {
        let m = 0.5 * (a + b);
        if (f(m) > 0.0) == (fa > 0.0) {
            a = m;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

/// Regularity, inflection and osculating-plane checks over the sample grid.
pub fn admissibility(c: &Curve, tol: f64) -> AdmissibilityReport {
    let kind = c.kind();
    let ts = c.parameters();
    let samples: Vec<Sample> = ts.par_iter().map(|&t| sample(c, t)).collect();
    let mut diagnostics = Vec::new();

    let max_euclid = samples.iter().map(|s| s.euclid_speed).fold(0.0, f64::max);
    let floor = SPEED_FLOOR * max_euclid.max(1.0);
    let min_speed = samples.iter().map(|s| s.speed).fold(f64::INFINITY, f64::min);
    let slow = samples.iter().find(|s| !(s.speed > floor));
    let regular = slow.is_none();

    let causal_classes: Vec<CausalClass> = samples.iter().map(|s| s.causal).collect();
    let (causal, causal_constant) = if kind == SpaceKind::PseudoIsotropic {
        let first = causal_classes[0];
        let constant = causal_classes.iter().all(|&c| c == first) && first != CausalClass::Lightlike;
        (Some(first), constant)
    } else {
        (None, true)
    };

    if let Some(s) = slow {
        let msg = match kind {
            SpaceKind::PseudoIsotropic if s.causal == CausalClass::Lightlike => format!(
                "tangent lies on the light cone at t = {}: lightlike curves are not admissible",
                s.t
            ),
            SpaceKind::Euclidean => format!("velocity vanishes at t = {}", s.t),
            _ => format!(
                "top-view speed vanishes at t = {} (isotropic tangent direction)",
                s.t
            ),
        };
        diagnostics.push(msg);
    }
    if kind == SpaceKind::PseudoIsotropic && !causal_constant && regular {
        if causal_classes.contains(&CausalClass::Lightlike) {
            let t = samples
                .iter()
                .find(|s| s.causal == CausalClass::Lightlike)
                .map(|s| s.t)
                .unwrap_or(ts[0]);
            diagnostics.push(format!(
                "tangent lies on the light cone at t = {t}: lightlike points are not admissible"
            ));
        } else {
            diagnostics.push("causal character of the tangent changes along the curve".to_string());
        }
    }

    let mut inflection_points = Vec::new();
    let mut isotropic_plane_points = Vec::new();
    let mut min_abs_det = f64::INFINITY;
    if regular {
        let n = samples.len();
        let mut bends: Vec<f64> = samples.iter().map(|s| s.bend).collect();
        bends.sort_by(f64::total_cmp);
        let suspect = (10.0 * tol).max(0.05 * bends[n / 2]);
        for i in 0..n {
            let s = &samples[i];
            let lo = if i > 0 { samples[i - 1].bend } else { f64::INFINITY };
            let hi = if i + 1 < n { samples[i + 1].bend } else { f64::INFINITY };
            if s.bend < lo && s.bend <= hi && s.bend < suspect {
                let a = ts[i.saturating_sub(1)];
                let b = ts[(i + 1).min(n - 1)];
                let (t, v) = golden_min(|t| bend_at(c, t), a, b);
                if v < tol && !inflection_points.iter().any(|&p: &f64| (p - t).abs() < 1e-9) {
                    inflection_points.push(t);
                }
            }
            if kind.is_isotropic() {
                let norm_det = (s.det / s.speed.powi(3)).abs();
                min_abs_det = min_abs_det.min(norm_det);
                if i + 1 < n && (s.det > 0.0) != (samples[i + 1].det > 0.0) {
                    isotropic_plane_points.push(bisect(|t| det_at(c, t), ts[i], ts[i + 1]));
                }
            } else {
                min_abs_det = min_abs_det.min(s.bend);
            }
        }
        if !inflection_points.is_empty() {
            diagnostics.push(format!("inflection points at t = {inflection_points:?}"));
        }
        if !isotropic_plane_points.is_empty() {
            diagnostics.push(format!(
                "osculating plane is isotropic at t = {isotropic_plane_points:?}"
            ));
        }
        if kind.is_isotropic() && min_abs_det <= tol && isotropic_plane_points.is_empty() {
            diagnostics.push(format!(
                "|x'y''-x''y'| drops to {min_abs_det:e} (tolerance {tol:e}): osculating plane is nearly isotropic"
            ));
        }
    } else {
        min_abs_det = 0.0;
    }

    let admissible = regular
        && causal_constant
        && inflection_points.is_empty()
        && isotropic_plane_points.is_empty()
        && (!kind.is_isotropic() || min_abs_det > tol);

    AdmissibilityReport {
        kind,
        regular,
        inflection_points,
        isotropic_plane_points,
        admissible,
        min_abs_det,
        tolerance: tol,
        min_speed,
        causal,
        causal_constant,
        diagnostics,
    }
}

impl Curve {
    pub fn admissibility(&self, tol: f64) -> AdmissibilityReport {
        admissibility(self, tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::Jet;

    fn curve(kind: SpaceKind, f: fn(Jet) -> [Jet; 3], a: f64, b: f64) -> Curve {
        Curve::from_jet_fn(kind, f, a, b, 200).unwrap()
    }

    #[test]
    fn twisted_cubic_is_admissible() {
        let c = curve(SpaceKind::SimplyIsotropic, |t| [t, t.powi(2), t.powi(3)], -1.0, 1.0);
        let r = admissibility(&c, DEFAULT_ADMISSIBILITY_TOL);
        assert!(r.admissible, "{}", r.summary());
        // x'y'' − x''y' = 2 with speed √(1+4t²) ≤ √5
        assert!(r.min_abs_det >= 2.0 / 5f64.powf(1.5) - 1e-12);
    }

    #[test]
    fn isotropic_line_is_rejected() {
        let c = curve(SpaceKind::SimplyIsotropic, |t| [t * 0.0, t * 0.0, t], 0.0, 1.0);
        let r = admissibility(&c, DEFAULT_ADMISSIBILITY_TOL);
        assert!(!r.regular && !r.admissible);
    }

    #[test]
    fn lightlike_curve_is_rejected() {
        let c = curve(SpaceKind::PseudoIsotropic, |t| [t, t, t], 0.0, 1.0);
        let r = admissibility(&c, DEFAULT_ADMISSIBILITY_TOL);
        assert!(!r.admissible);
        assert_eq!(r.causal, Some(CausalClass::Lightlike));
        assert!(r.summary().contains("light cone"), "{}", r.summary());
    }

    #[test]
    fn inflection_is_located() {
        let c = curve(SpaceKind::Euclidean, |t| [t, t.powi(3), t * 0.0], -1.0, 1.3);
        let r = admissibility(&c, DEFAULT_ADMISSIBILITY_TOL);
        assert!(!r.admissible);
        assert_eq!(r.inflection_points.len(), 1);
        assert!(r.inflection_points[0].abs() < 1e-6);
    }

    #[test]
    fn isotropic_osculating_plane_is_located() {
        // x′y″ − x″y′ = 6t changes sign at t = 0
        let c = curve(SpaceKind::SimplyIsotropic, |t| [t, t.powi(3), t.powi(2)], -1.0, 1.3);
        let r = admissibility(&c, DEFAULT_ADMISSIBILITY_TOL);
        assert!(!r.admissible);
        assert_eq!(r.isotropic_plane_points.len(), 1);
        assert!(r.isotropic_plane_points[0].abs() < 1e-9);
    }

    #[test]
    fn varying_causal_character_is_rejected() {
        let c = curve(SpaceKind::PseudoIsotropic, |t| [t, t.powi(2), t], -1.0, 1.0);
        let r = admissibility(&c, DEFAULT_ADMISSIBILITY_TOL);
        assert!(!r.causal_constant && !r.admissible);
    }
}
