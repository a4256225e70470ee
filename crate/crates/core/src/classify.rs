//! Spherical and planar classification from the normal development
//! `s ↦ (κ₁(s), κ₂(s))` of the RM frame.
//!
//! In all three spaces a curve lies on a sphere exactly when its development
//! lies on a line missing the origin, and on a plane when the line passes
//! through the origin. In the isotropic spaces a vertical line `κ₁ = 1/r`
//! singles out the cylindrical spheres `x² ± y² = ±r²`.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::curve::{AdmissibilityReport, Curve, DerivativeMode, DEFAULT_ADMISSIBILITY_TOL};
use crate::error::{Error, Result};
use crate::frames::{frenet_with_tol, rm_frame, FrameKind, FrameSample, FrameSet};
use crate::spaces::{SpaceKind, Vec3};
use crate::spheres::{osculating_sphere, Sphere};

/// Fewest samples accepted by [`fit_normal_development`].
pub const MIN_SAMPLES: usize = 10;

/// Default line-fit tolerance relative to the development scale.
pub const DEFAULT_REL_TOL: f64 = 1e-4;

/// Default origin tolerance relative to the development scale.
pub const DEFAULT_REL_ORIGIN_TOL: f64 = 1e-3;

/// Default bound on osculating-sphere drift.
pub const DEFAULT_CROSS_CHECK_TOL: f64 = 1e-4;

/// Below `|τκ²| < MIN_TK2 · scale³` the osculating sphere is not computed.
const MIN_TK2: f64 = 1e-6;

/// Samples with `|τκ²|` under this fraction of its maximum are left out of
/// the cross-check; near a torsion zero the sphere is ill-conditioned.
const CONDITIONING: f64 = 0.05;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    PlaneCurve,
    SphericalParabolic,
    SphericalCylindrical,
    /// Euclidean round sphere.
    Spherical,
    Generic,
}

impl Verdict {
    pub fn is_spherical(self) -> bool {
        matches!(
            self,
            Verdict::SphericalParabolic | Verdict::SphericalCylindrical | Verdict::Spherical
        )
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::PlaneCurve => "plane curve",
            Verdict::SphericalParabolic => "spherical (parabolic)",
            Verdict::SphericalCylindrical => "spherical (cylindrical)",
            Verdict::Spherical => "spherical",
            Verdict::Generic => "generic",
        })
    }
}

/// `a₁κ₁ + a₂κ₂ = c` with `a₁² + a₂² = 1` and `c ≥ 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DevelopmentLine {
    pub a1: f64,
    pub a2: f64,
    pub c: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NormalDevelopment {
    pub kind: SpaceKind,
    pub s: Vec<f64>,
    pub points: Vec<[f64; 2]>,
    pub line: DevelopmentLine,
    pub rms_residual: f64,
    pub origin_distance: f64,
    pub verdict: Verdict,
    pub kappa_constant: bool,
    pub kappa_mean: f64,
    /// `1/|κ|` when the curve lies on a cylindrical sphere.
    pub cylinder_radius: Option<f64>,
    /// Radius `1/c` of the Euclidean sphere.
    pub sphere_radius: Option<f64>,
    /// The development collapsed to a single point.
    pub degenerate: bool,
    /// Set for point developments of non-zero constant curvature in the
    /// isotropic spaces: the curve lies on a plane and on a cylindrical sphere.
    pub also_cylindrical: bool,
    /// Causal sign of the tangent (𝕀ₚ³).
    pub eps: Option<f64>,
    pub scale: f64,
    pub tol: f64,
    pub origin_tol: f64,
}

impl NormalDevelopment {
    /// `s,kappa1,kappa2` rows.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["s", "kappa1", "kappa2"])?;
        for (s, p) in self.s.iter().zip(&self.points) {
            out.write_record([s.to_string(), p[0].to_string(), p[1].to_string()])?;
        }
        out.flush()
            .map_err(|e| Error::InvalidInput(format!("write failed: {e}")))?;
        Ok(())
    }
}

/// RMS of `‖(κ₁, κ₂)‖` over the samples.
pub fn development_scale(samples: &[FrameSample]) -> f64 {
    let n = samples.len().max(1) as f64;
    (samples
        .iter()
        .map(|f| f.kappa1 * f.kappa1 + f.kappa2 * f.kappa2)
        .sum::<f64>()
        / n)
        .sqrt()
}

/// Scale-relative defaults `(1e-4·scale, 1e-3·scale)`.
pub fn default_tolerances(samples: &[FrameSample]) -> (f64, f64) {
    let scale = development_scale(samples);
    (DEFAULT_REL_TOL * scale, DEFAULT_REL_ORIGIN_TOL * scale)
}

struct Tls {
    normal: [f64; 2],
    mean: [f64; 2],
    lambda_min: f64,
    lambda_max: f64,
}

fn total_least_squares(points: &[[f64; 2]]) -> Tls {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p[0]).sum::<f64>() / n;
    let my = points.iter().map(|p| p[1]).sum::<f64>() / n;
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for p in points {
        let (dx, dy) = (p[0] - mx, p[1] - my);
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    let (sxx, sxy, syy) = (sxx / n, sxy / n, syy / n);
    let half_tr = 0.5 * (sxx + syy);
    let disc = (0.25 * (sxx - syy).powi(2) + sxy * sxy).sqrt();
    let (lmin, lmax) = ((half_tr - disc).max(0.0), half_tr + disc);
    let v1 = [sxy, lmin - sxx];
    let v2 = [lmin - syy, sxy];
    let n1 = v1[0].hypot(v1[1]);
    let n2 = v2[0].hypot(v2[1]);
    let normal = if n1.max(n2) <= f64::MIN_POSITIVE {
        [1.0, 0.0]
    } else if n1 >= n2 {
        [v1[0] / n1, v1[1] / n1]
    } else {
        [v2[0] / n2, v2[1] / n2]
    };
    Tls {
        normal,
        mean: [mx, my],
        lambda_min: lmin,
        lambda_max: lmax,
    }
}

fn ensure_rm(frames: &FrameSet) -> FrameSet {
    match frames.frame {
        FrameKind::RotationMinimizing => frames.clone(),
        FrameKind::Frenet => rm_frame(frames, frames.tau0),
    }
}

/// Fit a line to the normal development and decide the verdict.
///
/// Frenet input is converted to the RM frame with its own `τ₀`.
pub fn fit_normal_development(frames: &FrameSet, tol: f64, origin_tol: f64) -> Result<NormalDevelopment> {
    if frames.len() < MIN_SAMPLES {
        return Err(Error::InsufficientData {
            needed: MIN_SAMPLES,
            got: frames.len(),
        });
    }
    if !(tol > 0.0) || !(origin_tol > 0.0) {
        return Err(Error::InvalidInput(format!(
            "tolerances must be positive (tol = {tol}, origin_tol = {origin_tol})"
        )));
    }
    let rm = ensure_rm(frames);
    let samples = &rm.samples;
    let kind = rm.kind;
    let points: Vec<[f64; 2]> = samples.iter().map(|f| [f.kappa1, f.kappa2]).collect();
    let s: Vec<f64> = samples.iter().map(|f| f.s).collect();
    let scale = development_scale(samples);
    let n = samples.len() as f64;
    let kappa_mean = samples.iter().map(|f| f.kappa).sum::<f64>() / n;
    let kappa_constant = samples.iter().all(|f| (f.kappa - kappa_mean).abs() <= tol);
    let tau_vanishes = samples.iter().all(|f| f.tau.abs() <= tol);
    let eps = samples[0].eps;
    let isotropic = kind.is_isotropic();

    let fit = total_least_squares(&points);
    let degenerate = fit.lambda_max.sqrt() <= tol;

    let (line, rms_residual) = if degenerate {
        // Any line through the point fits; the one through the origin
        // matches the planar reading.
        let [mx, my] = fit.mean;
        let r = mx.hypot(my);
        let line = if r > 0.0 {
            DevelopmentLine { a1: -my / r, a2: mx / r, c: 0.0 }
        } else {
            DevelopmentLine { a1: 1.0, a2: 0.0, c: 0.0 }
        };
        (line, 0.0)
    } else {
        let [a1, a2] = fit.normal;
        let c = a1 * fit.mean[0] + a2 * fit.mean[1];
        let line = if c < 0.0 {
            DevelopmentLine { a1: -a1, a2: -a2, c: -c }
        } else {
            DevelopmentLine { a1, a2, c }
        };
        (line, fit.lambda_min.sqrt())
    };
    let origin_distance = line.c;

    let verdict = if degenerate {
        if kappa_constant && tau_vanishes {
            Verdict::PlaneCurve
        } else {
            Verdict::Generic
        }
    } else if rms_residual > tol {
        Verdict::Generic
    } else if origin_distance <= origin_tol {
        Verdict::PlaneCurve
    } else if !isotropic {
        Verdict::Spherical
    } else if kappa_constant {
        Verdict::SphericalCylindrical
    } else {
        Verdict::SphericalParabolic
    };

    let curved = kappa_mean.abs() > tol;
    let also_cylindrical = degenerate && isotropic && kappa_constant && curved && verdict == Verdict::PlaneCurve;
    let cylinder_radius = (verdict == Verdict::SphericalCylindrical || also_cylindrical)
        .then(|| 1.0 / kappa_mean.abs());
    let sphere_radius = (verdict == Verdict::Spherical).then(|| 1.0 / origin_distance);

    Ok(NormalDevelopment {
        kind,
        s,
        points,
        line,
        rms_residual,
        origin_distance,
        verdict,
        kappa_constant,
        kappa_mean,
        cylinder_radius,
        sphere_radius,
        degenerate,
        also_cylindrical,
        eps,
        scale,
        tol,
        origin_tol,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassifyConfig {
    /// RM gauge; the initial rotation angle in Euclidean space.
    pub tau0: f64,
    /// Absolute line-fit tolerance; `None` gives `1e-4·scale`.
    pub tol: Option<f64>,
    /// Absolute origin tolerance; `None` gives `1e-3·scale`.
    pub origin_tol: Option<f64>,
    pub cross_check_tol: f64,
    pub admissibility_tol: f64,
}

impl Default for ClassifyConfig {
    fn default() -> Self {
        ClassifyConfig {
            tau0: 0.0,
            tol: None,
            origin_tol: None,
            cross_check_tol: DEFAULT_CROSS_CHECK_TOL,
            admissibility_tol: DEFAULT_ADMISSIBILITY_TOL,
        }
    }
}

/// Constancy of the osculating sphere along the curve. Drifts are
/// `max |c − median| / (1 + |median|)` over the samples.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CrossCheck {
    pub samples: usize,
    /// Ill-conditioned samples left out.
    pub excluded: usize,
    /// General-form coefficients `c₁..c₄` (isotropic spaces).
    pub coefficient_drift: Option<f64>,
    /// Center and radius (Euclidean space).
    pub center_drift: Option<f64>,
    pub radius_drift: Option<f64>,
    pub drift: f64,
    pub tolerance: f64,
    pub accepts: bool,
    /// The sphere built from the median coefficients.
    pub median_sphere: Sphere,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub kind: SpaceKind,
    pub tau0: f64,
    pub samples: usize,
    pub length: f64,
    pub development: NormalDevelopment,
    pub cross_check: Option<CrossCheck>,
    /// `max |d/ds (κ′/(κ²τ))|` (𝕀³ only).
    pub frenet_criterion: Option<f64>,
    pub frenet_accepts: Option<bool>,
    pub admissibility: AdmissibilityReport,
    pub notes: Vec<String>,
}

impl ClassificationReport {
    pub fn verdict(&self) -> Verdict {
        self.development.verdict
    }

    /// Line fit, osculating-sphere constancy and (𝕀³) the Frenet criterion
    /// accept or reject together. Criteria that were not evaluated are ignored.
    pub fn criteria_agree(&self) -> bool {
        let line = self.verdict().is_spherical();
        let cross = self.cross_check.as_ref().map(|c| c.accepts);
        cross.is_none_or(|c| c == line) && self.frenet_accepts.is_none_or(|f| f == line)
    }
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

fn drift(columns: &[Vec<f64>]) -> (f64, Vec<f64>) {
    let mut worst: f64 = 0.0;
    let mut meds = Vec::with_capacity(columns.len());
    for col in columns {
        let m = median(col.clone());
        for v in col {
            worst = worst.max((v - m).abs() / (1.0 + m.abs()));
        }
        meds.push(m);
    }
    (worst, meds)
}

/// Indices where the osculating sphere is well conditioned, or `None` when
/// too few remain.
fn well_conditioned(rm: &FrameSet, scale: f64) -> Option<Vec<usize>> {
    let tk2: Vec<f64> = rm.samples.iter().map(|f| f.tau_kappa2().abs()).collect();
    if tk2.iter().any(|v| v.is_nan()) {
        return None;
    }
    let peak = tk2.iter().copied().fold(0.0, f64::max);
    let floor = (MIN_TK2 * scale.powi(3)).max(CONDITIONING * peak);
    let kept: Vec<usize> = (0..rm.len()).filter(|&i| tk2[i] >= floor).collect();
    (kept.len() >= MIN_SAMPLES).then_some(kept)
}

fn cross_check(rm: &FrameSet, kept: &[usize], tol: f64) -> Result<CrossCheck> {
    let spheres = kept
        .iter()
        .map(|&i| osculating_sphere(rm, i))
        .collect::<Result<Vec<_>>>()?;
    let n = spheres.len();
    let excluded = rm.len() - n;
    let check = if rm.kind == SpaceKind::Euclidean {
        let cols: Vec<Vec<f64>> = (0..3)
            .map(|k| spheres.iter().map(|o| o.center.unwrap_or(Vec3::ZERO).to_array()[k]).collect())
            .collect();
        let (center_drift, c) = drift(&cols);
        let (radius_drift, r) = drift(&[spheres.iter().map(|o| o.radius.unwrap_or(0.0)).collect()]);
        let d = center_drift.max(radius_drift);
        CrossCheck {
            samples: n,
            excluded,
            coefficient_drift: None,
            center_drift: Some(center_drift),
            radius_drift: Some(radius_drift),
            drift: d,
            tolerance: tol,
            accepts: d <= tol,
            median_sphere: Sphere::round(Vec3::new(c[0], c[1], c[2]), r[0]),
        }
    } else {
        let coeffs = spheres
            .iter()
            .map(|o| o.sphere.coefficients())
            .collect::<Result<Vec<_>>>()?;
        let cols: Vec<Vec<f64>> = (0..4).map(|k| coeffs.iter().map(|c| c[k]).collect()).collect();
        let (d, m) = drift(&cols);
        CrossCheck {
            samples: n,
            excluded,
            coefficient_drift: Some(d),
            center_drift: None,
            radius_drift: None,
            drift: d,
            tolerance: tol,
            accepts: d <= tol,
            median_sphere: Sphere::general(rm.kind, [m[0], m[1], m[2], m[3]])?,
        }
    };
    Ok(check)
}

/// `q = κ′/(κ²τ)` and its exact derivative in 𝕀³; `κ″` comes from the
/// stored fourth-order jet.
fn frenet_quotient_derivative(f: &FrameSample) -> f64 {
    let [_, d1, d2, d3, d4] = f.jet;
    let kpp = d2.x * d3.y + d1.x * d4.y - d4.x * d1.y - d3.x * d2.y;
    let (k, kp, tau, taup) = (f.kappa, f.kappa_prime, f.tau, f.tau_prime);
    let q = frenet_quotient(f);
    kpp / (k * k * tau) - q * (2.0 * kp / k + taup / tau)
}

fn frenet_quotient(f: &FrameSample) -> f64 {
    f.kappa_prime / (f.kappa * f.kappa * f.tau)
}

/// `dq/ds` by second-order differences of sampled `q` over the kept
/// indices, for curves whose jets come from finite differences.
fn sampled_quotient_derivative(rm: &FrameSet, kept: &[usize]) -> Vec<f64> {
    let q = |i: usize| frenet_quotient(&rm.samples[i]);
    let s = |i: usize| rm.samples[i].s;
    kept.iter()
        .map(|&i| {
            let prev = i.checked_sub(1).filter(|p| kept.binary_search(p).is_ok());
            let next = Some(i + 1).filter(|n| kept.binary_search(n).is_ok());
            match (prev, next) {
                (Some(a), Some(b)) => {
                    let (h0, h1) = (s(i) - s(a), s(b) - s(i));
                    (h0 * h0 * (q(b) - q(i)) + h1 * h1 * (q(i) - q(a))) / (h0 * h1 * (h0 + h1))
                }
                (Some(a), None) => (q(i) - q(a)) / (s(i) - s(a)),
                (None, Some(b)) => (q(b) - q(i)) / (s(b) - s(i)),
                (None, None) => 0.0,
            }
        })
        .collect()
}

/// Frames, development fit, osculating-sphere cross-check and Frenet
/// criterion for one curve.
pub fn classify_curve(c: &Curve, config: &ClassifyConfig) -> Result<ClassificationReport> {
    let frenet = frenet_with_tol(c, config.admissibility_tol)
        .map_err(|e| e.context("classify: building Frenet frame"))?;
    let rm = rm_frame(&frenet, config.tau0);
    let (dt, dot) = default_tolerances(&rm.samples);
    let tol = config.tol.unwrap_or(dt);
    let origin_tol = config.origin_tol.unwrap_or(dot);
    let development = fit_normal_development(&rm, tol, origin_tol)
        .map_err(|e| e.context("classify: fitting normal development"))?;
    let mut notes = Vec::new();
    let scale = development.scale;
    let kept = well_conditioned(&rm, scale);
    let cross = match &kept {
        Some(kept) => Some(
            cross_check(&rm, kept, config.cross_check_tol)
                .map_err(|e| e.context("classify: osculating-sphere cross-check"))?,
        ),
        None => {
            notes.push("osculating-sphere cross-check skipped: tau*kappa^2 approaches zero".to_string());
            None
        }
    };
    if let Some(c) = cross.as_ref().filter(|c| c.excluded > 0) {
        notes.push(format!(
            "{} samples near a torsion zero left out of the sphere criteria",
            c.excluded
        ));
    }
    let (frenet_criterion, frenet_accepts) = if let (SpaceKind::SimplyIsotropic, Some(kept)) = (c.kind(), &kept) {
        let dq = match c.mode() {
            DerivativeMode::Exact => kept.iter().map(|&i| frenet_quotient_derivative(&rm.samples[i])).collect(),
            DerivativeMode::FiniteDifference(_) => sampled_quotient_derivative(&rm, kept),
        };
        let v = dq
            .into_iter()
            .fold(0.0, |a: f64, v| if v.is_nan() || a.is_nan() { f64::NAN } else { a.max(v.abs()) });
        (Some(v), Some(v <= config.cross_check_tol * scale.max(f64::MIN_POSITIVE)))
    } else {
        (None, None)
    };
    let fd = matches!(c.mode(), DerivativeMode::FiniteDifference(_));
    if fd && frenet_accepts.is_some_and(|a| a != development.verdict.is_spherical()) {
        notes.push("Frenet criterion disagrees; with finite-difference derivatives it is noise-limited".to_string());
    }
    if development.degenerate {
        notes.push(format!(
            "normal development is a single point; verdict from constant curvature and vanishing torsion{}",
            if development.also_cylindrical {
                "; the curve also lies on a cylindrical sphere"
            } else {
                ""
            }
        ));
    }
    if let Some(eps) = development.eps {
        notes.push(format!("tangent causal sign eps = {eps}; origin distance reported as |c|"));
    }
    Ok(ClassificationReport {
        kind: c.kind(),
        tau0: config.tau0,
        samples: rm.len(),
        length: rm.length,
        development,
        cross_check: cross,
        frenet_criterion,
        frenet_accepts,
        admissibility: rm.admissibility.clone(),
        notes,
    })
}
