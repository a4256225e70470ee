//! Frenet, rotation-minimizing and bivector frames.
//!
//! All frames are computed on the arclength reparametrization of the input
//! curve, sampled on a uniform `s` grid starting at `s = 0`.
//!
//! Isotropic spaces use `b = (0,0,1)`, `n₁ = n − θb`, `n₂ = b` with
//! `θ = ∫τ + τ₀`. In the pseudo-isotropic case `ε = ⟨t,t⟩`, `η = −ε`,
//! `κ = −ε(x′y″ − x″y′)`, `n = t′/(ηκ)` and the Frenet equations read
//! `t′ = −εκn`, `n′ = −εκt + τb`.

use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::curve::{
    admissibility, arclength_reparametrize, AdmissibilityReport, Curve, Derivatives,
    DEFAULT_ADMISSIBILITY_TOL,
};
use crate::error::{Error, Result};
use crate::quadrature::cumulative_simpson;
use crate::spaces::{causal_character_tol, det3, lorentz_cross, CausalClass, SpaceKind, Vec3};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FrameKind {
    Frenet,
    RotationMinimizing,
}

/// Bivectors of the Frenet frame (`frenet_*`) and of the RM frame.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Bivectors {
    #[serde(rename = "T")]
    pub t: Vec3,
    #[serde(rename = "N1")]
    pub n1: Vec3,
    #[serde(rename = "N2")]
    pub n2: Vec3,
    #[serde(rename = "frenet_T")]
    pub frenet_t: Vec3,
    #[serde(rename = "frenet_N")]
    pub frenet_n: Vec3,
    #[serde(rename = "frenet_B")]
    pub frenet_b: Vec3,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrameSample {
    /// Arclength.
    pub s: f64,
    /// Parameter of the input curve.
    pub param: f64,
    pub point: Vec3,
    pub t: Vec3,
    pub n: Vec3,
    pub b: Vec3,
    pub n1: Vec3,
    pub n2: Vec3,
    pub kappa: f64,
    pub tau: f64,
    pub kappa_prime: f64,
    pub tau_prime: f64,
    pub kappa1: f64,
    pub kappa2: f64,
    pub kappa1_prime: f64,
    pub kappa2_prime: f64,
    pub theta: f64,
    pub eps: Option<f64>,
    pub eta: Option<f64>,
    /// `det(t, n, b)`.
    pub det: f64,
    pub bivectors: Option<Bivectors>,
    /// Unit-speed derivatives `[α, α′, α″, α‴, α⁗]` at `s`.
    #[serde(skip)]
    pub jet: Derivatives,
}

impl FrameSample {
    /// Sign used in the normal-development identity: `η` in the
    /// pseudo-isotropic case, `1` otherwise.
    pub fn development_sign(&self) -> f64 {
        self.eta.unwrap_or(1.0)
    }

    /// `τκ²`, the quantity dividing the osculating-sphere formulas.
    pub fn tau_kappa2(&self) -> f64 {
        self.tau * self.kappa * self.kappa
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FrameSet {
    pub kind: SpaceKind,
    pub frame: FrameKind,
    pub tau0: f64,
    pub length: f64,
    /// Uniform spacing of the `s` grid.
    pub step: f64,
    pub admissibility: AdmissibilityReport,
    pub samples: Vec<FrameSample>,
}

impl FrameSet {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Writes `s, t.{x,y,z}, n1.{x,y,z}, n2.{x,y,z}, kappa, tau, kappa1, kappa2, theta`.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record([
            "s", "t.x", "t.y", "t.z", "n1.x", "n1.y", "n1.z", "n2.x", "n2.y", "n2.z", "kappa",
            "tau", "kappa1", "kappa2", "theta",
        ])?;
        for f in &self.samples {
            let row = [
                f.s, f.t.x, f.t.y, f.t.z, f.n1.x, f.n1.y, f.n1.z, f.n2.x, f.n2.y, f.n2.z, f.kappa,
                f.tau, f.kappa1, f.kappa2, f.theta,
            ];
            out.write_record(row.iter().map(|v| v.to_string()))?;
        }
        out.flush().map_err(csv::Error::from)?;
        Ok(())
    }
}

fn det2(a: Vec3, b: Vec3) -> f64 {
    a.x * b.y - b.x * a.y
}

fn frenet_sample(kind: SpaceKind, s: f64, param: f64, d: Derivatives) -> Result<FrameSample> {
    let [p, d1, d2, d3, d4] = d;
    let (t, n, b, kappa, kappa_prime, eps) = match kind {
        SpaceKind::SimplyIsotropic => {
            let kappa = det2(d1, d2);
            (d1, d2 / kappa, Vec3::Z, kappa, det2(d1, d3), None)
        }
        SpaceKind::PseudoIsotropic => {
            let eps = match causal_character_tol(d1, 1e-9) {
                CausalClass::Spacelike => 1.0,
                CausalClass::Timelike => -1.0,
                CausalClass::Lightlike => {
                    return Err(Error::InvalidInput(format!(
                        "tangent is lightlike at s = {s}"
                    )))
                }
            };
            let eta = -eps;
            let kappa = -eps * det2(d1, d2);
            let n = d2 / (eta * kappa);
            if causal_character_tol(n, 1e-9) == CausalClass::Lightlike {
                return Err(Error::InvalidInput(format!(
                    "acceleration is lightlike at s = {s}"
                )));
            }
            (d1, n, Vec3::Z, kappa, -eps * det2(d1, d3), Some(eps))
        }
        SpaceKind::Euclidean => {
            let kappa = d2.norm();
            let n = d2 / kappa;
            (d1, n, d1.cross(n), kappa, d2.dot(d3) / kappa, None)
        }
    };
    let tau = det3(d1, d2, d3) / (kappa * kappa);
    let tau_prime = det3(d1, d2, d4) / (kappa * kappa) - 2.0 * tau * kappa_prime / kappa;
    Ok(FrameSample {
        s,
        param,
        point: p,
        t,
        n,
        b,
        n1: n,
        n2: b,
        kappa,
        tau,
        kappa_prime,
        tau_prime,
        kappa1: kappa,
        kappa2: 0.0,
        kappa1_prime: kappa_prime,
        kappa2_prime: 0.0,
        theta: 0.0,
        eps,
        eta: eps.map(|e| -e),
        det: det3(t, n, b),
        bivectors: None,
        jet: d,
    })
}

/// Frenet frame of an admissible curve in any of the three spaces.
pub fn frenet(c: &Curve) -> Result<FrameSet> {
    frenet_with_tol(c, DEFAULT_ADMISSIBILITY_TOL)
}

/// As [`frenet`] with an explicit admissibility tolerance.
pub fn frenet_with_tol(c: &Curve, tol: f64) -> Result<FrameSet> {
    let report = admissibility(c, tol);
    if !report.admissible {
        return Err(Error::NotAdmissible(Box::new(report)));
    }
    let u = arclength_reparametrize(c)?;
    let ss = u.parameters();
    let kind = c.kind();
    let samples = ss
        .par_iter()
        .map(|&s| frenet_sample(kind, s, u.original_parameter(s), u.derivatives(s)))
        .collect::<Result<Vec<_>>>()?;
    let (_, length) = u.domain();
    Ok(FrameSet {
        kind,
        frame: FrameKind::Frenet,
        tau0: 0.0,
        length,
        step: length / (ss.len() - 1) as f64,
        admissibility: report,
        samples,
    })
}

fn require(c: &Curve, kind: SpaceKind, op: &'static str) -> Result<()> {
    if c.kind() != kind {
        return Err(Error::UnsupportedSpace { op, kind: c.kind() });
    }
    Ok(())
}

pub fn frenet_isotropic(c: &Curve) -> Result<FrameSet> {
    require(c, SpaceKind::SimplyIsotropic, "frenet_isotropic")?;
    frenet(c)
}

pub fn frenet_pseudo(c: &Curve) -> Result<FrameSet> {
    require(c, SpaceKind::PseudoIsotropic, "frenet_pseudo")?;
    frenet(c)
}

pub fn frenet_euclidean(c: &Curve) -> Result<FrameSet> {
    require(c, SpaceKind::Euclidean, "frenet_euclidean")?;
    frenet(c)
}

/// Rotation-minimizing frame from Frenet samples on a uniform grid.
///
/// `θ = ∫τ + τ₀` by composite Simpson from the first sample. In the
/// isotropic spaces `τ₀` is the additive gauge; in Euclidean space it is the
/// initial rotation angle, `n₁ = cos θ n − sin θ b`.
pub fn rm_frame(frenet: &FrameSet, tau0: f64) -> FrameSet {
    let taus: Vec<f64> = frenet.samples.iter().map(|f| f.tau).collect();
    let theta: Vec<f64> = cumulative_simpson(&taus, frenet.step)
        .into_iter()
        .map(|v| v + tau0)
        .collect();
    let kind = frenet.kind;
    let samples = frenet
        .samples
        .par_iter()
        .zip(theta.par_iter())
        .map(|(f, &th)| {
            let mut g = f.clone();
            g.theta = th;
            let (k, kp, tau) = (f.kappa, f.kappa_prime, f.tau);
            match kind {
                SpaceKind::Euclidean => {
                    let (sn, cs) = th.sin_cos();
                    g.n1 = f.n * cs - f.b * sn;
                    g.n2 = f.n * sn + f.b * cs;
                    g.kappa1 = k * cs;
                    g.kappa2 = k * sn;
                    g.kappa1_prime = kp * cs - k * tau * sn;
                    g.kappa2_prime = kp * sn + k * tau * cs;
                }
                _ => {
                    let sign = f.development_sign();
                    g.n1 = f.n - f.b * th;
                    g.n2 = f.b;
                    g.kappa1 = k;
                    g.kappa2 = sign * k * th;
                    g.kappa1_prime = kp;
                    g.kappa2_prime = sign * (kp * th + k * tau);
                }
            }
            g.bivectors = None;
            g
        })
        .collect();
    FrameSet {
        frame: FrameKind::RotationMinimizing,
        tau0,
        samples,
        ..frenet.clone_meta()
    }
}

impl FrameSet {
    fn clone_meta(&self) -> FrameSet {
        FrameSet {
            kind: self.kind,
            frame: self.frame,
            tau0: self.tau0,
            length: self.length,
            step: self.step,
            admissibility: self.admissibility.clone(),
            samples: Vec::new(),
        }
    }
}

/// Euclidean RM frame whose first normal starts at `initial_normal`.
pub fn rm_frame_euclidean(c: &Curve, initial_normal: Vec3) -> Result<FrameSet> {
    require(c, SpaceKind::Euclidean, "rm_frame_euclidean")?;
    let fr = frenet(c)?;
    let f0 = &fr.samples[0];
    if (initial_normal.norm() - 1.0).abs() > 1e-6 || initial_normal.dot(f0.t).abs() > 1e-6 {
        return Err(Error::InvalidInput(format!(
            "initial normal must be a unit vector orthogonal to t(s0) = {:?}",
            f0.t
        )));
    }
    let theta0 = (-initial_normal.dot(f0.b)).atan2(initial_normal.dot(f0.n));
    Ok(rm_frame(&fr, theta0))
}

/// Adds Frenet and RM bivectors to every sample.
///
/// Isotropic: `𝓣 = n₁×n₂`, `𝓝₁ = n₂×t`, `𝓝₂ = t×n₁` and the Frenet
/// analogues with the Euclidean cross product. Pseudo-isotropic: the same
/// with the Lorentz cross product `×₁`.
pub fn bivector_frame(frames: &FrameSet) -> FrameSet {
    let cross = |a: Vec3, b: Vec3| match frames.kind {
        SpaceKind::PseudoIsotropic => lorentz_cross(a, b),
        _ => a.cross(b),
    };
    let samples = frames
        .samples
        .iter()
        .map(|f| {
            let mut g = f.clone();
            g.bivectors = Some(Bivectors {
                t: cross(f.n1, f.n2),
                n1: cross(f.n2, f.t),
                n2: cross(f.t, f.n1),
                frenet_t: cross(f.n, f.b),
                frenet_n: cross(f.b, f.t),
                frenet_b: cross(f.t, f.n),
            });
            g
        })
        .collect();
    FrameSet {
        samples,
        ..frames.clone_meta()
    }
}

/// Frenet, RM and bivector frames in one pass.
pub fn full_frames(c: &Curve, tau0: f64) -> Result<FrameSet> {
    Ok(bivector_frame(&rm_frame(&frenet(c)?, tau0)))
}

/// Maximum ODE residuals along a frame set, measured with fourth-order
/// central differences over the sample grid (two samples at each end are
/// skipped).
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct FrameResiduals {
    pub frenet: f64,
    pub rm: Option<f64>,
    /// Largest component of `nᵢ′` off the tangent.
    pub rm_property: Option<f64>,
    pub bivector: Option<f64>,
    /// `κ₁κ₂′ − κ₁′κ₂ − σ τκ²` with `σ = η` (pseudo-isotropic) or 1.
    pub development_identity: Option<f64>,
    /// `max |⟨nᵢ,nⱼ⟩ − δᵢⱼ|, |⟨nᵢ,t⟩|` (Euclidean RM only).
    pub orthonormality: Option<f64>,
}

impl FrameResiduals {
    pub fn max(&self) -> f64 {
        [
            Some(self.frenet),
            self.rm,
            self.rm_property,
            self.bivector,
            self.development_identity,
        ]
        .into_iter()
        .flatten()
        .fold(0.0, f64::max)
    }
}

/// Fourth-order central derivative at interior index `i`.
fn d_dt<T>(v: &[T], i: usize, h: f64) -> T
where
    T: Copy + std::ops::Sub<Output = T> + std::ops::Mul<f64, Output = T> + std::ops::Add<Output = T>,
{
    (v[i - 2] - v[i + 2]) * (1.0 / (12.0 * h)) + (v[i + 1] - v[i - 1]) * (8.0 / (12.0 * h))
}

/// Coordinates of `v` in the basis `(a, b, c)`.
fn coords(v: Vec3, a: Vec3, b: Vec3, c: Vec3) -> [f64; 3] {
    let d = det3(a, b, c);
    [
        det3(v, b, c) / d,
        det3(a, v, c) / d,
        det3(a, b, v) / d,
    ]
}

pub fn frame_residuals(frames: &FrameSet) -> FrameResiduals {
    let fs = &frames.samples;
    let n = fs.len();
    let h = frames.step;
    let kind = frames.kind;
    let mut r = FrameResiduals::default();
    if n < 5 {
        return r;
    }
    let col = |f: fn(&FrameSample) -> Vec3| fs.iter().map(f).collect::<Vec<_>>();
    let ts = col(|f| f.t);
    let ns = col(|f| f.n);
    let bs = col(|f| f.b);
    let n1s = col(|f| f.n1);
    let n2s = col(|f| f.n2);
    let k1: Vec<f64> = fs.iter().map(|f| f.kappa1).collect();
    let k2: Vec<f64> = fs.iter().map(|f| f.kappa2).collect();
    let rm = frames.frame == FrameKind::RotationMinimizing;
    let acc = |slot: &mut Option<f64>, v: f64| *slot = Some(slot.unwrap_or(0.0).max(v));
    let mut frenet = 0.0f64;
    let (mut rm_res, mut rm_prop, mut biv, mut ident, mut ortho) = (None, None, None, None, None);
    for i in 2..n - 2 {
        let f = &fs[i];
        let (k, tau) = (f.kappa, f.tau);
        let eps = f.eps.unwrap_or(1.0);
        let (dt, dn, db) = (d_dt(&ts, i, h), d_dt(&ns, i, h), d_dt(&bs, i, h));
        let (rt, rn, rb) = match kind {
            SpaceKind::SimplyIsotropic => (dt - f.n * k, dn + f.t * k - f.b * tau, db),
            SpaceKind::PseudoIsotropic => (
                dt + f.n * (eps * k),
                dn + f.t * (eps * k) - f.b * tau,
                db,
            ),
            SpaceKind::Euclidean => (dt - f.n * k, dn + f.t * k - f.b * tau, db + f.n * tau),
        };
        frenet = frenet.max(rt.max_abs()).max(rn.max_abs()).max(rb.max_abs());

        if rm {
            let (dn1, dn2) = (d_dt(&n1s, i, h), d_dt(&n2s, i, h));
            let (k1i, k2i) = (f.kappa1, f.kappa2);
            let (e1, e2, e3) = match kind {
                SpaceKind::Euclidean => (
                    dt - f.n1 * k1i - f.n2 * k2i,
                    dn1 + f.t * k1i,
                    dn2 + f.t * k2i,
                ),
                SpaceKind::SimplyIsotropic => (dt - f.n1 * k1i - f.n2 * k2i, dn1 + f.t * k1i, dn2),
                SpaceKind::PseudoIsotropic => (
                    dt + f.n1 * (eps * k1i) - f.n2 * k2i,
                    dn1 + f.t * (eps * k1i),
                    dn2,
                ),
            };
            acc(&mut rm_res, e1.max_abs().max(e2.max_abs()).max(e3.max_abs()));
            let [_, a, b] = coords(dn1, f.t, f.n1, f.n2);
            let mut prop = a.abs().max(b.abs());
            if kind == SpaceKind::Euclidean {
                let [_, a2, b2] = coords(dn2, f.t, f.n1, f.n2);
                prop = prop.max(a2.abs()).max(b2.abs());
                let o = [
                    f.n1.dot(f.n1) - 1.0,
                    f.n2.dot(f.n2) - 1.0,
                    f.n1.dot(f.n2),
                    f.n1.dot(f.t),
                    f.n2.dot(f.t),
                ]
                .iter()
                .fold(0.0f64, |m, v| m.max(v.abs()));
                acc(&mut ortho, o);
            }
            acc(&mut rm_prop, prop);
            let (dk1, dk2) = (d_dt(&k1, i, h), d_dt(&k2, i, h));
            let lhs = k1i * dk2 - dk1 * k2i;
            acc(&mut ident, (lhs - f.development_sign() * tau * k * k).abs());
        }

        if let (Some(bv), true) = (f.bivectors, kind.is_isotropic()) {
            let get = |g: fn(&Bivectors) -> Vec3, j: usize| g(fs[j].bivectors.as_ref().unwrap());
            let d = |g: fn(&Bivectors) -> Vec3| {
                let v: Vec<Vec3> = (i - 2..=i + 2).map(|j| get(g, j)).collect();
                d_dt(&v, 2, h)
            };
            let eta = -eps;
            let k1i = f.kappa1;
            let k2i = f.kappa2;
            let errs = match kind {
                SpaceKind::SimplyIsotropic => [
                    d(|b| b.t) - bv.n1 * k1i,
                    d(|b| b.n1) + bv.t * k1i,
                    d(|b| b.n2) + bv.t * k2i,
                    d(|b| b.frenet_t) - bv.frenet_n * k,
                    d(|b| b.frenet_n) + bv.frenet_t * k,
                    d(|b| b.frenet_b) + bv.frenet_n * tau,
                ],
                _ => [
                    d(|b| b.t) - bv.n1 * (eps * k1i),
                    d(|b| b.n1) + bv.t * (eta * k1i),
                    d(|b| b.n2) + bv.t * k2i,
                    d(|b| b.frenet_t) + bv.frenet_n * (k * eta),
                    d(|b| b.frenet_n) - bv.frenet_t * (eps * k),
                    d(|b| b.frenet_b) + bv.frenet_n * tau,
                ],
            };
            acc(&mut biv, errs.iter().fold(0.0f64, |m, e| m.max(e.max_abs())));
        }
    }
    r.frenet = frenet;
    r.rm = rm_res;
    r.rm_property = rm_prop;
    r.bivector = biv;
    r.development_identity = ident;
    r.orthonormality = ortho;
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::Jet;

    fn jet_curve(kind: SpaceKind, f: fn(Jet) -> [Jet; 3], a: f64, b: f64, n: usize) -> Curve {
        Curve::from_jet_fn(kind, f, a, b, n).unwrap()
    }

    fn helix() -> Curve {
        jet_curve(SpaceKind::SimplyIsotropic, |t| [t.cos(), t.sin(), t], 0.0, 6.0, 600)
    }

    #[test]
    fn isotropic_helix_frenet() {
        let fr = frenet_isotropic(&helix()).unwrap();
        for f in &fr.samples {
            assert!((f.kappa - 1.0).abs() < 1e-12);
            assert!((f.tau - 1.0).abs() < 1e-12);
            assert!((f.det - 1.0).abs() < 1e-12);
            assert_eq!(f.b, Vec3::Z);
        }
        assert!(frame_residuals(&fr).frenet < 1e-6);
    }

    #[test]
    fn planar_circle_has_zero_torsion() {
        let c = jet_curve(SpaceKind::SimplyIsotropic, |t| [t.cos(), t.sin(), t * 0.0], 0.0, 6.0, 300);
        let fr = rm_frame(&frenet(&c).unwrap(), 0.0);
        for f in &fr.samples {
            assert!((f.kappa - 1.0).abs() < 1e-12 && f.tau.abs() < 1e-12);
            assert!((f.n1 - f.n).max_abs() < 1e-12);
            assert!(f.kappa2.abs() < 1e-12);
        }
    }

    #[test]
    fn helix_rm_development_is_linear() {
        let fr = full_frames(&helix(), 0.0).unwrap();
        for f in &fr.samples {
            assert!((f.theta - f.s).abs() < 1e-10, "{} {}", f.theta, f.s);
            assert!((f.kappa2 - f.s).abs() < 1e-10);
            assert!((f.n1 - (f.n - Vec3::Z * f.s)).max_abs() < 1e-10);
            let bv = f.bivectors.unwrap();
            assert!((bv.frenet_t - Vec3::new(-f.s.sin(), f.s.cos(), 0.0)).max_abs() < 1e-10);
            assert!((det3(bv.frenet_t, bv.frenet_n, bv.frenet_b) - 1.0).abs() < 1e-10);
        }
        let r = frame_residuals(&fr);
        assert!(r.max() < 1e-6, "{r:?}");
    }

    #[test]
    fn pseudo_helices() {
        let c = jet_curve(SpaceKind::PseudoIsotropic, |t| [t.sinh(), t.cosh(), t], -1.0, 1.0, 400);
        let fr = full_frames(&c, 0.0).unwrap();
        for f in &fr.samples {
            assert_eq!((f.eps, f.eta), (Some(1.0), Some(-1.0)));
            assert!((f.kappa + 1.0).abs() < 1e-12);
            assert!((f.det - 1.0).abs() < 1e-12);
        }
        let r = frame_residuals(&fr);
        assert!(r.max() < 1e-6, "{r:?}");

        let c = jet_curve(SpaceKind::PseudoIsotropic, |t| [t.cosh(), t.sinh(), t], -1.0, 1.0, 400);
        let fr = full_frames(&c, 0.5).unwrap();
        for f in &fr.samples {
            assert_eq!(f.eps, Some(-1.0));
            // κ = −ε(x′y″ − x″y′) = sinh² − cosh²
            assert!((f.kappa + 1.0).abs() < 1e-12);
        }
        assert!(frame_residuals(&fr).max() < 1e-6);
    }

    #[test]
    fn curvature_matches_planar_top_view() {
        // Top view (t, t²) has planar curvature 2/(1+4t²)^{3/2}.
        let c = jet_curve(SpaceKind::SimplyIsotropic, |t| [t, t.powi(2), t.powi(3)], -1.0, 1.0, 300);
        let fr = frenet(&c).unwrap();
        for f in &fr.samples {
            let t = f.param;
            let planar = 2.0 / (1.0 + 4.0 * t * t).powf(1.5);
            assert!((f.kappa - planar).abs() < 1e-9);
        }
        // Lorentzian top view (t, t²/2) for |t| < 1: κ = −ε(x′y″−x″y′)/|1−t²|^{3/2}, ε = +1.
        let c = jet_curve(SpaceKind::PseudoIsotropic, |t| [t, t.powi(2) * 0.5, t.sin()], -0.6, 0.6, 300);
        let fr = frenet(&c).unwrap();
        for f in &fr.samples {
            let t = f.param;
            let planar = -1.0 / (1.0 - t * t).powf(1.5);
            assert!((f.kappa - planar).abs() < 1e-9);
        }
    }

    #[test]
    fn lightlike_is_rejected() {
        let c = jet_curve(SpaceKind::PseudoIsotropic, |t| [t, t, t], 0.0, 1.0, 100);
        match frenet(&c) {
            Err(Error::NotAdmissible(r)) => assert!(r.summary().contains("light cone")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn wrong_space_is_rejected() {
        assert!(matches!(
            frenet_pseudo(&helix()),
            Err(Error::UnsupportedSpace { .. })
        ));
    }

    /// RK4 integration of `n′ = −(t′·n) t` along a unit-speed Euclidean curve.
    fn transport(c: &Curve, n0: Vec3, s_end: f64, steps: usize) -> Vec3 {
        let u = arclength_reparametrize(c).unwrap();
        let f = |s: f64, n: Vec3| {
            let d = u.derivatives(s);
            d[1] * -(d[2].dot(n))
        };
        let h = s_end / steps as f64;
        let mut n = n0;
        for i in 0..steps {
            let s = i as f64 * h;
            let k1 = f(s, n);
            let k2 = f(s + h / 2.0, n + k1 * (h / 2.0));
            let k3 = f(s + h / 2.0, n + k2 * (h / 2.0));
            let k4 = f(s + h, n + k3 * h);
            n = n + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
        }
        n
    }

    #[test]
    fn euclidean_rm_matches_transport() {
        let c = jet_curve(
            SpaceKind::Euclidean,
            |t| [t.cos(), t.sin(), t].map(|v| v * std::f64::consts::FRAC_1_SQRT_2),
            0.0,
            8.0,
            801,
        );
        let fr0 = frenet(&c).unwrap();
        let init = fr0.samples[0].n;
        let fr = rm_frame_euclidean(&c, init).unwrap();
        let last = fr.samples.last().unwrap();
        let oracle = transport(&c, init, last.s, 4000);
        assert!((last.n1 - oracle).max_abs() < 1e-8, "{:?} vs {oracle:?}", last.n1);
        // (κ₁, κ₂) on a circle of radius κ = a/(a² + b²) = 1/√2
        for f in &fr.samples {
            assert!((f.kappa1.hypot(f.kappa2) - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-10);
        }
        let r = frame_residuals(&fr);
        assert!(r.max() < 1e-6 && r.orthonormality.unwrap() < 1e-8, "{r:?}");

        let tilted = (fr0.samples[0].n + fr0.samples[0].b).normalized();
        let other = rm_frame_euclidean(&c, tilted).unwrap();
        let d0 = other.samples[0].theta - fr.samples[0].theta;
        for (a, b) in fr.samples.iter().zip(&other.samples) {
            assert!((b.theta - a.theta - d0).abs() < 1e-12);
        }
        assert!(rm_frame_euclidean(&c, Vec3::new(0.0, 0.0, 1.0)).is_err());
    }

    #[test]
    fn csv_has_expected_header() {
        let fr = rm_frame(&frenet(&helix()).unwrap(), 0.0);
        let mut buf = Vec::new();
        fr.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let first = text.lines().next().unwrap();
        assert_eq!(
            first,
            "s,t.x,t.y,t.z,n1.x,n1.y,n1.z,n2.x,n2.y,n2.z,kappa,tau,kappa1,kappa2,theta"
        );
        assert_eq!(text.lines().count(), fr.len() + 1);
    }
}
