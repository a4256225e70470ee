//! Isotropic and pseudo-isotropic spheres and osculating spheres.
//!
//! A sphere in 𝕀³ (𝕀ₚ³) is the quadric
//! `x² ± y² + 2c₁x + 2c₂y + 2c₃z + c₄ = 0` (upper sign isotropic). It is of
//! parabolic type when `c₃ ≠ 0`, with normal form `x² ± y² = 2pz`, and of
//! cylindrical type otherwise, with normal form `x² ± y² = ±r²`.
//!
//! Osculating spheres are written `λ⟨x−α₀, x−α₀⟩ + ⟨u, x−α₀⟩ = 0`, where
//! the first bracket is the degenerate metric and the second is the Euclidean
//! product (isotropic) or the Lorentz product `⟨·,·⟩₁` (pseudo-isotropic).
//! The free scale is fixed by `‖u‖ = 1` and `λ ≥ 0`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frames::{FrameSample, FrameSet};
use crate::jet::Jet;
use crate::spaces::{det3, flip_y, inner, lorentz_cross, lorentz_inner, IsoMotion, SpaceKind, Vec3};
use crate::vector::solve3;

/// Below this `|τκ²|` the osculating sphere degenerates to the osculating plane.
pub const DEGENERACY_THRESHOLD: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum SphereForm {
    /// `x² ± y² = 2pz`.
    Parabolic { p: f64 },
    /// `(x−a)² ± (y−b)² = sign·r²` with `(a, b)` the top-view center.
    Cylindrical {
        r: f64,
        #[serde(default = "one")]
        sign: f64,
        #[serde(default)]
        center_top_view: [f64; 2],
    },
    General { c1: f64, c2: f64, c3: f64, c4: f64 },
    /// Euclidean round sphere.
    Round { center: Vec3, radius: f64 },
}

fn one() -> f64 {
    1.0
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sphere {
    pub space: SpaceKind,
    #[serde(flatten)]
    pub form: SphereForm,
}

/// Result of [`Sphere::reduce`]: `motion` carries the sphere onto `normal`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Reduction {
    pub normal: Sphere,
    pub motion: IsoMotion,
}

impl Sphere {
    pub fn parabolic(space: SpaceKind, p: f64) -> Result<Sphere> {
        check_isotropic(space, "parabolic sphere")?;
        if p == 0.0 || !p.is_finite() {
            return Err(Error::InvalidInput(format!("parabolic parameter must be nonzero, got {p}")));
        }
        Ok(Sphere {
            space,
            form: SphereForm::Parabolic { p },
        })
    }

    pub fn cylindrical(space: SpaceKind, r: f64, sign: f64, center_top_view: [f64; 2]) -> Result<Sphere> {
        check_isotropic(space, "cylindrical sphere")?;
        if !(r > 0.0) {
            return Err(Error::InvalidInput(format!("radius must be positive, got {r}")));
        }
        if sign.abs() != 1.0 || (space == SpaceKind::SimplyIsotropic && sign != 1.0) {
            return Err(Error::InvalidInput(format!("invalid cylinder sign {sign}")));
        }
        Ok(Sphere {
            space,
            form: SphereForm::Cylindrical {
                r,
                sign,
                center_top_view,
            },
        })
    }

    pub fn general(space: SpaceKind, c: [f64; 4]) -> Result<Sphere> {
        check_isotropic(space, "general sphere")?;
        Ok(Sphere {
            space,
            form: SphereForm::General {
                c1: c[0],
                c2: c[1],
                c3: c[2],
                c4: c[3],
            },
        })
    }

    pub fn round(center: Vec3, radius: f64) -> Sphere {
        Sphere {
            space: SpaceKind::Euclidean,
            form: SphereForm::Round { center, radius },
        }
    }

    /// The unit parabolic sphere `z = (x² − y²)/2` of 𝕀ₚ³.
    pub fn unit_pseudo_parabolic() -> Sphere {
        Sphere {
            space: SpaceKind::PseudoIsotropic,
            form: SphereForm::Parabolic { p: 1.0 },
        }
    }

    fn q_sign(&self) -> f64 {
        if self.space == SpaceKind::PseudoIsotropic {
            -1.0
        } else {
            1.0
        }
    }

    /// Coefficients `[c₁, c₂, c₃, c₄]`.
    pub fn coefficients(&self) -> Result<[f64; 4]> {
        let sg = self.q_sign();
        match self.form {
            SphereForm::Parabolic { p } => Ok([0.0, 0.0, -p, 0.0]),
            SphereForm::Cylindrical {
                r,
                sign,
                center_top_view: [a, b],
            } => Ok([-a, -sg * b, 0.0, a * a + sg * b * b - sign * r * r]),
            SphereForm::General { c1, c2, c3, c4 } => Ok([c1, c2, c3, c4]),
            SphereForm::Round { .. } => Err(Error::UnsupportedSpace {
                op: "sphere coefficients",
                kind: self.space,
            }),
        }
    }

    pub fn to_general(&self) -> Result<Sphere> {
        Sphere::general(self.space, self.coefficients()?)
    }

    /// Value of the defining polynomial at `p`.
    pub fn evaluate(&self, p: Vec3) -> f64 {
        match self.form {
            SphereForm::Round { center, radius } => (p - center).dot(p - center) - radius * radius,
            _ => {
                let [c1, c2, c3, c4] = self.coefficients().expect("isotropic form");
                p.x * p.x + self.q_sign() * p.y * p.y
                    + 2.0 * (c1 * p.x + c2 * p.y + c3 * p.z)
                    + c4
            }
        }
    }

    pub fn contains(&self, p: Vec3, tol: f64) -> bool {
        self.evaluate(p).abs() <= tol
    }

    /// Normal form plus the motion carrying `self` onto it.
    pub fn reduce(&self) -> Result<Reduction> {
        self.reduce_with_tol(1e-12)
    }

    /// As [`Sphere::reduce`], treating `|c₃| ≤ tol·max(1, |c|)` as zero.
    pub fn reduce_with_tol(&self, tol: f64) -> Result<Reduction> {
        let [c1, c2, c3, c4] = self.coefficients()?;
        let sg = self.q_sign();
        // x² ± y² + 2c₁x + 2c₂y = X² ± Y² − c₁² ∓ c₂² with X = x + c₁, Y = y ± c₂.
        let (dx, dy) = (c1, sg * c2);
        let rest = c4 - c1 * c1 - sg * c2 * c2;
        let scale = c1.abs().max(c2.abs()).max(c4.abs()).max(1.0);
        if c3.abs() > tol * scale {
            let motion = IsoMotion::new(self.space, [dx, dy, rest / (2.0 * c3)], [0.0, 0.0], 0.0)?;
            return Ok(Reduction {
                normal: Sphere::parabolic(self.space, -c3)?,
                motion,
            });
        }
        let v = -rest;
        if v.abs() <= tol * scale {
            return Err(Error::InvalidInput(
                "sphere degenerates to a pair of isotropic planes".into(),
            ));
        }
        if self.space == SpaceKind::SimplyIsotropic && v < 0.0 {
            return Err(Error::InvalidInput(format!(
                "cylinder has negative squared radius {v}"
            )));
        }
        let motion = IsoMotion::new(self.space, [dx, dy, 0.0], [0.0, 0.0], 0.0)?;
        Ok(Reduction {
            normal: Sphere::cylindrical(self.space, v.abs().sqrt(), v.signum(), [0.0, 0.0])?,
            motion,
        })
    }

    /// Image under a motion, in general form.
    pub fn transformed(&self, motion: &IsoMotion) -> Result<Sphere> {
        if motion.kind != self.space {
            return Err(Error::InvalidInput(format!(
                "motion of {} space applied to a sphere in {} space",
                motion.kind, self.space
            )));
        }
        let inv = motion.inverse()?;
        let sg = self.q_sign();
        // F∘T⁻¹ minus its (invariant) quadratic part is affine.
        let g = |p: Vec3| self.evaluate(inv.apply(p)) - (p.x * p.x + sg * p.y * p.y);
        let c4 = g(Vec3::ZERO);
        Sphere::general(
            self.space,
            [
                (g(Vec3::X) - c4) / 2.0,
                (g(Vec3::Y) - c4) / 2.0,
                (g(Vec3::Z) - c4) / 2.0,
                c4,
            ]
        )
    }
}

fn check_isotropic(space: SpaceKind, what: &'static str) -> Result<()> {
    if !space.is_isotropic() {
        return Err(Error::UnsupportedSpace { op: what, kind: space });
    }
    Ok(())
}

/// Osculating sphere at one sample.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OsculatingSphere {
    pub space: SpaceKind,
    pub s: f64,
    pub base: Vec3,
    /// `λ` and `u` under the gauge `‖u‖ = 1`, `λ ≥ 0` (isotropic spaces).
    pub lambda: f64,
    pub u: Vec3,
    pub sphere: Sphere,
    /// `a₁ = −κ₂′/(τκ²)`, `a₂ = κ₁′/(τκ²)` (isotropic spaces).
    pub a1: Option<f64>,
    pub a2: Option<f64>,
    /// `(β₀, β₁, β₂)` with center `α + β₁n₁ + β₂n₂` (Euclidean).
    pub beta: Option<[f64; 3]>,
    pub center: Option<Vec3>,
    pub radius: Option<f64>,
    /// `(F∘α)′, (F∘α)″, (F∘α)‴` at the base point.
    pub contact_residuals: [f64; 3],
}

fn gauge(lambda: f64, u: Vec3) -> (f64, Vec3) {
    let mut k = 1.0 / u.norm();
    if lambda * k < 0.0 {
        k = -k;
    }
    (lambda * k, u * k)
}

fn general_from(kind: SpaceKind, lambda: f64, u: Vec3, a: Vec3) -> Result<Sphere> {
    let k = 1.0 / (2.0 * lambda);
    let c = match kind {
        SpaceKind::SimplyIsotropic => [
            -a.x + u.x * k,
            -a.y + u.y * k,
            u.z * k,
            a.x * a.x + a.y * a.y - u.dot(a) / lambda,
        ],
        _ => [
            -a.x + u.x * k,
            a.y - u.y * k,
            u.z * k,
            a.x * a.x - a.y * a.y - lorentz_inner(u, a) / lambda,
        ],
    };
    Sphere::general(kind, c)
}

fn jets(d: &[Vec3; 5]) -> [Jet; 3] {
    std::array::from_fn(|i| Jet::new(std::array::from_fn(|k| d[k].to_array()[i])))
}

/// `(F∘α)^{(k)}`, `k = 1..3`, for `F = λ⟨x−a, x−a⟩ + ⟨u, x−a⟩`.
fn contact(kind: SpaceKind, lambda: f64, u: Vec3, d: &[Vec3; 5]) -> [f64; 3] {
    let [x, y, z] = jets(d);
    let a = d[0];
    let (dx, dy, dz) = (x + (-a.x), y + (-a.y), z + (-a.z));
    let sg = if kind == SpaceKind::PseudoIsotropic { -1.0 } else { 1.0 };
    let g = flip_if(kind, u);
    let f = (dx * dx + dy * dy * sg) * lambda + dx * g.x + dy * g.y + dz * g.z;
    [f.d[1], f.d[2], f.d[3]]
}

fn flip_if(kind: SpaceKind, u: Vec3) -> Vec3 {
    if kind == SpaceKind::PseudoIsotropic {
        flip_y(u)
    } else {
        u
    }
}

fn degeneracy(s: f64, value: f64) -> Result<()> {
    if !(value.abs() >= DEGENERACY_THRESHOLD) {
        return Err(Error::DegenerateOsculatingSphere { s, value });
    }
    Ok(())
}

/// Closed form for an isotropic or pseudo-isotropic RM frame sample:
/// `u = κ₁′𝓝₂ − κ₂′𝓝₁`, `2λ = τκ²` (𝕀³) and
/// `u = ηκ₁′𝓝₂ − κ₂′𝓝₁`, `2λε = τκ²` (𝕀ₚ³).
fn closed_form_isotropic(kind: SpaceKind, f: &FrameSample) -> Result<OsculatingSphere> {
    let tk2 = f.tau_kappa2();
    degeneracy(f.s, tk2)?;
    let (k1p, k2p) = (f.kappa1_prime, f.kappa2_prime);
    let (lambda, u) = match kind {
        SpaceKind::SimplyIsotropic => {
            let big_n1 = f.n2.cross(f.t);
            let big_n2 = f.t.cross(f.n1);
            (0.5 * tk2, big_n2 * k1p - big_n1 * k2p)
        }
        _ => {
            let eps = f.eps.expect("pseudo sample carries eps");
            let big_n1 = lorentz_cross(f.n2, f.t);
            let big_n2 = lorentz_cross(f.t, f.n1);
            (0.5 * eps * tk2, big_n2 * (-eps * k1p) - big_n1 * k2p)
        }
    };
    let (lambda, u) = gauge(lambda, u);
    Ok(OsculatingSphere {
        space: kind,
        s: f.s,
        base: f.point,
        lambda,
        u,
        sphere: general_from(kind, lambda, u, f.point)?,
        a1: Some(-k2p / tk2),
        a2: Some(k1p / tk2),
        beta: None,
        center: None,
        radius: None,
        contact_residuals: contact(kind, lambda, u, &f.jet),
    })
}

/// Euclidean closed form `β₁ = κ₂′/(τκ²)`, `β₂ = −κ₁′/(τκ²)`.
fn closed_form_euclidean(f: &FrameSample) -> Result<OsculatingSphere> {
    let tk2 = f.tau_kappa2();
    degeneracy(f.s, tk2)?;
    let (b1, b2) = (f.kappa2_prime / tk2, -f.kappa1_prime / tk2);
    let center = f.point + f.n1 * b1 + f.n2 * b2;
    let radius = b1.hypot(b2);
    Ok(OsculatingSphere {
        space: SpaceKind::Euclidean,
        s: f.s,
        base: f.point,
        lambda: 0.0,
        u: Vec3::ZERO,
        sphere: Sphere::round(center, radius),
        a1: None,
        a2: None,
        beta: Some([0.0, b1, b2]),
        center: Some(center),
        radius: Some(radius),
        contact_residuals: euclidean_contact(center, &f.jet),
    })
}

fn euclidean_contact(center: Vec3, d: &[Vec3; 5]) -> [f64; 3] {
    let [x, y, z] = jets(d);
    let (dx, dy, dz) = (x + (-center.x), y + (-center.y), z + (-center.z));
    let f = dx * dx + dy * dy + dz * dz;
    [f.d[1], f.d[2], f.d[3]]
}

/// Residuals of `β₀ = 0`, `κ₁β₁ + κ₂β₂ = 1`, `κ₁′β₁ + κ₂′β₂ = 0`.
pub fn euclidean_beta_residual(f: &FrameSample, beta: [f64; 3]) -> f64 {
    let [b0, b1, b2] = beta;
    b0.abs()
        .max((f.kappa1 * b1 + f.kappa2 * b2 - 1.0).abs())
        .max((f.kappa1_prime * b1 + f.kappa2_prime * b2).abs())
}

/// Osculating sphere at an RM frame sample, by closed form.
pub fn osculating_sphere(frames: &FrameSet, index: usize) -> Result<OsculatingSphere> {
    let f = frames
        .samples
        .get(index)
        .ok_or_else(|| Error::InvalidInput(format!("sample index {index} out of range")))?;
    match frames.kind {
        SpaceKind::Euclidean => closed_form_euclidean(f),
        kind => closed_form_isotropic(kind, f),
    }
}

pub fn osculating_sphere_isotropic(frames: &FrameSet, index: usize) -> Result<OsculatingSphere> {
    expect_kind(frames, SpaceKind::SimplyIsotropic, "osculating_sphere_isotropic")?;
    osculating_sphere(frames, index)
}

pub fn osculating_sphere_pseudo(frames: &FrameSet, index: usize) -> Result<OsculatingSphere> {
    expect_kind(frames, SpaceKind::PseudoIsotropic, "osculating_sphere_pseudo")?;
    osculating_sphere(frames, index)
}

pub fn osculating_sphere_euclidean(frames: &FrameSet, index: usize) -> Result<OsculatingSphere> {
    expect_kind(frames, SpaceKind::Euclidean, "osculating_sphere_euclidean")?;
    osculating_sphere(frames, index)
}

fn expect_kind(frames: &FrameSet, kind: SpaceKind, op: &'static str) -> Result<()> {
    if frames.kind != kind {
        return Err(Error::UnsupportedSpace { op, kind: frames.kind });
    }
    Ok(())
}

fn speed_sq(kind: SpaceKind, v: Vec3) -> f64 {
    inner(kind, v, v).abs()
}

/// Osculating sphere from raw derivatives in any regular parametrization,
/// by solving the contact conditions directly.
///
/// Isotropic spaces: the null vector of
/// `[0, ⟨·,α′⟩; 2B(α′,α′), ⟨·,α″⟩; 6B(α′,α″), ⟨·,α‴⟩]` in `(λ, u)`.
/// Euclidean: the center from `(P−α)·α′ = 0`, `(P−α)·α″ = |α′|²`,
/// `(P−α)·α‴ = 3α′·α″`.
pub fn osculating_sphere_generic(kind: SpaceKind, s: f64, d: &[Vec3; 5]) -> Result<OsculatingSphere> {
    let [a, d1, d2, d3, _] = *d;
    let tk2 = det3(d1, d2, d3) / speed_sq(kind, d1).powi(3);
    degeneracy(s, tk2)?;
    if kind == SpaceKind::Euclidean {
        let rows = [d1, d2, d3];
        let rhs = Vec3::new(0.0, d1.dot(d1), 3.0 * d1.dot(d2));
        let off = solve3(rows, rhs).ok_or(Error::DegenerateOsculatingSphere { s, value: tk2 })?;
        let center = a + off;
        return Ok(OsculatingSphere {
            space: kind,
            s,
            base: a,
            lambda: 0.0,
            u: Vec3::ZERO,
            sphere: Sphere::round(center, off.norm()),
            a1: None,
            a2: None,
            beta: None,
            center: Some(center),
            radius: Some(off.norm()),
            contact_residuals: euclidean_contact(center, d),
        });
    }
    let b = |p: Vec3, q: Vec3| inner(kind, p, q);
    let g = |v: Vec3| flip_if(kind, v);
    let rows = [
        [0.0, g(d1).x, g(d1).y, g(d1).z],
        [2.0 * b(d1, d1), g(d2).x, g(d2).y, g(d2).z],
        [6.0 * b(d1, d2), g(d3).x, g(d3).y, g(d3).z],
    ];
    let minor = |skip: usize| {
        let cols: Vec<usize> = (0..4).filter(|&j| j != skip).collect();
        let r = |i: usize| Vec3::new(rows[i][cols[0]], rows[i][cols[1]], rows[i][cols[2]]);
        det3(r(0), r(1), r(2))
    };
    let null = [minor(0), -minor(1), minor(2), -minor(3)];
    let (lambda, u) = gauge(null[0], Vec3::new(null[1], null[2], null[3]));
    Ok(OsculatingSphere {
        space: kind,
        s,
        base: a,
        lambda,
        u,
        sphere: general_from(kind, lambda, u, a)?,
        a1: None,
        a2: None,
        beta: None,
        center: None,
        radius: None,
        contact_residuals: contact(kind, lambda, u, d),
    })
}

/// Distance between two `(λ, u)` solutions as unit 4-vectors, up to sign.
pub fn collinearity_error(a: &OsculatingSphere, b: &OsculatingSphere) -> f64 {
    let unit = |o: &OsculatingSphere| {
        let v = [o.lambda, o.u.x, o.u.y, o.u.z];
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        v.map(|x| x / n)
    };
    let (p, q) = (unit(a), unit(b));
    let plus = (0..4).map(|i| (p[i] - q[i]).abs()).fold(0.0, f64::max);
    let minus = (0..4).map(|i| (p[i] + q[i]).abs()).fold(0.0, f64::max);
    plus.min(minus)
}

/// Point of the pseudo-isotropic spherical image with both `z*` values.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SphericalImagePoint {
    pub s: f64,
    /// `(x*, y*, (x*² − y*²)/2)`.
    pub point: Vec3,
    /// `(ε/2κ²)(κ²z′² − z″²)`.
    pub z_alt: f64,
}

/// Spherical image `α*` of a pseudo-isotropic curve on `z = (x² − y²)/2`.
pub fn spherical_image(frames: &FrameSet) -> Result<Vec<SphericalImagePoint>> {
    expect_kind(frames, SpaceKind::PseudoIsotropic, "spherical_image")?;
    Ok(frames
        .samples
        .iter()
        .map(|f| {
            let [_, d1, d2, _, _] = f.jet;
            let eps = f.eps.expect("pseudo sample carries eps");
            let k = f.kappa;
            let xs = eps / k * (d1.y * d2.z - d2.y * d1.z);
            let ys = eps / k * (d1.x * d2.z - d2.x * d1.z);
            SphericalImagePoint {
                s: f.s,
                point: Vec3::new(xs, ys, 0.5 * (xs * xs - ys * ys)),
                z_alt: eps / (2.0 * k * k) * (k * k * d1.z * d1.z - d2.z * d2.z),
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::Curve;
    use crate::frames::{bivector_frame, frenet, full_frames, rm_frame};
    use crate::spaces::TopViewComponent;

    const ISO: SpaceKind = SpaceKind::SimplyIsotropic;
    const PSEUDO: SpaceKind = SpaceKind::PseudoIsotropic;

    #[test]
    fn containment_examples() {
        let par = Sphere::parabolic(ISO, 1.0).unwrap();
        assert!(par.contains(Vec3::new(1.0, 1.0, 1.0), 1e-12));
        assert!(!par.contains(Vec3::new(1.0, 1.0, 0.0), 1e-12));
        let cyl = Sphere::cylindrical(ISO, 1.0, 1.0, [0.0, 0.0]).unwrap();
        for s in [0.0f64, 0.4, 2.0, 5.5] {
            assert!(cyl.contains(Vec3::new(s.cos(), s.sin(), s), 1e-12));
        }
        let pc = Sphere::cylindrical(PSEUDO, 1.0, 1.0, [0.0, 0.0]).unwrap();
        for a in [-1.0, 0.3, 1.7] {
            assert!(pc.contains(Vec3::new(f64::cosh(a), f64::sinh(a), 3.0), 1e-12));
        }
    }

    #[test]
    fn json_shape() {
        let s = Sphere::parabolic(PSEUDO, 2.0).unwrap();
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(j, r#"{"space":"pseudo_isotropic","form":"parabolic","p":2.0}"#);
        let g: Sphere =
            serde_json::from_str(r#"{"space":"isotropic","form":"general","c1":1,"c2":0,"c3":0,"c4":-3}"#)
                .unwrap();
        assert_eq!(g.coefficients().unwrap(), [1.0, 0.0, 0.0, -3.0]);
        let c: Sphere = serde_json::from_str(r#"{"space":"isotropic","form":"cylindrical","r":2}"#).unwrap();
        assert!(c.contains(Vec3::new(2.0, 0.0, 7.0), 1e-12));
    }

    #[test]
    fn reduce_general_forms() {
        let g = Sphere::general(ISO, [1.0, -2.0, 0.0, 1.0]).unwrap();
        let red = g.reduce().unwrap();
        assert_eq!(
            red.normal.form,
            SphereForm::Cylindrical {
                r: 2.0,
                sign: 1.0,
                center_top_view: [0.0, 0.0]
            }
        );
        for a in [0.0, 1.0, 2.5] {
            let p = Vec3::new(-1.0 + 2.0 * f64::cos(a), 2.0 + 2.0 * f64::sin(a), a);
            assert!(g.contains(p, 1e-12));
            assert!(red.normal.contains(red.motion.apply(p), 1e-12));
        }
        let g = Sphere::general(PSEUDO, [0.5, 0.25, -0.5, 2.0]).unwrap();
        let red = g.reduce().unwrap();
        assert_eq!(red.normal.form, SphereForm::Parabolic { p: 0.5 });
        let (x, y) = (0.3, -1.1);
        let p = Vec3::new(x, y, x * x - y * y + x + 0.5 * y + 2.0);
        assert!(g.contains(p, 1e-12));
        assert!(red.normal.contains(red.motion.apply(p), 1e-12));
    }

    #[test]
    fn invariants_survive_motions() {
        for (kind, phi) in [(ISO, 0.7), (PSEUDO, -0.4)] {
            let m = IsoMotion::new(kind, [0.3, -1.2, 2.0], [0.5, -0.25], phi).unwrap();
            let par = Sphere::parabolic(kind, 1.5).unwrap();
            let moved = par.transformed(&m).unwrap();
            assert_eq!(moved.reduce().unwrap().normal.form, SphereForm::Parabolic { p: 1.5 });
            let cyl = Sphere::cylindrical(kind, 0.8, 1.0, [0.2, 0.1]).unwrap();
            let moved = cyl.transformed(&m).unwrap();
            match moved.reduce().unwrap().normal.form {
                SphereForm::Cylindrical { r, sign, .. } => {
                    assert!((r - 0.8).abs() < 1e-9 && sign == 1.0, "{kind} {r} {sign} {moved:?}")
                }
                f => panic!("{f:?}"),
            }
            let p = if kind == ISO {
                Vec3::new(0.2 + 0.8 * f64::cos(0.3), 0.1 + 0.8 * f64::sin(0.3), 1.0)
            } else {
                Vec3::new(0.2 + 0.8 * f64::cosh(0.3), 0.1 + 0.8 * f64::sinh(0.3), 1.0)
            };
            assert!(cyl.contains(p, 1e-12));
            assert!(moved.contains(m.apply(p), 1e-12));
        }
        let bad = IsoMotion::identity(PSEUDO)
            .with_component(TopViewComponent::TimeReversing)
            .unwrap();
        assert!(Sphere::parabolic(PSEUDO, 1.0).unwrap().transformed(&bad).is_err());
    }

    #[test]
    fn cylinder_is_equidistant_set() {
        let center = Vec3::new(0.4, -0.3, 0.0);
        let cyl = Sphere::cylindrical(ISO, 1.5, 1.0, [center.x, center.y]).unwrap();
        for a in [0.0, 1.0, 3.0] {
            let p = center + Vec3::new(1.5 * f64::cos(a), 1.5 * f64::sin(a), 2.0 * a);
            assert!(cyl.contains(p, 1e-12));
            assert!((inner(ISO, p - center, p - center) - 2.25).abs() < 1e-12);
        }
    }

    fn helix_frames() -> FrameSet {
        let c = Curve::from_jet_fn(ISO, |t| [t.cos(), t.sin(), t], 0.0, 4.0, 401).unwrap();
        full_frames(&c, 0.0).unwrap()
    }

    #[test]
    fn isotropic_helix_osculating_sphere() {
        let fr = helix_frames();
        for i in [0, 100, 250, 400] {
            let f = &fr.samples[i];
            let o = osculating_sphere_isotropic(&fr, i).unwrap();
            // u ∝ −κ₂′𝓝₁ = −𝓝₁ and τκ² = 1, λ = ρ/2
            let big_n1 = f.bivectors.unwrap().n1;
            assert!((o.u + big_n1.normalized()).max_abs() < 1e-10, "{:?}", o.u);
            assert!((o.lambda - 0.5 / big_n1.norm()).abs() < 1e-10);
            assert!(o.contact_residuals.iter().all(|r| r.abs() < 1e-10));
            let g = osculating_sphere_generic(ISO, f.s, &f.jet).unwrap();
            assert!(collinearity_error(&o, &g) < 1e-10);
            // the helix lies on x² + y² = 1
            let red = o.sphere.reduce().unwrap();
            assert_eq!(
                red.normal.form,
                SphereForm::Cylindrical {
                    r: 1.0,
                    sign: 1.0,
                    center_top_view: [0.0, 0.0]
                }
            );
            assert!((o.a1.unwrap() + 1.0).abs() < 1e-10 && o.a2.unwrap().abs() < 1e-10);
        }
    }

    #[test]
    fn planar_point_is_degenerate() {
        let c = Curve::from_jet_fn(ISO, |t| [t.cos(), t.sin(), t * 0.0], 0.0, 4.0, 101).unwrap();
        let fr = rm_frame(&frenet(&c).unwrap(), 0.0);
        assert!(matches!(
            osculating_sphere(&fr, 10),
            Err(Error::DegenerateOsculatingSphere { .. })
        ));
        let c = Curve::from_jet_fn(SpaceKind::Euclidean, |t| [t.cos(), t.sin(), t * 0.0], 0.0, 4.0, 101)
            .unwrap();
        let fr = rm_frame(&frenet(&c).unwrap(), 0.0);
        assert!(osculating_sphere_euclidean(&fr, 10).is_err());
    }

    #[test]
    fn euclidean_helix_and_sphere() {
        let (a, b) = (1.0f64, 0.5f64);
        let c2 = a * a + b * b;
        let cr = c2.sqrt();
        let c = Curve::from_jet_fn(
            SpaceKind::Euclidean,
            move |t| [(t * (1.0 / cr)).cos() * a, (t * (1.0 / cr)).sin() * a, t * (b / cr)],
            0.0,
            5.0,
            501,
        )
        .unwrap();
        let fr = rm_frame(&frenet(&c).unwrap(), 0.0);
        let mut offsets = Vec::new();
        for i in (0..501).step_by(50) {
            let f = &fr.samples[i];
            let o = osculating_sphere_euclidean(&fr, i).unwrap();
            assert!(euclidean_beta_residual(f, o.beta.unwrap()) < 1e-10);
            let g = osculating_sphere_generic(SpaceKind::Euclidean, f.s, &f.jet).unwrap();
            assert!((o.center.unwrap() - g.center.unwrap()).max_abs() < 1e-9);
            assert!(o.contact_residuals.iter().all(|r| r.abs() < 1e-9));
            offsets.push(o.center.unwrap() - f.point);
            let r = o.radius.unwrap();
            // Helix osculating sphere radius is the radius of curvature c²/a.
            assert!((r - c2 / a).abs() < 1e-9, "{r}");
        }
        // offsets rotate with the helix but keep constant length and height
        for w in &offsets {
            assert!((w.z).abs() < 1e-9);
        }
    }

    #[test]
    fn spherical_image_on_unit_parabolic_sphere() {
        let c = Curve::from_jet_fn(
            PSEUDO,
            |t| [t.sinh() + t * 0.1, t.cosh() * 2.0, t.powi(3) * 0.2 + t.sin()],
            -0.5,
            0.5,
            301,
        )
        .unwrap();
        let fr = bivector_frame(&frenet(&c).unwrap());
        let img = spherical_image(&fr).unwrap();
        let sigma = Sphere::unit_pseudo_parabolic();
        for (p, f) in img.iter().zip(&fr.samples) {
            assert!(sigma.contains(p.point, 1e-12));
            assert!((p.point.z - p.z_alt).abs() < 1e-10, "{} vs {}", p.point.z, p.z_alt);
            let bb = f.bivectors.unwrap().frenet_b;
            let expected = f.b - Vec3::new(p.point.x, p.point.y, 0.0);
            assert!((bb - expected).max_abs() < 1e-10);
        }
        assert!(spherical_image(&helix_frames()).is_err());
    }
}
