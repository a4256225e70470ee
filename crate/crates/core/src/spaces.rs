//! Ambient spaces: bilinear forms, distance and codistance, vector products,
//! causal character and the rigid-motion groups of the two isotropic spaces.
//!
//! Both isotropic charts use `(0, 0, 1)` as the degenerate direction. The
//! simply isotropic form is `u₁v₁ + u₂v₂` and the pseudo-isotropic one is
//! `u₁v₁ − u₂v₂`; the z-coordinate is invisible to either.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gcnum::{hyperbolic_rotation, Mat2};
pub use crate::vector::{det3, Vec3};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpaceKind {
    Euclidean,
    #[serde(alias = "isotropic", alias = "simply-isotropic")]
    SimplyIsotropic,
    #[serde(alias = "pseudo-isotropic", alias = "pseudo")]
    PseudoIsotropic,
}

impl SpaceKind {
    pub fn is_isotropic(self) -> bool {
        !matches!(self, SpaceKind::Euclidean)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SpaceKind::Euclidean => "euclidean",
            SpaceKind::SimplyIsotropic => "simply_isotropic",
            SpaceKind::PseudoIsotropic => "pseudo_isotropic",
        }
    }
}

impl fmt::Display for SpaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SpaceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "euclidean" | "e3" => Ok(SpaceKind::Euclidean),
            "simply_isotropic" | "isotropic" | "i3" => Ok(SpaceKind::SimplyIsotropic),
            "pseudo_isotropic" | "pseudo" | "ip3" => Ok(SpaceKind::PseudoIsotropic),
            other => Err(Error::InvalidInput(format!("unknown space {other:?}"))),
        }
    }
}

/// The bilinear form selected by `kind`.
pub fn inner(kind: SpaceKind, u: Vec3, v: Vec3) -> f64 {
    match kind {
        SpaceKind::Euclidean => u.dot(v),
        SpaceKind::SimplyIsotropic => u.x * v.x + u.y * v.y,
        SpaceKind::PseudoIsotropic => u.x * v.x - u.y * v.y,
    }
}

/// Lorentz-Minkowski product `u₁v₁ − u₂v₂ + u₃v₃`, used to describe planes
/// in pseudo-isotropic space.
pub fn lorentz_inner(u: Vec3, v: Vec3) -> f64 {
    u.x * v.x - u.y * v.y + u.z * v.z
}

/// Flips the sign of the y-component; `lorentz_inner(u, v) = u · flip_y(v)`.
pub fn flip_y(v: Vec3) -> Vec3 {
    Vec3::new(v.x, -v.y, v.z)
}

/// `sqrt(|⟨v, v⟩|)` in the given space.
pub fn norm(kind: SpaceKind, v: Vec3) -> f64 {
    inner(kind, v, v).abs().sqrt()
}

pub fn distance(kind: SpaceKind, a: Vec3, b: Vec3) -> f64 {
    norm(kind, b - a)
}

/// `|b₃ − a₃|`, the complementary invariant for points sharing a top view.
pub fn codistance(kind: SpaceKind, a: Vec3, b: Vec3) -> Result<f64> {
    if !kind.is_isotropic() {
        return Err(Error::UnsupportedSpace {
            op: "codistance",
            kind,
        });
    }
    Ok((b.z - a.z).abs())
}

/// Euclidean `×` for Euclidean and simply isotropic space, Lorentzian `×₁`
/// (`det[(i, v₁, w₁), (−j, v₂, w₂), (k, v₃, w₃)]`) for pseudo-isotropic space.
pub fn cross(kind: SpaceKind, u: Vec3, v: Vec3) -> Vec3 {
    match kind {
        SpaceKind::Euclidean | SpaceKind::SimplyIsotropic => u.cross(v),
        SpaceKind::PseudoIsotropic => lorentz_cross(u, v),
    }
}

pub fn lorentz_cross(v: Vec3, w: Vec3) -> Vec3 {
    Vec3::new(
        v.y * w.z - v.z * w.y,
        v.x * w.z - v.z * w.x,
        v.x * w.y - v.y * w.x,
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CausalClass {
    Spacelike,
    Timelike,
    Lightlike,
}

impl CausalClass {
    /// `+1` for spacelike, `−1` for timelike.
    pub fn sign(self) -> Option<f64> {
        match self {
            CausalClass::Spacelike => Some(1.0),
            CausalClass::Timelike => Some(-1.0),
            CausalClass::Lightlike => None,
        }
    }
}

/// Sign of `⟨v, v⟩_{z,p}`; the zero vector counts as spacelike.
pub fn causal_character(v: Vec3) -> CausalClass {
    causal_character_tol(v, 0.0)
}

/// As [`causal_character`], treating `|⟨v,v⟩| ≤ tol·|ṽ|²` as lightlike.
pub fn causal_character_tol(v: Vec3, tol: f64) -> CausalClass {
    let q = inner(SpaceKind::PseudoIsotropic, v, v);
    let scale = v.x * v.x + v.y * v.y;
    if v.x == 0.0 && v.y == 0.0 && v.z == 0.0 {
        CausalClass::Spacelike
    } else if q.abs() <= tol * scale || q == 0.0 {
        CausalClass::Lightlike
    } else if q > 0.0 {
        CausalClass::Spacelike
    } else {
        CausalClass::Timelike
    }
}

/// Which component of the top-view isometry group a pseudo-isotropic motion
/// belongs to. Only `Direct` is part of the motion group proper.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TopViewComponent {
    /// Orientation and time-orientation preserving.
    #[default]
    Direct,
    /// Orientation preserving, time reversing: `−R(φ)`.
    TimeReversing,
    /// `x̄ = x cosh φ − y sinh φ, ȳ = x sinh φ − y cosh φ`.
    IndirectUpper,
    /// `x̄ = −x cosh φ − y sinh φ, ȳ = x sinh φ + y cosh φ`.
    IndirectLower,
}

/// A rigid motion of simply isotropic (`B₆`) or pseudo-isotropic (`B₆ᵖ`) space
/// stored by its six parameters:
///
/// ```text
/// x̄ = a + R(φ)·(x, y)
/// z̄ = c + c₁x + c₂y + z
/// ```
///
/// where `R(φ)` is a Euclidean rotation in `B₆` and a hyperbolic one in `B₆ᵖ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct IsoMotion {
    pub kind: SpaceKind,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub c1: f64,
    pub c2: f64,
    pub phi: f64,
    #[serde(default, skip_serializing_if = "is_direct")]
    pub component: TopViewComponent,
}

fn is_direct(c: &TopViewComponent) -> bool {
    *c == TopViewComponent::Direct
}

impl IsoMotion {
    pub fn identity(kind: SpaceKind) -> Self {
        IsoMotion {
            kind,
            a: 0.0,
            b: 0.0,
            c: 0.0,
            c1: 0.0,
            c2: 0.0,
            phi: 0.0,
            component: TopViewComponent::Direct,
        }
    }

    pub fn new(kind: SpaceKind, translation: [f64; 3], shear: [f64; 2], phi: f64) -> Result<Self> {
        if !kind.is_isotropic() {
            return Err(Error::UnsupportedSpace {
                op: "isotropic motion",
                kind,
            });
        }
        Ok(IsoMotion {
            kind,
            a: translation[0],
            b: translation[1],
            c: translation[2],
            c1: shear[0],
            c2: shear[1],
            phi,
            component: TopViewComponent::Direct,
        })
    }

    /// Pseudo-isotropic isometry outside the direct component. Experimental:
    /// such motions can be applied but not composed.
    pub fn with_component(mut self, component: TopViewComponent) -> Result<Self> {
        if component != TopViewComponent::Direct && self.kind != SpaceKind::PseudoIsotropic {
            return Err(Error::InvalidInput(
                "top-view components other than Direct exist only in pseudo-isotropic space".into(),
            ));
        }
        self.component = component;
        Ok(self)
    }

    /// Linear part acting on the top view.
    pub fn top_view_matrix(&self) -> Mat2 {
        match self.kind {
            SpaceKind::PseudoIsotropic => {
                let (ch, sh) = (self.phi.cosh(), self.phi.sinh());
                match self.component {
                    TopViewComponent::Direct => hyperbolic_rotation(self.phi),
                    TopViewComponent::TimeReversing => Mat2::new([[-ch, -sh], [-sh, -ch]]),
                    TopViewComponent::IndirectUpper => Mat2::new([[ch, -sh], [sh, -ch]]),
                    TopViewComponent::IndirectLower => Mat2::new([[-ch, -sh], [sh, ch]]),
                }
            }
            _ => {
                let (s, c) = self.phi.sin_cos();
                Mat2::new([[c, -s], [s, c]])
            }
        }
    }

    pub fn apply(&self, p: Vec3) -> Vec3 {
        let [x, y] = self.top_view_matrix().apply([p.x, p.y]);
        Vec3::new(
            self.a + x,
            self.b + y,
            self.c + self.c1 * p.x + self.c2 * p.y + p.z,
        )
    }

    /// Action on free vectors (no translation).
    pub fn apply_vector(&self, v: Vec3) -> Vec3 {
        let [x, y] = self.top_view_matrix().apply([v.x, v.y]);
        Vec3::new(x, y, self.c1 * v.x + self.c2 * v.y + v.z)
    }

    /// Homogeneous 4×4 matrix acting on `(x, y, z, 1)`.
    pub fn to_matrix(&self) -> [[f64; 4]; 4] {
        let r = self.top_view_matrix().0;
        [
            [r[0][0], r[0][1], 0.0, self.a],
            [r[1][0], r[1][1], 0.0, self.b],
            [self.c1, self.c2, 1.0, self.c],
            [0.0, 0.0, 0.0, 1.0],
        ]
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn compose(&self, first: &IsoMotion) -> Result<IsoMotion> {
        if self.kind != first.kind {
            return Err(Error::InvalidInput(format!(
                "cannot compose a {} motion with a {} motion",
                self.kind, first.kind
            )));
        }
        if self.component != TopViewComponent::Direct || first.component != TopViewComponent::Direct {
            return Err(Error::InvalidInput(
                "composition is only modelled inside the direct motion group".into(),
            ));
        }
        let r2 = self.top_view_matrix();
        let r1 = first.top_view_matrix();
        let [ta, tb] = r2.apply([first.a, first.b]);
        // z̄ = c₂ + s₂·(t₁ + R₁p̃) + c₁ + s₁·p̃ + z, with s the shear row.
        let c = self.c + self.c1 * first.a + self.c2 * first.b + first.c;
        let [s1, s2] = r1.transpose().apply([self.c1, self.c2]);
        Ok(IsoMotion {
            kind: self.kind,
            a: self.a + ta,
            b: self.b + tb,
            c,
            c1: first.c1 + s1,
            c2: first.c2 + s2,
            phi: self.phi + first.phi,
            component: TopViewComponent::Direct,
        })
    }

    pub fn inverse(&self) -> Result<IsoMotion> {
        if self.component != TopViewComponent::Direct {
            return Err(Error::InvalidInput(
                "inverse is only modelled inside the direct motion group".into(),
            ));
        }
        let mut inv = IsoMotion {
            phi: -self.phi,
            ..*self
        };
        // p̃ = R⁻¹(x̃ − t),  z = z̄ − c − s·p̃
        let r = inv.top_view_matrix();
        let [a, b] = r.apply([-self.a, -self.b]);
        let [s1, s2] = r.transpose().apply([-self.c1, -self.c2]);
        inv.a = a;
        inv.b = b;
        inv.c1 = s1;
        inv.c2 = s2;
        inv.c = -self.c - (self.c1 * a + self.c2 * b);
        Ok(inv)
    }
}

/// Pseudo-isotropic motion given in Strubecker's chart, where the absolute
/// lines are the coordinate axes and the metric is `ds² = dx dy`:
///
/// ```text
/// x̄ = a + p x,  ȳ = b + y/p,  z̄ = c + c₁x + c₂y + z
/// ```
///
/// The result is the same motion expressed in the `(1, ℓ)` chart used
/// everywhere else (light-cone coordinates `X = x + y`, `Y = x − y`). For
/// `p > 0` it lies in `B₆ᵖ` with `φ = ln p`; `p < 0` lands in the
/// time-reversing component.
pub fn strubecker_motion(p: f64, translation: [f64; 3], shear: [f64; 2]) -> Result<IsoMotion> {
    if p == 0.0 || !p.is_finite() {
        return Err(Error::SingularParameter(format!(
            "Strubecker scaling p must be finite and non-zero, got {p}"
        )));
    }
    let [a, b, c] = translation;
    let [k1, k2] = shear;
    let mut m = IsoMotion::new(
        SpaceKind::PseudoIsotropic,
        [0.5 * (a + b), 0.5 * (a - b), c],
        [k1 + k2, k1 - k2],
        p.abs().ln(),
    )?;
    if p < 0.0 {
        m.component = TopViewComponent::TimeReversing;
    }
    Ok(m)
}

/// Maps `(x, y, z)` in the `(1, ℓ)` chart to Strubecker's chart `(x+y, x−y, z)`.
pub fn to_strubecker_chart(v: Vec3) -> Vec3 {
    Vec3::new(v.x + v.y, v.x - v.y, v.z)
}

pub fn from_strubecker_chart(v: Vec3) -> Vec3 {
    Vec3::new(0.5 * (v.x + v.y), 0.5 * (v.x - v.y), v.z)
}

/// Applies the Strubecker-chart motion directly in that chart.
pub fn apply_strubecker(p: f64, translation: [f64; 3], shear: [f64; 2], v: Vec3) -> Vec3 {
    Vec3::new(
        translation[0] + p * v.x,
        translation[1] + v.y / p,
        translation[2] + shear[0] * v.x + shear[1] * v.y + v.z,
    )
}

/// Polarised form of `ds² = dx dy` in Strubecker's chart.
pub fn strubecker_inner(u: Vec3, v: Vec3) -> f64 {
    0.5 * (u.x * v.y + u.y * v.x)
}
