//! Curves with known geometry, used by the self-test, the benches and the
//! CLI examples.
//!
//! Every constructor returns a curve with exact (jet) derivatives.

use rand::Rng;

use crate::curve::Curve;
use crate::error::Result;
use crate::jet::Jet;
use crate::spaces::SpaceKind;

/// Amplitude and frequency of the perturbation used for negative controls.
pub const PERTURBATION: (f64, f64) = (0.05, 7.0);

/// Expected classification of a constructed curve.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Expected {
    Cylindrical { r: f64 },
    Parabolic { p: f64 },
    Round { radius: f64 },
    Plane,
    Generic,
}

pub struct TestCurve {
    pub name: String,
    pub curve: Curve,
    pub expected: Expected,
}

/// `(cos s, sin s, s)` in simply isotropic space.
pub fn helix(samples: usize) -> Result<Curve> {
    Curve::from_jet_fn(
        SpaceKind::SimplyIsotropic,
        |s| [s.cos(), s.sin(), s],
        0.0,
        std::f64::consts::TAU,
        samples,
    )
}

/// `(sinh s, cosh s, s)` in pseudo-isotropic space.
pub fn hyperbolic_helix(samples: usize) -> Result<Curve> {
    Curve::from_jet_fn(
        SpaceKind::PseudoIsotropic,
        |s| [s.sinh(), s.cosh(), s],
        -1.0,
        1.0,
        samples,
    )
}

/// `(cos s, sin s, 0)`.
pub fn planar_circle(kind: SpaceKind, samples: usize) -> Result<Curve> {
    Curve::from_jet_fn(
        kind,
        |s| [s.cos(), s.sin(), s * 0.0],
        0.0,
        std::f64::consts::TAU,
        samples,
    )
}

fn lift(s: Jet) -> Jet {
    s + s * s * 0.2
}

/// Unit-speed curve on `x² + y² = r²` (𝕀³) or on `x² − y² = ±r²` (𝕀ₚ³)
/// with a non-planar height `z = s + 0.2 s²`.
pub fn cylinder_curve(kind: SpaceKind, r: f64, sign: f64, samples: usize) -> Result<Curve> {
    match kind {
        SpaceKind::PseudoIsotropic if sign < 0.0 => Curve::from_jet_fn(
            kind,
            move |s| {
                let u = s.scale(1.0 / r);
                [u.sinh().scale(r), u.cosh().scale(r), lift(s)]
            },
            -1.0,
            1.0,
            samples,
        ),
        SpaceKind::PseudoIsotropic => Curve::from_jet_fn(
            kind,
            move |s| {
                let u = s.scale(1.0 / r);
                [u.cosh().scale(r), u.sinh().scale(r), lift(s)]
            },
            -1.0,
            1.0,
            samples,
        ),
        _ => Curve::from_jet_fn(
            kind,
            move |s| {
                let u = s.scale(1.0 / r);
                [u.cos().scale(r), u.sin().scale(r), lift(s)]
            },
            0.0,
            2.0,
            samples,
        ),
    }
}

fn radial(t: Jet) -> Jet {
    t.sin().scale(0.3) + 1.5
}

/// Curve on the parabolic sphere `z = (x² ± y²)/(2p)` with top view
/// `f(t)(cos t, sin t)` or `f(t)(cosh t, sinh t)`, `f = 1.5 + 0.3 sin t`.
pub fn parabolic_curve(kind: SpaceKind, p: f64, perturb: bool, samples: usize) -> Result<Curve> {
    let bump = move |t: Jet| {
        if perturb {
            t.scale(PERTURBATION.1).sin().scale(PERTURBATION.0)
        } else {
            t * 0.0
        }
    };
    match kind {
        SpaceKind::PseudoIsotropic => Curve::from_jet_fn(
            kind,
            move |t| {
                let f = radial(t);
                [f * t.cosh(), f * t.sinh(), (f * f).scale(0.5 / p) + bump(t)]
            },
            -1.0,
            1.0,
            samples,
        ),
        _ => Curve::from_jet_fn(
            kind,
            move |t| {
                let f = radial(t);
                [f * t.cos(), f * t.sin(), (f * f).scale(0.5 / p) + bump(t)]
            },
            0.0,
            2.0,
            samples,
        ),
    }
}

/// Curve in the non-isotropic plane `z = 0.3x − 0.2y + 0.5`.
pub fn plane_curve(kind: SpaceKind, samples: usize) -> Result<Curve> {
    let plane = |x: Jet, y: Jet| x.scale(0.3) + y.scale(-0.2) + 0.5;
    match kind {
        SpaceKind::PseudoIsotropic => Curve::from_jet_fn(
            kind,
            move |t| {
                let y = (t * t).scale(0.5);
                [t, y, plane(t, y)]
            },
            -0.6,
            0.6,
            samples,
        ),
        _ => Curve::from_jet_fn(
            kind,
            move |t| {
                let f = radial(t);
                let (x, y) = (f * t.cos(), f * t.sin());
                [x, y, plane(x, y)]
            },
            0.0,
            2.0,
            samples,
        ),
    }
}

/// Spiral on the Euclidean sphere of radius `radius` about the origin:
/// latitude `0.5 t`, longitude `t`.
pub fn spherical_spiral(radius: f64, perturb: bool, samples: usize) -> Result<Curve> {
    Curve::from_jet_fn(
        SpaceKind::Euclidean,
        move |t| {
            let lat = t.scale(0.5);
            let bump = if perturb {
                t.scale(PERTURBATION.1).sin().scale(PERTURBATION.0)
            } else {
                t * 0.0
            };
            [
                (lat.cos() * t.cos()).scale(radius),
                (lat.cos() * t.sin()).scale(radius),
                lat.sin().scale(radius) + bump,
            ]
        },
        -1.0,
        1.0,
        samples,
    )
}

/// Ellipse over the unit circle in the plane `z = 0.3x + 0.1`.
pub fn tilted_ellipse(samples: usize) -> Result<Curve> {
    Curve::from_jet_fn(
        SpaceKind::Euclidean,
        |s| [s.cos(), s.sin(), s.cos().scale(0.3) + 0.1],
        0.0,
        std::f64::consts::TAU,
        samples,
    )
}

/// Coefficients of a random curve `x = (1 + p₁(t)) C(t)`, `y = (1 + p₂(t)) S(t)`,
/// `z = q(t) sin(ωt + φ) + a t`, where `(C, S)` is `(cos, sin)` in 𝕀³ and
/// Euclidean space and `(cosh, sinh)` in 𝕀ₚ³.
#[derive(Clone, Debug)]
pub struct RandomCurveSpec {
    pub kind: SpaceKind,
    pub p1: [f64; 3],
    pub p2: [f64; 3],
    pub q: [f64; 3],
    pub omega: f64,
    pub phase: f64,
    pub slope: f64,
}

fn poly(c: [f64; 3], t: Jet) -> Jet {
    t * (t * c[2] + c[1]) + c[0]
}

impl RandomCurveSpec {
    pub fn draw<R: Rng>(kind: SpaceKind, rng: &mut R) -> Self {
        let mut small = |k: f64| [rng.gen_range(-k..k), rng.gen_range(-k..k), rng.gen_range(-k..k)];
        let p1 = small(0.08);
        let p2 = small(0.08);
        let q = small(0.6);
        RandomCurveSpec {
            kind,
            p1,
            p2,
            q,
            omega: rng.gen_range(0.5..2.5),
            phase: rng.gen_range(0.0..std::f64::consts::TAU),
            slope: rng.gen_range(0.5..1.5),
        }
    }

    /// Domain `[-1, 1]`.
    pub fn curve(&self, samples: usize) -> Result<Curve> {
        let s = self.clone();
        Curve::from_jet_fn(
            self.kind,
            move |t| {
                let (c, sn) = match s.kind {
                    SpaceKind::PseudoIsotropic => (t.cosh(), t.sinh()),
                    _ => (t.cos(), t.sin()),
                };
                let x = (poly(s.p1, t) + 1.0) * c;
                let y = (poly(s.p2, t) + 1.0) * sn;
                let z = poly(s.q, t) * (t.scale(s.omega) + s.phase).sin() + t.scale(s.slope);
                [x, y, z]
            },
            -1.0,
            1.0,
            samples,
        )
    }
}

/// Draw until the curve is admissible with `|τκ²|` bounded away from zero,
/// so that every frame and osculating-sphere formula applies.
pub fn random_admissible<R: Rng>(kind: SpaceKind, rng: &mut R, samples: usize) -> Result<Curve> {
    loop {
        let spec = RandomCurveSpec::draw(kind, rng);
        let c = spec.curve(samples)?;
        if !c.admissibility(crate::curve::DEFAULT_ADMISSIBILITY_TOL).admissible {
            continue;
        }
        let Ok(fr) = crate::frames::frenet(&c) else {
            continue;
        };
        let floor = fr
            .samples
            .iter()
            .map(|f| f.tau_kappa2().abs())
            .fold(f64::INFINITY, f64::min);
        if floor > 1e-3 {
            return Ok(c);
        }
    }
}

/// The constructed curves of the spherical-characterization suite.
pub fn characterization_suite(samples: usize) -> Result<Vec<TestCurve>> {
    let mut out = Vec::new();
    for kind in [SpaceKind::SimplyIsotropic, SpaceKind::PseudoIsotropic] {
        let tag = kind.as_str();
        for r in [0.5, 1.0, 2.0] {
            out.push(TestCurve {
                name: format!("{tag} cylinder r={r}"),
                curve: cylinder_curve(kind, r, 1.0, samples)?,
                expected: Expected::Cylindrical { r },
            });
        }
        for p in [0.5, 1.0, 2.0] {
            out.push(TestCurve {
                name: format!("{tag} parabolic p={p}"),
                curve: parabolic_curve(kind, p, false, samples)?,
                expected: Expected::Parabolic { p },
            });
        }
        out.push(TestCurve {
            name: format!("{tag} plane"),
            curve: plane_curve(kind, samples)?,
            expected: Expected::Plane,
        });
        out.push(TestCurve {
            name: format!("{tag} perturbed parabolic"),
            curve: parabolic_curve(kind, 1.0, true, samples)?,
            expected: Expected::Generic,
        });
    }
    out.push(TestCurve {
        name: "isotropic planar circle".into(),
        curve: planar_circle(SpaceKind::SimplyIsotropic, samples)?,
        expected: Expected::Plane,
    });
    out.push(TestCurve {
        name: "pseudo-isotropic hyperbolic helix".into(),
        curve: hyperbolic_helix(samples)?,
        expected: Expected::Cylindrical { r: 1.0 },
    });
    out.push(TestCurve {
        name: "euclidean spherical spiral".into(),
        curve: spherical_spiral(1.0, false, samples)?,
        expected: Expected::Round { radius: 1.0 },
    });
    out.push(TestCurve {
        name: "euclidean plane".into(),
        curve: plane_curve(SpaceKind::Euclidean, samples)?,
        expected: Expected::Plane,
    });
    out.push(TestCurve {
        name: "euclidean planar ellipse".into(),
        curve: tilted_ellipse(samples)?,
        expected: Expected::Plane,
    });
    out.push(TestCurve {
        name: "euclidean perturbed spiral".into(),
        curve: spherical_spiral(1.0, true, samples)?,
        expected: Expected::Generic,
    });
    Ok(out)
}
