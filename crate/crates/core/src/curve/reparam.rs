//! Arclength reparametrization.

use std::sync::Arc;

use rayon::prelude::*;

use super::{Curve, CurveSource, Derivatives};
use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::quadrature::{cumulative_simpson, simpson};
use crate::spaces::{SpaceKind, Vec3};

/// Speeds at or below this are treated as vanishing.
pub const SPEED_FLOOR: f64 = 1e-8;

const MIN_GRID: usize = 1024;

/// Tabulated `s(t)` with its inverse; doubles as the reparametrized source.
pub struct ArclengthMap {
    inner: Curve,
    t: Vec<f64>,
    s: Vec<f64>,
    v: Vec<f64>,
}

impl ArclengthMap {
    fn build(inner: Curve) -> Result<ArclengthMap> {
        let (a, b) = inner.domain();
        let mut intervals = (inner.samples() - 1).max(MIN_GRID);
        intervals += intervals % 2;
        let h = (b - a) / intervals as f64;
        let t: Vec<f64> = (0..=intervals)
            .map(|i| if i == intervals { b } else { a + i as f64 * h })
            .collect();
        let v: Vec<f64> = t.par_iter().map(|&ti| inner.speed(ti)).collect();
        if let Some((i, &speed)) = v
            .iter()
            .enumerate()
            .find(|(_, &s)| !(s > SPEED_FLOOR))
        {
            return Err(Error::NonAdmissibleSpeed { t: t[i], speed });
        }
        let s = cumulative_simpson(&v, h);
        Ok(ArclengthMap { inner, t, s, v })
    }

    pub fn length(&self) -> f64 {
        self.s[self.s.len() - 1]
    }

    /// The underlying curve in its original parameter.
    pub fn original(&self) -> &Curve {
        &self.inner
    }

    fn speed(&self, t: f64) -> f64 {
        self.inner.speed(t)
    }

    fn bracket_t(&self, t: f64) -> usize {
        self.t.partition_point(|&v| v <= t).clamp(1, self.t.len() - 1) - 1
    }

    fn partial(&self, k: usize, t: f64, vt: f64) -> f64 {
        let tk = self.t[k];
        let mid = 0.5 * (tk + t);
        self.s[k] + simpson(self.v[k], self.speed(mid), vt, tk, t)
    }

    /// Arclength from the start of the domain to parameter `t`.
    pub fn arclength_at(&self, t: f64) -> f64 {
        let k = self.bracket_t(t);
        self.partial(k, t, self.speed(t))
    }

    /// Original parameter at arclength `s`.
    pub fn parameter_at(&self, s: f64) -> f64 {
        let n = self.s.len();
        let s = s.clamp(0.0, self.length());
        let k = self.s.partition_point(|&v| v <= s).clamp(1, n - 1) - 1;
        let (s0, s1) = (self.s[k], self.s[k + 1]);
        let (t0, t1) = (self.t[k], self.t[k + 1]);
        let ds = s1 - s0;
        // Cubic Hermite in s with slopes dt/ds = 1/v.
        let u = (s - s0) / ds;
        let (m0, m1) = (ds / self.v[k], ds / self.v[k + 1]);
        let h00 = (1.0 + 2.0 * u) * (1.0 - u) * (1.0 - u);
        let h10 = u * (1.0 - u) * (1.0 - u);
        let h01 = u * u * (3.0 - 2.0 * u);
        let h11 = u * u * (u - 1.0);
        let mut t = (h00 * t0 + h10 * m0 + h01 * t1 + h11 * m1).clamp(t0, t1);
        for _ in 0..12 {
            let vt = self.speed(t);
            let step = (self.partial(k, t, vt) - s) / vt;
            t -= step;
            if step.abs() <= 1e-15 * (1.0 + t.abs()) {
                break;
            }
        }
        t
    }
}

impl CurveSource for ArclengthMap {
    fn point(&self, s: f64) -> Vec3 {
        self.inner.point(self.parameter_at(s))
    }

    fn exact_derivatives(&self, s: f64) -> Option<Derivatives> {
        let t = self.parameter_at(s);
        Some(compose_unit_speed(self.inner.kind(), &self.inner.derivatives(t), t))
    }

    fn original_parameter(&self, s: f64) -> f64 {
        self.inner.original_parameter(self.parameter_at(s))
    }
}

/// Derivatives of `α∘φ` where `φ′ = 1/v(φ)`.
fn compose_unit_speed(kind: SpaceKind, d: &Derivatives, t: f64) -> Derivatives {
    let comp = |v: Vec3, i: usize| v.to_array()[i];
    let a: [Jet; 3] =
        std::array::from_fn(|i| Jet::new([comp(d[1], i), comp(d[2], i), comp(d[3], i), comp(d[4], i), 0.0]));
    let q = match kind {
        SpaceKind::Euclidean => a[0] * a[0] + a[1] * a[1] + a[2] * a[2],
        SpaceKind::SimplyIsotropic => a[0] * a[0] + a[1] * a[1],
        SpaceKind::PseudoIsotropic => a[0] * a[0] - a[1] * a[1],
    };
    let q = if q.value() < 0.0 { -q } else { q };
    let w = q.powf(-0.5).d;
    let p1 = w[0];
    let p2 = w[1] * p1;
    let p3 = w[2] * p1 * p1 + w[1] * p2;
    let p4 = w[3] * p1 * p1 * p1 + 3.0 * w[2] * p1 * p2 + w[1] * p3;
    let phi = Jet::new([t, p1, p2, p3, p4]);
    let c: [Jet; 3] = std::array::from_fn(|i| phi.chain(std::array::from_fn(|k| comp(d[k], i))));
    std::array::from_fn(|k| Vec3::new(c[0].d[k], c[1].d[k], c[2].d[k]))
}

/// Reparametrize by arclength in the seminorm of the curve's space.
///
/// The returned curve has domain `[0, L]` and exact unit-speed derivatives
/// obtained by the chain rule from the original ones.
pub fn arclength_reparametrize(c: &Curve) -> Result<Curve> {
    if c.is_unit_speed() {
        return Ok(c.clone());
    }
    let map = Arc::new(ArclengthMap::build(c.clone())?);
    let length = map.length();
    let mut out = Curve::from_source(c.kind(), map.clone(), 0.0, length, c.samples())?;
    out.arclength = Some(map);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::FdConfig;
    use crate::spaces::inner;

    fn unit_speed_error(c: &Curve) -> f64 {
        c.parameters()
            .iter()
            .map(|&s| {
                let d = c.derivatives(s)[1];
                (inner(c.kind(), d, d).abs() - 1.0).abs()
            })
            .fold(0.0, f64::max)
    }

    #[test]
    fn helix_already_unit_speed() {
        let c = Curve::from_jet_fn(
            SpaceKind::SimplyIsotropic,
            |t| [t.cos(), t.sin(), t],
            0.0,
            3.0,
            200,
        )
        .unwrap();
        let r = arclength_reparametrize(&c).unwrap();
        assert!((r.domain().1 - 3.0).abs() < 1e-12);
        assert!(unit_speed_error(&r) < 1e-12);
        assert!((r.point(1.7) - c.point(1.7)).max_abs() < 1e-10);
    }

    #[test]
    fn doubled_speed_rescales_domain() {
        let c = Curve::from_jet_fn(
            SpaceKind::SimplyIsotropic,
            |t| [(t * 2.0).cos(), (t * 2.0).sin(), t],
            0.0,
            1.5,
            200,
        )
        .unwrap();
        let r = arclength_reparametrize(&c).unwrap();
        assert!((r.domain().1 - 3.0).abs() < 1e-12);
        assert!((r.original_parameter(2.0) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn pseudo_hyperbolic_helix_is_unit_speed() {
        let c = Curve::from_jet_fn(
            SpaceKind::PseudoIsotropic,
            |t| [t.sinh(), t.cosh(), t],
            -1.0,
            1.0,
            100,
        )
        .unwrap();
        let r = arclength_reparametrize(&c).unwrap();
        assert!((r.domain().1 - 2.0).abs() < 1e-12);
        assert!(unit_speed_error(&r) < 1e-12);
    }

    #[test]
    fn general_curve_roundtrip() {
        let c = Curve::from_fn(
            SpaceKind::Euclidean,
            |t| Vec3::new(t, t * t, (2.0 * t).sin()),
            -1.0,
            1.0,
            400,
        )
        .unwrap()
        .with_finite_differences(FdConfig::new(6, 1e-3).unwrap());
        let r = arclength_reparametrize(&c).unwrap();
        assert!(unit_speed_error(&r) < 1e-8);
        let map = r.arclength_map().unwrap();
        for t in [-0.9, -0.2, 0.3, 0.95] {
            let s = map.arclength_at(t);
            assert!((r.point(s) - c.point(t)).max_abs() < 1e-8);
            assert!((map.parameter_at(s) - t).abs() < 1e-10);
        }
    }

    #[test]
    fn vanishing_speed_is_reported() {
        let c = Curve::from_jet_fn(
            SpaceKind::SimplyIsotropic,
            |t| [t * 0.0, t * 0.0, t],
            0.0,
            1.0,
            100,
        )
        .unwrap();
        match arclength_reparametrize(&c) {
            Err(Error::NonAdmissibleSpeed { t, .. }) => assert_eq!(t, 0.0),
            other => panic!("{other:?}"),
        }
    }
}
