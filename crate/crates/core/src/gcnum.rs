//! Dual and Lorentz (hyperbolic) numbers.
//!
//! Both are planar number systems `re + im·u` where the imaginary unit squares
//! to `0` (dual, `u = ε`) or `+1` (Lorentz, `u = ℓ`). Unit elements act on the
//! plane as Galilean shears and hyperbolic rotations respectively, which is how
//! the normal planes of isotropic curves and the top view of pseudo-isotropic
//! space rotate.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Galilean cosine. Identically one.
#[inline]
pub fn cosg(_phi: f64) -> f64 {
    1.0
}

/// Galilean sine. The identity map.
#[inline]
pub fn sing(phi: f64) -> f64 {
    phi
}

/// `re + im·ε` with `ε² = 0`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct DualNumber {
    pub re: f64,
    pub im: f64,
}

impl DualNumber {
    pub const ONE: DualNumber = DualNumber { re: 1.0, im: 0.0 };
    pub const EPS: DualNumber = DualNumber { re: 0.0, im: 1.0 };

    pub const fn new(re: f64, im: f64) -> Self {
        DualNumber { re, im }
    }

    /// Unit dual `cosg φ + ε sing φ = 1 + φε`.
    pub fn unit(phi: f64) -> Self {
        DualNumber::new(cosg(phi), sing(phi))
    }

    pub fn conj(self) -> Self {
        DualNumber::new(self.re, -self.im)
    }

    /// Seminorm `|re|`, induced by the degenerate product `u₁v₁`.
    pub fn seminorm(self) -> f64 {
        self.re.abs()
    }

    /// Exact test: `re == 0`.
    pub fn is_zero_divisor(self) -> bool {
        self.re == 0.0
    }

    pub fn is_zero_divisor_tol(self, eps: f64) -> bool {
        self.re.abs() <= eps
    }

    /// Galilean angle of a unit dual, `im / re`.
    pub fn angle(self) -> Option<f64> {
        (!self.is_zero_divisor()).then(|| self.im / self.re)
    }

    pub fn inverse(self) -> Option<Self> {
        if self.is_zero_divisor() {
            return None;
        }
        Some(DualNumber::new(1.0 / self.re, -self.im / (self.re * self.re)))
    }

    /// `[[re, 0], [im, re]]`.
    pub fn to_matrix(self) -> Mat2 {
        Mat2::new([[self.re, 0.0], [self.im, self.re]])
    }
}

impl Add for DualNumber {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        DualNumber::new(self.re + o.re, self.im + o.im)
    }
}

impl Sub for DualNumber {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        DualNumber::new(self.re - o.re, self.im - o.im)
    }
}

impl Neg for DualNumber {
    type Output = Self;
    fn neg(self) -> Self {
        DualNumber::new(-self.re, -self.im)
    }
}

impl Mul for DualNumber {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        dual_mul(self, o)
    }
}

impl Mul<f64> for DualNumber {
    type Output = Self;
    fn mul(self, k: f64) -> Self {
        DualNumber::new(self.re * k, self.im * k)
    }
}

impl fmt::Display for DualNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:+}ε", self.re, self.im)
    }
}

pub fn dual_mul(p: DualNumber, q: DualNumber) -> DualNumber {
    DualNumber::new(p.re * q.re, p.re * q.im + q.re * p.im)
}

/// `re + im·ℓ` with `ℓ² = 1`, stored in the `{1, ℓ}` basis.
///
/// The light-cone coordinates `plus = re + im`, `minus = re - im` (components
/// along `e± = (1 ± ℓ)/2`) are derived on demand.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct LorentzNumber {
    pub re: f64,
    pub im: f64,
}

impl LorentzNumber {
    pub const ONE: LorentzNumber = LorentzNumber { re: 1.0, im: 0.0 };
    pub const ELL: LorentzNumber = LorentzNumber { re: 0.0, im: 1.0 };
    /// `e₊ = (1 + ℓ)/2`.
    pub const E_PLUS: LorentzNumber = LorentzNumber { re: 0.5, im: 0.5 };
    /// `e₋ = (1 − ℓ)/2`.
    pub const E_MINUS: LorentzNumber = LorentzNumber { re: 0.5, im: -0.5 };

    pub const fn new(re: f64, im: f64) -> Self {
        LorentzNumber { re, im }
    }

    /// `cosh φ + ℓ sinh φ`.
    pub fn unit(phi: f64) -> Self {
        LorentzNumber::new(phi.cosh(), phi.sinh())
    }

    pub fn from_light_cone(plus: f64, minus: f64) -> Self {
        LorentzNumber::new(0.5 * (plus + minus), 0.5 * (plus - minus))
    }

    pub fn plus(self) -> f64 {
        self.re + self.im
    }

    pub fn minus(self) -> f64 {
        self.re - self.im
    }

    pub fn light_cone(self) -> (f64, f64) {
        (self.plus(), self.minus())
    }

    pub fn conj(self) -> Self {
        LorentzNumber::new(self.re, -self.im)
    }

    /// `p p̄ = re² − im²`.
    pub fn quadratic_form(self) -> f64 {
        self.re * self.re - self.im * self.im
    }

    pub fn is_zero_divisor(self) -> bool {
        self.re.abs() == self.im.abs()
    }

    pub fn is_zero_divisor_tol(self, eps: f64) -> bool {
        (self.re.abs() - self.im.abs()).abs() <= eps
    }

    pub fn inverse(self) -> Option<Self> {
        let q = self.quadratic_form();
        (q != 0.0).then(|| LorentzNumber::new(self.re / q, -self.im / q))
    }

    /// `[[re, im], [im, re]]`.
    pub fn to_matrix(self) -> Mat2 {
        Mat2::new([[self.re, self.im], [self.im, self.re]])
    }

    /// `diag(plus, minus)`, the representation in the light-cone basis.
    pub fn to_light_cone_matrix(self) -> Mat2 {
        Mat2::new([[self.plus(), 0.0], [0.0, self.minus()]])
    }
}

impl Add for LorentzNumber {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        LorentzNumber::new(self.re + o.re, self.im + o.im)
    }
}

impl Sub for LorentzNumber {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        LorentzNumber::new(self.re - o.re, self.im - o.im)
    }
}

impl Neg for LorentzNumber {
    type Output = Self;
    fn neg(self) -> Self {
        LorentzNumber::new(-self.re, -self.im)
    }
}

impl Mul for LorentzNumber {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        lorentz_mul(self, o)
    }
}

impl Mul<f64> for LorentzNumber {
    type Output = Self;
    fn mul(self, k: f64) -> Self {
        LorentzNumber::new(self.re * k, self.im * k)
    }
}

impl fmt::Display for LorentzNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:+}ℓ", self.re, self.im)
    }
}

pub fn lorentz_mul(p: LorentzNumber, q: LorentzNumber) -> LorentzNumber {
    LorentzNumber::new(p.re * q.re + p.im * q.im, p.re * q.im + q.re * p.im)
}

/// Row-major 2×2 real matrix.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Mat2(pub [[f64; 2]; 2]);

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2([[1.0, 0.0], [0.0, 1.0]]);

    pub const fn new(rows: [[f64; 2]; 2]) -> Self {
        Mat2(rows)
    }

    pub fn diag(a: f64, b: f64) -> Self {
        Mat2([[a, 0.0], [0.0, b]])
    }

    pub fn det(&self) -> f64 {
        let m = &self.0;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    pub fn transpose(&self) -> Self {
        let m = &self.0;
        Mat2([[m[0][0], m[1][0]], [m[0][1], m[1][1]]])
    }

    pub fn inverse(&self) -> Option<Self> {
        let d = self.det();
        if d == 0.0 {
            return None;
        }
        let m = &self.0;
        Some(Mat2([
            [m[1][1] / d, -m[0][1] / d],
            [-m[1][0] / d, m[0][0] / d],
        ]))
    }

    pub fn apply(&self, v: [f64; 2]) -> [f64; 2] {
        let m = &self.0;
        [
            m[0][0] * v[0] + m[0][1] * v[1],
            m[1][0] * v[0] + m[1][1] * v[1],
        ]
    }

    /// Largest absolute entry difference.
    pub fn max_abs_diff(&self, other: &Mat2) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                worst = worst.max((self.0[i][j] - other.0[i][j]).abs());
            }
        }
        worst
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        let (a, b) = (&self.0, &o.0);
        let mut out = [[0.0; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Mat2(out)
    }
}

/// Plane isotropic rotation `[[cosg φ, 0], [sing φ, cosg φ]]`, the matrix of
/// the unit dual `1 + φε`. Acts on `(x, y)` as `(x, φx + y)`.
pub fn galilean_rotation(phi: f64) -> Mat2 {
    DualNumber::unit(phi).to_matrix()
}

/// Hyperbolic rotation `[[cosh φ, sinh φ], [sinh φ, cosh φ]]`, the matrix of
/// the unit Lorentz number `cosh φ + ℓ sinh φ`.
pub fn hyperbolic_rotation(phi: f64) -> Mat2 {
    LorentzNumber::unit(phi).to_matrix()
}

/// Change of coordinates from the light-cone basis to `{1, ℓ}`:
/// `(plus, minus) ↦ (re, im)`.
pub fn light_cone_basis() -> Mat2 {
    Mat2([[0.5, 0.5], [0.5, -0.5]])
}

/// Expresses a matrix acting on `{1, ℓ}` coordinates in light-cone coordinates.
pub fn to_light_cone_coordinates(m: Mat2) -> Mat2 {
    let p = light_cone_basis();
    Mat2([[1.0, 1.0], [1.0, -1.0]]) * m * p
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
    }

    #[test]
    fn dual_products() {
        let p = DualNumber::new(1.0, 2.0) * DualNumber::new(3.0, 4.0);
        assert_eq!(p, DualNumber::new(3.0, 10.0));
        assert_eq!(DualNumber::EPS * DualNumber::EPS, DualNumber::new(0.0, 0.0));
        let q = DualNumber::new(-2.5, 7.25);
        assert_eq!(q * DualNumber::ONE, q);
    }

    #[test]
    fn dual_seminorm_and_zero_divisors() {
        assert_eq!(DualNumber::new(-3.0, 9.0).seminorm(), 3.0);
        assert!(DualNumber::new(0.0, 5.0).is_zero_divisor());
        assert!(!DualNumber::new(1e-300, 5.0).is_zero_divisor());
        assert!(DualNumber::new(1e-12, 5.0).is_zero_divisor_tol(1e-9));
        assert!(DualNumber::new(0.0, 1.0).inverse().is_none());
    }

    #[test]
    fn lorentz_products() {
        let z = LorentzNumber::new(1.0, 1.0) * LorentzNumber::new(1.0, -1.0);
        assert_eq!(z, LorentzNumber::new(0.0, 0.0));
        let (ep, em) = (LorentzNumber::E_PLUS, LorentzNumber::E_MINUS);
        assert_eq!(ep * em, LorentzNumber::new(0.0, 0.0));
        assert_eq!(ep * ep, ep);
        assert_eq!(em * em, em);
        let (a, b) = (0.7, -1.3);
        let p = LorentzNumber::unit(a) * LorentzNumber::unit(b);
        let r = LorentzNumber::unit(a + b);
        assert!(close(p.re, r.re, 1e-14) && close(p.im, r.im, 1e-14));
    }

    #[test]
    fn light_cone_view() {
        let p = LorentzNumber::new(3.0, -1.5);
        assert_eq!(p.light_cone(), (1.5, 4.5));
        assert_eq!(LorentzNumber::from_light_cone(1.5, 4.5), p);
        assert_eq!(p.quadratic_form(), p.plus() * p.minus());
        assert!(LorentzNumber::E_PLUS.is_zero_divisor());
    }

    #[test]
    fn galilean_rotation_cases() {
        assert_eq!(galilean_rotation(0.0), Mat2::IDENTITY);
        assert_eq!(galilean_rotation(2.0).apply([1.0, 3.0]), [1.0, 5.0]);
        let (a, b) = (0.375, -1.25);
        assert_eq!(
            galilean_rotation(a) * galilean_rotation(b),
            galilean_rotation(a + b)
        );
    }

    #[test]
    fn hyperbolic_rotation_cases() {
        assert_eq!(hyperbolic_rotation(0.0), Mat2::IDENTITY);
        let phi = 2f64.ln();
        let lc = to_light_cone_coordinates(hyperbolic_rotation(phi));
        assert!(lc.max_abs_diff(&Mat2::diag(2.0, 0.5)) <= 1e-15);
        let v = [1.7, -0.4];
        let w = hyperbolic_rotation(0.9).apply(v);
        assert!((w[0] * w[0] - w[1] * w[1] - (v[0] * v[0] - v[1] * v[1])).abs() <= 1e-12);
    }

    proptest! {
        #[test]
        fn dual_ring_axioms(a in -10.0..10.0f64, b in -10.0..10.0f64, c in -10.0..10.0f64,
                            d in -10.0..10.0f64, e in -10.0..10.0f64, f in -10.0..10.0f64) {
            let (p, q, r) = (DualNumber::new(a, b), DualNumber::new(c, d), DualNumber::new(e, f));
            let lhs = (p * q) * r;
            let rhs = p * (q * r);
            prop_assert!(close(lhs.re, rhs.re, 1e-13) && close(lhs.im, rhs.im, 1e-13));
            prop_assert_eq!(p * q, q * p);
            let dl = p * (q + r);
            let dr = p * q + p * r;
            prop_assert!(close(dl.re, dr.re, 1e-13) && close(dl.im, dr.im, 1e-13));
            prop_assert!((p * q).to_matrix().max_abs_diff(&(p.to_matrix() * q.to_matrix())) <= 1e-12);
        }

        #[test]
        fn lorentz_ring_axioms(a in -10.0..10.0f64, b in -10.0..10.0f64, c in -10.0..10.0f64,
                               d in -10.0..10.0f64) {
            let (p, q) = (LorentzNumber::new(a, b), LorentzNumber::new(c, d));
            prop_assert_eq!(p * q, q * p);
            prop_assert!((p * q).to_matrix().max_abs_diff(&(p.to_matrix() * q.to_matrix())) <= 1e-12);
            let pq = p * q;
            prop_assert!(close(pq.plus(), p.plus() * q.plus(), 1e-13));
            prop_assert!(close(pq.minus(), p.minus() * q.minus(), 1e-13));
        }

        #[test]
        fn unit_duals_add_angles(a in -50.0..50.0f64, b in -50.0..50.0f64) {
            let p = DualNumber::unit(a) * DualNumber::unit(b);
            prop_assert_eq!(p.re, 1.0);
            prop_assert!(close(p.angle().unwrap(), a + b, 1e-15));
        }
    }
}
