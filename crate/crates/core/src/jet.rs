//! Fourth-order jets: a value together with its first four derivatives.
//!
//! Arithmetic follows the Leibniz rule and composition follows Faà di Bruno,
//! so a function written over `Jet` yields exact derivatives. This is used to
//! push derivatives through arclength reparametrization and to write test
//! curves with exact derivatives.

use std::ops::{Add, Div, Mul, Neg, Sub};

pub const ORDER: usize = 4;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Jet {
    /// `d[k]` is the k-th derivative.
    pub d: [f64; ORDER + 1],
}

impl Jet {
    pub const fn new(d: [f64; ORDER + 1]) -> Self {
        Jet { d }
    }

    pub const fn constant(c: f64) -> Self {
        Jet::new([c, 0.0, 0.0, 0.0, 0.0])
    }

    /// The independent variable at `t`.
    pub const fn variable(t: f64) -> Self {
        Jet::new([t, 1.0, 0.0, 0.0, 0.0])
    }

    pub fn value(&self) -> f64 {
        self.d[0]
    }

    /// `f ∘ self`, where `f` has derivatives `f[k]` at `self.value()`.
    pub fn chain(self, f: [f64; ORDER + 1]) -> Jet {
        let [_, g1, g2, g3, g4] = self.d;
        Jet::new([
            f[0],
            f[1] * g1,
            f[2] * g1 * g1 + f[1] * g2,
            f[3] * g1 * g1 * g1 + 3.0 * f[2] * g1 * g2 + f[1] * g3,
            f[4] * g1.powi(4)
                + 6.0 * f[3] * g1 * g1 * g2
                + f[2] * (3.0 * g2 * g2 + 4.0 * g1 * g3)
                + f[1] * g4,
        ])
    }

    pub fn sin(self) -> Jet {
        let (s, c) = self.d[0].sin_cos();
        self.chain([s, c, -s, -c, s])
    }

    pub fn cos(self) -> Jet {
        let (s, c) = self.d[0].sin_cos();
        self.chain([c, -s, -c, s, c])
    }

    pub fn exp(self) -> Jet {
        let e = self.d[0].exp();
        self.chain([e; 5])
    }

    pub fn sinh(self) -> Jet {
        let (s, c) = (self.d[0].sinh(), self.d[0].cosh());
        self.chain([s, c, s, c, s])
    }

    pub fn cosh(self) -> Jet {
        let (s, c) = (self.d[0].sinh(), self.d[0].cosh());
        self.chain([c, s, c, s, c])
    }

    pub fn ln(self) -> Jet {
        let x = self.d[0];
        let r = 1.0 / x;
        self.chain([x.ln(), r, -r * r, 2.0 * r * r * r, -6.0 * r.powi(4)])
    }

    pub fn powi(self, n: i32) -> Jet {
        let x = self.d[0];
        let nf = n as f64;
        let p = |k: i32| if n - k < 0 && x == 0.0 { 0.0 } else { x.powi(n - k) };
        self.chain([
            p(0),
            nf * p(1),
            nf * (nf - 1.0) * p(2),
            nf * (nf - 1.0) * (nf - 2.0) * p(3),
            nf * (nf - 1.0) * (nf - 2.0) * (nf - 3.0) * p(4),
        ])
    }

    pub fn powf(self, a: f64) -> Jet {
        let x = self.d[0];
        self.chain([
            x.powf(a),
            a * x.powf(a - 1.0),
            a * (a - 1.0) * x.powf(a - 2.0),
            a * (a - 1.0) * (a - 2.0) * x.powf(a - 3.0),
            a * (a - 1.0) * (a - 2.0) * (a - 3.0) * x.powf(a - 4.0),
        ])
    }

    /// `self^other` for a jet exponent, via `exp(other · ln self)`.
    pub fn pow(self, other: Jet) -> Jet {
        if other.d[1..].iter().all(|&v| v == 0.0) {
            let e = other.d[0];
            if e.fract() == 0.0 && e.abs() < 64.0 {
                return self.powi(e as i32);
            }
            return self.powf(e);
        }
        (other * self.ln()).exp()
    }

    pub fn sqrt(self) -> Jet {
        self.powf(0.5)
    }

    pub fn recip(self) -> Jet {
        let x = self.d[0];
        let r = 1.0 / x;
        self.chain([r, -r * r, 2.0 * r.powi(3), -6.0 * r.powi(4), 24.0 * r.powi(5)])
    }

    pub fn scale(self, k: f64) -> Jet {
        Jet::new(self.d.map(|v| v * k))
    }
}

impl From<f64> for Jet {
    fn from(c: f64) -> Self {
        Jet::constant(c)
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, o: Jet) -> Jet {
        let mut d = self.d;
        for (a, b) in d.iter_mut().zip(o.d) {
            *a += b;
        }
        Jet::new(d)
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, o: Jet) -> Jet {
        self + (-o)
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(-1.0)
    }
}

const BINOM: [[f64; 5]; 5] = [
    [1.0, 0.0, 0.0, 0.0, 0.0],
    [1.0, 1.0, 0.0, 0.0, 0.0],
    [1.0, 2.0, 1.0, 0.0, 0.0],
    [1.0, 3.0, 3.0, 1.0, 0.0],
    [1.0, 4.0, 6.0, 4.0, 1.0],
];

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, o: Jet) -> Jet {
        let mut d = [0.0; ORDER + 1];
        for (n, slot) in d.iter_mut().enumerate() {
            *slot = (0..=n).map(|k| BINOM[n][k] * self.d[k] * o.d[n - k]).sum();
        }
        Jet::new(d)
    }
}

impl Div for Jet {
    type Output = Jet;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Jet) -> Jet {
        self * o.recip()
    }
}

impl Mul<f64> for Jet {
    type Output = Jet;
    fn mul(self, k: f64) -> Jet {
        self.scale(k)
    }
}

impl Add<f64> for Jet {
    type Output = Jet;
    fn add(self, k: f64) -> Jet {
        let mut d = self.d;
        d[0] += k;
        Jet::new(d)
    }
}
