use std::ops::{Add, AddAssign, Div, Index, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

/// A point or vector in ℝ³.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3::new(0.0, 0.0, 0.0);
    pub const X: Vec3 = Vec3::new(1.0, 0.0, 0.0);
    pub const Y: Vec3 = Vec3::new(0.0, 1.0, 0.0);
    /// The degenerate (isotropic) direction in both isotropic charts.
    pub const Z: Vec3 = Vec3::new(0.0, 0.0, 1.0);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3 { x, y, z }
    }

    pub fn dot(self, o: Vec3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    /// Euclidean vector product.
    pub fn cross(self, o: Vec3) -> Vec3 {
        Vec3::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn normalized(self) -> Vec3 {
        self / self.norm()
    }

    /// Projection onto the xy-plane.
    pub fn top_view(self) -> Vec3 {
        Vec3::new(self.x, self.y, 0.0)
    }

    pub fn max_abs(self) -> f64 {
        self.x.abs().max(self.y.abs()).max(self.z.abs())
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }
}

/// `det[a, b, c]` with the vectors as columns.
pub fn det3(a: Vec3, b: Vec3, c: Vec3) -> f64 {
    a.dot(b.cross(c))
}

impl From<[f64; 3]> for Vec3 {
    fn from(a: [f64; 3]) -> Self {
        Vec3::new(a[0], a[1], a[2])
    }
}

impl Index<usize> for Vec3 {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        match i {
            0 => &self.x,
            1 => &self.y,
            2 => &self.z,
            _ => panic!("Vec3 index {i} out of range"),
        }
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl AddAssign for Vec3 {
    fn add_assign(&mut self, o: Vec3) {
        *self = *self + o;
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl SubAssign for Vec3 {
    fn sub_assign(&mut self, o: Vec3) {
        *self = *self - o;
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, k: f64) -> Vec3 {
        Vec3::new(self.x * k, self.y * k, self.z * k)
    }
}

impl Mul<Vec3> for f64 {
    type Output = Vec3;
    fn mul(self, v: Vec3) -> Vec3 {
        v * self
    }
}

impl Div<f64> for Vec3 {
    type Output = Vec3;
    fn div(self, k: f64) -> Vec3 {
        Vec3::new(self.x / k, self.y / k, self.z / k)
    }
}

/// Solves the 3×3 system whose rows are `rows` by Cramer's rule.
pub fn solve3(rows: [Vec3; 3], rhs: Vec3) -> Option<Vec3> {
    let [r0, r1, r2] = rows;
    // Columns of the matrix.
    let c0 = Vec3::new(r0.x, r1.x, r2.x);
    let c1 = Vec3::new(r0.y, r1.y, r2.y);
    let c2 = Vec3::new(r0.z, r1.z, r2.z);
    let d = det3(c0, c1, c2);
    if d == 0.0 || !d.is_finite() {
        return None;
    }
    Some(Vec3::new(
        det3(rhs, c1, c2) / d,
        det3(c0, rhs, c2) / d,
        det3(c0, c1, rhs) / d,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cross_and_det() {
        assert_eq!(Vec3::X.cross(Vec3::Y), Vec3::Z);
        assert_eq!(det3(Vec3::X, Vec3::Y, Vec3::Z), 1.0);
        assert_eq!(det3(Vec3::Y, Vec3::X, Vec3::Z), -1.0);
    }

    #[test]
    fn cramer() {
        let rows = [
            Vec3::new(2.0, 1.0, 0.0),
            Vec3::new(0.0, 3.0, 1.0),
            Vec3::new(1.0, 0.0, 4.0),
        ];
        let x = Vec3::new(1.0, -2.0, 0.5);
        let rhs = Vec3::new(rows[0].dot(x), rows[1].dot(x), rows[2].dot(x));
        let got = solve3(rows, rhs).unwrap();
        assert!((got - x).max_abs() < 1e-14);
        assert!(solve3([Vec3::X, Vec3::X, Vec3::Z], Vec3::ZERO).is_none());
    }
}
