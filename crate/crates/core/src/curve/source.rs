use super::expr::Expr;
use super::fd::fornberg_weights;
use super::{CurveSource, Derivatives};
use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::spaces::Vec3;

/// A plain closure `t ↦ α(t)`; derivatives come from finite differences.
pub struct FnCurve<F> {
    f: F,
}

impl<F> FnCurve<F> {
    pub fn new(f: F) -> Self {
        FnCurve { f }
    }
}

impl<F> CurveSource for FnCurve<F>
where
    F: Fn(f64) -> Vec3 + Send + Sync,
{
    fn point(&self, t: f64) -> Vec3 {
        (self.f)(t)
    }
}

/// A closure over jets, so every evaluation carries exact derivatives.
pub struct JetCurve<F> {
    f: F,
}

impl<F> JetCurve<F> {
    pub fn new(f: F) -> Self {
        JetCurve { f }
    }
}

impl<F> CurveSource for JetCurve<F>
where
    F: Fn(Jet) -> [Jet; 3] + Send + Sync,
{
    fn point(&self, t: f64) -> Vec3 {
        let [x, y, z] = (self.f)(Jet::constant(t));
        Vec3::new(x.value(), y.value(), z.value())
    }

    fn exact_derivatives(&self, t: f64) -> Option<Derivatives> {
        let [x, y, z] = (self.f)(Jet::variable(t));
        Some(std::array::from_fn(|k| Vec3::new(x.d[k], y.d[k], z.d[k])))
    }
}

/// Coordinates given as parsed expressions in `t`.
#[derive(Clone, Debug)]
pub struct ExprCurve {
    pub x: Expr,
    pub y: Expr,
    pub z: Expr,
}

impl ExprCurve {
    pub fn parse(x: &str, y: &str, z: &str) -> Result<Self> {
        Ok(ExprCurve {
            x: Expr::parse(x)?,
            y: Expr::parse(y)?,
            z: Expr::parse(z)?,
        })
    }
}

impl CurveSource for ExprCurve {
    fn point(&self, t: f64) -> Vec3 {
        Vec3::new(self.x.eval(t), self.y.eval(t), self.z.eval(t))
    }
}

/// Points sampled at strictly increasing parameters. Values and derivatives
/// between nodes come from the degree-6 interpolant through the seven nearest
/// nodes.
#[derive(Clone, Debug)]
pub struct SampledCurve {
    t: Vec<f64>,
    p: Vec<Vec3>,
}

const WINDOW: usize = 7;

impl SampledCurve {
    pub fn new(t: Vec<f64>, p: Vec<Vec3>) -> Result<Self> {
        if t.len() != p.len() {
            return Err(Error::InvalidInput("parameter and point counts differ".into()));
        }
        if t.len() < WINDOW {
            return Err(Error::InsufficientData {
                needed: WINDOW,
                got: t.len(),
            });
        }
        if t.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidInput(
                "sample parameters must be strictly increasing".into(),
            ));
        }
        if t.iter().any(|v| !v.is_finite()) || p.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("samples must be finite".into()));
        }
        Ok(SampledCurve { t, p })
    }

    /// Reads `t,x,y,z` rows (a header row is expected).
    pub fn from_csv_reader<R: std::io::Read>(r: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(r);
        let (mut ts, mut ps) = (Vec::new(), Vec::new());
        for row in rdr.deserialize::<(f64, f64, f64, f64)>() {
            let (t, x, y, z) = row?;
            ts.push(t);
            ps.push(Vec3::new(x, y, z));
        }
        SampledCurve::new(ts, ps)
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.t[0], self.t[self.t.len() - 1])
    }

    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    fn local(&self, t: f64, max_order: usize) -> Vec<Vec3> {
        let n = self.t.len();
        let i = self.t.partition_point(|&v| v < t);
        let start = i.saturating_sub(WINDOW / 2).min(n - WINDOW);
        let nodes = &self.t[start..start + WINDOW];
        let w = fornberg_weights(t, nodes, max_order);
        w.iter()
            .map(|row| {
                row.iter()
                    .zip(&self.p[start..start + WINDOW])
                    .fold(Vec3::ZERO, |acc, (c, p)| acc + *p * *c)
            })
            .collect()
    }
}

impl CurveSource for SampledCurve {
    fn point(&self, t: f64) -> Vec3 {
        self.local(t, 0)[0]
    }

    fn exact_derivatives(&self, t: f64) -> Option<Derivatives> {
        let d = self.local(t, 4);
        Some([d[0], d[1], d[2], d[3], d[4]])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampled_interpolates_smooth_data() {
        let ts: Vec<f64> = (0..200).map(|i| i as f64 * 0.02).collect();
        let ps = ts.iter().map(|&t| Vec3::new(t.cos(), t.sin(), t)).collect();
        let c = SampledCurve::new(ts, ps).unwrap();
        let t = 1.2345;
        let d = c.exact_derivatives(t).unwrap();
        assert!((d[0] - Vec3::new(t.cos(), t.sin(), t)).max_abs() < 1e-12);
        assert!((d[1] - Vec3::new(-t.sin(), t.cos(), 1.0)).max_abs() < 1e-10);
        assert!((d[2] - Vec3::new(-t.cos(), -t.sin(), 0.0)).max_abs() < 1e-8);
        assert!((d[4] - Vec3::new(t.cos(), t.sin(), 0.0)).max_abs() < 1e-4);
    }

    #[test]
    fn csv_roundtrip_and_validation() {
        let mut s = String::from("t,x,y,z\n");
        for i in 0..10 {
            let t = i as f64;
            s.push_str(&format!("{t},{},{},0\n", t * t, -t));
        }
        let c = SampledCurve::from_csv_reader(s.as_bytes()).unwrap();
        assert_eq!(c.len(), 10);
        assert!((c.point(2.5) - Vec3::new(6.25, -2.5, 0.0)).max_abs() < 1e-12);

        let bad = "t,x,y,z\n0,0,0,0\n0,1,1,1\n1,0,0,0\n2,0,0,0\n3,0,0,0\n4,0,0,0\n5,0,0,0\n";
        assert!(SampledCurve::from_csv_reader(bad.as_bytes()).is_err());
    }

    #[test]
    fn jet_curve_derivatives() {
        let c = JetCurve::new(|t: Jet| [t, t.powi(2), t.powi(3)]);
        let d = c.exact_derivatives(2.0).unwrap();
        assert_eq!(d[1], Vec3::new(1.0, 4.0, 12.0));
        assert_eq!(d[3], Vec3::new(0.0, 0.0, 6.0));
    }
}
