//! Parametrized curves with derivative access up to order four.

mod admissibility;
pub mod expr;
pub mod fd;
mod reparam;
mod source;
mod spec;

use std::fmt;
use std::sync::Arc;

pub use admissibility::{admissibility, AdmissibilityReport, DEFAULT_ADMISSIBILITY_TOL};
pub use fd::{fornberg_weights, CentralStencil, FdConfig};
pub use reparam::{arclength_reparametrize, ArclengthMap, SPEED_FLOOR};
pub use source::{ExprCurve, FnCurve, JetCurve, SampledCurve};
pub use spec::{load_curve, CurveSpec, DEFAULT_SAMPLES};

use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::spaces::{IsoMotion, SpaceKind, Vec3};

/// `[α, α′, α″, α‴, α⁗]` at one parameter value.
pub type Derivatives = [Vec3; 5];

/// Something that can be evaluated along a parameter interval.
///
/// Implementations must be re-entrant: sampling is parallelized.
pub trait CurveSource: Send + Sync {
    fn point(&self, t: f64) -> Vec3;

    /// Exact derivatives through order four, when the source knows them.
    fn exact_derivatives(&self, _t: f64) -> Option<Derivatives> {
        None
    }

    /// Parameter of the underlying user curve (differs after reparametrization).
    fn original_parameter(&self, t: f64) -> f64 {
        t
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum DerivativeMode {
    Exact,
    FiniteDifference(FdConfig),
}

#[derive(Clone)]
pub struct Curve {
    kind: SpaceKind,
    source: Arc<dyn CurveSource>,
    mode: DerivativeMode,
    stencil: Option<Arc<CentralStencil>>,
    t_min: f64,
    t_max: f64,
    samples: usize,
    arclength: Option<Arc<ArclengthMap>>,
}

impl fmt::Debug for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Curve")
            .field("kind", &self.kind)
            .field("mode", &self.mode)
            .field("domain", &(self.t_min, self.t_max))
            .field("samples", &self.samples)
            .field("unit_speed", &self.is_unit_speed())
            .finish()
    }
}

impl Curve {
    /// Uses exact derivatives when the source provides them, otherwise
    /// order-4 central differences with the default step.
    pub fn from_source(
        kind: SpaceKind,
        source: Arc<dyn CurveSource>,
        t_min: f64,
        t_max: f64,
        samples: usize,
    ) -> Result<Curve> {
        if !(t_min.is_finite() && t_max.is_finite() && t_min < t_max) {
            return Err(Error::InvalidInput(format!(
                "domain [{t_min}, {t_max}] must be finite with t_min < t_max"
            )));
        }
        if samples < 2 {
            return Err(Error::InsufficientData {
                needed: 2,
                got: samples,
            });
        }
        let mut curve = Curve {
            kind,
            source,
            mode: DerivativeMode::Exact,
            stencil: None,
            t_min,
            t_max,
            samples,
            arclength: None,
        };
        if curve.source.exact_derivatives(t_min).is_none() {
            curve = curve.with_finite_differences(FdConfig::default_for(t_min, t_max));
        }
        Ok(curve)
    }

    pub fn from_fn<F>(kind: SpaceKind, f: F, t_min: f64, t_max: f64, samples: usize) -> Result<Curve>
    where
        F: Fn(f64) -> Vec3 + Send + Sync + 'static,
    {
        Curve::from_source(kind, Arc::new(FnCurve::new(f)), t_min, t_max, samples)
    }

    /// A curve whose coordinates are written over [`Jet`], giving exact derivatives.
    pub fn from_jet_fn<F>(kind: SpaceKind, f: F, t_min: f64, t_max: f64, samples: usize) -> Result<Curve>
    where
        F: Fn(Jet) -> [Jet; 3] + Send + Sync + 'static,
    {
        Curve::from_source(kind, Arc::new(JetCurve::new(f)), t_min, t_max, samples)
    }

    /// Switch to central differences over point evaluations.
    pub fn with_finite_differences(mut self, cfg: FdConfig) -> Curve {
        self.stencil = Some(Arc::new(cfg.stencil()));
        self.mode = DerivativeMode::FiniteDifference(cfg);
        self
    }

    /// Switch back to exact derivatives; fails if the source has none.
    pub fn with_exact_derivatives(mut self) -> Result<Curve> {
        if self.source.exact_derivatives(self.t_min).is_none() {
            return Err(Error::InvalidInput(
                "curve source does not provide exact derivatives".into(),
            ));
        }
        self.mode = DerivativeMode::Exact;
        self.stencil = None;
        Ok(self)
    }

    pub fn with_samples(mut self, samples: usize) -> Result<Curve> {
        if samples < 2 {
            return Err(Error::InsufficientData {
                needed: 2,
                got: samples,
            });
        }
        self.samples = samples;
        Ok(self)
    }

    pub fn with_kind(mut self, kind: SpaceKind) -> Curve {
        self.kind = kind;
        self.arclength = None;
        self
    }

    /// Restrict to a sub-interval of the domain.
    pub fn with_domain(mut self, t_min: f64, t_max: f64) -> Result<Curve> {
        if !(t_min < t_max) {
            return Err(Error::InvalidInput(format!("empty domain [{t_min}, {t_max}]")));
        }
        self.t_min = t_min;
        self.t_max = t_max;
        Ok(self)
    }

    pub fn kind(&self) -> SpaceKind {
        self.kind
    }

    pub fn mode(&self) -> &DerivativeMode {
        &self.mode
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.t_min, self.t_max)
    }

    pub fn samples(&self) -> usize {
        self.samples
    }

    /// True for curves produced by [`arclength_reparametrize`].
    pub fn is_unit_speed(&self) -> bool {
        self.arclength.is_some()
    }

    pub fn arclength_map(&self) -> Option<&ArclengthMap> {
        self.arclength.as_deref()
    }

    /// Uniform grid of `samples` parameters covering the domain.
    pub fn parameters(&self) -> Vec<f64> {
        let n = self.samples;
        let h = (self.t_max - self.t_min) / (n - 1) as f64;
        (0..n)
            .map(|i| if i + 1 == n { self.t_max } else { self.t_min + i as f64 * h })
            .collect()
    }

    pub fn point(&self, t: f64) -> Vec3 {
        self.source.point(t)
    }

    pub fn original_parameter(&self, t: f64) -> f64 {
        self.source.original_parameter(t)
    }

    pub fn derivatives(&self, t: f64) -> Derivatives {
        match &self.mode {
            DerivativeMode::Exact => self
                .source
                .exact_derivatives(t)
                .expect("exact mode requires exact derivatives"),
            DerivativeMode::FiniteDifference(cfg) => {
                let stencil = self.stencil.as_ref().expect("stencil set with fd mode");
                let d = self.fd_derivatives(stencil, t, cfg.step);
                if cfg.richardson {
                    let fine = self.fd_derivatives(stencil, t, 0.5 * cfg.step);
                    let k = 2f64.powi(cfg.order as i32) - 1.0;
                    let mut out = fine;
                    for m in 1..5 {
                        out[m] = fine[m] + (fine[m] - d[m]) / k;
                    }
                    out
                } else {
                    d
                }
            }
        }
    }

    fn fd_derivatives(&self, stencil: &CentralStencil, t: f64, h: f64) -> Derivatives {
        let p = stencil.half_width as i64;
        let values: Vec<Vec3> = (-p..=p).map(|k| self.source.point(t + k as f64 * h)).collect();
        let [d1, d2, d3, d4] = stencil.apply(&values, h);
        [values[p as usize], d1, d2, d3, d4]
    }

    /// Speed in the seminorm of the ambient space.
    pub fn speed(&self, t: f64) -> f64 {
        speed_of(self.kind, self.derivatives(t)[1])
    }

    /// Image under an affine map `x ↦ M x + b`.
    pub fn transformed_affine(&self, m: [[f64; 3]; 3], b: Vec3) -> Curve {
        let src = Affine {
            inner: self.clone(),
            m,
            b,
        };
        let mut out = self.clone();
        out.source = Arc::new(src);
        out.mode = DerivativeMode::Exact;
        out.stencil = None;
        out.arclength = None;
        out
    }

    /// Image under an isotropic or pseudo-isotropic motion.
    pub fn transformed(&self, motion: &IsoMotion) -> Curve {
        let h = motion.to_matrix();
        let m = [
            [h[0][0], h[0][1], h[0][2]],
            [h[1][0], h[1][1], h[1][2]],
            [h[2][0], h[2][1], h[2][2]],
        ];
        let b = Vec3::new(h[0][3], h[1][3], h[2][3]);
        self.transformed_affine(m, b)
    }
}

/// Length of `v` in the seminorm of `kind` (`√|⟨v,v⟩|` for pseudo-isotropic).
pub fn speed_of(kind: SpaceKind, v: Vec3) -> f64 {
    match kind {
        SpaceKind::Euclidean => v.norm(),
        SpaceKind::SimplyIsotropic => v.x.hypot(v.y),
        SpaceKind::PseudoIsotropic => (v.x * v.x - v.y * v.y).abs().sqrt(),
    }
}

struct Affine {
    inner: Curve,
    m: [[f64; 3]; 3],
    b: Vec3,
}

impl Affine {
    fn linear(&self, v: Vec3) -> Vec3 {
        let r = |row: [f64; 3]| row[0] * v.x + row[1] * v.y + row[2] * v.z;
        Vec3::new(r(self.m[0]), r(self.m[1]), r(self.m[2]))
    }
}

impl CurveSource for Affine {
    fn point(&self, t: f64) -> Vec3 {
        self.linear(self.inner.point(t)) + self.b
    }

    fn exact_derivatives(&self, t: f64) -> Option<Derivatives> {
        let d = self.inner.derivatives(t);
        Some([
            self.linear(d[0]) + self.b,
            self.linear(d[1]),
            self.linear(d[2]),
            self.linear(d[3]),
            self.linear(d[4]),
        ])
    }

    fn original_parameter(&self, t: f64) -> f64 {
        self.inner.original_parameter(t)
    }
}
