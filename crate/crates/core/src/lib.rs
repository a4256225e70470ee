//! Curves, moving frames and osculating spheres in simply isotropic,
//! pseudo-isotropic and Euclidean 3-space, with the normal-development
//! classification of spherical and planar curves.

pub mod classify;
pub mod curve;
pub mod error;
pub mod frames;
pub mod gcnum;
pub mod jet;
pub mod quadrature;
pub mod selftest;
pub mod spaces;
pub mod spheres;
pub mod testcurves;
mod vector;

pub use classify::{classify_curve, fit_normal_development, ClassificationReport, ClassifyConfig, NormalDevelopment, Verdict};
pub use curve::{
    admissibility, arclength_reparametrize, load_curve, AdmissibilityReport, Curve, CurveSource,
    CurveSpec, DerivativeMode, FdConfig,
};
pub use error::{Error, Result};
pub use gcnum::{DualNumber, LorentzNumber, Mat2};
pub use jet::Jet;
pub use spaces::{CausalClass, IsoMotion, SpaceKind, Vec3};
