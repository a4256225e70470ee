use thiserror::Error;

use crate::curve::AdmissibilityReport;
use crate::spaces::SpaceKind;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{op} is not defined in {kind} space")]
    UnsupportedSpace { op: &'static str, kind: SpaceKind },

    #[error("singular parameter: {0}")]
    SingularParameter(String),

    #[error("speed {speed:e} below threshold at t = {t}")]
    NonAdmissibleSpeed { t: f64, speed: f64 },

    #[error("curve is not admissible: {}", .0.summary())]
    NotAdmissible(Box<AdmissibilityReport>),

    #[error("osculating sphere is degenerate at s = {s} (|tau*kappa^2| = {value:e}); the osculating plane should be used instead")]
    DegenerateOsculatingSphere { s: f64, value: f64 },

    #[error("need at least {needed} samples, got {got}")]
    InsufficientData { needed: usize, got: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("expression error at byte {pos}: {msg}")]
    Expression { pos: usize, msg: String },

    #[error("space mismatch: spec declares {spec}, override requests {requested}")]
    SpaceMismatch { spec: SpaceKind, requested: SpaceKind },

    #[error("{context}: {source}")]
    Context {
        context: String,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Stable machine-readable identifier for reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::UnsupportedSpace { .. } => "unsupported_space",
            Error::SingularParameter(_) => "singular_parameter",
            Error::NonAdmissibleSpeed { .. } => "non_admissible_speed",
            Error::NotAdmissible(_) => "non_admissible",
            Error::DegenerateOsculatingSphere { .. } => "degenerate_osculating_sphere",
            Error::InsufficientData { .. } => "insufficient_data",
            Error::InvalidInput(_) => "invalid_input",
            Error::Expression { .. } => "expression",
            Error::SpaceMismatch { .. } => "space_mismatch",
            Error::Context { source, .. } => source.code(),
            Error::Json(_) => "json",
            Error::Csv(_) => "csv",
        }
    }

    /// True for the failures that mean "the curve itself is outside the theory".
    pub fn is_non_admissible(&self) -> bool {
        match self {
            Error::Context { source, .. } => source.is_non_admissible(),
            e => matches!(e, Error::NotAdmissible(_) | Error::NonAdmissibleSpeed { .. }),
        }
    }

    /// Wrap with a description of the step that failed.
    pub fn context(self, context: impl Into<String>) -> Error {
        Error::Context {
            context: context.into(),
            source: Box::new(self),
        }
    }

    /// The innermost error, past any context layers.
    pub fn root(&self) -> &Error {
        match self {
            Error::Context { source, .. } => source.root(),
            e => e,
        }
    }
}
