use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::source::{ExprCurve, SampledCurve};
use super::Curve;
use crate::error::{Error, Result};
use crate::spaces::SpaceKind;

pub const DEFAULT_SAMPLES: usize = 1000;

/// JSON curve description: coordinate expressions in `t` over a domain.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveSpec {
    pub space: SpaceKind,
    pub x: String,
    pub y: String,
    pub z: String,
    pub t_min: f64,
    pub t_max: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl CurveSpec {
    pub fn from_json(s: &str) -> Result<CurveSpec> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_curve(&self) -> Result<Curve> {
        let src = ExprCurve::parse(&self.x, &self.y, &self.z)?;
        Curve::from_source(
            self.space,
            Arc::new(src),
            self.t_min,
            self.t_max,
            self.samples.unwrap_or(DEFAULT_SAMPLES),
        )
    }
}

/// Load a curve from a JSON spec or a `t,x,y,z` CSV file.
///
/// For JSON input a `space` override must agree with the spec. CSV input
/// carries no space and defaults to simply isotropic.
pub fn load_curve(path: &Path, space: Option<SpaceKind>) -> Result<Curve> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    let is_csv = path
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("csv"));
    if is_csv {
        let sampled = SampledCurve::from_csv_reader(text.as_bytes())?;
        let (a, b) = sampled.domain();
        let n = sampled.len().max(64);
        let kind = space.unwrap_or(SpaceKind::SimplyIsotropic);
        return Curve::from_source(kind, Arc::new(sampled), a, b, n);
    }
    let spec = CurveSpec::from_json(&text)?;
    if let Some(requested) = space {
        if requested != spec.space {
            return Err(Error::SpaceMismatch {
                spec: spec.space,
                requested,
            });
        }
    }
    spec.to_curve()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_helix_spec() {
        let spec = CurveSpec::from_json(
            r#"{"space":"isotropic","x":"cos(t)","y":"sin(t)","z":"t","t_min":0,"t_max":6.283185307179586,"samples":500}"#,
        )
        .unwrap();
        assert_eq!(spec.space, SpaceKind::SimplyIsotropic);
        let c = spec.to_curve().unwrap();
        assert_eq!(c.samples(), 500);
        assert!((c.point(1.0).x - 1f64.cos()).abs() < 1e-15);
    }

    #[test]
    fn rejects_unknown_fields_and_bad_expressions() {
        assert!(CurveSpec::from_json(
            r#"{"space":"euclidean","x":"t","y":"t","z":"t","t_min":0,"t_max":1,"colour":1}"#
        )
        .is_err());
        let spec = CurveSpec::from_json(
            r#"{"space":"euclidean","x":"t +","y":"t","z":"t","t_min":0,"t_max":1}"#,
        )
        .unwrap();
        assert!(matches!(spec.to_curve(), Err(Error::Expression { .. })));
    }
}
