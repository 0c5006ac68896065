//! Metric registry: the built-in spacetimes plus user-defined polynomial
//! metrics loaded from JSON specs.

use riex_core::antimach::{antimach8, AntiMach4, AntiMachConnection};
use riex_core::error::Error;
use riex_core::extension::Extension;
use riex_core::metric::{Flat, MetricField, PolynomialMetric, PolynomialMetricSpec, Sphere2};
use riex_core::scalar::Scalar;
use riex_core::tensor::SymMat;
use std::path::Path;

/// A metric selected on the command line.
pub enum MetricChoice {
    AntiMach4(AntiMach4),
    AntiMach8(Extension<AntiMachConnection>),
    Flat(Flat),
    Sphere2(Sphere2),
    Poly(PolynomialMetric),
}

impl MetricChoice {
    /// `antimach4`, `antimach8`, `flat` / `flatN`, `sphere2`, or a path to
    /// a polynomial metric JSON spec.
    pub fn parse(id: &str) -> Result<Self, Error> {
        match id {
            "antimach4" => Ok(MetricChoice::AntiMach4(AntiMach4)),
            "antimach8" => Ok(MetricChoice::AntiMach8(antimach8())),
            "flat" => Ok(MetricChoice::Flat(Flat { dim: 4 })),
            "sphere2" => Ok(MetricChoice::Sphere2(Sphere2)),
            other => {
                if let Some(dim) = other.strip_prefix("flat") {
                    let dim: usize = dim.parse().map_err(|_| {
                        Error::ConfigError(format!("bad flat dimension in metric id '{other}'"))
                    })?;
                    if dim == 0 || dim > 16 {
                        return Err(Error::ConfigError(format!(
                            "flat dimension {dim} out of range 1..=16"
                        )));
                    }
                    return Ok(MetricChoice::Flat(Flat { dim }));
                }
                let path = Path::new(other);
                if path.exists() {
                    let text = std::fs::read_to_string(path).map_err(|e| {
                        Error::ConfigError(format!("cannot read metric spec {other}: {e}"))
                    })?;
                    let spec: PolynomialMetricSpec = serde_json::from_str(&text).map_err(|e| {
                        Error::ConfigError(format!("bad metric spec {other}: {e}"))
                    })?;
                    Ok(MetricChoice::Poly(PolynomialMetric::from_spec(&spec)?))
                } else {
                    Err(Error::ConfigError(format!(
                        "unknown metric '{other}' (expected antimach4, antimach8, flat[N], sphere2 or a JSON spec path)"
                    )))
                }
            }
        }
    }
}

impl MetricField for MetricChoice {
    fn dim(&self) -> usize {
        match self {
            MetricChoice::AntiMach4(m) => m.dim(),
            MetricChoice::AntiMach8(m) => m.dim(),
            MetricChoice::Flat(m) => m.dim(),
            MetricChoice::Sphere2(m) => m.dim(),
            MetricChoice::Poly(m) => m.dim(),
        }
    }

    fn derivative_order(&self) -> usize {
        match self {
            MetricChoice::AntiMach4(m) => m.derivative_order(),
            MetricChoice::AntiMach8(m) => m.derivative_order(),
            MetricChoice::Flat(m) => m.derivative_order(),
            MetricChoice::Sphere2(m) => m.derivative_order(),
            MetricChoice::Poly(m) => m.derivative_order(),
        }
    }

    fn eval<S: Scalar>(&self, point: &[S]) -> riex_core::Result<SymMat<S>> {
        match self {
            MetricChoice::AntiMach4(m) => m.eval(point),
            MetricChoice::AntiMach8(m) => m.eval(point),
            MetricChoice::Flat(m) => m.eval(point),
            MetricChoice::Sphere2(m) => m.eval(point),
            MetricChoice::Poly(m) => m.eval(point),
        }
    }
}
