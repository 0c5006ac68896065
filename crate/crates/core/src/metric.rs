//! Metric fields: evaluators from chart points to symmetric matrices.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::tensor::SymMat;
use serde::{Deserialize, Serialize};

/// A metric tensor field on an n-dimensional chart.
///
/// The evaluator is generic over the scalar type so the curvature operators
/// can push (nested) dual numbers through it and read off exact derivatives.
/// `derivative_order` advertises how many exact derivative levels the
/// evaluator supports; the built-in metrics are smooth and report
/// `usize::MAX`.
pub trait MetricField: Sync {
    fn dim(&self) -> usize;

    fn derivative_order(&self) -> usize {
        usize::MAX
    }

    fn eval<S: Scalar>(&self, point: &[S]) -> Result<SymMat<S>>;
}

pub(crate) fn check_dim<S>(expected: usize, point: &[S]) -> Result<()> {
    if point.len() != expected {
        return Err(Error::DimensionMismatch {
            expected,
            got: point.len(),
        });
    }
    Ok(())
}

/// Flat Euclidean metric diag(1, ..., 1).
#[derive(Clone, Copy, Debug)]
pub struct Flat {
    pub dim: usize,
}

impl MetricField for Flat {
    fn dim(&self) -> usize {
        self.dim
    }

    fn eval<S: Scalar>(&self, point: &[S]) -> Result<SymMat<S>> {
        check_dim(self.dim, point)?;
        Ok(SymMat::from_fn(self.dim, |i, j| {
            if i == j {
                S::one()
            } else {
                S::zero()
            }
        }))
    }
}

/// Round unit 2-sphere, coordinates (theta, phi): diag(1, sin^2 theta).
#[derive(Clone, Copy, Debug)]
pub struct Sphere2;

impl MetricField for Sphere2 {
    fn dim(&self) -> usize {
        2
    }

    fn eval<S: Scalar>(&self, point: &[S]) -> Result<SymMat<S>> {
        check_dim(2, point)?;
        let sin_theta = point[0].sin();
        Ok(SymMat::from_fn(2, |i, j| match (i, j) {
            (0, 0) => S::one(),
            (1, 1) => sin_theta * sin_theta,
            _ => S::zero(),
        }))
    }
}

/// One monomial `coeff * x^powers` of an n-variable polynomial.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolyTerm {
    #[serde(rename = "c")]
    pub coeff: f64,
    #[serde(rename = "p")]
    pub powers: Vec<u32>,
}

/// An n-variable polynomial as a list of monomials.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct PolyNd {
    pub terms: Vec<PolyTerm>,
}

impl PolyNd {
    pub fn eval<S: Scalar>(&self, point: &[S]) -> S {
        let mut acc = S::zero();
        for term in &self.terms {
            let mut m = S::from_f64(term.coeff);
            for (var, &pow) in term.powers.iter().enumerate() {
                for _ in 0..pow {
                    m = m * point[var];
                }
            }
            acc = acc + m;
        }
        acc
    }
}

/// One metric component in a user-supplied spec (0-based indices).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolyComponent {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<PolyTerm>,
}

/// JSON description of a polynomial metric: dimension plus the upper
/// triangle of components (omitted components are zero).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolynomialMetricSpec {
    pub dim: usize,
    pub components: Vec<PolyComponent>,
}

/// A metric whose components are polynomials in the coordinates.
#[derive(Clone, Debug)]
pub struct PolynomialMetric {
    dim: usize,
    // upper triangle, row-major (same packing as SymMat)
    comps: Vec<PolyNd>,
}

impl PolynomialMetric {
    pub fn new(dim: usize) -> Self {
        PolynomialMetric {
            dim,
            comps: vec![PolyNd::default(); dim * (dim + 1) / 2],
        }
    }

    pub fn from_spec(spec: &PolynomialMetricSpec) -> Result<Self> {
        let mut m = PolynomialMetric::new(spec.dim);
        for comp in &spec.components {
            if comp.i >= spec.dim || comp.j >= spec.dim {
                return Err(Error::ConfigError(format!(
                    "component index ({}, {}) out of range for dim {}",
                    comp.i, comp.j, spec.dim
                )));
            }
            for term in &comp.terms {
                if term.powers.len() != spec.dim {
                    return Err(Error::ConfigError(format!(
                        "term power list has length {}, expected {}",
                        term.powers.len(),
                        spec.dim
                    )));
                }
            }
            m.set_component(
                comp.i,
                comp.j,
                PolyNd {
                    terms: comp.terms.clone(),
                },
            );
        }
        Ok(m)
    }

    pub fn set_component(&mut self, i: usize, j: usize, poly: PolyNd) {
        let (r, c) = if i <= j { (i, j) } else { (j, i) };
        let idx = r * self.dim - r * (r + 1) / 2 + c;
        self.comps[idx] = poly;
    }
}

impl MetricField for PolynomialMetric {
    fn dim(&self) -> usize {
        self.dim
    }

    fn eval<S: Scalar>(&self, point: &[S]) -> Result<SymMat<S>> {
        check_dim(self.dim, point)?;
        let vals: Vec<S> = self.comps.iter().map(|c| c.eval(point)).collect();
        let mut out = SymMat::zeros(self.dim);
        let mut idx = 0;
        for i in 0..self.dim {
            for j in i..self.dim {
                out.set(i, j, vals[idx]);
                idx += 1;
            }
        }
        Ok(out)
    }
}

/// A wrapper that caps the advertised derivative order of a metric; used to
/// exercise the `DerivativeUnsupported` paths.
#[derive(Clone, Debug)]
pub struct CappedDerivatives<M> {
    pub inner: M,
    pub order: usize,
}

impl<M: MetricField> MetricField for CappedDerivatives<M> {
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn derivative_order(&self) -> usize {
        self.order
    }

    fn eval<S: Scalar>(&self, point: &[S]) -> Result<SymMat<S>> {
        self.inner.eval(point)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_components() {
        let g = Sphere2.eval(&[std::f64::consts::FRAC_PI_2, 0.3]).unwrap();
        assert_eq!(g.get(0, 0), 1.0);
        assert!((g.get(1, 1) - 1.0).abs() < 1e-15);
        assert_eq!(g.get(0, 1), 0.0);
    }

    #[test]
    fn polynomial_metric_from_spec() {
        // g_00 = 1 + x1^2, g_01 = 3 x0
        let spec = PolynomialMetricSpec {
            dim: 2,
            components: vec![
                PolyComponent {
                    i: 0,
                    j: 0,
                    terms: vec![
                        PolyTerm { coeff: 1.0, powers: vec![0, 0] },
                        PolyTerm { coeff: 1.0, powers: vec![0, 2] },
                    ],
                },
                PolyComponent {
                    i: 0,
                    j: 1,
                    terms: vec![PolyTerm { coeff: 3.0, powers: vec![1, 0] }],
                },
            ],
        };
        let m = PolynomialMetric::from_spec(&spec).unwrap();
        let g = m.eval(&[2.0, -1.0]).unwrap();
        assert_eq!(g.get(0, 0), 2.0);
        assert_eq!(g.get(0, 1), 6.0);
        assert_eq!(g.get(1, 0), 6.0);
        assert_eq!(g.get(1, 1), 0.0);
    }

    #[test]
    fn dimension_checked() {
        let err = Sphere2.eval(&[1.0, 2.0, 3.0]).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { expected: 2, got: 3 }));
    }
}
