//! Affine connections and the Levi-Civita construction.

use crate::dual::Dual;
use crate::error::{Error, Result};
use crate::metric::{check_dim, MetricField};
use crate::scalar::Scalar;
use crate::tensor::{invert_metric, Rank3};

/// A symmetric affine connection field Gamma^k_ij.
pub trait ConnectionField: Sync {
    fn dim(&self) -> usize;

    fn derivative_order(&self) -> usize {
        usize::MAX
    }

    fn eval<S: Scalar>(&self, point: &[S]) -> Result<Rank3<S>>;
}

/// Christoffel symbols of the second kind,
/// Gamma^k_ij = 1/2 g^kl (d_i g_jl + d_j g_il - d_l g_ij),
/// with the metric derivatives taken by forward-mode dual numbers.
///
/// Only the lower triangle i <= j is computed; the mirror entry is copied,
/// so the symmetry Gamma^k_ij = Gamma^k_ji is bitwise.
pub fn christoffel<S: Scalar, M: MetricField + ?Sized>(
    metric: &M,
    point: &[S],
) -> Result<Rank3<S>> {
    if metric.derivative_order() < 1 {
        return Err(Error::DerivativeUnsupported {
            required: 1,
            supported: metric.derivative_order(),
        });
    }
    let n = metric.dim();
    check_dim(n, point)?;

    // dg[m] = d_m g, from one seeded evaluation per direction
    let mut dg = Vec::with_capacity(n);
    let mut g = None;
    for m in 0..n {
        let lifted: Vec<Dual<S>> = point
            .iter()
            .enumerate()
            .map(|(idx, &x)| {
                if idx == m {
                    Dual::seeded(x)
                } else {
                    Dual::constant(x)
                }
            })
            .collect();
        let gm = metric.eval(&lifted)?;
        if g.is_none() {
            g = Some(crate::tensor::SymMat::from_fn(n, |i, j| gm.get(i, j).re));
        }
        dg.push(crate::tensor::SymMat::from_fn(n, |i, j| gm.get(i, j).eps));
    }
    let g = g.expect("n >= 1");
    let (_, ginv) = invert_metric(&g)?;

    let mut gamma = Rank3::zeros(n);
    let half = S::from_f64(0.5);
    for k in 0..n {
        for i in 0..n {
            for j in i..n {
                let mut acc = S::zero();
                for l in 0..n {
                    let bracket = dg[i].get(j, l) + dg[j].get(i, l) - dg[l].get(i, j);
                    acc = acc + ginv.get(k, l) * bracket;
                }
                let v = half * acc;
                gamma.set(k, i, j, v);
                gamma.set(k, j, i, v);
            }
        }
    }
    Ok(gamma)
}

/// The Levi-Civita connection of a metric, usable anywhere a
/// [`ConnectionField`] is expected.
#[derive(Clone, Copy, Debug)]
pub struct LeviCivita<M> {
    pub metric: M,
}

impl<M: MetricField> LeviCivita<M> {
    pub fn new(metric: M) -> Self {
        LeviCivita { metric }
    }
}

impl<M: MetricField> ConnectionField for LeviCivita<M> {
    fn dim(&self) -> usize {
        self.metric.dim()
    }

    fn derivative_order(&self) -> usize {
        self.metric.derivative_order().saturating_sub(1)
    }

    fn eval<S: Scalar>(&self, point: &[S]) -> Result<Rank3<S>> {
        christoffel(&self.metric, point)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::{CappedDerivatives, Flat, Sphere2};
    use approx::assert_abs_diff_eq;

    #[test]
    fn flat_metric_has_vanishing_connection() {
        let gamma = christoffel(&Flat { dim: 4 }, &[0.3, -1.0, 2.0, 5.0]).unwrap();
        for k in 0..4 {
            for i in 0..4 {
                for j in 0..4 {
                    assert_eq!(gamma.get(k, i, j), 0.0);
                }
            }
        }
    }

    #[test]
    fn sphere_connection_at_quarter_pi() {
        let theta = std::f64::consts::FRAC_PI_4;
        let gamma = christoffel(&Sphere2, &[theta, 0.2]).unwrap();
        // Gamma^theta_phiphi = -sin(theta)cos(theta) = -1/2 at pi/4
        assert_abs_diff_eq!(gamma.get(0, 1, 1), -0.5, epsilon = 1e-14);
        // Gamma^phi_thetaphi = cot(theta) = 1 at pi/4
        assert_abs_diff_eq!(gamma.get(1, 0, 1), 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(gamma.get(1, 1, 0), 1.0, epsilon = 1e-14);
    }

    #[test]
    fn sphere_singular_at_pole() {
        let err = christoffel(&Sphere2, &[0.0, 0.0]).unwrap_err();
        assert!(matches!(err, Error::SingularMetric { .. }));
    }

    #[test]
    fn evaluates_in_single_precision() {
        // the whole pipeline is generic over the scalar; f32 works too
        let point: [f32; 4] = [0.0, 0.0, 0.0, 1.0];
        let gamma = christoffel(&crate::antimach::AntiMach4, &point[..]).unwrap();
        assert!((gamma.get(3, 2, 2) + 2.0f32).abs() < 1e-6);
        assert!((gamma.get(3, 0, 2) - 1.0f32).abs() < 1e-6);
    }

    #[test]
    fn derivative_order_gate() {
        let capped = CappedDerivatives { inner: Sphere2, order: 0 };
        let err = christoffel(&capped, &[1.0, 0.0]).unwrap_err();
        assert!(matches!(
            err,
            Error::DerivativeUnsupported { required: 1, supported: 0 }
        ));
    }
}
