//! Curvature tensors and scalar invariants.
//!
//! Sign convention, fixed once for the whole crate:
//!
//!   R^a_bcd = d_c Gamma^a_db - d_d Gamma^a_cb
//!             + Gamma^a_ce Gamma^e_db - Gamma^a_de Gamma^e_cb
//!
//! and the Ricci tensor is the contraction R_ik = R^a_iak.

use crate::connection::{christoffel, ConnectionField, LeviCivita};
use crate::dual::Dual;
use crate::error::{Error, Result};
use crate::metric::MetricField;
use crate::scalar::Scalar;
use crate::tensor::{invert_metric, Matrix, Rank3, Rank4};

/// Connection coefficients together with their first coordinate derivatives,
/// obtained from one seeded evaluation per direction.
fn connection_jet<S: Scalar, C: ConnectionField + ?Sized>(
    conn: &C,
    point: &[S],
) -> Result<(Rank3<S>, Vec<Rank3<S>>)> {
    if conn.derivative_order() < 1 {
        return Err(Error::DerivativeUnsupported {
            required: 1,
            supported: conn.derivative_order(),
        });
    }
    let n = conn.dim();
    let mut gamma = None;
    let mut dgamma = Vec::with_capacity(n);
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
        let gm = conn.eval(&lifted)?;
        if gamma.is_none() {
            let mut g0 = Rank3::zeros(n);
            for k in 0..n {
                for i in 0..n {
                    for j in 0..n {
                        g0.set(k, i, j, gm.get(k, i, j).re);
                    }
                }
            }
            gamma = Some(g0);
        }
        let mut dm = Rank3::zeros(n);
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    dm.set(k, i, j, gm.get(k, i, j).eps);
                }
            }
        }
        dgamma.push(dm);
    }
    Ok((gamma.expect("n >= 1"), dgamma))
}

/// Riemann tensor R^a_bcd of a connection.
pub fn riemann_tensor<S: Scalar, C: ConnectionField + ?Sized>(
    conn: &C,
    point: &[S],
) -> Result<Rank4<S>> {
    let n = conn.dim();
    let (gamma, dgamma) = connection_jet(conn, point)?;
    let mut r = Rank4::zeros(n);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let mut quad = S::zero();
                    for e in 0..n {
                        quad = quad + gamma.get(a, c, e) * gamma.get(e, d, b)
                            - gamma.get(a, d, e) * gamma.get(e, c, b);
                    }
                    let v = dgamma[c].get(a, d, b) - dgamma[d].get(a, c, b) + quad;
                    r.set(a, b, c, d, v);
                }
            }
        }
    }
    Ok(r)
}

/// Ricci tensor R_ik = R^a_iak.
pub fn ricci_tensor<S: Scalar, C: ConnectionField + ?Sized>(
    conn: &C,
    point: &[S],
) -> Result<Matrix<S>> {
    let n = conn.dim();
    let riemann = riemann_tensor(conn, point)?;
    Ok(Matrix::from_fn(n, |i, k| {
        let mut acc = S::zero();
        for a in 0..n {
            acc = acc + riemann.get(a, i, a, k);
        }
        acc
    }))
}

/// Kretschmann scalar R_abcd R^abcd, all raising and lowering by the metric.
pub fn kretschmann<S: Scalar, M: MetricField + ?Sized>(metric: &M, point: &[S]) -> Result<S> {
    if metric.derivative_order() < 2 {
        return Err(Error::DerivativeUnsupported {
            required: 2,
            supported: metric.derivative_order(),
        });
    }
    let n = metric.dim();
    let conn = LeviCivitaRef { metric };
    let riemann = riemann_tensor(&conn, point)?;
    let g = metric.eval(point)?;
    let (_, ginv) = invert_metric(&g)?;

    // lower the first index: R_abcd = g_ae R^e_bcd
    let mut lowered = Rank4::zeros(n);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let mut acc = S::zero();
                    for e in 0..n {
                        acc = acc + g.get(a, e) * riemann.get(e, b, c, d);
                    }
                    lowered.set(a, b, c, d, acc);
                }
            }
        }
    }
    // raise all four on a second copy, then contract
    let mut total = S::zero();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let mut up = S::zero();
                    for e in 0..n {
                        for f in 0..n {
                            for p in 0..n {
                                for q in 0..n {
                                    up = up
                                        + ginv.get(a, e)
                                            * ginv.get(b, f)
                                            * ginv.get(c, p)
                                            * ginv.get(d, q)
                                            * lowered.get(e, f, p, q);
                                }
                            }
                        }
                    }
                    total = total + lowered.get(a, b, c, d) * up;
                }
            }
        }
    }
    Ok(total)
}

/// Borrowing Levi-Civita adapter; avoids cloning the metric inside
/// [`kretschmann`] and [`curvature_report`].
struct LeviCivitaRef<'a, M: MetricField + ?Sized> {
    metric: &'a M,
}

impl<'a, M: MetricField + ?Sized> ConnectionField for LeviCivitaRef<'a, M> {
    fn dim(&self) -> usize {
        self.metric.dim()
    }

    fn derivative_order(&self) -> usize {
        self.metric.derivative_order().saturating_sub(1)
    }

    fn eval<S: Scalar>(&self, point: &[S]) -> Result<Rank3<S>> {
        christoffel(self.metric, point)
    }
}

/// Curvature summary of a metric at one point.
#[derive(Clone, Debug)]
pub struct CurvatureReport {
    pub point: Vec<f64>,
    pub riemann: Rank4<f64>,
    pub ricci: Matrix<f64>,
    pub kretschmann: f64,
}

pub fn curvature_report<M: MetricField + ?Sized>(
    metric: &M,
    point: &[f64],
) -> Result<CurvatureReport> {
    let conn = LeviCivitaRef { metric };
    let riemann = riemann_tensor(&conn, point)?;
    let n = metric.dim();
    let ricci = Matrix::from_fn(n, |i, k| {
        let mut acc = 0.0;
        for a in 0..n {
            acc += riemann.get(a, i, a, k);
        }
        acc
    });
    let kretschmann = kretschmann(metric, point)?;
    Ok(CurvatureReport {
        point: point.to_vec(),
        riemann,
        ricci,
        kretschmann,
    })
}

/// Max |R_ik| over the Ricci tensor of the Levi-Civita connection; the
/// figure of merit for vacuum checks.
pub fn max_abs_ricci<M: MetricField + ?Sized>(metric: &M, point: &[f64]) -> Result<f64> {
    let conn = LeviCivita::new(RefMetric { metric });
    let ricci = ricci_tensor(&conn, point)?;
    let n = metric.dim();
    let mut max = 0.0f64;
    for i in 0..n {
        for k in 0..n {
            max = max.max(ricci.get(i, k).abs());
        }
    }
    Ok(max)
}

/// Borrowed metric adapter so `&M` can be used where `MetricField` by value
/// is expected.
#[derive(Clone, Copy)]
pub struct RefMetric<'a, M: MetricField + ?Sized> {
    pub metric: &'a M,
}

impl<'a, M: MetricField + ?Sized> MetricField for RefMetric<'a, M> {
    fn dim(&self) -> usize {
        self.metric.dim()
    }

    fn derivative_order(&self) -> usize {
        self.metric.derivative_order()
    }

    fn eval<S: Scalar>(&self, point: &[S]) -> Result<crate::tensor::SymMat<S>> {
        self.metric.eval(point)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connection::LeviCivita;
    use crate::metric::{Flat, Sphere2};
    use approx::assert_abs_diff_eq;

    #[test]
    fn flat_connection_is_curvature_free() {
        let conn = LeviCivita::new(Flat { dim: 3 });
        let r = riemann_tensor(&conn, &[0.1, 0.2, 0.3]).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    for d in 0..3 {
                        assert_eq!(r.get(a, b, c, d), 0.0);
                    }
                }
            }
        }
        assert_eq!(kretschmann(&Flat { dim: 3 }, &[0.1, 0.2, 0.3]).unwrap(), 0.0);
    }

    #[test]
    fn sphere_riemann_component() {
        // R^theta_phi theta phi = sin^2 theta = 1/2 at theta = pi/4
        let conn = LeviCivita::new(Sphere2);
        let theta = std::f64::consts::FRAC_PI_4;
        let r = riemann_tensor(&conn, &[theta, 1.0]).unwrap();
        assert_abs_diff_eq!(r.get(0, 1, 0, 1), 0.5, epsilon = 1e-13);
    }

    #[test]
    fn sphere_ricci() {
        // R_thetatheta = 1, R_phiphi = sin^2 theta
        let conn = LeviCivita::new(Sphere2);
        let theta: f64 = 1.1;
        let ric = ricci_tensor(&conn, &[theta, -0.4]).unwrap();
        assert_abs_diff_eq!(ric.get(0, 0), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(ric.get(1, 1), theta.sin().powi(2), epsilon = 1e-12);
        assert_abs_diff_eq!(ric.get(0, 1), 0.0, epsilon = 1e-13);
        assert_abs_diff_eq!(ric.get(1, 0), 0.0, epsilon = 1e-13);
    }

    #[test]
    fn unit_sphere_kretschmann_is_four() {
        for &theta in &[0.4, std::f64::consts::FRAC_PI_4, 2.0] {
            let k = kretschmann(&Sphere2, &[theta, 0.0]).unwrap();
            assert_abs_diff_eq!(k, 4.0, epsilon = 1e-11);
        }
    }

    #[test]
    fn riemann_antisymmetry_is_exact() {
        let conn = LeviCivita::new(Sphere2);
        let r = riemann_tensor(&conn, &[0.9, 0.1]).unwrap();
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    for d in 0..2 {
                        assert_eq!(r.get(a, b, c, d) + r.get(a, b, d, c), 0.0);
                    }
                }
            }
        }
    }
}
