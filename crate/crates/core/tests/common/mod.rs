//! Finite-difference oracles, independent of the dual-number derivative
//! path they are used to check.

#![allow(clippy::needless_range_loop)]

use riex_core::connection::ConnectionField;
use riex_core::metric::MetricField;
use riex_core::tensor::{Matrix, Rank3, Rank4, SymMat};

pub const FD_STEP: f64 = 1e-5;

fn metric_at<M: MetricField + ?Sized>(metric: &M, p: &[f64]) -> SymMat<f64> {
    metric.eval(p).expect("oracle metric evaluation")
}

/// Central-difference partials of the metric components.
pub fn fd_metric_derivatives<M: MetricField + ?Sized>(
    metric: &M,
    p: &[f64],
) -> Vec<SymMat<f64>> {
    let n = metric.dim();
    (0..n)
        .map(|m| {
            let mut plus = p.to_vec();
            let mut minus = p.to_vec();
            plus[m] += FD_STEP;
            minus[m] -= FD_STEP;
            let gp = metric_at(metric, &plus);
            let gm = metric_at(metric, &minus);
            SymMat::from_fn(n, |i, j| (gp.get(i, j) - gm.get(i, j)) / (2.0 * FD_STEP))
        })
        .collect()
}

/// Levi-Civita formula evaluated with finite-difference metric derivatives.
pub fn fd_christoffel<M: MetricField + ?Sized>(metric: &M, p: &[f64]) -> Rank3<f64> {
    let n = metric.dim();
    let g = metric_at(metric, p);
    let (_, ginv) = g.to_dense().det_and_inverse();
    let ginv: Matrix<f64> = ginv.expect("oracle metric invertible");
    let dg = fd_metric_derivatives(metric, p);
    let mut gamma = Rank3::zeros(n);
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0.0;
                for l in 0..n {
                    acc += ginv.get(k, l)
                        * (dg[i].get(j, l) + dg[j].get(i, l) - dg[l].get(i, j));
                }
                gamma.set(k, i, j, 0.5 * acc);
            }
        }
    }
    gamma
}

/// Curvature formula evaluated with finite-difference connection
/// derivatives: R^a_bcd = d_c G^a_db - d_d G^a_cb + G^a_ce G^e_db
/// - G^a_de G^e_cb.
pub fn fd_riemann<C: ConnectionField + ?Sized>(conn: &C, p: &[f64]) -> Rank4<f64> {
    let n = conn.dim();
    let gamma = conn.eval(p).expect("oracle connection evaluation");
    let dgamma: Vec<Rank3<f64>> = (0..n)
        .map(|m| {
            let mut plus = p.to_vec();
            let mut minus = p.to_vec();
            plus[m] += FD_STEP;
            minus[m] -= FD_STEP;
            let gp = conn.eval(&plus).expect("oracle connection evaluation");
            let gm = conn.eval(&minus).expect("oracle connection evaluation");
            let mut d = Rank3::zeros(n);
            for k in 0..n {
                for i in 0..n {
                    for j in 0..n {
                        d.set(
                            k,
                            i,
                            j,
                            (gp.get(k, i, j) - gm.get(k, i, j)) / (2.0 * FD_STEP),
                        );
                    }
                }
            }
            d
        })
        .collect();
    let mut r = Rank4::zeros(n);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let mut quad = 0.0;
                    for e in 0..n {
                        quad += gamma.get(a, c, e) * gamma.get(e, d, b)
                            - gamma.get(a, d, e) * gamma.get(e, c, b);
                    }
                    r.set(
                        a,
                        b,
                        c,
                        d,
                        dgamma[c].get(a, d, b) - dgamma[d].get(a, c, b) + quad,
                    );
                }
            }
        }
    }
    r
}

/// max |nabla_k g_ij| at p for the Levi-Civita connection of the metric.
pub fn metric_compatibility_defect<M: MetricField + ?Sized>(metric: &M, p: &[f64]) -> f64 {
    let n = metric.dim();
    let gamma = riex_core::christoffel(metric, p).expect("connection");
    let dg = {
        // exact derivatives through duals, evaluated coordinate by coordinate
        use riex_core::dual::Dual;
        let lift = |m: usize| {
            let pt: Vec<Dual<f64>> = p
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
            let g = metric.eval(&pt).expect("metric evaluation");
            SymMat::from_fn(n, |i, j| g.get(i, j).eps)
        };
        (0..n).map(lift).collect::<Vec<_>>()
    };
    let g = metric_at(metric, p);
    let mut worst = 0.0f64;
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let mut v = dg[k].get(i, j);
                for l in 0..n {
                    v -= gamma.get(l, k, i) * g.get(l, j) + gamma.get(l, k, j) * g.get(i, l);
                }
                worst = worst.max(v.abs());
            }
        }
    }
    worst
}
