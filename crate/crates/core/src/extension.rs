//! The 2n-dimensional metric extension of a symmetric affine connection.
//!
//! Each base coordinate x^k is paired with a fiber coordinate Psi_k; the
//! extended line element is
//!
//!   ds^2 = -2 Gamma^k_ij Psi_k dx^i dx^j + 2 dPsi_k dx^k,
//!
//! i.e. the base-base block is -2 Gamma^k_ij Psi_k, the base-fiber block is
//! the identity and the fiber-fiber block vanishes.

use crate::connection::ConnectionField;
use crate::error::{Error, Result};
use crate::metric::MetricField;
use crate::scalar::Scalar;
use crate::tensor::{sym_eigenvalues, SymMat};
use serde::Serialize;

/// Coordinate labels for a doubled chart.
#[derive(Clone, Debug)]
pub struct ExtendedChart {
    pub base_dim: usize,
    pub base_names: Vec<String>,
    pub fiber_names: Vec<String>,
}

impl ExtendedChart {
    pub fn new(base_names: &[&str], fiber_names: &[&str]) -> Self {
        assert_eq!(base_names.len(), fiber_names.len());
        ExtendedChart {
            base_dim: base_names.len(),
            base_names: base_names.iter().map(|s| s.to_string()).collect(),
            fiber_names: fiber_names.iter().map(|s| s.to_string()).collect(),
        }
    }

    /// (x, y, z, t) doubled by (P, Q, U, V).
    pub fn anti_mach() -> Self {
        ExtendedChart::new(&["x", "y", "z", "t"], &["P", "Q", "U", "V"])
    }

    /// x1..xn doubled by psi1..psin.
    pub fn generic(n: usize) -> Self {
        ExtendedChart {
            base_dim: n,
            base_names: (1..=n).map(|i| format!("x{i}")).collect(),
            fiber_names: (1..=n).map(|i| format!("psi{i}")).collect(),
        }
    }

    pub fn total_dim(&self) -> usize {
        2 * self.base_dim
    }

    /// All 2n coordinate labels, base first.
    pub fn names(&self) -> Vec<String> {
        self.base_names
            .iter()
            .chain(self.fiber_names.iter())
            .cloned()
            .collect()
    }
}

/// The extension of a connection, as a metric field on the doubled chart.
#[derive(Clone, Debug)]
pub struct Extension<C> {
    conn: C,
    chart: ExtendedChart,
}

impl<C: ConnectionField> Extension<C> {
    pub fn new(conn: C, chart: ExtendedChart) -> Self {
        assert_eq!(conn.dim(), chart.base_dim);
        Extension { conn, chart }
    }

    pub fn chart(&self) -> &ExtendedChart {
        &self.chart
    }

    pub fn connection(&self) -> &C {
        &self.conn
    }
}

/// Construct the extended metric of a symmetric connection with generic
/// fiber labels. Use [`Extension::new`] to attach custom labels.
pub fn extend<C: ConnectionField>(conn: C) -> Extension<C> {
    let n = conn.dim();
    Extension::new(conn, ExtendedChart::generic(n))
}

impl<C: ConnectionField> MetricField for Extension<C> {
    fn dim(&self) -> usize {
        self.chart.total_dim()
    }

    fn derivative_order(&self) -> usize {
        self.conn.derivative_order()
    }

    fn eval<S: Scalar>(&self, point: &[S]) -> Result<SymMat<S>> {
        let n = self.chart.base_dim;
        if point.len() != 2 * n {
            return Err(Error::DimensionMismatch {
                expected: 2 * n,
                got: point.len(),
            });
        }
        let (base, fiber) = point.split_at(n);
        let gamma = self.conn.eval(base)?;
        let minus_two = S::from_f64(-2.0);
        let mut g = SymMat::zeros(2 * n);
        for i in 0..n {
            for j in i..n {
                let mut acc = S::zero();
                for k in 0..n {
                    acc = acc + gamma.get(k, i, j) * fiber[k];
                }
                g.set(i, j, minus_two * acc);
            }
            g.set(i, n + i, S::one());
        }
        Ok(g)
    }
}

/// Eigenvalue sign counts (positive, negative) of a metric at a point.
pub fn extended_signature<M: MetricField + ?Sized>(
    metric: &M,
    point: &[f64],
) -> Result<(usize, usize)> {
    let g = metric.eval(point)?;
    let eig = sym_eigenvalues(&g.to_dense());
    if eig.iter().any(|l| l.abs() < crate::tensor::SINGULAR_DET_THRESHOLD) {
        let det = eig.iter().product();
        return Err(Error::SingularMetric { det });
    }
    let neg = eig.iter().filter(|&&l| l < 0.0).count();
    let pos = eig.len() - neg;
    Ok((pos, neg))
}

/// One structurally nonzero component of an extended metric, evaluated at a
/// query point.
#[derive(Clone, Debug, Serialize)]
pub struct MetricComponent {
    pub i: usize,
    pub j: usize,
    pub label: String,
    pub value: f64,
}

/// JSON-facing snapshot of an extended metric at one point.
#[derive(Clone, Debug, Serialize)]
pub struct ExtensionComponents {
    pub schema: u32,
    pub base_dim: usize,
    pub coords: Vec<String>,
    pub point: Vec<f64>,
    pub components: Vec<MetricComponent>,
    pub det: f64,
    pub signature: (usize, usize),
}

/// Export the structurally nonzero components of `ext` at `point`.
///
/// Structural nonzeroness is decided by probing a fixed set of pseudo-random
/// points: a component is kept when it is nonzero at any probe or at the
/// query point itself.
pub fn extension_components<C: ConnectionField>(
    ext: &Extension<C>,
    point: &[f64],
) -> Result<ExtensionComponents> {
    let dim = ext.dim();
    let g = ext.eval(point)?;
    let names = ext.chart().names();

    // fixed probes, deterministic
    let mut probes = Vec::new();
    let mut state = 0x9e3779b97f4a7c15u64;
    for _ in 0..8 {
        let mut p = Vec::with_capacity(dim);
        for _ in 0..dim {
            // xorshift64*, mapped into [-2, 2]
            state ^= state >> 12;
            state ^= state << 25;
            state ^= state >> 27;
            let r = (state.wrapping_mul(0x2545F4914F6CDD1D) >> 11) as f64
                / (1u64 << 53) as f64;
            p.push(4.0 * r - 2.0);
        }
        probes.push(p);
    }

    let mut mask = vec![false; dim * dim];
    for p in &probes {
        let gp = ext.eval(p.as_slice())?;
        for i in 0..dim {
            for j in i..dim {
                if gp.get(i, j) != 0.0 {
                    mask[i * dim + j] = true;
                }
            }
        }
    }
    let mut components = Vec::new();
    for i in 0..dim {
        for j in i..dim {
            if mask[i * dim + j] || g.get(i, j) != 0.0 {
                components.push(MetricComponent {
                    i,
                    j,
                    label: format!("g_{{{},{}}}", names[i], names[j]),
                    value: g.get(i, j),
                });
            }
        }
    }
    let det = g.to_dense().det();
    let signature = extended_signature(ext, point)?;
    Ok(ExtensionComponents {
        schema: 1,
        base_dim: ext.chart().base_dim,
        coords: names,
        point: point.to_vec(),
        components,
        det,
        signature,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connection::LeviCivita;
    use crate::metric::Flat;
    use crate::tensor::Rank3;
    use approx::assert_abs_diff_eq;

    /// Connection that vanishes identically.
    struct ZeroConnection {
        dim: usize,
    }

    impl ConnectionField for ZeroConnection {
        fn dim(&self) -> usize {
            self.dim
        }
        fn eval<S: Scalar>(&self, _point: &[S]) -> Result<Rank3<S>> {
            Ok(Rank3::zeros(self.dim))
        }
    }

    #[test]
    fn zero_connection_extension_is_hyperbolic_pairs() {
        let ext = extend(ZeroConnection { dim: 3 });
        let p = [0.5, -0.7, 2.0, 1.0, 1.0, 1.0];
        let g = ext.eval(&p[..]).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(g.get(i, j), 0.0);
                assert_eq!(g.get(3 + i, 3 + j), 0.0);
                let expect = if i == j { 1.0 } else { 0.0 };
                assert_eq!(g.get(i, 3 + j), expect);
            }
        }
        assert_eq!(extended_signature(&ext, &p[..]).unwrap(), (3, 3));
        // det = (-1)^n
        assert_abs_diff_eq!(g.to_dense().det(), -1.0, epsilon = 1e-14);
    }

    #[test]
    fn wrong_dimension_rejected() {
        let ext = extend(ZeroConnection { dim: 3 });
        let err = ext.eval(&[0.0; 5][..]).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { expected: 6, got: 5 }));
    }

    #[test]
    fn flat_levi_civita_extension_is_constant() {
        let ext = extend(LeviCivita::new(Flat { dim: 2 }));
        let g = ext.eval(&[3.0, -1.0, 0.4, 0.9][..]).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(g.get(i, j), 0.0);
            }
        }
        assert_eq!(extended_signature(&ext, &[0.0; 4][..]).unwrap(), (2, 2));
    }
}
