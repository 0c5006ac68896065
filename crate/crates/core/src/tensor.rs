//! Dense tensor containers and the small linear algebra the toolkit needs.
//!
//! Dimensions stay at n <= 8 throughout, so everything is a dense `Vec` and
//! the solvers are straightforward: LU with partial pivoting (generic over
//! [`Scalar`], so it also runs on dual numbers) and a cyclic Jacobi
//! eigensolver for symmetric `f64` matrices.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Symmetric matrix with packed upper-triangle storage. Symmetry is exact by
/// construction: `(i, j)` and `(j, i)` read the same slot.
#[derive(Clone, Debug, PartialEq)]
pub struct SymMat<S> {
    dim: usize,
    data: Vec<S>,
}

#[inline]
fn sym_index(dim: usize, i: usize, j: usize) -> usize {
    let (r, c) = if i <= j { (i, j) } else { (j, i) };
    // row-major packed upper triangle
    r * dim - r * (r + 1) / 2 + c
}

impl<S: Scalar> SymMat<S> {
    pub fn zeros(dim: usize) -> Self {
        SymMat {
            dim,
            data: vec![S::zero(); dim * (dim + 1) / 2],
        }
    }

    /// Build from a function of the index pair; called once per `i <= j`.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut m = SymMat::zeros(dim);
        for i in 0..dim {
            for j in i..dim {
                m.data[sym_index(dim, i, j)] = f(i, j);
            }
        }
        m
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> S {
        self.data[sym_index(self.dim, i, j)]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[sym_index(self.dim, i, j)] = v;
    }

    pub fn to_dense(&self) -> Matrix<S> {
        Matrix::from_fn(self.dim, |i, j| self.get(i, j))
    }

    /// Quadratic form v^T g v.
    pub fn quadratic_form(&self, v: &[S]) -> S {
        let mut acc = S::zero();
        for i in 0..self.dim {
            for j in 0..self.dim {
                acc = acc + self.get(i, j) * v[i] * v[j];
            }
        }
        acc
    }
}

/// Dense square matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<S> {
    dim: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(dim: usize) -> Self {
        Matrix {
            dim,
            data: vec![S::zero(); dim * dim],
        }
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut m = Matrix::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m.data[i * dim + j] = f(i, j);
            }
        }
        m
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> S {
        self.data[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.dim + j] = v;
    }

    /// LU decomposition with partial pivoting (pivot chosen on the primal
    /// part, so this works on dual towers as well). Returns the determinant
    /// together with the inverse.
    pub fn det_and_inverse(&self) -> (S, Option<Matrix<S>>) {
        let n = self.dim;
        let mut a = self.data.clone();
        // augmented identity
        let mut inv = Matrix::from_fn(n, |i, j| if i == j { S::one() } else { S::zero() });
        let mut det = S::one();

        for col in 0..n {
            // pivot on largest primal magnitude
            let mut piv = col;
            let mut best = a[col * n + col].primal().abs();
            for r in (col + 1)..n {
                let mag = a[r * n + col].primal().abs();
                if mag > best {
                    best = mag;
                    piv = r;
                }
            }
            if best == 0.0 {
                return (S::zero(), None);
            }
            if piv != col {
                for c in 0..n {
                    a.swap(piv * n + c, col * n + c);
                    inv.data.swap(piv * n + c, col * n + c);
                }
                det = -det;
            }
            let diag = a[col * n + col];
            det = det * diag;
            let dinv = S::one() / diag;
            for c in 0..n {
                a[col * n + c] = a[col * n + c] * dinv;
                inv.data[col * n + c] = inv.data[col * n + c] * dinv;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = a[r * n + col];
                if factor.primal() == 0.0 && factor.is_zero() {
                    continue;
                }
                for c in 0..n {
                    a[r * n + c] = a[r * n + c] - factor * a[col * n + c];
                    inv.data[r * n + c] = inv.data[r * n + c] - factor * inv.data[col * n + c];
                }
            }
        }
        (det, Some(inv))
    }

    pub fn det(&self) -> S {
        self.det_and_inverse().0
    }
}

/// Determinant threshold below which a metric counts as singular.
pub const SINGULAR_DET_THRESHOLD: f64 = 1e-12;

/// Invert a symmetric matrix, raising `SingularMetric` when |det| falls
/// below [`SINGULAR_DET_THRESHOLD`].
pub fn invert_metric<S: Scalar>(g: &SymMat<S>) -> Result<(S, Matrix<S>)> {
    let (det, inv) = g.to_dense().det_and_inverse();
    let mag = det.primal().abs();
    if mag < SINGULAR_DET_THRESHOLD {
        return Err(Error::SingularMetric { det: det.primal() });
    }
    Ok((det, inv.expect("determinant above threshold")))
}

/// Rank-(1,2) array indexed as `[k][i][j]` (connection coefficients).
#[derive(Clone, Debug, PartialEq)]
pub struct Rank3<S> {
    dim: usize,
    data: Vec<S>,
}

impl<S: Scalar> Rank3<S> {
    pub fn zeros(dim: usize) -> Self {
        Rank3 {
            dim,
            data: vec![S::zero(); dim * dim * dim],
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, k: usize, i: usize, j: usize) -> S {
        self.data[(k * self.dim + i) * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, k: usize, i: usize, j: usize, v: S) {
        self.data[(k * self.dim + i) * self.dim + j] = v;
    }
}

/// Rank-(1,3) array indexed as `[a][b][c][d]` (curvature).
#[derive(Clone, Debug, PartialEq)]
pub struct Rank4<S> {
    dim: usize,
    data: Vec<S>,
}

impl<S: Scalar> Rank4<S> {
    pub fn zeros(dim: usize) -> Self {
        Rank4 {
            dim,
            data: vec![S::zero(); dim * dim * dim * dim],
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize, c: usize, d: usize) -> S {
        self.data[((a * self.dim + b) * self.dim + c) * self.dim + d]
    }

    #[inline]
    pub fn set(&mut self, a: usize, b: usize, c: usize, d: usize, v: S) {
        self.data[((a * self.dim + b) * self.dim + c) * self.dim + d] = v;
    }
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
pub fn sym_eigenvalues(m: &Matrix<f64>) -> Vec<f64> {
    let n = m.dim();
    let mut a = m.clone();
    for _ in 0..64 {
        let mut off = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                off += a.get(i, j).abs();
            }
        }
        if off < 1e-15 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a.get(p, q);
                if apq.abs() < 1e-300 {
                    continue;
                }
                let app = a.get(p, p);
                let aqq = a.get(q, q);
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    1.0 / (theta - (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a.get(k, p);
                    let akq = a.get(k, q);
                    a.set(k, p, c * akp - s * akq);
                    a.set(k, q, s * akp + c * akq);
                }
                for k in 0..n {
                    let apk = a.get(p, k);
                    let aqk = a.get(q, k);
                    a.set(p, k, c * apk - s * aqk);
                    a.set(q, k, s * apk + c * aqk);
                }
            }
        }
    }
    let mut eig: Vec<f64> = (0..n).map(|i| a.get(i, i)).collect();
    eig.sort_by(|x, y| x.partial_cmp(y).unwrap());
    eig
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn sym_storage_is_shared() {
        let mut m = SymMat::<f64>::zeros(3);
        m.set(2, 0, 7.0);
        assert_eq!(m.get(0, 2), 7.0);
        assert_eq!(m.get(2, 0), 7.0);
    }

    #[test]
    fn lu_inverse_of_known_matrix() {
        // anti-Mach base metric at t = 1
        let t = 1.0;
        let g = Matrix::from_fn(4, |i, j| match (i.min(j), i.max(j)) {
            (0, 0) => 1.0,
            (0, 2) => -2.0 * t,
            (1, 2) => 1.0,
            (2, 2) => 2.0 * t * t,
            (3, 3) => 1.0,
            _ => 0.0,
        });
        let (det, inv) = g.det_and_inverse();
        let inv = inv.unwrap();
        assert_abs_diff_eq!(det, -1.0, epsilon = 1e-14);
        // g * g^-1 = I
        for i in 0..4 {
            for j in 0..4 {
                let mut acc = 0.0;
                for k in 0..4 {
                    acc += g.get(i, k) * inv.get(k, j);
                }
                let expect = if i == j { 1.0 } else { 0.0 };
                assert_abs_diff_eq!(acc, expect, epsilon = 1e-14);
            }
        }
        // closed-form inverse entries
        assert_abs_diff_eq!(inv.get(0, 1), 2.0 * t, epsilon = 1e-14);
        assert_abs_diff_eq!(inv.get(1, 1), 2.0 * t * t, epsilon = 1e-14);
        assert_abs_diff_eq!(inv.get(1, 2), 1.0, epsilon = 1e-14);
    }

    #[test]
    fn lu_detects_singular() {
        let g = Matrix::from_fn(2, |_, _| 1.0);
        let (det, _) = g.det_and_inverse();
        assert_abs_diff_eq!(det, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn jacobi_eigenvalues_of_hyperbolic_pair_block() {
        // [[0, I], [I, 0]] in dimension 4: eigenvalues -1, -1, 1, 1
        let m = Matrix::from_fn(4, |i, j| if i + 2 == j || j + 2 == i { 1.0 } else { 0.0 });
        let eig = sym_eigenvalues(&m);
        assert_abs_diff_eq!(eig[0], -1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(eig[1], -1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(eig[2], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(eig[3], 1.0, epsilon = 1e-12);
    }

    #[test]
    fn jacobi_matches_characteristic_roots() {
        let m = Matrix::from_fn(2, |i, j| if i == j { 2.0 } else { 1.0 });
        let eig = sym_eigenvalues(&m);
        assert_abs_diff_eq!(eig[0], 1.0, epsilon = 1e-13);
        assert_abs_diff_eq!(eig[1], 3.0, epsilon = 1e-13);
    }
}
