//! Dense symmetric matrices and the cyclic Jacobi eigensolver.

use crate::graph::{Graph, VertexSet};
use crate::{Error, Result};

/// Off-diagonal Frobenius norm below `JACOBI_TOL * n` counts as converged.
const JACOBI_TOL: f64 = 1e-13;
const JACOBI_SWEEP_CAP: usize = 100;

/// Dense real symmetric matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct SymMatrix {
    n: usize,
    a: Vec<f64>,
}

impl SymMatrix {
    /// Builds from an entry function; the strict upper triangle is mirrored.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<SymMatrix> {
        let mut a = vec![0.0; n * n];
        for i in 0..n {
            for j in i..n {
                let val = f(i, j);
                if !val.is_finite() {
                    return Err(Error::NonFiniteEntry(i, j));
                }
                a[i * n + j] = val;
                a[j * n + i] = val;
            }
        }
        Ok(SymMatrix { n, a })
    }

    pub fn identity(n: usize) -> SymMatrix {
        SymMatrix::from_fn(n, |i, j| if i == j { 1.0 } else { 0.0 }).unwrap()
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.a[i * self.n + j]
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    /// Principal submatrix on the given rows/columns, in ascending order.
    pub fn principal_submatrix(&self, rows: VertexSet) -> SymMatrix {
        let idx = rows.to_vec();
        SymMatrix::from_fn(idx.len(), |i, j| self.get(idx[i], idx[j])).unwrap()
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n);
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) * x[j]).sum())
            .collect()
    }

    /// Eigenvalues in descending order.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        let (vals, _) = jacobi(self, false)?;
        Ok(vals)
    }

    /// Eigenvalues (descending) with matching orthonormal eigenvectors.
    pub fn eigenpairs(&self) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
        let (vals, vecs) = jacobi(self, true)?;
        Ok((vals, vecs.unwrap()))
    }
}

/// The normalized Laplacian `I - D^{-1/2} A D^{-1/2}`.
///
/// Diagonal entries are 1; entry `(u, v)` is `-1/sqrt(d_u d_v)` when `u ~ v`
/// and 0 otherwise. Requires minimum degree at least 1.
pub fn normalized_laplacian(g: &Graph) -> Result<SymMatrix> {
    if let Some(u) = g.vertices().find(|&u| g.degree(u) == 0) {
        return Err(Error::IsolatedVertex(u));
    }
    let deg: Vec<f64> = g.vertices().map(|u| g.degree(u) as f64).collect();
    SymMatrix::from_fn(g.order(), |i, j| {
        if i == j {
            1.0
        } else if g.has_edge(i, j) {
            -1.0 / (deg[i] * deg[j]).sqrt()
        } else {
            0.0
        }
    })
}

/// An approximate eigenpair of a symmetric matrix.
#[derive(Clone, Debug)]
pub struct EigenPair {
    pub value: f64,
    pub vector: Vec<f64>,
}

/// `max_i |(M v - lambda v)_i|`.
pub fn eigenvector_residual(m: &SymMatrix, pair: &EigenPair) -> Result<f64> {
    if pair.vector.len() != m.order() {
        return Err(Error::DimensionMismatch(format!(
            "vector length {} vs matrix order {}",
            pair.vector.len(),
            m.order()
        )));
    }
    let mv = m.mul_vec(&pair.vector);
    Ok(mv
        .iter()
        .zip(&pair.vector)
        .map(|(a, b)| (a - pair.value * b).abs())
        .fold(0.0, f64::max))
}

/// Numerical rank of `L(g) - theta I`: singular values above `tol * n`.
pub fn rank_shifted(g: &Graph, theta: f64, tol: f64) -> Result<usize> {
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let l = normalized_laplacian(g)?;
    let shifted = SymMatrix::from_fn(l.order(), |i, j| {
        l.get(i, j) - if i == j { theta } else { 0.0 }
    })?;
    let cutoff = tol * g.order() as f64;
    Ok(shifted
        .eigenvalues()?
        .iter()
        .filter(|v| v.abs() > cutoff)
        .count())
}

/// Two-sided eigenvalue interlacing of a principal submatrix, with `1e-9`
/// slack: `lambda_{i+n-s}(A) <= lambda_i(M) <= lambda_i(A)`.
pub fn interlacing_check(m: &SymMatrix, rows: VertexSet) -> Result<bool> {
    let n = m.order();
    let s = rows.len();
    if s == 0 || !rows.is_subset_of(VertexSet::full(n)) {
        return Err(Error::DimensionMismatch(format!(
            "row subset {rows:?} invalid for order {n}"
        )));
    }
    const SLACK: f64 = 1e-9;
    let full = m.eigenvalues()?;
    let sub = m.principal_submatrix(rows).eigenvalues()?;
    Ok((0..s).all(|i| sub[i] <= full[i] + SLACK && sub[i] >= full[i + n - s] - SLACK))
}

/// Cyclic Jacobi with accumulated rotations.
fn jacobi(m: &SymMatrix, want_vectors: bool) -> Result<(Vec<f64>, Option<Vec<Vec<f64>>>)> {
    let n = m.n;
    let mut a = m.a.clone();
    let mut v = if want_vectors {
        let mut id = vec![0.0; n * n];
        for i in 0..n {
            id[i * n + i] = 1.0;
        }
        Some(id)
    } else {
        None
    };

    let off = |a: &[f64]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                s += 2.0 * a[i * n + j] * a[i * n + j];
            }
        }
        s.sqrt()
    };

    let mut converged = n < 2 || off(&a) < JACOBI_TOL * n as f64;
    for _ in 0..JACOBI_SWEEP_CAP {
        if converged {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let tau = (aqq - app) / (2.0 * apq);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for i in 0..n {
                    if i != p && i != q {
                        let aip = a[i * n + p];
                        let aiq = a[i * n + q];
                        a[i * n + p] = c * aip - s * aiq;
                        a[p * n + i] = a[i * n + p];
                        a[i * n + q] = s * aip + c * aiq;
                        a[q * n + i] = a[i * n + q];
                    }
                }
                a[p * n + p] = c * c * app - 2.0 * s * c * apq + s * s * aqq;
                a[q * n + q] = s * s * app + 2.0 * s * c * apq + c * c * aqq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                if let Some(v) = v.as_mut() {
                    for i in 0..n {
                        let vip = v[i * n + p];
                        let viq = v[i * n + q];
                        v[i * n + p] = c * vip - s * viq;
                        v[i * n + q] = s * vip + c * viq;
                    }
                }
            }
        }
        converged = off(&a) < JACOBI_TOL * n as f64;
    }
    if !converged {
        return Err(Error::JacobiNonConvergence);
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[j * n + j].total_cmp(&a[i * n + i]));
    let vals: Vec<f64> = order.iter().map(|&i| a[i * n + i]).collect();
    let vecs = v.map(|v| {
        order
            .iter()
            .map(|&col| (0..n).map(|row| v[row * n + col]).collect())
            .collect()
    });
    Ok((vals, vecs))
}
