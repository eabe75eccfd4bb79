//! Dense symmetric matrices and a cyclic Jacobi eigenvalue solver.

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest matrix order accepted by the eigensolver.
pub const MAX_EIGEN_ORDER: usize = 512;
/// Jacobi iteration stops once `off(A)_F ≤ JACOBI_TOLERANCE · ‖A‖_F`.
pub const JACOBI_TOLERANCE: f64 = 1e-14;
const MAX_SWEEPS: usize = 100;

/// Square matrix stored row-major; the constructors here keep it exactly symmetric.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SymMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    /// Fills `j ≤ k` from `f(j, k)` and mirrors, so the result is symmetric bit for bit.
    pub fn try_from_upper<E>(
        n: usize,
        mut f: impl FnMut(usize, usize) -> std::result::Result<f64, E>,
    ) -> std::result::Result<Self, E> {
        let mut m = Self::zeros(n);
        for j in 0..n {
            for k in j..n {
                let v = f(j, k)?;
                m.data[j * n + k] = v;
                m.data[k * n + j] = v;
            }
        }
        Ok(m)
    }

    pub fn from_upper(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        Self::try_from_upper::<std::convert::Infallible>(n, |j, k| Ok(f(j, k)))
            .unwrap_or_else(|never| match never {})
    }

    /// Row-major rows; fails unless square and exactly symmetric.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::argument("matrix must be square"));
        }
        let m = Self {
            n,
            data: rows.concat(),
        };
        if m.symmetry_residual() != 0.0 {
            return Err(Error::argument("matrix must be exactly symmetric"));
        }
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, j: usize, k: usize) -> f64 {
        self.data[j * self.n + k]
    }

    pub fn row(&self, j: usize) -> &[f64] {
        &self.data[j * self.n..(j + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks(self.n.max(1))
    }

    /// `max |A_jk|`.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// `max |A_jk - A_kj|`.
    pub fn symmetry_residual(&self) -> f64 {
        let mut r = 0.0f64;
        for j in 0..self.n {
            for k in j + 1..self.n {
                r = r.max((self.get(j, k) - self.get(k, j)).abs());
            }
        }
        r
    }

    /// `P A P` with `P = I - (1/n) 1 1ᵀ`, computed by double centering.
    pub fn double_centered(&self) -> Self {
        let n = self.n;
        if n == 0 {
            return self.clone();
        }
        let nf = n as f64;
        let means: Vec<f64> = (0..n)
            .map(|j| self.row(j).iter().sum::<f64>() / nf)
            .collect();
        let grand = means.iter().sum::<f64>() / nf;
        Self::from_upper(n, |j, k| self.get(j, k) - means[j] - means[k] + grand)
    }
}

fn off_diagonal_norm(a: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for j in 0..n {
        for k in 0..n {
            if j != k {
                s += a[j * n + k] * a[j * n + k];
            }
        }
    }
    s.sqrt()
}

/// All eigenvalues (ascending) by cyclic Jacobi rotations.
pub fn jacobi_eigenvalues(matrix: &SymMatrix) -> Result<Vec<f64>> {
    let n = matrix.n();
    if n > MAX_EIGEN_ORDER {
        return Err(Error::argument(format!(
            "matrix order {n} exceeds the supported maximum {MAX_EIGEN_ORDER}"
        )));
    }
    if matrix.data.iter().any(|v| !v.is_finite()) {
        return Err(Error::Numeric("matrix has non-finite entries".into()));
    }
    let mut a = matrix.data.clone();
    let target = JACOBI_TOLERANCE * matrix.frobenius();
    let mut previous_off = f64::INFINITY;
    for _ in 0..MAX_SWEEPS {
        let off = off_diagonal_norm(&a, n);
        // Stagnation means the off-diagonal mass is already at rounding level.
        if off <= target || off >= previous_off {
            break;
        }
        previous_off = off;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let (app, aqq) = (a[p * n + p], a[q * n + q]);
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + theta.hypot(1.0));
                let c = 1.0 / t.hypot(1.0);
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
            }
        }
    }
    let mut eig: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    eig.sort_by(f64::total_cmp);
    Ok(eig)
}

/// `(min_eig, max_eig)` of a symmetric matrix.
pub fn sym_eig_extremes(matrix: &SymMatrix) -> Result<(f64, f64)> {
    if matrix.n() == 0 {
        return Err(Error::argument("empty matrix has no eigenvalues"));
    }
    let eig = jacobi_eigenvalues(matrix)?;
    Ok((eig[0], eig[eig.len() - 1]))
}
