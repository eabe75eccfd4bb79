//! Reference routines that share no code path with the main algorithms.
//! The regression suite checks the Jacobi solver against these.

use crate::linalg::SymMatrix;

/// Householder reduction to tridiagonal form, returning `(diagonal, off_diagonal)`.
fn tridiagonalize(matrix: &SymMatrix) -> (Vec<f64>, Vec<f64>) {
    let n = matrix.n();
    let mut a: Vec<Vec<f64>> = matrix.rows().map(<[f64]>::to_vec).collect();
    for k in 0..n.saturating_sub(2) {
        let alpha_sq: f64 = (k + 1..n).map(|i| a[i][k] * a[i][k]).sum();
        if alpha_sq == 0.0 {
            continue;
        }
        let alpha = -a[k + 1][k].signum() * alpha_sq.sqrt();
        let mut v = vec![0.0; n];
        v[k + 1] = a[k + 1][k] - alpha;
        for i in k + 2..n {
            v[i] = a[i][k];
        }
        let vnorm_sq: f64 = v.iter().map(|x| x * x).sum();
        if vnorm_sq == 0.0 {
            continue;
        }
        // A ← H A H with H = I - 2 v vᵀ / (vᵀ v)
        let p: Vec<f64> = (0..n)
            .map(|i| 2.0 * (0..n).map(|j| a[i][j] * v[j]).sum::<f64>() / vnorm_sq)
            .collect();
        let kappa = (0..n).map(|i| v[i] * p[i]).sum::<f64>() / vnorm_sq;
        let q: Vec<f64> = (0..n).map(|i| p[i] - kappa * v[i]).collect();
        for i in 0..n {
            for j in 0..n {
                a[i][j] -= v[i] * q[j] + q[i] * v[j];
            }
        }
    }
    let diag = (0..n).map(|i| a[i][i]).collect();
    let off = (1..n).map(|i| a[i][i - 1]).collect();
    (diag, off)
}

/// Number of eigenvalues strictly below `x`, from the Sturm sequence of
/// leading principal minors of the tridiagonal form.
fn count_below(diag: &[f64], off: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut q = 1.0;
    for i in 0..diag.len() {
        let coupling = if i == 0 { 0.0 } else { off[i - 1] * off[i - 1] };
        q = diag[i] - x - if i == 0 { 0.0 } else { coupling / q };
        if q == 0.0 {
            q = -f64::EPSILON * (diag[i].abs() + x.abs() + 1.0);
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// Extreme eigenvalues by Sturm-sequence bisection.
pub fn bisection_eig_extremes(matrix: &SymMatrix) -> (f64, f64) {
    let (diag, off) = tridiagonalize(matrix);
    let n = diag.len();
    let mut radius = 0.0f64;
    for i in 0..n {
        let r =
            if i > 0 { off[i - 1].abs() } else { 0.0 } + if i + 1 < n { off[i].abs() } else { 0.0 };
        radius = radius.max(diag[i].abs() + r);
    }
    let (lo, hi) = (-radius - 1.0, radius + 1.0);
    // k-th smallest eigenvalue = inf { x : count_below(x) ≥ k + 1 }
    let kth = |k: usize| {
        let (mut a, mut b) = (lo, hi);
        for _ in 0..200 {
            let mid = 0.5 * (a + b);
            if count_below(&diag, &off, mid) > k {
                b = mid;
            } else {
                a = mid;
            }
        }
        0.5 * (a + b)
    };
    (kth(0), kth(n - 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_spectra() {
        let m = SymMatrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
        let (lo, hi) = bisection_eig_extremes(&m);
        assert!((lo - 1.0).abs() < 1e-14 && (hi - 3.0).abs() < 1e-14);
        // path graph Laplacian on 4 nodes: 2 - 2cos(kπ/4)
        let lap = SymMatrix::from_upper(4, |j, k| match k - j {
            0 => {
                if j == 0 || j == 3 {
                    1.0
                } else {
                    2.0
                }
            }
            1 => -1.0,
            _ => 0.0,
        });
        let (lo, hi) = bisection_eig_extremes(&lap);
        assert!(lo.abs() < 1e-13);
        assert!((hi - (2.0 + 2.0f64.sqrt())).abs() < 1e-13);
    }
}
