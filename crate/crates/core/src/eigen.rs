//! Cyclic Jacobi eigenvalue solver for dense real symmetric matrices.

use nalgebra::DMatrix;

use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 64;
/// Stop once the off-diagonal Frobenius norm falls below this fraction of
/// the full norm.
const OFF_DIAGONAL_TOL: f64 = 1e-12;

fn off_diagonal_norm(a: &DMatrix<f64>) -> f64 {
    let n = a.nrows();
    let mut sum = 0.0;
    for j in 0..n {
        for i in 0..n {
            if i != j {
                sum += a[(i, j)] * a[(i, j)];
            }
        }
    }
    sum.sqrt()
}

/// Eigenvalues of a real symmetric matrix in ascending order.
///
/// Only the symmetric part of the input is used. Each sweep visits every
/// off-diagonal pair once and zeroes it with a plane rotation.
pub fn jacobi_eigenvalues(matrix: &DMatrix<f64>) -> Result<Vec<f64>> {
    let n = matrix.nrows();
    if n != matrix.ncols() {
        return Err(Error::InvalidParameter(format!("matrix is {}x{}, not square", n, matrix.ncols())));
    }
    if matrix.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidParameter("matrix has non-finite entries".into()));
    }
    let mut a = (matrix + matrix.transpose()) * 0.5;
    let norm = a.norm();
    let target = OFF_DIAGONAL_TOL * norm;

    let mut converged = off_diagonal_norm(&a) <= target;
    let mut sweep = 0;
    while !converged {
        if sweep == MAX_SWEEPS {
            return Err(Error::Convergence(format!(
                "Jacobi: off-diagonal norm {} after {MAX_SWEEPS} sweeps (target {target})",
                off_diagonal_norm(&a)
            )));
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = if theta.is_finite() {
                    theta.signum() / (theta.abs() + theta.hypot(1.0))
                } else {
                    // |theta| overflowed: rotation angle ~ 1/(2 theta)
                    0.0
                };
                if t == 0.0 {
                    a[(p, q)] = 0.0;
                    a[(q, p)] = 0.0;
                    continue;
                }
                let c = 1.0 / t.hypot(1.0);
                let s = t * c;
                a[(p, p)] -= t * apq;
                a[(q, q)] += t * apq;
                a[(p, q)] = 0.0;
                a[(q, p)] = 0.0;
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let arp = a[(r, p)];
                    let arq = a[(r, q)];
                    let new_rp = c * arp - s * arq;
                    let new_rq = s * arp + c * arq;
                    a[(r, p)] = new_rp;
                    a[(p, r)] = new_rp;
                    a[(r, q)] = new_rq;
                    a[(q, r)] = new_rq;
                }
            }
        }
        sweep += 1;
        converged = off_diagonal_norm(&a) <= target;
    }
    let mut values: Vec<f64> = (0..n).map(|i| a[(i, i)]).collect();
    values.sort_by(f64::total_cmp);
    Ok(values)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two() {
        let m = DMatrix::from_row_slice(2, 2, &[2.0, 1.0, 1.0, 2.0]);
        let ev = jacobi_eigenvalues(&m).unwrap();
        assert!((ev[0] - 1.0).abs() < 1e-15 && (ev[1] - 3.0).abs() < 1e-15);
    }

    #[test]
    fn diagonal_is_untouched() {
        let m = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![3.0, -1.0, 0.5]));
        assert_eq!(jacobi_eigenvalues(&m).unwrap(), vec![-1.0, 0.5, 3.0]);
    }

    #[test]
    fn matches_nalgebra_on_dense_matrix() {
        let n = 12;
        let m = DMatrix::from_fn(n, n, |i, j| {
            let (i, j) = (i.min(j) as f64, i.max(j) as f64);
            (0.3 * i + 0.7 * j).sin() + if i == j { i } else { 0.0 }
        });
        let ours = jacobi_eigenvalues(&m).unwrap();
        let mut theirs: Vec<f64> = m.clone().symmetric_eigen().eigenvalues.iter().copied().collect();
        theirs.sort_by(f64::total_cmp);
        for (a, b) in ours.iter().zip(&theirs) {
            assert!((a - b).abs() < 1e-12, "{a} vs {b}");
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(jacobi_eigenvalues(&DMatrix::<f64>::zeros(2, 3)).is_err());
        let mut m = DMatrix::<f64>::identity(2, 2);
        m[(0, 1)] = f64::NAN;
        assert!(jacobi_eigenvalues(&m).is_err());
    }
}
