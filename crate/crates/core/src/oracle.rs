//! Dense direct solve of `(I - P) X = B`, the ground truth for fixed points.
//!
//! Gaussian elimination with partial pivoting on an explicit `N×N` copy. It
//! shares nothing with the iterative code paths apart from `matvec`, which is
//! used only for the final residual check.

use alloc::vec::Vec;

use crate::{DenseVector, Error, Result, SparseColumnMatrix};

/// Largest dimension accepted by [`dense_solve_oracle`].
pub const MAX_DENSE_DIM: usize = 1000;

/// Relative residual bound enforced on every solve.
pub const RESIDUAL_BOUND: f64 = 1e-10;

/// Solves `(I - P) X = B`.
///
/// The result is rejected unless `|(I - P) X - B|_1 <= 1e-10 · |B|_1`.
pub fn dense_solve_oracle(p: &SparseColumnMatrix, b: &DenseVector) -> Result<DenseVector> {
    let n = p.dim();
    if n > MAX_DENSE_DIM {
        return Err(Error::TooLarge {
            dim: n,
            max: MAX_DENSE_DIM,
        });
    }
    b.check_len(n)?;

    // a = I - P, row-major
    let mut a: Vec<f64> = p.to_dense().into_iter().map(|v| -v).collect();
    for i in 0..n {
        a[i * n + i] += 1.0;
    }
    let scale = a.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let mut rhs: Vec<f64> = b.as_slice().to_vec();

    for k in 0..n {
        let pivot_row = (k..n)
            .max_by(|&r, &s| a[r * n + k].abs().total_cmp(&a[s * n + k].abs()))
            .unwrap_or(k);
        let pivot = a[pivot_row * n + k];
        if pivot.abs() <= f64::EPSILON * scale * n as f64 {
            return Err(Error::Singular { column: k + 1 });
        }
        if pivot_row != k {
            for j in 0..n {
                a.swap(k * n + j, pivot_row * n + j);
            }
            rhs.swap(k, pivot_row);
        }
        for r in k + 1..n {
            let factor = a[r * n + k] / pivot;
            if factor == 0.0 {
                continue;
            }
            a[r * n + k] = 0.0;
            for j in k + 1..n {
                a[r * n + j] -= factor * a[k * n + j];
            }
            rhs[r] -= factor * rhs[k];
        }
    }

    let mut x = alloc::vec![0.0; n];
    for k in (0..n).rev() {
        let tail: f64 = (k + 1..n).map(|j| a[k * n + j] * x[j]).sum();
        x[k] = (rhs[k] - tail) / a[k * n + k];
    }
    let x = DenseVector::from(x);

    let px = p.matvec(&x)?;
    let residual: f64 = (0..n).map(|i| (x[i] - px[i] - b[i]).abs()).sum();
    let bound = RESIDUAL_BOUND * b.l1_norm();
    if residual > bound {
        return Err(Error::OracleResidual { residual, bound });
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_operator_returns_b() {
        let p = SparseColumnMatrix::zero(4).unwrap();
        let b = DenseVector::from(alloc::vec![1.0, -2.0, 0.5, 3.0]);
        assert_eq!(dense_solve_oracle(&p, &b).unwrap(), b);
    }

    #[test]
    fn zero_rhs_returns_zero() {
        let p = SparseColumnMatrix::from_dense(2, &[0.2, 0.3, 0.1, 0.4]).unwrap();
        let x = dense_solve_oracle(&p, &DenseVector::zeros(2)).unwrap();
        assert!(x.is_zero());
    }

    #[test]
    fn needs_pivoting() {
        // I - P = [[0, 1], [1, 0]] has a zero leading entry.
        let p = SparseColumnMatrix::from_dense(2, &[1.0, -1.0, -1.0, 1.0]).unwrap();
        let b = DenseVector::from(alloc::vec![2.0, 3.0]);
        let x = dense_solve_oracle(&p, &b).unwrap();
        assert!((x[0] - 3.0).abs() < 1e-15 && (x[1] - 2.0).abs() < 1e-15);
    }

    #[test]
    fn singular_system_is_rejected() {
        let p = SparseColumnMatrix::identity(3).unwrap();
        assert!(matches!(
            dense_solve_oracle(&p, &DenseVector::filled(3, 1.0)),
            Err(Error::Singular { .. })
        ));
    }

    #[test]
    fn dimension_mismatch() {
        let p = SparseColumnMatrix::zero(3).unwrap();
        assert!(dense_solve_oracle(&p, &DenseVector::zeros(2)).is_err());
    }
}
