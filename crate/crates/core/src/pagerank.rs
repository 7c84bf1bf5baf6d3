//! PageRank as an affine diffusion problem.
//!
//! With `P = d Q + (1 - d)/N · J` (`J` all ones) and `σ(X) = 1`, the linear
//! problem `X = P X` becomes `X = d Q X + (1 - d) e`. The rank-one dense term
//! collapses into the vector `(1 - d) e`, so the diffusion runs on the sparse
//! operator `d Q` only:
//!
//! * `PI(P, X_0)  = DI(dQ, dQ X_0 + (1 - d) e - X_0) + X_0`, VLU
//! * `Jac(dQ, (1 - d) e) = DI(dQ, (1 - d) e)`, VLU
//! * `GSa(dQ, (1 - d) e, I) = DI(dQ, (1 - d) e, I)`, CLU
//! * `GSl(P, X_0, I) ≈ DI(dQ, dQ X_0 + (1 - d) e - X_0, I) + X_0`, CLU
//!
//! The first three are exact. The last one only holds while `σ(X) = 1`,
//! which single-coordinate updates on `P` do not preserve; the decomposed
//! form still converges to the normalized PageRank vector for any fair
//! sequence.

use alloc::vec::Vec;

use crate::diffusion::DiffusionMode;
use crate::equivalence::DiffusionEquivalent;
use crate::schemes::SchemeKind;
use crate::{dense_solve_oracle, Coordinate, DenseVector, Error, Result, SparseColumnMatrix, UpdateSequence};

/// Tolerance for column sums of `Q` and for `σ(X_0) = 1`.
pub const STOCHASTIC_TOLERANCE: f64 = 1e-12;

/// Columns of `Q` whose absolute sum is not 1.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct StochasticityReport {
    pub deviations: Vec<(Coordinate, f64)>,
}

impl StochasticityReport {
    pub fn is_stochastic(&self) -> bool {
        self.deviations.is_empty()
    }

    /// Columns summing to less than one (dangling or leaky nodes).
    pub fn substochastic(&self) -> impl Iterator<Item = &(Coordinate, f64)> {
        self.deviations.iter().filter(|(_, s)| *s < 1.0)
    }
}

pub fn column_stochasticity(q: &SparseColumnMatrix, tol: f64) -> StochasticityReport {
    let deviations = q
        .columns()
        .enumerate()
        .map(|(j, c)| (Coordinate::new(j), c.l1()))
        .filter(|(_, s)| (s - 1.0).abs() > tol)
        .collect();
    StochasticityReport { deviations }
}

/// A PageRank problem `X = (d Q + (1 - d)/N · J) X`, never storing `J`.
#[derive(Debug, Clone)]
pub struct PageRank {
    q: SparseColumnMatrix,
    damping: f64,
    operator: SparseColumnMatrix,
    teleport: DenseVector,
}

impl PageRank {
    /// Fails on a damping factor outside `(0, 1)`. A `Q` that is not column
    /// stochastic is accepted with a warning.
    pub fn new(q: SparseColumnMatrix, damping: f64) -> Result<Self> {
        if !(damping > 0.0 && damping < 1.0) {
            return Err(Error::InvalidDamping(damping));
        }
        let report = column_stochasticity(&q, STOCHASTIC_TOLERANCE);
        for (col, sum) in &report.deviations {
            log::warn!("column {col} of Q sums to {sum}, not 1");
        }
        let n = q.dim();
        let operator = q.scaled(damping);
        let teleport = DenseVector::filled(n, (1.0 - damping) / n as f64);
        Ok(PageRank {
            q,
            damping,
            operator,
            teleport,
        })
    }

    pub fn dim(&self) -> usize {
        self.q.dim()
    }

    pub fn q(&self) -> &SparseColumnMatrix {
        &self.q
    }

    pub fn damping(&self) -> f64 {
        self.damping
    }

    /// `d Q`.
    pub fn operator(&self) -> &SparseColumnMatrix {
        &self.operator
    }

    /// `(1 - d) e`.
    pub fn teleport(&self) -> &DenseVector {
        &self.teleport
    }

    /// `P x = d Q x + (1 - d) σ(x) e`.
    pub fn apply(&self, x: &DenseVector) -> Result<DenseVector> {
        let mut out = self.operator.matvec(x)?;
        let jump = (1.0 - self.damping) * x.sigma() / self.dim() as f64;
        for v in out.as_mut_slice() {
            *v += jump;
        }
        Ok(out)
    }

    /// The full matrix `P` with its dense rank-one term, for small oracle
    /// computations only.
    pub fn google_matrix(&self) -> Result<SparseColumnMatrix> {
        let n = self.dim();
        let jump = (1.0 - self.damping) / n as f64;
        let dense: Vec<f64> = self.operator.to_dense().into_iter().map(|v| v + jump).collect();
        SparseColumnMatrix::from_dense(n, &dense)
    }

    /// The PageRank vector, by direct solve of `(I - dQ) X = (1 - d) e`.
    pub fn exact_solution(&self) -> Result<DenseVector> {
        dense_solve_oracle(&self.operator, &self.teleport)
    }

    /// Decomposed power iteration from `x0` (`σ(x0)` must be 1).
    pub fn power_iteration(&self, x0: &DenseVector) -> Result<DiffusionEquivalent> {
        self.shifted(x0, DiffusionMode::Vlu)
    }

    /// Decomposed linear Gauss-Seidel from `x0` (`σ(x0)` must be 1).
    pub fn gauss_seidel_linear(&self, x0: &DenseVector, seq: &UpdateSequence) -> Result<DiffusionEquivalent> {
        self.check_sequence(seq)?;
        self.shifted(x0, DiffusionMode::Clu(seq.restarted()))
    }

    pub fn jacobi(&self) -> DiffusionEquivalent {
        self.affine(DiffusionMode::Vlu)
    }

    pub fn gauss_seidel_affine(&self, seq: &UpdateSequence) -> Result<DiffusionEquivalent> {
        self.check_sequence(seq)?;
        Ok(self.affine(DiffusionMode::Clu(seq.restarted())))
    }

    /// The diffusion form used to measure `kind`. `x0` only matters for the
    /// linear schemes.
    pub fn diffusion_for(
        &self,
        kind: SchemeKind,
        seq: &UpdateSequence,
        x0: &DenseVector,
    ) -> Result<DiffusionEquivalent> {
        match kind {
            SchemeKind::PowerIteration => self.power_iteration(x0),
            SchemeKind::GaussSeidelLinear => self.gauss_seidel_linear(x0, seq),
            SchemeKind::Jacobi => Ok(self.jacobi()),
            SchemeKind::GaussSeidelAffine => self.gauss_seidel_affine(seq),
        }
    }

    fn shifted(&self, x0: &DenseVector, mode: DiffusionMode) -> Result<DiffusionEquivalent> {
        x0.check_len(self.dim())?;
        let sigma = x0.sigma();
        if (sigma - 1.0).abs() > STOCHASTIC_TOLERANCE {
            return Err(Error::NotNormalized { sigma });
        }
        let f0 = self.operator.matvec(x0)?.add(&self.teleport)?.sub(x0)?;
        Ok(DiffusionEquivalent {
            matrix: self.operator.clone(),
            f0,
            mode,
            offset: x0.clone(),
        })
    }

    fn affine(&self, mode: DiffusionMode) -> DiffusionEquivalent {
        DiffusionEquivalent {
            matrix: self.operator.clone(),
            f0: self.teleport.clone(),
            mode,
            offset: DenseVector::zeros(self.dim()),
        }
    }

    fn check_sequence(&self, seq: &UpdateSequence) -> Result<()> {
        if seq.dim() == self.dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: seq.dim(),
            })
        }
    }
}

/// `PI(P, X_0) = DI(dQ, dQ X_0 + (1 - d) e - X_0) + X_0` in VLU mode.
pub fn pagerank_decompose(q: &SparseColumnMatrix, damping: f64, x0: &DenseVector) -> Result<DiffusionEquivalent> {
    PageRank::new(q.clone(), damping)?.power_iteration(x0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn case1_q() -> SparseColumnMatrix {
        #[rustfmt::skip]
        let q = [
            0.0, 0.0, 0.0, 0.0, 0.5,
            1.0, 0.0, 0.0, 0.0, 0.5,
            0.0, 1.0, 0.0, 0.0, 0.0,
            0.0, 0.0, 1.0, 0.0, 0.0,
            0.0, 0.0, 0.0, 1.0, 0.0,
        ];
        SparseColumnMatrix::from_dense(5, &q).unwrap()
    }

    #[test]
    fn decomposed_initial_fluid_case1() {
        let eq = pagerank_decompose(&case1_q(), 0.85, &DenseVector::uniform(5)).unwrap();
        assert!((eq.f0[0] - (-0.085)).abs() < 1e-15);
        // dense oracle: P e - e with P built entry by entry
        let dense = case1_q().to_dense();
        for i in 0..5 {
            let pe: f64 = (0..5).map(|j| (0.85 * dense[i * 5 + j] + 0.03) * 0.2).sum();
            assert!((eq.f0[i] - (pe - 0.2)).abs() < 1e-15);
        }
        assert_eq!(eq.offset, DenseVector::uniform(5));
        assert!(!eq.mode.is_coordinate_level());
    }

    #[test]
    fn fixed_point_start_has_no_fluid() {
        let pr = PageRank::new(case1_q(), 0.85).unwrap();
        let x = pr.exact_solution().unwrap();
        let x = x.scaled(1.0 / x.sigma());
        let eq = pr.power_iteration(&x).unwrap();
        assert!(eq.f0.l1_norm() < 1e-15);
    }

    #[test]
    fn unnormalized_start_is_rejected() {
        let x0 = DenseVector::filled(5, 0.1);
        assert!(matches!(
            pagerank_decompose(&case1_q(), 0.85, &x0),
            Err(Error::NotNormalized { .. })
        ));
    }

    #[test]
    fn damping_must_lie_in_open_interval() {
        for d in [0.0, 1.0, -0.5, f64::NAN] {
            assert!(PageRank::new(case1_q(), d).is_err());
        }
    }

    #[test]
    fn gsl_decomposition_matches_listed_form() {
        // GSl(P, e, I) = DI(dQ, d(Qe - e), I) + e
        let pr = PageRank::new(case1_q(), 0.85).unwrap();
        let seq = UpdateSequence::round_robin(5).unwrap();
        let eq = pr.gauss_seidel_linear(&DenseVector::uniform(5), &seq).unwrap();
        let qe = case1_q().matvec(&DenseVector::uniform(5)).unwrap();
        let want = qe.sub(&DenseVector::uniform(5)).unwrap().scaled(0.85);
        assert!(eq.f0.l1_distance(&want).unwrap() < 1e-15);
        assert_eq!(eq.matrix, case1_q().scaled(0.85));
        assert!(eq.mode.is_coordinate_level());
    }

    #[test]
    fn apply_matches_google_matrix() {
        let pr = PageRank::new(case1_q(), 0.85).unwrap();
        let x = DenseVector::from(alloc::vec![0.5, 0.1, 0.0, 0.3, 0.4]);
        let a = pr.apply(&x).unwrap();
        let b = pr.google_matrix().unwrap().matvec(&x).unwrap();
        assert!(a.l1_distance(&b).unwrap() < 1e-15);
    }

    #[test]
    fn dangling_column_is_reported() {
        let q = SparseColumnMatrix::from_triplets(2, [(1, 0, 1.0)]).unwrap();
        let report = column_stochasticity(&q, STOCHASTIC_TOLERANCE);
        assert_eq!(report.deviations, alloc::vec![(Coordinate::new(1), 0.0)]);
        assert_eq!(report.substochastic().count(), 1);
        assert!(PageRank::new(q, 0.85).is_ok());
    }
}
