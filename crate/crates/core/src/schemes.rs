//! Textbook power iteration, Jacobi and Gauss-Seidel.
//!
//! These run directly on the iterate `X` and serve as the independent side
//! of every equivalence check against the diffusion engine.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::diffusion::{StoppingRule, Termination};
use crate::{Coordinate, DenseVector, Error, Result, SparseColumnMatrix, UpdateSequence};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SchemeKind {
    /// `X_n = P X_{n-1}`.
    PowerIteration,
    /// `(X)_{i_n} = (P X)_{i_n}`.
    GaussSeidelLinear,
    /// `X_n = P X_{n-1} + B`, from zero.
    Jacobi,
    /// `(X)_{i_n} = (P X + B)_{i_n}`, from zero.
    GaussSeidelAffine,
}

impl SchemeKind {
    pub const ALL: [SchemeKind; 4] = [
        SchemeKind::PowerIteration,
        SchemeKind::Jacobi,
        SchemeKind::GaussSeidelLinear,
        SchemeKind::GaussSeidelAffine,
    ];

    pub fn short_name(self) -> &'static str {
        match self {
            SchemeKind::PowerIteration => "pi",
            SchemeKind::GaussSeidelLinear => "gsl",
            SchemeKind::Jacobi => "jac",
            SchemeKind::GaussSeidelAffine => "gsa",
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            SchemeKind::PowerIteration => "PI",
            SchemeKind::GaussSeidelLinear => "GSl",
            SchemeKind::Jacobi => "Jac",
            SchemeKind::GaussSeidelAffine => "GSa",
        }
    }

    /// Gauss-Seidel variants update one coordinate at a time.
    pub fn is_coordinate_level(self) -> bool {
        matches!(self, SchemeKind::GaussSeidelLinear | SchemeKind::GaussSeidelAffine)
    }

    /// Jacobi and affine Gauss-Seidel solve `X = P X + B`.
    pub fn is_affine(self) -> bool {
        matches!(self, SchemeKind::Jacobi | SchemeKind::GaussSeidelAffine)
    }
}

impl fmt::Display for SchemeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownScheme;

impl fmt::Display for UnknownScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("expected one of pi, jac, gsl, gsa")
    }
}

impl core::error::Error for UnknownScheme {}

impl FromStr for SchemeKind {
    type Err = UnknownScheme;

    fn from_str(s: &str) -> core::result::Result<Self, UnknownScheme> {
        SchemeKind::ALL
            .into_iter()
            .find(|k| k.short_name().eq_ignore_ascii_case(s))
            .ok_or(UnknownScheme)
    }
}

/// Row-oriented copy of a matrix, for the single-row dot products of
/// Gauss-Seidel.
#[derive(Debug, Clone, PartialEq)]
pub struct RowView {
    dim: usize,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    values: Vec<f64>,
}

impl RowView {
    pub fn new(m: &SparseColumnMatrix) -> Self {
        let dim = m.dim();
        let mut row_ptr = vec![0usize; dim + 1];
        for (i, _, _) in m.triplets() {
            row_ptr[i + 1] += 1;
        }
        for i in 0..dim {
            row_ptr[i + 1] += row_ptr[i];
        }
        let mut fill = row_ptr.clone();
        let mut cols = vec![0; m.nnz()];
        let mut values = vec![0.0; m.nnz()];
        // Column-major traversal leaves every row sorted by column.
        for (i, j, v) in m.triplets() {
            cols[fill[i]] = j;
            values[fill[i]] = v;
            fill[i] += 1;
        }
        RowView {
            dim,
            row_ptr,
            cols,
            values,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `(M x)_i`.
    pub fn row_dot(&self, i: Coordinate, x: &DenseVector) -> Result<f64> {
        i.check(self.dim)?;
        x.check_len(self.dim)?;
        let span = self.row_ptr[i.index()]..self.row_ptr[i.index() + 1];
        Ok(self.cols[span.clone()]
            .iter()
            .zip(&self.values[span])
            .map(|(&j, v)| v * x[j])
            .sum())
    }
}

/// `P X`.
pub fn step_pi(x: &DenseVector, p: &SparseColumnMatrix) -> Result<DenseVector> {
    p.matvec(x)
}

/// `X_i ← (P X)_i`, all other coordinates untouched.
pub fn step_gsl(x: &mut DenseVector, p: &RowView, i: Coordinate) -> Result<()> {
    let value = p.row_dot(i, x)?;
    x[i] = value;
    Ok(())
}

/// `P X + B`.
pub fn step_jacobi(x: &DenseVector, p: &SparseColumnMatrix, b: &DenseVector) -> Result<DenseVector> {
    p.matvec(x)?.add(b)
}

/// `X_i ← (P X + B)_i`.
pub fn step_gsa(x: &mut DenseVector, p: &RowView, b: &DenseVector, i: Coordinate) -> Result<()> {
    b.check_len(x.len())?;
    let value = p.row_dot(i, x)? + b[i];
    x[i] = value;
    Ok(())
}

/// A fully specified classical scheme: what it needs, nothing else.
#[derive(Debug, Clone)]
pub struct SchemeSpec {
    kind: SchemeKind,
    matrix: SparseColumnMatrix,
    rows: RowView,
    b: Option<DenseVector>,
    x0: DenseVector,
    seq: Option<UpdateSequence>,
}

impl SchemeSpec {
    /// Validates the operands required by `kind`.
    ///
    /// Power iteration and linear Gauss-Seidel need `x0`; Jacobi and affine
    /// Gauss-Seidel need `b` and start from zero (a nonzero `x0` is
    /// rejected); Gauss-Seidel variants need a sequence.
    pub fn new(
        kind: SchemeKind,
        matrix: SparseColumnMatrix,
        b: Option<DenseVector>,
        x0: Option<DenseVector>,
        seq: Option<UpdateSequence>,
    ) -> Result<Self> {
        let n = matrix.dim();
        let missing = |operand| Error::MissingOperand {
            scheme: kind.label(),
            operand,
        };
        let x0 = if kind.is_affine() {
            match x0 {
                Some(x) if !x.is_zero() => return Err(Error::NonZeroStart),
                _ => DenseVector::zeros(n),
            }
        } else {
            x0.ok_or_else(|| missing("an initial vector X_0"))?
        };
        x0.check_len(n)?;
        let b = if kind.is_affine() {
            let b = b.ok_or_else(|| missing("a constant term B"))?;
            b.check_len(n)?;
            Some(b)
        } else {
            None
        };
        let seq = if kind.is_coordinate_level() {
            let seq = seq.ok_or_else(|| missing("an update sequence"))?;
            if seq.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: seq.dim(),
                });
            }
            Some(seq.restarted())
        } else {
            None
        };
        let rows = RowView::new(&matrix);
        Ok(SchemeSpec {
            kind,
            matrix,
            rows,
            b,
            x0,
            seq,
        })
    }

    pub fn power_iteration(p: SparseColumnMatrix, x0: DenseVector) -> Result<Self> {
        Self::new(SchemeKind::PowerIteration, p, None, Some(x0), None)
    }

    pub fn gauss_seidel_linear(p: SparseColumnMatrix, x0: DenseVector, seq: UpdateSequence) -> Result<Self> {
        Self::new(SchemeKind::GaussSeidelLinear, p, None, Some(x0), Some(seq))
    }

    pub fn jacobi(p: SparseColumnMatrix, b: DenseVector) -> Result<Self> {
        Self::new(SchemeKind::Jacobi, p, Some(b), None, None)
    }

    pub fn gauss_seidel_affine(p: SparseColumnMatrix, b: DenseVector, seq: UpdateSequence) -> Result<Self> {
        Self::new(SchemeKind::GaussSeidelAffine, p, Some(b), None, Some(seq))
    }

    pub fn kind(&self) -> SchemeKind {
        self.kind
    }

    pub fn matrix(&self) -> &SparseColumnMatrix {
        &self.matrix
    }

    pub fn rows(&self) -> &RowView {
        &self.rows
    }

    pub fn b(&self) -> Option<&DenseVector> {
        self.b.as_ref()
    }

    pub fn x0(&self) -> &DenseVector {
        &self.x0
    }

    pub fn sequence(&self) -> Option<&UpdateSequence> {
        self.seq.as_ref()
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// Number of steps forming one reported iteration: `N` for Gauss-Seidel,
    /// one otherwise.
    pub fn steps_per_iteration(&self) -> u64 {
        if self.kind.is_coordinate_level() {
            self.dim() as u64
        } else {
            1
        }
    }

    pub fn stepper(&self) -> SchemeStepper<'_> {
        SchemeStepper {
            spec: self,
            x: self.x0.clone(),
            seq: self.seq.clone(),
            steps: 0,
        }
    }
}

/// Drives a scheme one step at a time: a whole-vector update for PI and
/// Jacobi, a single coordinate update for Gauss-Seidel.
#[derive(Debug, Clone)]
pub struct SchemeStepper<'a> {
    spec: &'a SchemeSpec,
    x: DenseVector,
    seq: Option<UpdateSequence>,
    steps: u64,
}

impl SchemeStepper<'_> {
    pub fn current(&self) -> &DenseVector {
        &self.x
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    pub fn into_current(self) -> DenseVector {
        self.x
    }

    pub fn advance(&mut self) -> Result<&DenseVector> {
        let spec = self.spec;
        match spec.kind {
            SchemeKind::PowerIteration => self.x = step_pi(&self.x, &spec.matrix)?,
            SchemeKind::Jacobi => self.x = step_jacobi(&self.x, &spec.matrix, spec.b.as_ref().unwrap())?,
            SchemeKind::GaussSeidelLinear | SchemeKind::GaussSeidelAffine => {
                let i = self.seq.as_mut().unwrap().next_index()?;
                match &spec.b {
                    Some(b) => step_gsa(&mut self.x, &spec.rows, b, i)?,
                    None => step_gsl(&mut self.x, &spec.rows, i)?,
                }
            }
        }
        self.steps += 1;
        Ok(&self.x)
    }
}

/// Per-iteration record of a classical run.
#[derive(Debug, Clone, Default)]
pub struct IterateHistory {
    /// `|X_k - X_{k-1}|_1` for each completed iteration `k`.
    pub deltas: Vec<f64>,
    /// `X_0, X_1, ...` at iteration boundaries, when requested.
    pub iterates: Option<Vec<DenseVector>>,
}

#[derive(Debug, Clone)]
pub struct SchemeRun {
    pub x: DenseVector,
    pub history: IterateHistory,
    pub termination: Termination,
    pub steps: u64,
}

impl SchemeRun {
    pub fn converged(&self) -> bool {
        self.termination == Termination::Converged
    }
}

/// Runs a scheme under `stop`.
///
/// `max_steps` counts steps (coordinate updates for Gauss-Seidel). The
/// tolerance applies to the change over one iteration, which for
/// Gauss-Seidel is a sweep of `N` updates.
pub fn run_scheme(spec: &SchemeSpec, stop: &StoppingRule, keep_iterates: bool) -> Result<SchemeRun> {
    let per_iteration = spec.steps_per_iteration();
    let mut stepper = spec.stepper();
    let mut history = IterateHistory {
        deltas: Vec::new(),
        iterates: keep_iterates.then(|| vec![spec.x0.clone()]),
    };
    let mut start = spec.x0.clone();
    let termination = loop {
        if stepper.steps() >= stop.max_steps {
            break Termination::MaxSteps;
        }
        stepper.advance()?;
        if !stepper.steps().is_multiple_of(per_iteration) {
            continue;
        }
        let delta = stepper.current().l1_distance(&start)?;
        history.deltas.push(delta);
        if let Some(iterates) = history.iterates.as_mut() {
            iterates.push(stepper.current().clone());
        }
        start.clone_from(stepper.current());
        let iteration = stepper.steps() / per_iteration;
        if stop.tolerance.is_some_and(|tol| delta <= tol) && iteration.is_multiple_of(stop.check_interval) {
            break Termination::Converged;
        }
    };
    let steps = stepper.steps();
    Ok(SchemeRun {
        x: stepper.into_current(),
        history,
        termination,
        steps,
    })
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

    /// Dense Google matrix `0.85 Q + 0.03 J`, built entry by entry.
    fn case1_google() -> (Vec<f64>, SparseColumnMatrix) {
        let q = case1_q().to_dense();
        let dense: Vec<f64> = q.iter().map(|v| 0.85 * v + 0.15 / 5.0).collect();
        let m = SparseColumnMatrix::from_dense(5, &dense).unwrap();
        (dense, m)
    }

    fn dense_row(dense: &[f64], i: usize, x: &[f64]) -> f64 {
        (0..5).map(|j| dense[i * 5 + j] * x[j]).sum()
    }

    #[test]
    fn power_step_on_google_matrix() {
        let (dense, p) = case1_google();
        let e = DenseVector::uniform(5);
        let x1 = step_pi(&e, &p).unwrap();
        assert!((x1[0] - 0.115).abs() < 1e-15);
        for i in 0..5 {
            assert!((x1[i] - dense_row(&dense, i, e.as_slice())).abs() < 1e-15);
        }
        assert!((x1.sigma() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn gsl_step_updates_one_coordinate() {
        let (_, p) = case1_google();
        let rows = RowView::new(&p);
        let mut x = DenseVector::uniform(5);
        step_gsl(&mut x, &rows, Coordinate::new(0)).unwrap();
        assert!((x[0] - 0.115).abs() < 1e-15);
        for i in 1..5 {
            assert_eq!(x[i], 0.2);
        }
        assert!(step_gsl(&mut x, &rows, Coordinate::new(5)).is_err());
    }

    #[test]
    fn gsl_matches_matrix_form() {
        // X_n = X_{n-1} + J_i (P - I) X_{n-1}
        let (_, p) = case1_google();
        let rows = RowView::new(&p);
        let mut x = DenseVector::from(vec![0.3, 0.1, 0.25, 0.15, 0.2]);
        for i in [2, 0, 4, 1, 3] {
            let c = Coordinate::new(i);
            let mut matrix_form = x.clone();
            let px = p.matvec(&x).unwrap();
            let correction = c.select(&px.sub(&x).unwrap()).unwrap();
            matrix_form.add_assign(&correction).unwrap();
            step_gsl(&mut x, &rows, c).unwrap();
            assert!(x.l1_distance(&matrix_form).unwrap() < 1e-15);
        }
    }

    #[test]
    fn identity_and_zero_operators() {
        let id = SparseColumnMatrix::identity(3).unwrap();
        let zero = SparseColumnMatrix::zero(3).unwrap();
        let x = DenseVector::from(vec![1.0, 2.0, 3.0]);
        assert_eq!(step_pi(&x, &id).unwrap(), x);
        assert!(step_pi(&x, &zero).unwrap().is_zero());
        let rows = RowView::new(&id);
        let mut y = x.clone();
        for i in 0..3 {
            step_gsl(&mut y, &rows, Coordinate::new(i)).unwrap();
        }
        assert_eq!(y, x);
        let b = DenseVector::from(vec![0.5, 0.5, 0.5]);
        assert_eq!(step_jacobi(&x, &zero, &b).unwrap(), b);
    }

    #[test]
    fn jacobi_second_iterate_case1() {
        let dq = case1_q().scaled(0.85);
        let b = DenseVector::filled(5, 0.03);
        let x1 = step_jacobi(&DenseVector::zeros(5), &dq, &b).unwrap();
        assert_eq!(x1, b);
        let x2 = step_jacobi(&x1, &dq, &b).unwrap();
        let dense = dq.to_dense();
        for i in 0..5 {
            let want = dense_row(&dense, i, &[0.03; 5]) + 0.03;
            assert!((x2[i] - want).abs() < 1e-16);
        }
    }

    #[test]
    fn gsa_first_update_from_zero() {
        let dq = case1_q().scaled(0.85);
        let rows = RowView::new(&dq);
        let b = DenseVector::filled(5, 0.03);
        let mut x = DenseVector::zeros(5);
        step_gsa(&mut x, &rows, &b, Coordinate::new(0)).unwrap();
        assert_eq!(x[0], 0.03);
    }

    #[test]
    fn spec_validation() {
        let p = case1_q();
        let seq = UpdateSequence::round_robin(5).unwrap();
        assert!(matches!(
            SchemeSpec::new(
                SchemeKind::Jacobi,
                p.clone(),
                Some(DenseVector::zeros(5)),
                Some(DenseVector::uniform(5)),
                None
            ),
            Err(Error::NonZeroStart)
        ));
        assert!(SchemeSpec::new(
            SchemeKind::Jacobi,
            p.clone(),
            Some(DenseVector::zeros(5)),
            Some(DenseVector::zeros(5)),
            None
        )
        .is_ok());
        assert!(matches!(
            SchemeSpec::new(
                SchemeKind::GaussSeidelAffine,
                p.clone(),
                Some(DenseVector::zeros(5)),
                None,
                None
            ),
            Err(Error::MissingOperand { .. })
        ));
        assert!(matches!(
            SchemeSpec::new(SchemeKind::PowerIteration, p.clone(), None, None, None),
            Err(Error::MissingOperand { .. })
        ));
        assert!(matches!(
            SchemeSpec::gauss_seidel_linear(p.clone(), DenseVector::uniform(4), seq.clone()),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(SchemeSpec::gauss_seidel_linear(p, DenseVector::uniform(5), seq).is_ok());
    }

    #[test]
    fn jacobi_with_zero_b_stays_at_zero() {
        let spec = SchemeSpec::jacobi(case1_q().scaled(0.85), DenseVector::zeros(5)).unwrap();
        let run = run_scheme(&spec, &StoppingRule::max_steps(20), false).unwrap();
        assert!(run.x.is_zero());
        assert!(run.history.deltas.iter().all(|&d| d == 0.0));
    }

    #[test]
    fn gauss_seidel_iterations_are_sweeps() {
        let seq = UpdateSequence::round_robin(5).unwrap();
        let spec = SchemeSpec::gauss_seidel_affine(case1_q().scaled(0.85), DenseVector::filled(5, 0.03), seq).unwrap();
        let run = run_scheme(&spec, &StoppingRule::max_steps(23), true).unwrap();
        assert_eq!(run.steps, 23);
        assert_eq!(run.history.deltas.len(), 4);
        assert_eq!(run.history.iterates.unwrap().len(), 5);
    }

    #[test]
    fn scheme_names_parse() {
        for k in SchemeKind::ALL {
            assert_eq!(k.short_name().parse::<SchemeKind>().unwrap(), k);
        }
        assert!("GSA".parse::<SchemeKind>().is_ok());
        assert!("sor".parse::<SchemeKind>().is_err());
    }
}
