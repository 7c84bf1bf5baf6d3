//! From a classical scheme to its equivalent diffusion iteration.
//!
//! | scheme            | operator | initial fluid `F_0` | mode | offset |
//! |-------------------|----------|---------------------|------|--------|
//! | PI(P, X_0)        | P        | P X_0 - X_0         | VLU  | X_0    |
//! | GSl(P, X_0, I)    | P        | P X_0 - X_0         | CLU  | X_0    |
//! | Jac(P, B)         | P        | B                   | VLU  | 0      |
//! | GSa(P, B, I)      | P        | B                   | CLU  | 0      |
//!
//! In all four cases the classical iterate is `X_n = H_n + offset`, where one
//! VLU step matches one classical iteration and one CLU step matches one
//! coordinate update on the same index. For power iteration the fluid is
//! also the increment: `F_n = X_{n+1} - X_n`.

use crate::diffusion::{DiffusionMode, DiffusionRun, DiffusionState, StoppingRule};
use crate::schemes::{step_pi, SchemeKind, SchemeSpec};
use crate::{run_diffusion, DenseVector, Result, SparseColumnMatrix};

/// `DI(matrix, f0)` in a given mode, plus the offset that turns `H_n` back
/// into the classical iterate.
#[derive(Debug, Clone)]
pub struct DiffusionEquivalent {
    pub matrix: SparseColumnMatrix,
    pub f0: DenseVector,
    pub mode: DiffusionMode,
    pub offset: DenseVector,
}

impl DiffusionEquivalent {
    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// The mode with its update sequence rewound.
    pub fn fresh_mode(&self) -> DiffusionMode {
        match &self.mode {
            DiffusionMode::Clu(seq) => DiffusionMode::Clu(seq.restarted()),
            DiffusionMode::Vlu => DiffusionMode::Vlu,
        }
    }

    pub fn start(&self) -> DiffusionState {
        DiffusionState::new(self.f0.clone())
    }

    pub fn run(&self, stop: StoppingRule) -> Result<DiffusionRun> {
        run_diffusion(&self.matrix, self.f0.clone(), self.fresh_mode(), stop)
    }

    /// `H + offset`.
    pub fn reconstruct(&self, history: &DenseVector) -> Result<DenseVector> {
        history.add(&self.offset)
    }

    /// Steps making up one reported iteration: `N` for CLU, one for VLU.
    pub fn steps_per_iteration(&self) -> u64 {
        if self.mode.is_coordinate_level() {
            self.dim() as u64
        } else {
            1
        }
    }
}

/// The diffusion equivalent of a classical scheme.
pub fn to_diffusion(spec: &SchemeSpec) -> Result<DiffusionEquivalent> {
    let matrix = spec.matrix().clone();
    let n = matrix.dim();
    let (f0, offset) = match spec.kind() {
        SchemeKind::PowerIteration | SchemeKind::GaussSeidelLinear => {
            let x0 = spec.x0();
            (matrix.matvec(x0)?.sub(x0)?, x0.clone())
        }
        SchemeKind::Jacobi | SchemeKind::GaussSeidelAffine => {
            (spec.b().expect("validated affine spec").clone(), DenseVector::zeros(n))
        }
    };
    let mode = match spec.sequence() {
        Some(seq) => DiffusionMode::Clu(seq.restarted()),
        None => DiffusionMode::Vlu,
    };
    Ok(DiffusionEquivalent {
        matrix,
        f0,
        mode,
        offset,
    })
}

/// Largest discrepancies seen while running a scheme and its diffusion
/// equivalent in lockstep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquivalenceReport {
    pub scheme: SchemeKind,
    pub steps: u64,
    /// `max_n |X_n - (H_n + offset)|_1`.
    pub max_discrepancy: f64,
    /// Power iteration only: `max_n |F_n - (X_{n+1} - X_n)|_1`.
    pub increment_discrepancy: Option<f64>,
    /// Power iteration only: `max_n |H_n - (X_n - X_0)|_1`.
    pub history_discrepancy: Option<f64>,
}

impl EquivalenceReport {
    /// The worst of all reported discrepancies.
    pub fn worst(&self) -> f64 {
        [self.increment_discrepancy, self.history_discrepancy]
            .into_iter()
            .flatten()
            .fold(self.max_discrepancy, f64::max)
    }
}

/// Runs `spec` and its diffusion equivalent side by side for `n_steps` steps
/// and reports how far apart they drift. Step 0 is included.
pub fn verify_equivalence(spec: &SchemeSpec, n_steps: u64) -> Result<EquivalenceReport> {
    let equivalent = to_diffusion(spec)?;
    let mut mode = equivalent.fresh_mode();
    let mut state = equivalent.start();
    let mut classical = spec.stepper();
    let is_pi = spec.kind() == SchemeKind::PowerIteration;
    let x0 = spec.x0().clone();

    let mut max_discrepancy = 0.0f64;
    let mut increment = 0.0f64;
    let mut history = 0.0f64;
    for n in 0..=n_steps {
        if n > 0 {
            classical.advance()?;
            state.advance(&equivalent.matrix, &mut mode)?;
        }
        let x = classical.current();
        let rebuilt = equivalent.reconstruct(state.history())?;
        max_discrepancy = max_discrepancy.max(x.l1_distance(&rebuilt)?);
        if is_pi {
            let increment_now = step_pi(x, spec.matrix())?.sub(x)?;
            increment = increment.max(state.fluid().l1_distance(&increment_now)?);
            history = history.max(state.history().l1_distance(&x.sub(&x0)?)?);
        }
    }
    Ok(EquivalenceReport {
        scheme: spec.kind(),
        steps: n_steps,
        max_discrepancy,
        increment_discrepancy: is_pi.then_some(increment),
        history_discrepancy: is_pi.then_some(history),
    })
}
