//! The diffusion iteration on `(F, H)` and its fluid accounting.
//!
//! Every step records a [`TraceRecord`]. For each step the drop of the
//! residual splits exactly into two parts:
//!
//! ```text
//! |F_{n-1}|_1 - |F_n|_1 = contracted_n + cancelled_n
//! ```
//!
//! `contracted_n` is the mass that left the moved fluid because its column
//! sums to less than one in absolute value. `cancelled_n` is the mass lost
//! when a deposit lands on fluid of the opposite sign, measured per receiving
//! entry as `|old| + |δ| - |old + δ|`.
//!
//! Both modes also keep the conservation identity `F_n + (I - P) H_n = F_0`,
//! checked by [`DiffusionState::conservation_defect`].

use alloc::vec;
use alloc::vec::Vec;

use crate::{Coordinate, DenseVector, Error, Result, SparseColumnMatrix, UpdateSequence};

/// One row of a diffusion trace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRecord {
    pub step: u64,
    pub residual_l1: f64,
    pub cancelled: f64,
    pub contracted: f64,
}

/// Running totals plus the per-step trace. The first record is the initial
/// state (step 0, nothing moved yet).
#[derive(Debug, Clone, Default)]
pub struct MetricAccumulator {
    total_contracted: f64,
    total_cancelled: f64,
    per_step: Vec<TraceRecord>,
}

impl MetricAccumulator {
    pub fn total_contracted(&self) -> f64 {
        self.total_contracted
    }

    pub fn total_cancelled(&self) -> f64 {
        self.total_cancelled
    }

    pub fn records(&self) -> &[TraceRecord] {
        &self.per_step
    }

    fn push(&mut self, record: TraceRecord) {
        self.total_contracted += record.contracted;
        self.total_cancelled += record.cancelled;
        self.per_step.push(record);
    }
}

/// State of a diffusion run: residual fluid `F`, history `H` and metrics.
#[derive(Debug, Clone)]
pub struct DiffusionState {
    f: DenseVector,
    h: DenseVector,
    f0: DenseVector,
    step: u64,
    residual: f64,
    metrics: MetricAccumulator,
    scratch: Vec<f64>,
    touched: usize,
}

impl DiffusionState {
    pub fn new(f0: DenseVector) -> Self {
        let n = f0.len();
        let residual = f0.l1_norm();
        let mut metrics = MetricAccumulator::default();
        metrics.push(TraceRecord {
            step: 0,
            residual_l1: residual,
            cancelled: 0.0,
            contracted: 0.0,
        });
        DiffusionState {
            f: f0.clone(),
            h: DenseVector::zeros(n),
            f0,
            step: 0,
            residual,
            metrics,
            scratch: Vec::new(),
            touched: 0,
        }
    }

    pub fn dim(&self) -> usize {
        self.f.len()
    }

    /// Residual fluid `F_n`.
    pub fn fluid(&self) -> &DenseVector {
        &self.f
    }

    /// Accumulated history `H_n`.
    pub fn history(&self) -> &DenseVector {
        &self.h
    }

    pub fn initial_fluid(&self) -> &DenseVector {
        &self.f0
    }

    pub fn step(&self) -> u64 {
        self.step
    }

    /// `|F_n|_1` as tracked by the trace.
    pub fn residual(&self) -> f64 {
        self.residual
    }

    pub fn metrics(&self) -> &MetricAccumulator {
        &self.metrics
    }

    pub fn trace(&self) -> &[TraceRecord] {
        self.metrics.records()
    }

    /// Number of entries of `F` written by the last step.
    pub fn entries_touched(&self) -> usize {
        self.touched
    }

    pub fn into_parts(self) -> (DenseVector, DenseVector, MetricAccumulator) {
        (self.f, self.h, self.metrics)
    }

    /// One coordinate level update on `i`.
    pub fn diffuse_coordinate(&mut self, m: &SparseColumnMatrix, i: Coordinate) -> Result<TraceRecord> {
        self.check_dim(m)?;
        i.check(self.dim())?;

        let fluid = self.f[i];
        let mut cancelled = 0.0;
        let mut outgoing = 0.0;
        let mut delta_residual = -fluid.abs();
        self.touched = 1;
        self.h[i] += fluid;
        self.f[i] = 0.0;
        if fluid != 0.0 {
            let column = m.column_unchecked(i.index());
            for (j, mji) in column.iter() {
                let delta = fluid * mji;
                let old = self.f[j];
                let new = old + delta;
                cancelled += old.abs() + delta.abs() - new.abs();
                outgoing += delta.abs();
                delta_residual += new.abs() - old.abs();
                self.f[j] = new;
            }
            self.touched += column.nnz();
        }
        let contracted = fluid.abs() - outgoing;

        self.step += 1;
        // Drift of the running residual is flushed once per N updates.
        self.residual = if self.step.is_multiple_of(self.dim() as u64) {
            self.f.l1_norm()
        } else {
            (self.residual + delta_residual).max(0.0)
        };
        Ok(self.record(cancelled, contracted))
    }

    /// One vector level update: `H += F`, `F = M F`.
    pub fn diffuse_vector(&mut self, m: &SparseColumnMatrix) -> Result<TraceRecord> {
        self.check_dim(m)?;
        let n = self.dim();
        let mut next = DenseVector::zeros(n);
        self.scratch.clear();
        self.scratch.resize(n, 0.0);
        let incoming_abs = &mut self.scratch;
        let mut outgoing = 0.0;
        for k in 0..n {
            let fk = self.f[k];
            if fk == 0.0 {
                continue;
            }
            for (j, mjk) in m.column_unchecked(k).iter() {
                let delta = mjk * fk;
                next[j] += delta;
                incoming_abs[j] += delta.abs();
                outgoing += delta.abs();
            }
        }
        let cancelled: f64 = incoming_abs.iter().zip(next.iter()).map(|(a, s)| a - s.abs()).sum();
        let contracted = self.residual - outgoing;

        self.h.add_assign(&self.f)?;
        self.f = next;
        self.touched = n;
        self.step += 1;
        self.residual = self.f.l1_norm();
        Ok(self.record(cancelled, contracted))
    }

    /// Advances by one step of the given mode.
    pub fn advance(&mut self, m: &SparseColumnMatrix, mode: &mut DiffusionMode) -> Result<TraceRecord> {
        match mode {
            DiffusionMode::Vlu => self.diffuse_vector(m),
            DiffusionMode::Clu(seq) => {
                let i = seq.next_index()?;
                self.diffuse_coordinate(m, i)
            }
        }
    }

    /// `|F_n + H_n - M H_n - F_0|_1`, zero up to rounding at every step.
    pub fn conservation_defect(&self, m: &SparseColumnMatrix) -> Result<f64> {
        let mh = m.matvec(&self.h)?;
        Ok((0..self.dim())
            .map(|i| (self.f[i] + self.h[i] - mh[i] - self.f0[i]).abs())
            .sum())
    }

    fn record(&mut self, cancelled: f64, contracted: f64) -> TraceRecord {
        let record = TraceRecord {
            step: self.step,
            residual_l1: self.residual,
            cancelled,
            contracted,
        };
        self.metrics.push(record);
        record
    }

    fn check_dim(&self, m: &SparseColumnMatrix) -> Result<()> {
        if m.dim() == self.dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: m.dim(),
                found: self.dim(),
            })
        }
    }
}

/// Coordinate level (with its update sequence) or vector level updates.
#[derive(Debug, Clone)]
pub enum DiffusionMode {
    Clu(UpdateSequence),
    Vlu,
}

impl DiffusionMode {
    pub fn is_coordinate_level(&self) -> bool {
        matches!(self, DiffusionMode::Clu(_))
    }
}

/// When to stop a run.
///
/// The run stops once `max_steps` steps were taken, or earlier when the
/// residual is at most `tolerance`. The tolerance is only looked at on steps
/// that are multiples of `check_interval`, so CLU runs can stop on sweep
/// boundaries.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StoppingRule {
    pub max_steps: u64,
    pub tolerance: Option<f64>,
    pub check_interval: u64,
}

impl StoppingRule {
    pub const DEFAULT_TOLERANCE: f64 = 1e-10;
    pub const DEFAULT_MAX_STEPS: u64 = 1_000_000;

    /// Exactly `steps` steps, unless the fluid runs out.
    pub fn max_steps(steps: u64) -> Self {
        StoppingRule {
            max_steps: steps,
            tolerance: None,
            check_interval: 1,
        }
    }

    pub fn tolerance(tol: f64) -> Self {
        StoppingRule {
            max_steps: Self::DEFAULT_MAX_STEPS,
            tolerance: Some(tol),
            check_interval: 1,
        }
    }

    pub fn with_max_steps(self, max_steps: u64) -> Self {
        StoppingRule { max_steps, ..self }
    }

    pub fn with_check_interval(self, check_interval: u64) -> Self {
        StoppingRule {
            check_interval: check_interval.max(1),
            ..self
        }
    }

    pub(crate) fn reached(&self, step: u64, residual: f64) -> bool {
        match self.tolerance {
            Some(tol) => step.is_multiple_of(self.check_interval) && residual <= tol,
            None => false,
        }
    }
}

impl Default for StoppingRule {
    fn default() -> Self {
        Self::tolerance(Self::DEFAULT_TOLERANCE)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    Converged,
    MaxSteps,
}

/// Outcome of [`run_diffusion`].
#[derive(Debug, Clone)]
pub struct DiffusionRun {
    pub state: DiffusionState,
    pub termination: Termination,
}

impl DiffusionRun {
    pub fn converged(&self) -> bool {
        self.termination == Termination::Converged
    }

    pub fn trace(&self) -> &[TraceRecord] {
        self.state.trace()
    }
}

/// Runs `DI(M, F_0)` in the given mode until the stopping rule fires.
///
/// A run that exhausts `max_steps` is not an error; it comes back with
/// [`Termination::MaxSteps`]. A run whose fluid is exactly zero stops at once.
pub fn run_diffusion(
    m: &SparseColumnMatrix,
    f0: DenseVector,
    mut mode: DiffusionMode,
    stop: StoppingRule,
) -> Result<DiffusionRun> {
    if f0.len() != m.dim() {
        return Err(Error::DimensionMismatch {
            expected: m.dim(),
            found: f0.len(),
        });
    }
    if let DiffusionMode::Clu(seq) = &mode {
        if seq.dim() != m.dim() {
            return Err(Error::DimensionMismatch {
                expected: m.dim(),
                found: seq.dim(),
            });
        }
    }
    let mut state = DiffusionState::new(f0);
    let termination = loop {
        if state.fluid().is_zero() || stop.reached(state.step(), state.residual()) {
            break Termination::Converged;
        }
        if state.step() >= stop.max_steps {
            break Termination::MaxSteps;
        }
        state.advance(m, &mut mode)?;
    };
    Ok(DiffusionRun { state, termination })
}

/// Groups a per-step trace into blocks of `every` steps: row `k` carries the
/// residual after step `k·every` and the cancelled and contracted fluid
/// summed over that block. A trailing incomplete block is dropped.
pub fn downsample(trace: &[TraceRecord], every: usize) -> Vec<TraceRecord> {
    let every = every.max(1);
    let Some(first) = trace.first() else {
        return vec![];
    };
    let mut out = vec![TraceRecord { step: 0, ..*first }];
    for (k, block) in trace[1..].chunks_exact(every).enumerate() {
        let last = block[block.len() - 1];
        out.push(TraceRecord {
            step: k as u64 + 1,
            residual_l1: last.residual_l1,
            cancelled: block.iter().map(|r| r.cancelled).sum(),
            contracted: block.iter().map(|r| r.contracted).sum(),
        });
    }
    out
}
