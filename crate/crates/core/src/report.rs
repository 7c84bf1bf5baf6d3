//! How much of the lost fluid was cancelled rather than contracted.
//!
//! Trace points are numbered from 1 starting at the initial residual, so
//! point `k` is `F_{k-1}` and the window "at point `k`" is the single step
//! that produced it.

use alloc::vec::Vec;

use crate::cases::CaseDefinition;
use crate::diffusion::{StoppingRule, TraceRecord};
use crate::schemes::SchemeKind;
use crate::{DenseVector, Result, UpdateSequence};

pub const DEFAULT_POINT: usize = 5;

/// `cancelled / (cancelled + contracted)`, or `None` when no fluid was lost.
pub fn cancellation_fraction(cancelled: f64, contracted: f64) -> Option<f64> {
    let lost = cancelled + contracted;
    (lost > 0.0).then(|| cancelled / lost)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CancellationSummary {
    pub scheme: SchemeKind,
    pub steps: u64,
    pub cumulative_cancelled: f64,
    pub cumulative_contracted: f64,
    pub point: usize,
    pub point_cancelled: f64,
    pub point_contracted: f64,
    /// The trace, initial point included.
    pub per_step: Vec<TraceRecord>,
}

impl CancellationSummary {
    /// Fraction over every step of the run.
    pub fn cumulative_fraction(&self) -> Option<f64> {
        cancellation_fraction(self.cumulative_cancelled, self.cumulative_contracted)
    }

    /// Fraction over the single step producing trace point `point`.
    pub fn point_fraction(&self) -> Option<f64> {
        cancellation_fraction(self.point_cancelled, self.point_contracted)
    }

    /// Per-step fractions, `None` where nothing was lost.
    pub fn step_fractions(&self) -> impl Iterator<Item = (u64, Option<f64>)> + '_ {
        self.per_step
            .iter()
            .skip(1)
            .map(|r| (r.step, cancellation_fraction(r.cancelled, r.contracted)))
    }
}

pub fn summarize(scheme: SchemeKind, trace: &[TraceRecord], point: usize) -> CancellationSummary {
    let moves = trace.get(1..).unwrap_or(&[]);
    let at_point = point.checked_sub(1).and_then(|k| trace.get(k)).filter(|r| r.step > 0);
    CancellationSummary {
        scheme,
        steps: moves.len() as u64,
        cumulative_cancelled: moves.iter().map(|r| r.cancelled).sum(),
        cumulative_contracted: moves.iter().map(|r| r.contracted).sum(),
        point,
        point_cancelled: at_point.map_or(0.0, |r| r.cancelled),
        point_contracted: at_point.map_or(0.0, |r| r.contracted),
        per_step: trace.to_vec(),
    }
}

/// Runs `kind` on a built-in case for `n_steps` diffusion steps (round-robin
/// for Gauss-Seidel, `X_0 = e` for the linear schemes) and summarizes where
/// the fluid went.
pub fn cancellation_report(
    case: &CaseDefinition,
    kind: SchemeKind,
    n_steps: u64,
    point: usize,
) -> Result<CancellationSummary> {
    let pagerank = case.pagerank()?;
    let n = case.dim();
    let seq = UpdateSequence::round_robin(n)?;
    let equivalent = pagerank.diffusion_for(kind, &seq, &DenseVector::uniform(n))?;
    let run = equivalent.run(StoppingRule::max_steps(n_steps))?;
    Ok(summarize(kind, run.trace(), point))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cases::load_case;

    #[test]
    fn jacobi_never_cancels() {
        let case = load_case("case1").unwrap();
        let summary = cancellation_report(&case, SchemeKind::Jacobi, 30, DEFAULT_POINT).unwrap();
        assert_eq!(summary.cumulative_cancelled, 0.0);
        assert_eq!(summary.cumulative_fraction(), Some(0.0));
    }

    #[test]
    fn zero_fluid_gives_undefined_fraction() {
        let trace = [TraceRecord {
            step: 0,
            residual_l1: 0.0,
            cancelled: 0.0,
            contracted: 0.0,
        }];
        let summary = summarize(SchemeKind::PowerIteration, &trace, DEFAULT_POINT);
        assert_eq!(summary.cumulative_fraction(), None);
        assert_eq!(summary.point_fraction(), None);
        assert_eq!(summary.steps, 0);
    }

    #[test]
    fn point_window_reads_one_step() {
        let trace: Vec<TraceRecord> = (0..6)
            .map(|s| TraceRecord {
                step: s,
                residual_l1: 1.0,
                cancelled: s as f64,
                contracted: 1.0,
            })
            .collect();
        let summary = summarize(SchemeKind::PowerIteration, &trace, 5);
        assert_eq!((summary.point_cancelled, summary.point_contracted), (4.0, 1.0));
        assert_eq!(summary.point_fraction(), Some(0.8));
        assert_eq!(summary.cumulative_cancelled, 15.0);
        assert_eq!(summarize(SchemeKind::PowerIteration, &trace, 1).point_fraction(), None);
    }
}
