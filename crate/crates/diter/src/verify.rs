//! Classical schemes against their diffusion forms on the built-in cases.

use diter_core::cases::CaseDefinition;
use diter_core::{verify_equivalence, DenseVector, EquivalenceReport, SchemeKind, SchemeSpec, UpdateSequence};

use crate::error::Result;

/// Lockstep check of all four schemes on one case for `steps` steps.
///
/// The linear schemes run on the dense Google matrix from `X_0 = e`, the
/// affine ones on `dQ` with `B = (1 - d) e`.
pub fn verify_case(case: &CaseDefinition, steps: u64) -> Result<Vec<EquivalenceReport>> {
    let pagerank = case.pagerank()?;
    let n = case.dim();
    let google = pagerank.google_matrix()?;
    let seq = UpdateSequence::round_robin(n)?;
    SchemeKind::ALL
        .iter()
        .map(|&kind| {
            let spec = if kind.is_affine() {
                SchemeSpec::new(
                    kind,
                    pagerank.operator().clone(),
                    Some(pagerank.teleport().clone()),
                    None,
                    Some(seq.clone()),
                )
            } else {
                SchemeSpec::new(
                    kind,
                    google.clone(),
                    None,
                    Some(DenseVector::uniform(n)),
                    Some(seq.clone()),
                )
            }?;
            Ok(verify_equivalence(&spec, steps)?)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use diter_core::cases::builtin_cases;

    #[test]
    fn builtin_cases_agree() {
        for case in builtin_cases() {
            for report in verify_case(&case, 50).unwrap() {
                assert!(report.worst() <= 1e-10, "{} {:?}", case.name, report);
            }
        }
    }
}
