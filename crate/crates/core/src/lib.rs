//! Power iteration, Jacobi and Gauss-Seidel seen as fluid diffusion.
//!
//! For the linear problem `X = P X` and the affine problem `X = P X + B`,
//! every classical scheme in [`schemes`] has an equivalent diffusion
//! iteration over a pair of vectors `(F, H)`:
//!
//! * `F` is the residual fluid that has not been delivered yet,
//! * `H` is the fluid accumulated so far; the classical iterate is
//!   reconstructed as `H + offset`.
//!
//! A coordinate level update (CLU, Gauss-Seidel style) takes the fluid sitting
//! on one coordinate `i`, banks it into `H[i]` and pushes it along column `i`
//! of `P`:
//!
//! ```text
//! F_n = F_{n-1} + (P - I) J_i F_{n-1}
//! H_n = H_{n-1} + J_i F_{n-1}
//! ```
//!
//! A vector level update (VLU, Jacobi style) moves all fluid at once:
//! `F_n = P F_{n-1}`, `H_n = H_{n-1} + F_{n-1}`.
//!
//! The residual `|F_n|_1` drops for two distinct reasons, both accounted for
//! per step by [`diffusion::MetricAccumulator`]:
//!
//! * contraction: a column whose absolute sum is below one destroys part of
//!   the fluid it carries (a fraction `1 - d` for the PageRank operator `dQ`),
//! * cancellation: fluid of opposite signs meeting on the same coordinate.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, trace export
//! and the experiment driver live in the companion `diter` crate.
//!
//! ```
//! use diter_core::{cases, diffusion::StoppingRule};
//!
//! let case = cases::load_case("case1").unwrap();
//! let pagerank = case.pagerank().unwrap();
//! let run = pagerank
//!     .jacobi()
//!     .run(StoppingRule::max_steps(10))
//!     .unwrap();
//! // Positive fluid on a column-stochastic Q: the residual shrinks exactly by d.
//! let r = run.trace();
//! assert!((r[10].residual_l1 / r[9].residual_l1 - 0.85).abs() < 1e-12);
//! ```

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod cases;
pub mod diffusion;
pub mod equivalence;
mod error;
pub mod linalg;
pub mod oracle;
pub mod pagerank;
pub mod report;
pub mod schemes;

pub use diffusion::{
    run_diffusion, DiffusionMode, DiffusionRun, DiffusionState, StoppingRule, Termination, TraceRecord,
};
pub use equivalence::{to_diffusion, verify_equivalence, DiffusionEquivalent, EquivalenceReport};
pub use error::{Error, Result};
pub use linalg::{Coordinate, DenseVector, SparseColumnMatrix, UpdateSequence};
pub use oracle::dense_solve_oracle;
pub use pagerank::{pagerank_decompose, PageRank};
pub use schemes::{run_scheme, SchemeKind, SchemeSpec};
