//! File formats, trace export and the experiment runner behind the `diter`
//! command-line tool.
//!
//! Matrices are read from MatrixMarket `coordinate real general` files and
//! vectors from plain text, one value per line. Each run writes one CSV per
//! scheme (`step,residual_l1,cancelled,contracted`) and a gnuplot script.

pub mod analysis;
pub mod error;
pub mod experiment;
pub mod gnuplot;
pub mod mtx;
pub mod output;
pub mod vecfile;
pub mod verify;

pub use error::{CliError, Result};
pub use experiment::{
    load_custom, run_custom, run_experiment, run_problem, simulate, CustomInput, ExperimentOutcome, Problem, RunConfig,
    SchemeTrace, SequenceChoice,
};
