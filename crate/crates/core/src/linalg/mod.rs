//! Column-oriented sparse matrices, dense vectors and coordinate sequences.
//!
//! Coordinates are 0-based in memory. The 1-based form (`Ω = {1..N}`) only
//! shows up at the file and CLI boundary, through
//! [`Coordinate::from_one_based`] and [`Coordinate::one_based`].

mod sequence;
mod sparse;
mod vector;

pub use sequence::{SequenceKind, UpdateSequence};
pub use sparse::{Column, SparseColumnMatrix};
pub use vector::{Coordinate, DenseVector};
