use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Errors raised by the solver core.
///
/// Coordinates inside error values are reported 1-based, the way they appear
/// in input files.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    DimensionMismatch {
        expected: usize,
        found: usize,
    },
    IndexOutOfRange {
        index: usize,
        dim: usize,
    },
    EmptyDimension,
    DuplicateEntry {
        row: usize,
        col: usize,
    },
    NonFiniteEntry {
        row: usize,
        col: usize,
    },
    /// An explicit update list never visits `missing`.
    UnfairSequence {
        missing: usize,
    },
    MissingOperand {
        scheme: &'static str,
        operand: &'static str,
    },
    /// Jacobi and affine Gauss-Seidel always start from the zero vector.
    NonZeroStart,
    NotNormalized {
        sigma: f64,
    },
    InvalidDamping(f64),
    Singular {
        column: usize,
    },
    OracleResidual {
        residual: f64,
        bound: f64,
    },
    TooLarge {
        dim: usize,
        max: usize,
    },
    UnknownCase(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::IndexOutOfRange { index, dim } => {
                write!(f, "coordinate {index} is outside 1..={dim}")
            }
            Error::EmptyDimension => f.write_str("dimension must be at least 1"),
            Error::DuplicateEntry { row, col } => {
                write!(f, "duplicate entry at ({row}, {col})")
            }
            Error::NonFiniteEntry { row, col } => {
                write!(f, "non-finite value at ({row}, {col})")
            }
            Error::UnfairSequence { missing } => {
                write!(f, "update sequence never visits coordinate {missing}")
            }
            Error::MissingOperand { scheme, operand } => {
                write!(f, "{scheme} requires {operand}")
            }
            Error::NonZeroStart => f.write_str("Jacobi and affine Gauss-Seidel must start from the zero vector"),
            Error::NotNormalized { sigma } => {
                write!(f, "initial vector must sum to 1, got {sigma}")
            }
            Error::InvalidDamping(d) => write!(f, "damping factor {d} is outside (0, 1)"),
            Error::Singular { column } => {
                write!(f, "I - P is singular (zero pivot in column {column})")
            }
            Error::OracleResidual { residual, bound } => {
                write!(f, "direct solve residual {residual:e} exceeds {bound:e}")
            }
            Error::TooLarge { dim, max } => {
                write!(f, "dimension {dim} exceeds the dense limit {max}")
            }
            Error::UnknownCase(name) => write!(f, "unknown case {name:?}"),
        }
    }
}

impl core::error::Error for Error {}
