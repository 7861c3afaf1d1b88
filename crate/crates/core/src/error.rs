use std::fmt;

use thiserror::Error;

/// A violated Jacobi identity: the cyclic sum over `(i, j, k)` (1-based)
/// is the nonzero `defect` vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiViolation {
    pub triple: (usize, usize, usize),
    pub defect: Vec<num_rational::BigRational>,
}

impl fmt::Display for JacobiViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (i, j, k) = self.triple;
        write!(f, "({i},{j},{k}) defect [")?;
        for (idx, d) in self.defect.iter().enumerate() {
            if idx > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, "]")
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("structure constants are not antisymmetric at ({i},{j},{k})")]
    NotAntisymmetric { i: usize, j: usize, k: usize },

    #[error("Jacobi identity fails for {} triple(s); first: {}", .0.len(), .0[0])]
    Jacobi(Vec<JacobiViolation>),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("index out of range: {0}")]
    IndexRange(String),

    #[error("invariant violation (implementation bug): {0}")]
    InvariantViolation(String),

    #[error("witness-not-found: no pair of covectors with distinct heights after {samples} samples")]
    WitnessNotFound { samples: usize },

    #[error("internal error: {0}")]
    Internal(String),

    #[error("usage error: {0}")]
    Usage(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
        if expected == found {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected, found })
        }
    }
}
