use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Entry buffer does not hold `dim * dim` values.
    InvalidShape {
        expected: usize,
        found: usize,
    },
    NonFinite,
    DimensionMismatch {
        left: usize,
        right: usize,
    },
    NotHermitian {
        deviation: f64,
    },
    NotPositiveDefinite {
        min_eigenvalue: f64,
        max_eigenvalue: f64,
    },
    /// A scalar map was evaluated outside its domain.
    Domain {
        reason: &'static str,
        value: f64,
    },
    NumericalFailure(&'static str),
    ParamOutOfRange {
        name: &'static str,
        value: f64,
    },
    NotCommuting {
        index: usize,
        relative_commutator: f64,
    },
    LengthMismatch {
        left: usize,
        right: usize,
    },
    NegativeEntry {
        index: usize,
        value: f64,
    },
    IndexOutOfRange {
        index: usize,
        len: usize,
    },
    EmptyTuple,
}

impl Error {
    /// True for errors caused by floating point limits rather than by bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NumericalFailure(_) | Error::Domain { .. } | Error::NotPositiveDefinite { .. } | Error::NonFinite
        )
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidShape { expected, found } => {
                write!(f, "expected {expected} entries, found {found}")
            }
            Error::NonFinite => f.write_str("matrix contains NaN or infinite entries"),
            Error::DimensionMismatch { left, right } => {
                write!(f, "dimension mismatch: {left} vs {right}")
            }
            Error::NotHermitian { deviation } => {
                write!(f, "matrix is not Hermitian (relative deviation {deviation:e})")
            }
            Error::NotPositiveDefinite { min_eigenvalue, max_eigenvalue } => {
                write!(f, "matrix is not positive definite (eigenvalues in [{min_eigenvalue:e}, {max_eigenvalue:e}])")
            }
            Error::Domain { reason, value } => write!(f, "domain error: {reason} ({value:e})"),
            Error::NumericalFailure(what) => write!(f, "numerical failure: {what}"),
            Error::ParamOutOfRange { name, value } => {
                write!(f, "parameter {name} = {value} is out of range")
            }
            Error::NotCommuting { index, relative_commutator } => {
                write!(f, "pair {index} does not commute (relative commutator {relative_commutator:e})")
            }
            Error::LengthMismatch { left, right } => {
                write!(f, "vector lengths differ: {left} vs {right}")
            }
            Error::NegativeEntry { index, value } => {
                write!(f, "negative entry {value:e} at index {index} in a log-mode comparison")
            }
            Error::IndexOutOfRange { index, len } => {
                write!(f, "index {index} out of range 1..={len}")
            }
            Error::EmptyTuple => f.write_str("matrix tuple must contain at least one pair"),
        }
    }
}

impl core::error::Error for Error {}
