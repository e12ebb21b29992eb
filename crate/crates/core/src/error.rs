use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("denominator is zero")]
    ZeroDenominator,

    #[error("modulus {0} is not a prime")]
    NonPrimeModulus(u64),

    #[error("division by zero")]
    DivisionByZero,

    #[error("elements belong to different fields ({left} vs {right})")]
    FieldMismatch { left: String, right: String },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("block decomposition of an empty matrix is undefined")]
    EmptyMatrix,

    #[error("row index {index} out of range for {rows} rows")]
    IndexOutOfRange { index: usize, rows: usize },

    #[error("invalid elementary operation: {0}")]
    InvalidOperation(String),

    #[error("first column is identically zero")]
    ZeroFirstColumn,

    /// `A·B` differs from the identity; the position is 1-based.
    #[error("A·B is not the identity: entry ({row},{col}) is {found}, expected {expected}")]
    NotLeftInverse {
        row: usize,
        col: usize,
        found: String,
        expected: String,
    },

    /// A state the proof rules out was reached. Always an implementation bug.
    #[error("internal contradiction: {0}")]
    InternalContradiction(String),

    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),

    #[error("enumeration too large: {0}")]
    TooLarge(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
