use thiserror::Error;

/// Everything that can go wrong in the toolkit.
///
/// Variants are grouped by [`ErrorKind`], which the CLI maps onto exit codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected ambient n = {expected}, found n = {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("arity mismatch: expected {expected} entries, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("{0} requires a nonzero polynomial")]
    ZeroPolynomial(&'static str),

    #[error("all entries of the tuple are zero")]
    AllZeroTuple,

    #[error("map components are not homogeneous of a common degree: {0}")]
    NotHomogeneous(String),

    #[error("composition is identically zero (image lies in the base locus)")]
    ZeroComposition,

    #[error("point {0} lies in the base locus of this representative")]
    BaseLocus(String),

    #[error("restriction to X{0} = 0 is identically zero; normalize the representative first")]
    ZeroRestriction(usize),

    #[error("no sample point off the base locus found on X{0} = 0 after {1} attempts")]
    NoSamplePoint(usize, usize),

    #[error("variable index {index} out of range 0..={max}")]
    VariableOutOfRange { index: usize, max: usize },

    #[error("map is not in G-form: {0}")]
    NotGForm(String),

    #[error("leading-term hypothesis fails: {0}")]
    LeadingHypothesis(String),

    #[error("matrix is not in SL'_n(Z): {0}")]
    NotSlPrime(String),

    #[error("matrix is not invertible over Z (det = {0})")]
    NotUnimodular(i128),

    #[error("integer overflow in exact matrix arithmetic")]
    Overflow,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("not a polynomial map after restriction: {0}")]
    NotPolynomialRestriction(String),

    #[error("{message} at line {line}, column {column}")]
    Syntax {
        message: String,
        line: usize,
        column: usize,
    },

    #[error("unknown name: {0}")]
    UnknownName(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("usage: {0}")]
    Usage(String),

    #[error("io: {0}")]
    Io(String),
}

/// Coarse classification used for exit codes and FFI status codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Malformed input: syntax, usage, unreadable files.
    Input,
    /// A precondition of the requested operation does not hold.
    Precondition,
    /// A checked property or verification came out false.
    Verification,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Syntax { .. } | Error::Usage(_) | Error::Io(_) | Error::UnknownName(_) => {
                ErrorKind::Input
            }
            Error::Verification(_) => ErrorKind::Verification,
            _ => ErrorKind::Precondition,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
