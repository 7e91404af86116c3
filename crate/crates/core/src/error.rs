use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty generator set")]
    EmptyGenerators,
    #[error("variable count mismatch: expected {expected}, found {found}")]
    VariableMismatch { expected: usize, found: usize },
    #[error("the unit monomial cannot be an ideal generator")]
    UnitGenerator,
    #[error("operation undefined on the unit monomial")]
    UnitMonomial,
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("{s} generators exceed the cap of {cap}")]
    GeneratorCap { s: usize, cap: usize },
    #[error("ideal is not stable")]
    NotStable,
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("field characteristic {0} is neither 0 nor a prime")]
    InvalidCharacteristic(u64),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("lexification did not stabilise by degree {cap}")]
    StopRuleNotReached { cap: u32 },
    #[error("generic initial ideal is not confident: {0}")]
    GinNotConfident(String),
    #[error("singular coordinate change in {attempts} consecutive draws")]
    SingularChange { attempts: usize },
    #[error("zero polynomial among generators")]
    ZeroPolynomial,
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("i/o: {0}")]
    Io(String),
    #[error("internal check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
