use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("scalars from different fields")]
    FieldMismatch,
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("operands live over different rings")]
    RingMismatch,
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("element is not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("free module ranks or twists do not match")]
    AmbientMismatch,
    #[error("exponent overflow (degree limit 2^16)")]
    ExponentOverflow,
    #[error("operation undefined for the zero module")]
    ZeroModule,
    #[error("module has dimension zero")]
    DimensionZero,
    #[error("ring is not Cohen-Macaulay")]
    NotCohenMacaulay,
    #[error("module is not semidualizing: {0}")]
    NotSemidualizing(String),
    #[error("ideal is not proper")]
    ImproperIdeal,
    #[error("ideal does not annihilate the module: {0}")]
    AnnihilationFailure(String),
    #[error("invalid definition: {0}")]
    Definition(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
