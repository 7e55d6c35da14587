use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the requested operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// Geometric tail certification is impossible at this argument.
    #[error("refused: {0}")]
    Refuse(String),
    #[error("unknown catalog id `{0}`")]
    UnknownId(String),
    #[error("unknown generating-function family `{0}`")]
    UnknownFamily(String),
    #[error("cannot parse `{input}`: {reason}")]
    Parse { input: String, reason: String },
    #[error("{value} is not invertible modulo {modulus}")]
    NotInvertible { value: String, modulus: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("Wolstenholme violation at p = {p}: H_(p-1) = {residue} mod p^5 is not divisible by p^2")]
    WolstenholmeViolation { p: u64, residue: u128 },
    #[error("divisibility violation at p = {p}: F_{index} is not divisible by p")]
    DivisibilityViolation { p: u64, index: u64 },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
