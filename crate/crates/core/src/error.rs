use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime in the supported range 2..=2^20")]
    NotPrime(u64),
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("constant polynomial has no irreducibility status")]
    ConstantPolynomial,
    #[error("polynomial {0} is reducible")]
    Reducible(String),
    #[error("polynomial x has no multiplicative order")]
    OrderOfX,
    #[error("matrix is singular")]
    Singular,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("{what} = {value} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        value: u128,
        cap: u128,
    },
    #[error("subspace is not invariant under the map")]
    NotInvariant,
    #[error("inadmissible binding for {line}: {reason}")]
    InadmissibleBinding { line: String, reason: String },
    #[error("unknown table line {0}")]
    UnknownLine(String),
    #[error("shard conflict: {0}")]
    ShardConflict(String),
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("unknown {kind} `{name}`")]
    UnknownStrategy { kind: &'static str, name: String },
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn parse(offset: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            offset,
            message: message.into(),
        }
    }

    pub(crate) fn shape(message: impl Into<String>) -> Self {
        Error::ShapeMismatch(message.into())
    }
}
