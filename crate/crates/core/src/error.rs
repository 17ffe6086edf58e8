use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("component exponents must be positive and strictly increasing")]
    NonIncreasingExponents,
    #[error("component multiplicities must be at least 1")]
    ZeroMultiplicity,
    #[error("a group needs at least one component")]
    EmptyGroup,
    #[error("operands belong to different groups or are not reduced")]
    MismatchedParent,
    #[error("group of order {size} exceeds the enumeration budget {limit}")]
    GroupTooLarge { size: String, limit: u64 },
    #[error("endomorphism ring of order {size} exceeds the budget {limit}")]
    RingTooLarge { size: String, limit: u64 },
    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("indicator entries must be strictly increasing")]
    NotIncreasing,
    #[error("not admissible: {0}")]
    NotAdmissible(String),
    #[error("no alias for cell ({row},{col})")]
    NoAlias { row: u32, col: u32 },
    #[error("subgroup is not fully invariant")]
    NotFullyInvariant,
    #[error("canonical form {alpha:?} does not regenerate the subgroup")]
    CanonicalFormMismatch { alpha: Vec<u32> },
    #[error("unknown export format `{0}`")]
    UnknownFormat(String),
    #[error("shape violation: {0}")]
    ShapeViolation(String),
    #[error("descriptors live in incomparable contexts")]
    IncomparableContext,
    #[error("no greatest lower / least upper bound among admissible indicators")]
    NotALattice,
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// True for the errors raised when a configured enumeration budget is exceeded.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Error::GroupTooLarge { .. } | Error::RingTooLarge { .. }
        )
    }
}
