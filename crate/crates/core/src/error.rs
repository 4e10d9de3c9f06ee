use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("size {size} exceeds the cap {cap}")]
    CapExceeded { size: u64, cap: u64 },
    #[error("no primitive polynomial of degree {0} found")]
    NoIrreducible(u32),
    #[error("zeta has multiplicative order {found}, expected {expected}")]
    ZetaOrder { expected: usize, found: usize },
    #[error("automorphism does not normalize the group generated by sigma")]
    NotCompatible,
    #[error("division by zero")]
    DivisionByZero,
    #[error("the constant must be nonzero")]
    ZeroConstant,
    #[error("power is not well defined: {0}")]
    WellDefinednessViolation(String),
    #[error("backend cannot enumerate its elements")]
    NoIteration,
    #[error("search strategy does not fit the backend: {0}")]
    StrategyMismatch(&'static str),
    #[error("element does not belong to this algebra")]
    ParentMismatch,
    #[error("maps of degree {0} cannot be composed")]
    DegreeTooHigh(usize),
    #[error("support of the Laurent polynomial is not contained in nZ")]
    SupportNotInNZ,
    #[error("conjugation exponent is {found}, expected {expected}")]
    ExponentMismatch { expected: usize, found: usize },
    #[error("structure constants are not associative on basis triple {0:?}")]
    NotAssociative((usize, usize, usize)),
    #[error("algebra is not central: center has dimension {0} over the prime field")]
    NotCentral(usize),
    #[error("map is not a valid (anti-)automorphism: {0}")]
    InvalidMap(String),
    #[error("min-degree sequence is not strictly increasing at step {0}")]
    Monotonicity(usize),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}
