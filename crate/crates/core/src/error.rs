use thiserror::Error;

use crate::series::Var;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid Young diagram: {0}")]
    InvalidDiagram(String),

    #[error("invalid plane partition: {0}")]
    InvalidPlanePartition(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("box ({0}, {1}) is outside the support")]
    BoxOutsideSupport(usize, usize),

    #[error("corner entry {corner} exceeds the framing rank {rank}")]
    CornerExceedsRank { corner: u32, rank: u32 },

    #[error("the factor 1 - x^0 vanishes identically")]
    ZeroFactor,

    #[error("truncation profiles differ")]
    ProfileMismatch,

    #[error("divisor constant term {0} is not a unit")]
    NonUnitConstant(String),

    #[error("variable {0} is not present in the truncation profile")]
    UnknownVariable(Var),

    #[error("monomial has a negative exponent in {0}")]
    NegativeExponent(Var),

    #[error("specializing {0} to zero annihilates the monomial prefactor")]
    VanishingSpecialization(Var),

    #[error("not a polynomial: {0}")]
    NotPolynomial(String),

    #[error("invalid chain: {0}")]
    InvalidChain(String),

    #[error("{0} is not a prime")]
    NotPrime(u32),

    #[error("search space of {size} tuples exceeds the budget of {budget}")]
    BudgetExceeded { size: String, budget: u64 },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
