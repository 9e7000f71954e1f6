use thiserror::Error;

use crate::ternion::Ternion;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("field order {order} exceeds the bound {bound}")]
    FieldTooLarge { order: u128, bound: u64 },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("element index {index} is out of range for a field of order {order}")]
    ElementOutOfRange { index: u64, order: u64 },
    #[error("ternion ({0}) is not a unit")]
    NotUnit(Ternion),
    #[error("{what} has {size} elements, above the enumeration bound {bound}")]
    BoundExceeded {
        what: &'static str,
        size: u128,
        bound: u64,
    },
    #[error("expected {expected} coordinates, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("n = {n} is not supported here, need n >= {min}")]
    DimensionTooSmall { n: usize, min: usize },
    #[error("canonical forms are only defined for free generators")]
    NotFree,
    #[error("matrix is singular")]
    Singular,
    #[error("incidence count is not constant on {case}: observed {observed:?}")]
    NonConstantIncidence { case: String, observed: Vec<u64> },
    #[error("{0}")]
    Parse(String),
}
