use num_bigint::BigInt;
use thiserror::Error;

use crate::shadows::ShadowLimit;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by an element with zero body")]
    ZeroDivisor,

    #[error("body matrix is singular")]
    SingularBody,

    #[error("element {0} is not purely even")]
    NotEven(String),

    #[error("element {0} is not purely odd")]
    NotOdd(String),

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("expansion has length {len}, need at least {min}")]
    ShortExpansion { len: usize, min: usize },

    #[error("empty continued fraction expansion")]
    EmptyExpansion,

    #[error("coefficient a_{index} = {value} is out of range")]
    InvalidCoefficient { index: usize, value: BigInt },

    #[error("zero denominator")]
    ZeroDenominator,

    #[error("value lies at projective infinity (q = 0)")]
    ProjectiveInfinity,

    #[error("shadows are only defined for positive rationals, got {0}")]
    NonPositive(String),

    #[error("vector {0} does not have the (even, even, odd) shape")]
    BadShape(String),

    #[error("tolerance must be positive")]
    NonPositiveTolerance,

    #[error("no convergence after {} terms (last delta {})", .0.n_used, .0.last_delta)]
    NotConverged(Box<ShadowLimit>),
}
