// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid base {0}: base must be at least 2")]
    InvalidBase(u32),
    #[error("digit {digit} out of range for base {base}")]
    DigitOutOfRange { digit: u32, base: u32 },
    #[error("missing transition from state `{state}` on digit {digit}")]
    MissingTransition { state: String, digit: u32 },
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("duplicate state `{0}`")]
    DuplicateState(String),
    #[error("leading-zero variance: output changes along the 0-transition from state `{state}`")]
    LeadingZeroVariance { state: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("valuation of 0 is undefined")]
    UndefinedValuation,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("value out of supported range: {0}")]
    OutOfRange(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("value {0} is not a nonnegative integer")]
    NonIntegral(String),
    #[error("exponent spacing too small: need at least {required}")]
    SpacingTooSmall { required: u64 },
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("search too large: {0}")]
    TooLarge(String),
    #[error("sequence is not multiplicative: a({m}*{n}) != a({m})*a({n})")]
    NotMultiplicative { m: u64, n: u64 },
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
