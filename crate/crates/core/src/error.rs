use thiserror::Error;

use crate::ring::ElementClass;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid modulus {0}: must be at least 2")]
    InvalidModulus(u64),

    #[error("modulus {modulus} exceeds the supported maximum {max}")]
    ModulusTooLarge { modulus: u64, max: u64 },

    #[error("{value} is not a residue modulo {modulus}")]
    OutOfRange { value: u64, modulus: u64 },

    #[error("{value} is not invertible modulo {modulus}")]
    NotInvertible { value: u64, modulus: u64 },

    #[error("construction requires prime-power modulus, got {0}")]
    UnsupportedRing(u64),

    #[error("zero has no valuation")]
    ZeroHasNoValuation,

    #[error("{value} is {found}, expected {expected}")]
    WrongClass {
        value: u64,
        expected: ElementClass,
        found: ElementClass,
    },

    #[error("shape error: {0}")]
    Shape(String),

    #[error("enumeration needs {required} component evaluations but the cap is {cap}")]
    TooLarge { required: u64, cap: u64 },

    #[error("vector is not a codeword of this code")]
    NotACodeword,

    #[error("the zero codeword is excluded from minimality checks")]
    ZeroCodeword,

    #[error("extra column {index} ({a},{b}) is a unit multiple of the omitted column {omitted}")]
    OmissionViolated {
        index: usize,
        a: u64,
        b: u64,
        omitted: String,
    },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}
