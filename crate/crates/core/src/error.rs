//! Error type shared by every module of the crate.

use std::fmt;

/// Obstruction reported when an antiderivative does not exist.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AntiderivativeWitness {
    /// Canonical indices of a coset on which the data fails to sum to zero.
    Coset(Vec<u64>),
    /// Pair of direction indices whose cross-derivative symmetry fails.
    Pair(usize, usize),
}

impl fmt::Display for AntiderivativeWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AntiderivativeWitness::Coset(c) => write!(f, "coset {c:?} has nonzero sum"),
            AntiderivativeWitness::Pair(i, j) => {
                write!(f, "cross-derivatives of inputs {i} and {j} differ")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {0} exceeds the supported maximum 61")]
    PrimeTooLarge(u64),
    #[error("field order {p}^{n} exceeds the supported maximum 2^20")]
    FieldTooLarge { p: u64, n: usize },
    #[error("modulus {modulus:?} is reducible over F_{p}")]
    Reducible { p: u64, modulus: Vec<u64> },
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("expected coefficient list of length {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("direction must be nonzero")]
    ZeroDirection,
    #[error("directions are F_p-linearly dependent")]
    DependentDirections,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("{got} directions exceed the subset-expansion limit of {max}")]
    TooManyDirections { got: usize, max: usize },
    #[error("input too large: {0}")]
    TooLarge(String),
    #[error("out of range: {0}")]
    RangeError(String),
    #[error("component selector must be nonzero")]
    ZeroMu,
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("bases or component counts do not match")]
    BasisMismatch,
    #[error("no antiderivative exists: {witness}")]
    NoAntiderivative { witness: AntiderivativeWitness },
    #[error("no matching function exists (component {component}, row {j}, tail exponents {w:?})")]
    NoMatch {
        component: usize,
        j: usize,
        w: Vec<u64>,
    },
    #[error("precondition failed: the stated derivatives differ")]
    NotApplicable,
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
