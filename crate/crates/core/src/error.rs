use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("characteristic {0} is too large (must be below 256)")]
    CharacteristicTooLarge(u32),
    #[error("invalid extension degrees s={s}, m={m} (need s >= 1, m >= 2)")]
    InvalidExtension { s: u32, m: u32 },
    #[error("field order {p}^{degree} exceeds the supported bound 2^{max_log2}")]
    OrderTooLarge { p: u32, degree: u32, max_log2: u32 },
    #[error("modulus is not a monic polynomial of degree {expected}")]
    BadModulus { expected: usize },
    #[error("modulus is reducible over F_{0}")]
    ReducibleModulus(u32),
    #[error("element value {value} is out of range for a field of order {order}")]
    ElementOutOfRange { value: u64, order: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("polynomial is zero")]
    ZeroPolynomial,
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("support contains a repeated element at position {0}")]
    DuplicateSupport(usize),
    #[error("support element {element} at position {index} is a root of the Goppa polynomial")]
    RootInSupport { index: usize, element: u32 },
    #[error("negative exponent requires a support without zero")]
    ZeroInSupport,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("code dimension {dim} over F_{p} exceeds the enumeration limit of 2^{limit} codewords")]
    DimensionTooLarge { dim: usize, p: u32, limit: u32 },
    #[error("codeword of weight {weight} lies below the certified bound {bound}")]
    Inconsistent { weight: usize, bound: u64, witness: Vec<u32> },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
