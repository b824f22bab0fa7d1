use thiserror::Error;

/// Errors reported by field construction, code construction, planning and decoding.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u32),

    #[error("field order {p}^{d} exceeds 65536")]
    FieldTooLarge { p: u32, d: u32 },

    #[error("{0} is not a prime power")]
    NotPrimePower(u32),

    #[error("modulus is not a monic irreducible polynomial of degree {d} over GF({p})")]
    InvalidModulus { p: u32, d: u32 },

    #[error("element {alpha} does not generate the multiplicative group of GF({q})")]
    NotPrimitive { alpha: u32, q: u32 },

    #[error("element {value} is outside GF({q})")]
    ElementOutOfRange { value: u32, q: u32 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("hyperplane defined by the zero vector")]
    DegenerateHyperplane,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("modulus {0} is composite; subspace machinery needs a prime")]
    CompositeModulus(u32),

    #[error("vector {vector:?} has digits sharing a factor with r = {r}")]
    GcdViolation { vector: Vec<u8>, r: u32 },

    #[error("vector {vector:?} appears more than once")]
    DuplicateVector { vector: Vec<u8> },

    #[error("{s} copies need a field of order q >= s+1 (q odd) or q >= s+2 (q even); got q = {q}")]
    FieldBound { s: usize, q: u32 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("column {0} is not a systematic column")]
    NotSystematic(usize),

    #[error("{erased} erasures exceed the {r} parities")]
    CapabilityExceeded { erased: usize, r: usize },

    #[error("coefficients insufficient for this erasure pattern {columns:?}")]
    Singular { columns: Vec<usize> },

    #[error("coefficient search gave up after {tries} tries; last failing erasure set {witness:?}")]
    SearchExhausted { tries: usize, witness: Vec<usize> },

    #[error("more than one column in error")]
    MultipleErrors,

    #[error("error could sit in any of columns {columns:?}")]
    AmbiguousError { columns: Vec<usize> },

    #[error("internal invariant broken: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
