use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus of degree {degree} is reducible over F_{q}")]
    ReducibleModulus { q: u64, degree: usize },
    #[error("extension degree must be at least 1, got {0}")]
    InvalidDegree(usize),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("zero polynomial has no factorization")]
    ZeroPolynomial,
    #[error("constant polynomial where a nonconstant one is required")]
    ConstantInput,
    #[error("target degree {small} does not divide source degree {big}")]
    NonDivisibleDegrees { big: usize, small: usize },
    #[error("elements belong to different coefficient rings")]
    RingMismatch,
    #[error("division by the zero skew polynomial")]
    DivisionByZero,
    #[error("right gcd of two zero skew polynomials")]
    BothZero,
    #[error("operation requires rank {expected}, module has rank {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("polynomial {0} is not prime in F_q[T]")]
    NotPrime(String),
    #[error("t + tau^{r} is not supersingular for deg p = {d} (gcd(r, d) = {g} != 1)")]
    NotSupersingular { r: usize, d: usize, g: usize },
    #[error("tau-degree {got} of the isogeny does not match deg m = {expected}")]
    NormDegreeMismatch { expected: usize, got: usize },
    #[error("the auxiliary prime must differ from the characteristic p")]
    QprimeEqualsP,
    #[error("torsion field search exhausted (cap {cap} extensions of the working field)")]
    TorsionScheduleExhausted { cap: usize },
    #[error("zero-entry strategy requires odd deg p, got d = {0}")]
    DEvenForZeroEntry(usize),
    #[error("subspace has F_q-dimension {got}, expected {expected}")]
    CodeDimensionMismatch { expected: usize, got: usize },
    #[error("nonzero codeword maps to a singular matrix (construction bug)")]
    SingularCodeword,
    #[error("Brandt matrices use different class orderings")]
    OrderingMismatch,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
