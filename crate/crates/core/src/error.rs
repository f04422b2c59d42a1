use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("gcd(0, 0) is undefined")]
    GcdOfZeros,

    #[error("{m} has no inverse modulo {n} (gcd = {gcd})")]
    NoInverse { m: i64, n: i64, gcd: i64 },

    #[error("Jacobi symbol needs an odd positive modulus, got {0}")]
    InvalidJacobiModulus(i64),

    #[error("{m}/{n} is not a valid fraction: need 0 < M < N")]
    FractionOutOfRange { m: i64, n: i64 },

    #[error("{m} and {n} are not coprime (gcd = {gcd})")]
    NotCoprime { m: i64, n: i64, gcd: i64 },

    #[error("alternating Gauss sum needs M and N both odd, got {m}/{n}")]
    ParityPrecondition { m: i64, n: i64 },

    #[error("expected {expected} values, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("Fock truncation {dim} is too small: need dim > {min}")]
    DimensionTooSmall { dim: usize, min: usize },

    #[error("|alpha|^2 = {alpha_sq:.3} exceeds the truncation guard for dim {dim}; use dim >= {required}")]
    Truncation {
        alpha_sq: f64,
        dim: usize,
        required: usize,
    },

    #[error("Hermite recurrence overflowed at n = {n}, x = {x}")]
    HermiteOverflow { n: usize, x: f64 },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("kernel is singular at phi = {0} (sin phi = 0)")]
    SingularAngle(f64),

    #[error("invalid descriptor: {0}")]
    InvalidDescriptor(String),
}

pub type Result<T> = std::result::Result<T, Error>;
