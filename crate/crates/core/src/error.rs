use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivByZero,
    #[error("denominator vanishes at x = 0")]
    DenVanishesAtZero,
    #[error("numerator degree {num} is not below denominator degree {den}")]
    DegreeViolation { num: usize, den: usize },
    #[error("pole is not a root of unity of order <= {max_order}")]
    PoleNotRootOfUnity { max_order: u64 },
    #[error("result is not an element of the space: {0}")]
    NotInSpace(String),
    #[error("internal verification failed: {0}")]
    InternalMismatch(String),
    #[error("index {index} outside the allowed range {range}")]
    IndexOutOfRange { index: u64, range: String },
    #[error("denominator is not admissible for p = {p}")]
    AdmissibilityFailed { p: u64 },
    #[error("pole multiplicities are not uniform: {0:?}")]
    NonUniformMultiplicity(Vec<usize>),
    #[error("not an eigenfunction of U_{p}")]
    NotAnEigenfunction { p: u64 },
    #[error("closed form mixes different polynomial degrees")]
    StructureViolated,
    #[error("prime {0} listed more than once")]
    DuplicatePrime(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("s = {0} must exceed 1")]
    SBelowAbscissa(f64),
    #[error("not a Dirichlet character: {0}")]
    NotACharacter(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
