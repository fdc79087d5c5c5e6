use thiserror::Error;

/// Every failure mode of the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,
    #[error("division by zero")]
    DivisionByZero,
    #[error("q must be a rational number other than 0, 1 and -1, got {0}")]
    InvalidQ(String),
    #[error("the operator is zero")]
    ZeroOperator,
    #[error("no cyclic vector found after {0} seeds")]
    CyclicVectorFailure(usize),
    #[error("operation supports order {expected} only, got {got}")]
    UnsupportedOrder { expected: usize, got: usize },
    #[error("expansion point is singular")]
    SingularPoint,
    #[error("operation {op} is not available in the {ctx} context")]
    UnsupportedContext { op: &'static str, ctx: &'static str },
    #[error("empty input list")]
    EmptyInput,
    #[error("matrix is not square")]
    NonSquare,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("both operands are zero")]
    BothZero,
    #[error("leading exponent is zero modulo p")]
    InvalidLeadingExponent,
    #[error("p = {0} is not prime")]
    NotPrime(u64),
    #[error("recurrence has only {found} rational solutions, {needed} required")]
    FieldNotLinearlySigmaClosed { found: usize, needed: usize },
    #[error("operator is not monic")]
    NonMonic,
    #[error("generator has zero trailing coefficient")]
    NotPerfectlyReduced,
}

pub type Result<T> = std::result::Result<T, Error>;
