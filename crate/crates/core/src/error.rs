use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {0} exceeds the supported maximum")]
    FieldTooLarge(u64),
    #[error("modulus has degree {found}, expected {expected}")]
    ModulusDegree { expected: u32, found: usize },
    #[error("modulus must be monic")]
    ModulusNotMonic,
    #[error("modulus coefficient {0} is not reduced mod p")]
    ModulusCoefficient(u32),
    #[error("modulus is reducible")]
    ReducibleModulus,
    #[error("element {rep} is not in GF({q})")]
    ElementOutOfRange { rep: u32, q: u32 },
    #[error("zero has no multiplicative inverse")]
    InverseOfZero,
    #[error("the zero vector is not a projective point")]
    ZeroVector,
    #[error("expected {expected} coordinates, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("objects live in different fields or spaces")]
    SpaceMismatch,
    #[error("PG({n}, {q}) is too large for an incidence table")]
    SpaceTooLarge { n: usize, q: u32 },
    #[error("points must be distinct")]
    EqualPoints,
    #[error("index {0} is out of range")]
    IndexOutOfRange(usize),
    #[error("duplicate element {0} in set")]
    Duplicate(usize),
    #[error("subspace dimension {found} is not valid here (expected {expected})")]
    SubspaceDimension { expected: String, found: isize },
    #[error("hyperplane set is not a cover")]
    NotACover,
    #[error("point set is not a blocking set")]
    NotABlockingSet,
    #[error("point {0} is not in the set")]
    PointNotInSet(usize),
    #[error("set is empty")]
    EmptySet,
    #[error("holes are not contained in one hyperplane")]
    HolesNotInHyperplane,
    #[error("parameter out of range: {0}")]
    Parameter(String),
    #[error("{what} would require {count} instances, above the budget of {budget}")]
    BudgetExceeded { what: String, count: u128, budget: u128 },
}
