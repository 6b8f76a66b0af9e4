use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("{0} is not a supported prime")]
    NotPrime(u64),
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}` at byte {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("coefficient {0} is not defined over the target field")]
    CoefficientNotReducible(String),
    #[error("operation needs a nonzero polynomial")]
    ZeroPolynomial,
    #[error("minor size {size} out of range 1..={max}")]
    MinorSize { size: usize, max: usize },
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("arity mismatch: expected {expected}, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("polynomials live in different rings")]
    RingMismatch,
    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JetError {
    #[error("contact order {order} exceeds what level {level} can impose (max {max})", max = level + 1)]
    OrderExceedsLevel { order: u32, level: u32 },
    #[error("contact order must be positive")]
    ZeroOrder,
    #[error("point does not lie on the variety; the jet fiber is empty")]
    PointNotOnVariety,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DimError {
    #[error("Groebner budget exceeded: {0}")]
    GroebnerBudget(String),
    #[error("enumeration of {size} points exceeds budget {budget}")]
    CountBudget { size: u128, budget: u64 },
    #[error("at least 3 distinct primes are required, got {0}")]
    TooFewPrimes(usize),
    #[error("basis failed Buchberger's criterion ({0} generators)")]
    BasisCheck(usize),
    #[error("inconsistent point counts: {0}")]
    InconsistentCounts(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MldError {
    #[error("truncation level must be at least {min}, got {got}")]
    Level { min: u32, got: u32 },
    #[error("point has {got} coordinates, ring has {expected}")]
    PointArity { expected: usize, got: usize },
    #[error("declared dimension {d} is not below ambient arity {n}")]
    DeclaredDim { d: usize, n: usize },
    #[error("pair needs at least one clause")]
    EmptyPair,
    #[error("negative exponent in pair clause")]
    NegativeExponent,
    #[error("sampling failed: {0}")]
    Sampling(String),
    #[error(transparent)]
    Dim(#[from] DimError),
    #[error(transparent)]
    Jet(#[from] JetError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("expected multiplicity 2, got {0}")]
    Multiplicity(String),
    #[error("expected a homogeneous binary cubic")]
    NotBinaryCubic,
    #[error("expected a polynomial in {expected} variables, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("polynomial does not vanish at the point")]
    NotVanishing,
    #[error("degenerate hyperplane retries exhausted after {0} attempts")]
    DegenerateHyperplanes(usize),
    #[error("expected a 3-fold hypersurface in A^4")]
    NotThreefold,
    #[error(transparent)]
    Mld(#[from] MldError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
