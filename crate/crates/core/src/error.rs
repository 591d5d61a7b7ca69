use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix has rank {found}, expected full rank {expected}")]
    RankDeficient { expected: usize, found: usize },
    #[error("dual matrix is rank deficient")]
    DegenerateDual,
    #[error("vector is not in the rational span of the rows")]
    NotInSpan,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("columns {0} and {1} of the configuration coincide")]
    DuplicateColumn(usize, usize),
    #[error("configuration is not homogeneous")]
    NotHomogeneous,
    #[error("configuration is a pyramid (zero row {0} in the Gale dual)")]
    PyramidInput(usize),
    #[error("vector is not primitive (gcd {0})")]
    NonPrimitive(String),
    #[error("Cayley configuration needs at least one part")]
    EmptyCayley,
    #[error("segment [p] needs p >= 1")]
    InvalidSegment,
    #[error("configuration is not irreducible: rows {0} and {1} are parallel")]
    NotIrreducible(usize, usize),
    #[error("u-exponent {0} is negative for the chosen shift")]
    NegativeUExponent(i64),
    #[error("neither polynomial involves the elimination variable")]
    NoVariable,
    #[error("variable {0} occurs with a negative exponent and cannot be set to zero")]
    NegativeExponentAtZero(usize),
    #[error("specialization of variable {0} does not stay integral")]
    NonIntegralSpecialization(usize),
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("parameter lies on the exceptional locus (linear form {0} vanishes)")]
    OnExceptionalLocus(usize),
    #[error("interpolation kernel has dimension {0}, expected 1")]
    KernelDimensionNotOne(usize),
    #[error("implicit equation fails verification at a fresh sample")]
    VerificationFailed,
    #[error("inconsistent split: {0}")]
    InconsistentSplit(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("n = {n} exceeds the size bound {bound}")]
    SizeBound { n: usize, bound: usize },
    #[error("support lattice has no proper maximal chain")]
    NoChain,
    #[error("vector must be nonzero")]
    ZeroVector,
    #[error("point has a zero coordinate at position {0}")]
    ZeroCoordinate(usize),
    #[error("malformed input: {0}")]
    Parse(String),
    #[error("no homogeneous non dual-defect flat found while decomposing")]
    DecompositionFailed,
}

pub type Result<T> = std::result::Result<T, Error>;
