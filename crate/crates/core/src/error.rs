use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("signature ({p},{q}) has dimension {n} > {max}")]
    DimensionTooLarge { p: usize, q: usize, n: usize, max: usize },
    #[error("signature mismatch: ({0},{1}) vs ({2},{3})")]
    SignatureMismatch(usize, usize, usize, usize),
    #[error("blade index {index} out of range for dimension {n}")]
    BladeOutOfRange { index: usize, n: usize },
    #[error("expected a vector (grade-1 element)")]
    NotAVector,
    #[error("null vector: B(x,x) = 0, no Kelvin inverse")]
    NullVector,
    #[error("division by zero")]
    DivisionByZero,
    #[error("degenerate matrix: pseudodeterminant is zero or not a real scalar")]
    DegenerateMatrix,
    #[error("element is not invertible")]
    NotInvertible,
    #[error("dilation factor must be positive")]
    NonPositiveDilation,
    #[error("scalar has no square root in this coefficient field")]
    ScalarNotSquare,
    #[error("matrix does not preserve the unit sphere")]
    NotSpherePreserving,
    #[error("normal form undefined: a ā − b b̄ = 0")]
    Unnormalizable,
    #[error("sphere-preserving matrix does not match the (β', ±α') bottom-row pattern")]
    NoStructuralPattern,
    #[error("only {found} admissible samples out of {wanted} requested")]
    InsufficientSamples { wanted: usize, found: usize },
    #[error("no φ sign pattern passes all checks")]
    NoneFound,
    #[error("point lies outside the open unit disk")]
    PointOutsideDomain,
    #[error("invalid disk automorphism: {0}")]
    InvalidAutomorphism(&'static str),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("malformed multivector encoding: {0}")]
    Encoding(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
