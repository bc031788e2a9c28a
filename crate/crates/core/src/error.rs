use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("ambient dimension must be at least 1")]
    ZeroDimension,
    #[error("inequalities do not describe a bounded set")]
    Unbounded,
    #[error("scale factor must be positive, got {0}")]
    NonPositiveScale(String),
    #[error("empty grading: no generator has positive last coordinate")]
    EmptyGrading,
    #[error("generator {0:?} has last coordinate 0 and would add a recession direction")]
    RecessionGenerator(Vec<i64>),
    #[error("generator {0:?} has a negative entry")]
    NegativeGenerator(Vec<i64>),
    #[error("zero section has no valuation")]
    ZeroSection,
    #[error("multi-index {0:?} appears more than once")]
    DuplicateMultiIndex(Vec<u32>),
    #[error("degree {k} is not materialized (degree bound {bound})")]
    DegreeOutOfRange { k: u32, bound: u32 },
    #[error("empty sample of degrees")]
    EmptySample,
    #[error("a piecewise-affine function needs at least one affine piece")]
    NoPieces,
    #[error("function is negative on the domain: value {value} at {point:?}")]
    NegativeFunction { point: Vec<String>, value: String },
    #[error("domain polytope is not full-dimensional")]
    DegenerateDomain,
    #[error("polytope has a non-integral vertex {0:?}")]
    NonIntegralPolytope(Vec<String>),
    #[error("parameter {name} = {value} is out of range: {reason}")]
    ParameterOutOfRange {
        name: &'static str,
        value: String,
        reason: &'static str,
    },
    #[error("invalid filtration: {0}")]
    InvalidFiltration(String),
    #[error("invalid normal-cone datum: {0}")]
    InvalidNormalConeDatum(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn point_strings<T: crate::Scalar>(p: &[T]) -> Vec<String> {
    p.iter().map(|v| v.to_exact_string()).collect()
}
