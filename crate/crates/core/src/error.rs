use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("arity mismatch: expected {expected} variables, got {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("series reciprocal needs a constant term of +1 or -1, found {0}")]
    NonUnitConstant(String),

    #[error("invalid partition {0:?}: parts must be nonnegative and weakly decreasing")]
    InvalidPartition(Vec<i64>),

    #[error("invalid root: {0}")]
    InvalidRoot(String),

    #[error("inconsistent twist configuration: {0}")]
    InconsistentTwists(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("size guard exceeded: {what} needs {needed}, limit is {limit}")]
    SizeGuard {
        what: &'static str,
        needed: u128,
        limit: u128,
    },

    #[error("degree box {box_bounds:?} does not cover the query point {point:?}")]
    BoxTooSmall {
        box_bounds: Vec<u32>,
        point: Vec<i64>,
    },

    /// A multiplicity came out negative; the coefficient table or the stencil is wrong.
    #[error("negative multiplicity {value} at M = {magnons:?}")]
    NegativeMultiplicity { magnons: Vec<i64>, value: String },

    #[error("character peeling left residual {value} at M = {magnons:?}")]
    PeelingResidual { magnons: Vec<i64>, value: String },
}

pub type Result<T> = std::result::Result<T, Error>;
