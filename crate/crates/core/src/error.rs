use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("duplicate element identifier `{0}`")]
    DuplicateElement(String),

    #[error("cover relation references unknown element `{0}`")]
    UnknownElement(String),

    #[error("cover relation is cyclic through element `{0}`")]
    Cycle(String),

    #[error("target poset is not totally ordered")]
    NotTotallyOrdered,

    #[error("lexicographic depth {depth} is not supported here (maximum {max})")]
    DepthUnsupported { depth: usize, max: usize },

    #[error("{t} is not above the threshold {threshold}")]
    Domain { threshold: f64, t: f64 },

    #[error("point is not a member of the stage-{stage} space: {reason}")]
    Membership { stage: usize, reason: String },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("floating-point rounding pushed coordinate {element} onto its threshold")]
    PrecisionLoss { element: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
