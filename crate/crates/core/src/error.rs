use thiserror::Error;

/// Failures raised by constructors and operations of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degree {n} exceeds the supported cap of {cap}")]
    DegreeCap { n: usize, cap: usize },

    #[error("parameter {name} = {value} lies within 1e-12 of a non-positive integer")]
    ExcludedParameter { name: String, value: String },

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("floating-point overflow or underflow while computing {0}")]
    Overflow(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("argument outside the domain: {0}")]
    Domain(String),

    #[error("no convergence after {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("sequence `{name}` has no entry at index {index}")]
    SequenceExhausted { name: &'static str, index: usize },

    #[error("coefficient d_{index} is zero")]
    ZeroCoefficient { index: usize },

    #[error("cannot parse {what} from {input:?}: {reason}")]
    Parse {
        what: &'static str,
        input: String,
        reason: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
