use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arity mismatch: expected {expected} variables, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("divisor is not monic in variable {var}")]
    NotMonicInVariable { var: usize },

    #[error("series inverse: the denominator vanishes at the expansion point")]
    NotInvertibleAtNode,

    #[error("expected exactly {expected} generators, got {got}")]
    GeneratorCount { expected: usize, got: usize },

    #[error("generator {index} is identically zero")]
    ZeroGenerator { index: usize },

    #[error("ideal is not zero-dimensional")]
    NotZeroDimensional,

    #[error("empty variety: the ideal contains a unit")]
    EmptyVariety,

    #[error("point is not a zero of the system")]
    NodeNotAZero,

    #[error("duplicate interpolation node")]
    DuplicateNode,

    #[error("multiplicity entries must be positive")]
    InvalidMultiplicity,

    #[error("ill-posed functional: it does not annihilate the ideal")]
    IllPosedFunctional,

    #[error("internal invariant violated: {0}")]
    InvariantViolation(&'static str),
}
