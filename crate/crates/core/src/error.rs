use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("quadrature order {0} outside the supported range 2..=256")]
    OrderOutOfRange(usize),

    #[error("scale parameter must be positive and finite, got {0}")]
    NonPositiveScale(f64),

    #[error("index {index} exceeds the configured maximum order {max}")]
    IndexTooLarge { index: usize, max: usize },

    #[error("hyperbolic value ({0}, {1}) has a negative component")]
    NegativeHyperbolic(f64, f64),

    #[error("{nodes} quadrature nodes exceed the budget of {budget}; pass force to override")]
    NodeBudget { nodes: u128, budget: u128 },

    #[error("non-finite value encountered in {0}")]
    NonFinite(&'static str),

    #[error("finite-difference step {0} is dominated by roundoff")]
    StepTooSmall(f64),

    #[error("finite-difference step {0} outside [1e-3, 1e-1]")]
    StepOutOfRange(f64),

    #[error("the strictness witness needs distinct indices, got m = n = {0}")]
    EqualIndices(usize),

    #[error("tensor rule of dimension {got} used where dimension {expected} is required")]
    DimensionMismatch { expected: usize, got: usize },
}
