use thiserror::Error;

/// Failures raised by the numerical core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("root finding did not converge for a degree-{degree} polynomial")]
    RootFindingFailure { degree: usize },

    #[error("circle quadrature not converged after {nodes} nodes (last change {change:e})")]
    QuadratureNotConverged { nodes: usize, change: f64 },

    #[error("elements belong to different model spaces")]
    BasisMismatch,

    #[error("pole at modulus {modulus} is not strictly outside the closed unit disk")]
    PoleOnOrInsideDisk { modulus: f64 },

    #[error("analytic/coanalytic split left a residue of {residual:e} on the circle")]
    SplitFailure { residual: f64 },

    #[error("Fourier truncation at order {order} insufficient (tail {tail:e})")]
    TruncationInsufficient { order: usize, tail: f64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
