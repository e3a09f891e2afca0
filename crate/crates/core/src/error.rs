//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A value that must be a non-negative half-integer (j = n/2) was not.
    #[error("not a valid half-integer spin: {0}")]
    InvalidHalfInteger(String),

    /// A direction vector with (near-)zero norm cannot be normalized.
    #[error("cannot normalize a zero-length direction vector")]
    ZeroVector,

    /// A cosine argument fell outside [-1, 1].
    #[error("cosine {0} outside [-1, 1]")]
    CosineOutOfRange(f64),

    /// The pairwise-cosine Gram matrix is not positive semidefinite, so no
    /// direction triple realizes these cosines.
    #[error("cosine triple is not realizable: det G = {det:.6e} < 0")]
    GramNotPositive { det: f64 },

    /// An operation that only applies to one encoding method was called with
    /// the other.
    #[error("scenario mismatch: {0}")]
    ScenarioMismatch(String),

    /// Tensor product of an empty factor list.
    #[error("tensor product requires at least one factor")]
    EmptyTensorProduct,

    /// Dimension mismatch between operands.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// The operator linear system for the projector expansion is singular.
    #[error("singular operator linear system (|det| = {det:.3e}); the total-spin operator is inconsistent with the projector ansatz")]
    SingularSystem { det: f64 },

    /// A spectral eigenvalue cluster does not match J(J+1) for any
    /// half-integer J within tolerance.
    #[error("eigenvalue {value:.12e} does not match J(J+1) for any half-integer J within {tol:.1e}")]
    EigenvalueCluster { value: f64, tol: f64 },

    /// Invalid estimator configuration.
    #[error("invalid estimator configuration: {0}")]
    InvalidEstimator(String),

    /// Estimator and scenario are incompatible (e.g. 1-D quadrature on a
    /// three-spin scenario).
    #[error("estimator not applicable: {0}")]
    EstimatorMismatch(String),

    /// A non-finite value appeared in an information-gain computation.
    #[error("non-finite intermediate value in {context}: {value}")]
    NonFinite { context: String, value: f64 },

    /// 1-D quadrature did not converge under node doubling.
    #[error("quadrature did not converge: |change| = {change:.3e} after doubling to {nodes} nodes")]
    QuadratureNotConverged { nodes: usize, change: f64 },

    /// A projector-family invariant (completeness, orthogonality,
    /// idempotence, Hermiticity, integer trace) failed.
    #[error("projector set violates {what}: residual {residual:.3e}")]
    InvariantViolation { what: String, residual: f64 },
}
