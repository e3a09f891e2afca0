//! Numerical laboratory for encoding three angles in rotation-invariant
//! relative parameters of spin systems.
//!
//! Two encoding methods are implemented. Method A stores the three angles in
//! the mutual orientations of a single three-spin system (two qubits and one
//! spin-j particle); method B stores each angle in the relative orientation of
//! a disjoint spin pair. The receiver measures total spin, refined by the
//! intermediate coupling of the qubit pair, and updates a Bayesian prior over
//! the angles. The crate provides:
//!
//! * exact-dimension angular-momentum algebra ([`spin`], [`cg`]),
//! * the labeled total-spin projector families for every scenario, built both
//!   analytically and by a spectral oracle ([`povm`]),
//! * closed-form and state-vector outcome likelihoods ([`protocols`]),
//! * prior sampling and information-gain estimators ([`prior`], [`inference`]).

pub mod cg;
pub mod direction;
pub mod error;
pub mod half;
pub mod inference;
pub mod linalg;
pub mod povm;
pub mod prior;
pub mod protocols;
pub mod quadrature;
pub mod spin;

pub use direction::Direction;
pub use error::Error;
pub use half::HalfInteger;
pub use linalg::{Complex64, ComplexMatrix, StateVector};
pub use povm::ProjectorSet;
pub use protocols::{CosineTriple, OutcomeDistribution, Scenario};

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
