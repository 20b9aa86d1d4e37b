//! Exact free-fermion solutions for qubit Hamiltonians whose frustration
//! graph is even-hole and claw free.
//!
//! The building blocks are generic over the scalar type: `f64` for numerics
//! and [`Rational`] where identities should hold exactly.

pub mod chains;
pub mod error;
pub mod frustration;
pub mod graph;
pub mod indpoly;
pub mod model;
pub mod pauli;
pub mod recognition;
pub mod scalar;
pub mod solver;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Arbitrary-precision rational used for exact algebra.
pub type Rational = num_rational::BigRational;

pub type ExactHamiltonian = model::Hamiltonian<Rational>;
pub type ExactOperatorSum = pauli::OperatorSum<Rational>;
pub type ExactGraph = graph::WeightedGraph<Rational>;
pub type ExactPolynomial = indpoly::IndependencePolynomial<Rational>;
