//! Exact equivariant Szegő kernels on two model geometries, together with
//! the predicted leading-order scaling asymptotics near the zero level of the
//! moment map and a harness that compares the two.
//!
//! Models:
//! - the reduced Heisenberg group over ℂⁿ with a linear torus action;
//! - projective spaces ℙᵈ with the hyperplane bundle and a diagonal torus action.

pub mod asymptotics;
pub mod charts;
pub mod error;
pub mod harness;
pub mod hermitian;
pub mod kernels;
pub mod logc;
pub mod snf;
pub mod torus;

pub use error::{Error, Result};

pub type C64 = num_complex::Complex64;
