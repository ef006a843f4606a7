//! Generalized two-qubit Hilbert-Schmidt separability probabilities.
//!
//! The crate evaluates `P(alpha) = sum_i f(alpha + i)` exactly on the
//! half-integer lattice and in ball arithmetic elsewhere, recognizes the
//! resulting rationals, and cross-checks them against Monte Carlo sampling
//! of random density matrices and Legendre moment reconstruction.

pub mod error;
pub mod formula;
pub mod montecarlo;
pub mod numerics;
pub mod reconstruction;
pub mod special;

pub use error::{Error, Result};
pub use numerics::{AlphaValue, Float, Mag, Rational, RealBall};
