//! Density reconstruction from moments by shifted-Legendre orthogonal
//! series on a finite interval.

mod approximant;
mod moments;
mod scalar;

pub use approximant::{
    fit_approximant, fit_approximant_degree, legendre_values, legendre_values_f64, DensityApproximant,
};
pub use moments::MomentSequence;
pub use scalar::Scalar;
