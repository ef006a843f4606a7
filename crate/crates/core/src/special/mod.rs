//! Gamma-type functions and hypergeometric series in ball arithmetic.

mod bernoulli;
mod gamma;
mod pfq;

pub use bernoulli::bernoulli_even;
pub use gamma::{digamma_ball, gamma_ball, gamma_half_exact, trigamma_ball, HalfIntegerGammaValue};
pub use pfq::{pfq, pfq_truncated, PFQSpec};
