//! Exact rationals, error-tracked arbitrary-precision reals, constants, AGM,
//! rational recognition and the log-slope fit.

mod agm;
mod ball;
pub mod constants;
pub mod elementary;
mod fit;
mod float;
pub mod rational;
mod recognize;

pub use agm::agm;
pub use ball::RealBall;
pub use fit::{fit_log_slope, LogSlopeFit};
pub use float::{Float, Mag};
pub use rational::{format_rational, parse_decimal, parse_rational, AlphaValue, Rational};
pub use recognize::{best_rational_in_ball, best_rational_in_interval};

/// Extra bits carried by constant and elementary-function evaluations.
pub const GUARD_BITS: u32 = 64;
