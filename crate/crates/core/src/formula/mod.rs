//! The separability probability `P(alpha)` as a sum of gamma-function
//! terms, its derivatives and the closed-form special values.

mod derivative;
mod special_values;
mod sum;
mod terms;
mod volumes;

pub use derivative::{p_derivative, DerivativeEvaluation};
pub use sum::{p_eval, p_eval_ball, p_recognized, AlphaInput, FormulaEvaluation, Value};
pub use terms::{f_ball, f_ball_flagged, f_exact, q_poly, q_poly_ball, term_ratio, term_ratio_ball};
pub use special_values::{p_quarter_agm, special_values_table, SpecialValueRow, REQUIRED_DIGITS, REQUIRED_DIGITS_LIMIT};
pub use volumes::{
    boundary_probability, separable_volume, telescope_check, telescope_check_ball, SeparableVolume, TelescopeCheck,
};
