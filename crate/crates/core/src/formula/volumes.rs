//! Consequences of `P(alpha)`: boundary-state probabilities, separable
//! volumes and the telescoping identity `P(alpha) - P(alpha+1) = f(alpha)`.

use num_bigint::BigInt;
use num_traits::One;

use super::sum::{p_eval_ball, p_recognized, Value};
use super::terms::{f_ball, f_exact};
use crate::error::{Error, Result};
use crate::numerics::constants::pi;
use crate::numerics::rational::{int, parse_rational, rat};
use crate::numerics::{AlphaValue, Rational, RealBall, GUARD_BITS};

/// Separability probability of minimally degenerate boundary states,
/// `P(alpha)/2`.
pub fn boundary_probability(alpha: &AlphaValue, precision: u32) -> Result<Value> {
    if alpha.is_half_integer() {
        return Ok(Value::Exact(p_recognized(alpha, precision)? / int(2)));
    }
    let target = Rational::new(BigInt::one(), BigInt::one() << precision as usize);
    let e = p_eval_ball(
        &RealBall::from_rational(alpha.value(), precision + GUARD_BITS),
        &target,
        precision,
    )?;
    Ok(Value::Ball(e.enclosure(precision).mul_2exp(-1)))
}

#[derive(Clone, Debug, PartialEq)]
pub struct SeparableVolume {
    pub alpha: Rational,
    /// Exact form, `coefficient * pi^pi_power`.
    pub symbolic: &'static str,
    pub coefficient: Rational,
    pub pi_power: u32,
    pub value: RealBall,
    pub probability: Rational,
    /// `value / probability`.
    pub total_volume: RealBall,
}

const VOLUMES: [(i64, i64, &str, &str, u32); 3] = [
    (1, 2, "29*pi^4/61931520", "29/61931520", 4),
    (1, 1, "pi^6/449513064000", "1/449513064000", 6),
    (2, 1, "pi^12/3914156909371803494400000", "1/3914156909371803494400000", 12),
];

/// Separable Hilbert-Schmidt volume for the real (`1/2`), complex (`1`) and
/// quaternionic (`2`) two-qubit systems.
pub fn separable_volume(alpha: &Rational, precision: u32) -> Result<SeparableVolume> {
    let (_, _, symbolic, coefficient, pi_power) = VOLUMES
        .iter()
        .find(|(n, d, ..)| &rat(*n, *d) == alpha)
        .copied()
        .ok_or_else(|| Error::argument(format!("no separable volume for alpha = {alpha}; use 1/2, 1 or 2")))?;
    let coefficient = parse_rational(coefficient)?;
    let w = precision + GUARD_BITS;
    let value = pi(w).pow_u(pi_power).mul_rational(&coefficient);
    let probability = p_recognized(&AlphaValue::new(alpha.clone()), precision.max(128))?;
    let total_volume = value.mul_rational(&probability.recip());
    Ok(SeparableVolume {
        alpha: alpha.clone(),
        symbolic,
        coefficient,
        pi_power,
        value: value.with_prec(precision),
        probability,
        total_volume: total_volume.with_prec(precision),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct TelescopeCheck {
    pub holds: bool,
    /// `P(alpha) - P(alpha+1) - f(alpha)`.
    pub discrepancy: RealBall,
    /// Verified as an identity between rationals.
    pub exact: bool,
}

/// Checks `P(alpha) - P(alpha+1) = f(alpha)`, exactly on the half-integer
/// lattice and within ball radii elsewhere.
pub fn telescope_check(alpha: &AlphaValue, precision: u32) -> Result<TelescopeCheck> {
    if alpha.is_half_integer() {
        let lhs = p_recognized(alpha, precision)? - p_recognized(&alpha.shifted(1), precision)?;
        let d = lhs - f_exact(alpha)?;
        return Ok(TelescopeCheck {
            holds: d == int(0),
            discrepancy: RealBall::from_rational(&d, precision),
            exact: true,
        });
    }
    telescope_check_ball(&RealBall::from_rational(alpha.value(), precision + GUARD_BITS), precision)
}

pub fn telescope_check_ball(alpha: &RealBall, precision: u32) -> Result<TelescopeCheck> {
    let target = Rational::new(BigInt::one(), BigInt::one() << precision as usize);
    let p0 = p_eval_ball(alpha, &target, precision)?.enclosure(precision);
    let shifted = alpha + &RealBall::one(alpha.prec());
    let p1 = p_eval_ball(&shifted, &target, precision)?.enclosure(precision);
    let f = f_ball(alpha, precision)?;
    let discrepancy = &(&p0 - &p1) - &f;
    Ok(TelescopeCheck {
        holds: discrepancy.contains_zero(),
        discrepancy,
        exact: false,
    })
}
