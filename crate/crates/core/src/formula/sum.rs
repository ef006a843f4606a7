//! `P(alpha) = sum_{i>=0} f(alpha+i)` with a verified geometric tail.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::terms::{f_ball_flagged, f_exact, term_ratio, term_ratio_ball};
use crate::error::{Error, Result};
use crate::numerics::rational::{int, rat};
use crate::numerics::{best_rational_in_interval, AlphaValue, Float, Mag, Rational, RealBall, GUARD_BITS};

/// Terms beyond which a truncation attempt is abandoned.
const TERM_CAP: usize = 200_000;
/// Number of further ratios checked against the tail majorant.
const RATIO_WINDOW: i64 = 16;
/// Precision doublings tried before recognition gives up.
const MAX_ESCALATIONS: u32 = 3;

#[derive(Clone, Debug, PartialEq)]
pub enum AlphaInput {
    Exact(AlphaValue),
    Ball(RealBall),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Exact(Rational),
    Ball(RealBall),
}

/// A partial sum `S_N` of `N = terms_used` terms and a bound on the
/// omitted tail.
#[derive(Clone, Debug, PartialEq)]
pub struct FormulaEvaluation {
    pub alpha: AlphaInput,
    pub value: Value,
    pub terms_used: usize,
    pub tail_bound: Rational,
    /// Some summand went through the two-sided pole limit.
    pub limit_evaluated: bool,
}

impl FormulaEvaluation {
    /// Ball containing `P(alpha)`.
    pub fn enclosure(&self, precision: u32) -> RealBall {
        let tail = Mag::from_float_upper(&Float::from_rational(&self.tail_bound, 64).0).mul_u64(2);
        match &self.value {
            Value::Exact(s) => RealBall::from_rational(s, precision).add_error(tail),
            Value::Ball(b) => b.add_error(tail).with_prec(precision),
        }
    }

    /// `[S_N - tail, S_N + tail]` on the exact path.
    pub fn exact_interval(&self) -> Option<(Rational, Rational)> {
        match &self.value {
            Value::Exact(s) => Some((s - &self.tail_bound, s + &self.tail_bound)),
            Value::Ball(_) => None,
        }
    }
}

/// Initial truncation: the terms decay at least like `(27/64)^N`.
pub(crate) fn initial_terms(precision: u32) -> usize {
    let n = (precision as f64 * std::f64::consts::LN_2 / (64.0f64 / 27.0).ln()).ceil() as usize;
    n.max(64)
}

/// Dyadic upper bound of a nonnegative rational, 64 significant bits.
pub(crate) fn upper_dyadic(r: &Rational) -> Rational {
    if r.is_zero() {
        return Rational::zero();
    }
    let (f, err) = Float::from_rational(r, 64);
    f.to_rational() + err.to_float().to_rational()
}

pub(crate) fn log2_rational(r: &Rational) -> i64 {
    r.numer().bits() as i64 - r.denom().bits() as i64
}

/// `rho = 1.05 r(beta)` after checking `r(beta + k) <= rho < 1` for
/// `k = 0..=RATIO_WINDOW`.
fn exact_majorant(beta: &Rational) -> Result<Rational> {
    let rho = term_ratio(beta)?.abs() * rat(105, 100);
    if rho >= int(1) {
        return Err(Error::Convergence(format!("term ratio {rho} not below 1")));
    }
    for k in 1..=RATIO_WINDOW {
        if term_ratio(&(beta + int(k)))?.abs() > rho {
            return Err(Error::Convergence("term ratio not decreasing in the window".into()));
        }
    }
    Ok(rho)
}

pub(crate) fn ball_majorant(beta: &RealBall) -> Result<Rational> {
    let rho = term_ratio_ball(beta).abs();
    if !rho.is_finite() {
        return Err(Error::Convergence("term ratio undefined".into()));
    }
    let rho = upper_dyadic(&(rho.upper_rational() * rat(105, 100)));
    if rho >= int(1) {
        return Err(Error::Convergence(format!("term ratio bound {rho} not below 1")));
    }
    for k in 1..=RATIO_WINDOW {
        let r = term_ratio_ball(&(beta + &RealBall::from_i64(k, beta.prec())));
        if !r.is_finite() || r.abs().upper_rational() > rho {
            return Err(Error::Convergence("term ratio not decreasing in the window".into()));
        }
    }
    Ok(rho)
}

pub(crate) fn geometric_tail(last: &Rational, rho: &Rational) -> Rational {
    upper_dyadic(&(last.abs() * rho / (int(1) - rho)))
}

/// `P(alpha)`: exact rational partial sums on the half-integer lattice and
/// ball arithmetic otherwise.
pub fn p_eval(alpha: &AlphaValue, target_error: &Rational, precision: u32) -> Result<FormulaEvaluation> {
    if !target_error.is_positive() {
        return Err(Error::argument("target error must be positive"));
    }
    if alpha.is_half_integer() {
        p_eval_exact(alpha, target_error, precision)
    } else {
        let mut e = p_eval_ball(
            &RealBall::from_rational(alpha.value(), precision + GUARD_BITS),
            target_error,
            precision,
        )?;
        e.alpha = AlphaInput::Exact(alpha.clone());
        Ok(e)
    }
}

fn p_eval_exact(alpha: &AlphaValue, target_error: &Rational, precision: u32) -> Result<FormulaEvaluation> {
    let min_terms = initial_terms(precision);
    let target_log2 = log2_rational(target_error);
    // terms with alpha + i < 0 one at a time
    let mut prefix = Rational::zero();
    let mut i = 0usize;
    let mut beta = alpha.clone();
    while beta.value().is_negative() {
        prefix += f_exact(&beta)?;
        beta = beta.shifted(1);
        i += 1;
    }
    let t0 = f_exact(&beta)?;
    let t0_log2 = log2_rational(&t0);
    // running sum X/D and current term T/D, both relative to t0
    let (mut x, mut t, mut d) = (BigInt::one(), BigInt::one(), BigInt::one());
    let mut j: i64 = 0;
    loop {
        let used = i + j as usize + 1;
        let at = beta.value() + int(j);
        let est = t0_log2 + t.bits() as i64 - d.bits() as i64;
        if used >= min_terms && est + 2 < target_log2 {
            let rho = exact_majorant(&at)?;
            let last = &t0 * Rational::new(t.clone(), d.clone());
            let tail = geometric_tail(&last, &rho);
            if &tail <= target_error {
                let value = prefix + t0 * Rational::new(x, d);
                return Ok(FormulaEvaluation {
                    alpha: AlphaInput::Exact(alpha.clone()),
                    value: Value::Exact(value),
                    terms_used: used,
                    tail_bound: tail,
                    limit_evaluated: false,
                });
            }
        }
        if used > TERM_CAP {
            return Err(Error::Convergence(format!("no tail bound below target after {used} terms")));
        }
        let r = term_ratio(&at)?;
        let (a, b) = (r.numer(), r.denom());
        x = &x * b + &t * a;
        t *= a;
        d *= b;
        j += 1;
    }
}

/// `P(alpha)` for a ball argument.
pub fn p_eval_ball(alpha: &RealBall, target_error: &Rational, precision: u32) -> Result<FormulaEvaluation> {
    if !target_error.is_positive() {
        return Err(Error::argument("target error must be positive"));
    }
    let w = precision + GUARD_BITS;
    let min_terms = initial_terms(precision);
    let one = RealBall::one(w);
    let mut sum = RealBall::zero(w);
    let mut limit = false;
    let mut used = 0usize;
    let mut beta = alpha.with_prec(w);
    // direct summands until the argument is safely positive, where the
    // ratio recursion has no vanishing factors
    while !beta.is_positive() {
        let (v, l) = f_ball_flagged(&beta, w)?;
        limit |= l;
        sum = &sum + &v;
        beta = &beta + &one;
        used += 1;
        if used > TERM_CAP {
            return Err(Error::argument("alpha too far below zero"));
        }
    }
    let (mut term, l) = f_ball_flagged(&beta, w)?;
    limit |= l;
    sum = &sum + &term;
    used += 1;
    loop {
        if used >= min_terms && term.is_finite() {
            let est = term.mag_upper().top();
            if est + 2 < log2_rational(target_error) {
                let rho = ball_majorant(&beta)?;
                let last = term.abs().upper_rational();
                let tail = geometric_tail(&last, &rho);
                if &tail <= target_error {
                    return Ok(FormulaEvaluation {
                        alpha: AlphaInput::Ball(alpha.clone()),
                        value: Value::Ball(sum.with_prec(precision)),
                        terms_used: used,
                        tail_bound: tail,
                        limit_evaluated: limit,
                    });
                }
            }
        }
        if used > TERM_CAP || !term.is_finite() {
            return Err(Error::Convergence(format!("no tail bound below target after {used} terms")));
        }
        term = &term * &term_ratio_ball(&beta);
        sum = &sum + &term;
        beta = &beta + &one;
        used += 1;
    }
}

/// Exact `P(alpha)` for half-integer `alpha`, recognized as the simplest
/// rational inside the certified interval and confirmed at twice the
/// precision.
pub fn p_recognized(alpha: &AlphaValue, precision: u32) -> Result<Rational> {
    if !alpha.is_half_integer() {
        return Err(Error::argument(format!("recognition needs a half-integer alpha, got {alpha}")));
    }
    let mut used = precision;
    let value = loop {
        match recognize_at(alpha, used) {
            Ok(v) => break v,
            Err(Error::Ambiguity(msg)) if used >= precision << MAX_ESCALATIONS => {
                return Err(Error::Ambiguity(msg))
            }
            Err(Error::Ambiguity(_)) => used *= 2,
            Err(e) => return Err(e),
        }
    };
    let check = recognize_at(alpha, 2 * used)?;
    if check != value {
        return Err(Error::Ambiguity(format!(
            "alpha = {alpha}: {value} at {used} bits but {check} at {} bits",
            2 * used
        )));
    }
    Ok(value)
}

fn recognize_at(alpha: &AlphaValue, precision: u32) -> Result<Rational> {
    let target = Rational::new(BigInt::one(), BigInt::one() << precision as usize);
    let e = p_eval_exact(alpha, &target, precision)?;
    let (lo, hi) = e.exact_interval().expect("exact path");
    // round outward to a dyadic grid a little finer than the interval
    let k = (-log2_rational(&e.tail_bound)).max(0) as usize + 2;
    let scale = Rational::from_integer(BigInt::one() << k);
    let lo = Rational::new(crate::numerics::rational::floor(&(&lo * &scale)), scale.to_integer());
    let hi = Rational::new(-crate::numerics::rational::floor(&(-&hi * &scale)), scale.to_integer());
    let candidate = best_rational_in_interval(&lo, &hi)?;
    let den = Rational::from_integer(candidate.denom().clone());
    if &den * &den * (&hi - &lo) > rat(1, 1 << 16) {
        return Err(Error::Ambiguity(format!(
            "alpha = {alpha}: interval too wide to single out {candidate} at {precision} bits"
        )));
    }
    Ok(candidate)
}
