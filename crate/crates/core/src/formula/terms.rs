//! The summand `f(alpha)`, its quintic prefactor and its term ratio.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::numerics::elementary::pow2_ball;
use crate::numerics::rational::{factorial, int, rat};
use crate::numerics::{AlphaValue, Mag, Rational, RealBall};
use crate::special::{gamma_ball, gamma_half_exact};

/// Coefficients of `q`, constant term first.
const Q_COEFFS: [i64; 6] = [63000, 410694, 1042015, 1289125, 779750, 185000];

/// `q(alpha) = alpha(5alpha(25alpha(2alpha(740alpha+3119)+10313)+208403)+410694)+63000`.
pub fn q_poly(alpha: &Rational) -> Rational {
    let a = alpha;
    let mut v = a * int(740) + int(3119);
    v = a * int(2) * v + int(10313);
    v = a * int(25) * v + int(208403);
    v = a * int(5) * v + int(410694);
    a * v + int(63000)
}

/// `q`, `q'` and `q''` at a ball.
pub(crate) fn q_with_derivatives(alpha: &RealBall) -> [RealBall; 3] {
    let prec = alpha.prec();
    let mut out = [
        RealBall::zero(prec),
        RealBall::zero(prec),
        RealBall::zero(prec),
    ];
    for (order, slot) in out.iter_mut().enumerate() {
        let mut acc = RealBall::zero(prec);
        for k in (order..Q_COEFFS.len()).rev() {
            let falling: i64 = (0..order as i64).map(|j| k as i64 - j).product();
            acc = &(&acc * alpha) + &RealBall::from_i64(Q_COEFFS[k] * falling, prec);
        }
        *slot = acc;
    }
    out
}

pub fn q_poly_ball(alpha: &RealBall) -> RealBall {
    let prec = alpha.prec();
    let c = |v: i64| RealBall::from_i64(v, prec);
    let mut v = &alpha.mul_i64(740) + &c(3119);
    v = &(&alpha.mul_i64(2) * &v) + &c(10313);
    v = &(&alpha.mul_i64(25) * &v) + &c(208403);
    v = &(&alpha.mul_i64(5) * &v) + &c(410694);
    &(alpha * &v) + &c(63000)
}

/// Gamma arguments as `(slope, offset)` for `slope * alpha + offset`.
const NUMERATOR_ARGS: [(i64, i64, i64); 2] = [(3, 5, 2), (5, 2, 1)];
const DENOMINATOR_ARGS: [(i64, i64, i64); 3] = [(1, 1, 1), (2, 3, 1), (5, 13, 2)];

/// Leading behaviour `coefficient * eps^order` of a factor as
/// `alpha -> alpha0 + eps`; `sqrt_pi` counts half-powers of pi.
struct Leading {
    coefficient: Rational,
    sqrt_pi: i32,
    order: i32,
}

fn gamma_leading(two_x: i64, slope: i64) -> Result<Leading> {
    if two_x % 2 == 0 && two_x <= 0 {
        // Gamma(-n + c eps) ~ (-1)^n / (n! c eps)
        let n = (-two_x / 2) as u64;
        let sign = if n.is_multiple_of(2) { 1 } else { -1 };
        let coefficient = Rational::new(BigInt::from(sign), factorial(n) * slope);
        return Ok(Leading {
            coefficient,
            sqrt_pi: 0,
            order: -1,
        });
    }
    let g = gamma_half_exact(two_x)?;
    Ok(Leading {
        coefficient: g.rational_part,
        sqrt_pi: g.sqrt_pi_exponent,
        order: 0,
    })
}

/// Lowest nonvanishing Taylor coefficient of `q` at `alpha`.
fn q_leading(alpha: &Rational) -> Leading {
    let mut coeffs: Vec<Rational> = Q_COEFFS.iter().map(|&c| int(c)).collect();
    for order in 0..coeffs.len() {
        // synthetic division: value of the current polynomial at alpha,
        // leaving the quotient in place
        let mut acc = Rational::zero();
        for c in coeffs.iter_mut().rev() {
            acc = &acc * alpha + &*c;
            *c = acc.clone();
        }
        let value = coeffs.remove(0);
        if !value.is_zero() {
            return Leading {
                coefficient: value,
                sqrt_pi: 0,
                order: order as i32,
            };
        }
    }
    unreachable!("q has a nonzero leading coefficient")
}

/// Exact `f(alpha)` on the half-integer lattice. Removable singularities are
/// resolved by taking the limit along `alpha`: every pole factor is replaced
/// by its leading Laurent coefficient and the orders are balanced.
pub fn f_exact(alpha: &AlphaValue) -> Result<Rational> {
    let a = alpha
        .twice()
        .ok_or_else(|| Error::argument(format!("exact evaluation needs a half-integer, got {alpha}")))?
        .to_i64()
        .ok_or_else(|| Error::argument("alpha out of range"))?;
    let two_x = |slope: i64, n: i64, d: i64| slope * a + 2 * n / d;
    let mut lead = q_leading(alpha.value());
    let mut value = lead.coefficient.clone();
    let mut order = lead.order;
    let mut sqrt_pi = 0;
    for (slope, n, d) in NUMERATOR_ARGS {
        lead = gamma_leading(two_x(slope, n, d), slope)?;
        value *= &lead.coefficient;
        order += lead.order;
        sqrt_pi += lead.sqrt_pi;
    }
    for (slope, n, d) in DENOMINATOR_ARGS {
        lead = gamma_leading(two_x(slope, n, d), slope)?;
        value /= &lead.coefficient;
        order -= lead.order;
        sqrt_pi -= lead.sqrt_pi;
    }
    if order > 0 {
        return Ok(Rational::zero());
    }
    if order < 0 {
        return Err(Error::Pole {
            nearest: crate::numerics::rational::floor(&(alpha.value() + rat(1, 2)))
                .to_i64()
                .unwrap_or(i64::MIN),
        });
    }
    if sqrt_pi != 0 {
        return Err(Error::Degenerate(format!(
            "sqrt(pi) powers do not cancel at alpha = {alpha}"
        )));
    }
    // 2^(-4 alpha - 6) = 2^(-2a - 6)
    let e = -2 * a - 6;
    let p2 = if e >= 0 {
        Rational::from_integer(BigInt::one() << e as usize)
    } else {
        Rational::new(BigInt::one(), BigInt::one() << (-e) as usize)
    };
    Ok(value * p2 / int(3))
}

fn f_direct(alpha: &RealBall, w: u32) -> Result<RealBall> {
    let arg = |slope: i64, n: i64, d: i64| alpha.mul_i64(slope).add_rational(&rat(n, d));
    let mut num = &q_poly_ball(alpha) * &pow2_ball(&(&alpha.mul_i64(-4) - &RealBall::from_i64(6, w)));
    for (slope, n, d) in NUMERATOR_ARGS {
        num = &num * &gamma_ball(&arg(slope, n, d), w)?;
    }
    let mut den = RealBall::from_i64(3, w);
    for (slope, n, d) in DENOMINATOR_ARGS {
        den = &den * &gamma_ball(&arg(slope, n, d), w)?;
    }
    Ok(&num / &den)
}

/// `f(alpha)` in ball arithmetic, with the flag set when a gamma pole forced
/// the two-sided limit.
pub fn f_ball_flagged(alpha: &RealBall, precision: u32) -> Result<(RealBall, bool)> {
    let w = precision + 32;
    let a = alpha.with_prec(w);
    match f_direct(&a, w) {
        Ok(v) => Ok((v.with_prec(precision), false)),
        Err(Error::Pole { nearest }) => {
            let eps = RealBall::one(w).mul_2exp(-((precision / 2) as i64));
            let lo = f_direct(&(&a - &eps), w)?;
            let hi = f_direct(&(&a + &eps), w)?;
            let diff = (&hi - &lo).abs();
            let scale = Mag::from_float_upper(&hi.abs().upper()).max(Mag::pow2(0));
            if diff.mag_upper() > scale.mul_2exp(-((precision / 4) as i64)) {
                return Err(Error::Pole { nearest });
            }
            let v = lo.hull(&hi).add_error(diff.mag_upper());
            Ok((v.with_prec(precision), true))
        }
        Err(e) => Err(e),
    }
}

/// `f(alpha)` in ball arithmetic. Removable gamma pole collisions are
/// evaluated as the hull of `f(alpha +- 2^(-precision/2))`.
pub fn f_ball(alpha: &RealBall, precision: u32) -> Result<RealBall> {
    f_ball_flagged(alpha, precision).map(|(v, _)| v)
}

/// Numerator and denominator factors of `f(alpha+1)/f(alpha)` with the
/// gamma quotients cancelled.
fn ratio_factors<T>(alpha: &T, lin: impl Fn(&T, i64, i64, i64) -> T) -> (Vec<T>, Vec<T>) {
    // (3a+5/2)(3a+7/2)(3a+9/2) prod_{j=2}^{6} (5a+j)
    let mut num = vec![lin(alpha, 3, 5, 2), lin(alpha, 3, 7, 2), lin(alpha, 3, 9, 2)];
    num.extend((2..=6).map(|j| lin(alpha, 5, j, 1)));
    // 16 (a+1)(2a+3)(2a+4) prod_{j=0}^{4} (5a+13/2+j)
    let mut den = vec![lin(alpha, 1, 1, 1), lin(alpha, 2, 3, 1), lin(alpha, 2, 4, 1)];
    den.extend((0..=4).map(|j| lin(alpha, 5, 13 + 2 * j, 2)));
    (num, den)
}

/// Exact `f(alpha+1)/f(alpha)`.
pub fn term_ratio(alpha: &Rational) -> Result<Rational> {
    let (num, den) = ratio_factors(alpha, |a, s, n, d| a * int(s) + rat(n, d));
    let mut n = q_poly(&(alpha + int(1)));
    let mut d = q_poly(alpha) * int(16);
    for x in num {
        n *= x;
    }
    for x in den {
        d *= x;
    }
    if d.is_zero() {
        return Err(Error::domain(format!("term ratio undefined at alpha = {alpha}")));
    }
    Ok(n / d)
}

/// `f(alpha+1)/f(alpha)` in ball arithmetic; indeterminate when a factor of
/// the denominator may vanish.
pub fn term_ratio_ball(alpha: &RealBall) -> RealBall {
    let (num, den) = ratio_factors(alpha, |a, s, n, d| a.mul_i64(s).add_rational(&rat(n, d)));
    let one = RealBall::one(alpha.prec());
    let mut n = q_poly_ball(&(alpha + &one));
    let mut d = q_poly_ball(alpha).mul_i64(16);
    for x in num {
        n = &n * &x;
    }
    for x in den {
        d = &d * &x;
    }
    &n / &d
}

#[cfg(test)]
mod tests {
    use super::*;

    fn av(n: i64, d: i64) -> AlphaValue {
        AlphaValue::from_ratio(n, d)
    }

    #[test]
    fn q_values() {
        assert_eq!(q_poly(&int(0)), int(63000));
        assert_eq!(q_poly(&int(1)), int(3769584));
        assert_eq!(q_poly(&rat(-1, 2)), rat(-123, 4));
        let expanded = |a: &Rational| -> Rational {
            Q_COEFFS
                .iter()
                .rev()
                .fold(Rational::zero(), |acc, &c| acc * a + int(c))
        };
        for (n, d) in [(7, 3), (-5, 2), (11, 13)] {
            assert_eq!(q_poly(&rat(n, d)), expanded(&rat(n, d)));
        }
        let [q, dq, ddq] = q_with_derivatives(&RealBall::from_i64(1, 64));
        assert!(q.contains_rational(&int(3769584)));
        assert!(dq.contains_rational(&int(925000 + 3119000 + 3867375 + 2084030 + 410694)));
        assert!(ddq.contains_rational(&int(3700000 + 9357000 + 7734750 + 2084030)));
    }

    #[test]
    fn exact_terms() {
        assert_eq!(f_exact(&av(0, 1)).unwrap(), rat(25, 33));
        assert_eq!(f_exact(&av(-1, 2)).unwrap(), rat(41, 192));
        // P(1/2) - P(3/2) = 29/64 - 36061/262144
        assert_eq!(f_exact(&av(1, 2)).unwrap(), rat(82723, 262144));
        assert!(f_exact(&av(1, 3)).is_err());
    }

    #[test]
    fn removable_collisions() {
        // Gamma(5a+2) against Gamma(a+1) at a = -1
        assert_eq!(f_exact(&av(-1, 1)).unwrap(), rat(-3, 5));
        for k in [-3, -4, -5, -6, -7] {
            assert_eq!(f_exact(&av(k, 2)).unwrap(), int(0), "alpha = {k}/2");
        }
    }

    #[test]
    fn ratio_matches_exact_terms() {
        for two in 0..20 {
            let a = av(two, 2);
            let r = term_ratio(a.value()).unwrap();
            let direct = f_exact(&a.shifted(1)).unwrap() / f_exact(&a).unwrap();
            assert_eq!(r, direct, "alpha = {a}");
        }
        let far = term_ratio(&int(10_000)).unwrap();
        // the approach is O(1/alpha) from below, about 0.21/alpha
        let gap = rat(27, 64) - far;
        assert!(gap > rat(2, 100_000) && gap < rat(22, 1_000_000));
    }

    #[test]
    fn ball_agrees_with_exact() {
        for two in -1..=64 {
            let a = av(two, 2);
            let b = f_ball(&RealBall::from_rational(a.value(), 200), 200).unwrap();
            let e = f_exact(&a).unwrap();
            assert!(b.contains_rational(&e), "alpha = {a}");
            assert!(b.rel_accuracy_bits() > 180, "alpha = {a}");
        }
    }

    #[test]
    fn ball_limit_at_collision() {
        let (v, limit) = f_ball_flagged(&RealBall::from_i64(-1, 256), 256).unwrap();
        assert!(limit);
        assert!(v.contains_rational(&rat(-3, 5)));
        assert!(v.rel_accuracy_bits() > 100);
        let (z, limit) = f_ball_flagged(&RealBall::from_rational(&rat(-3, 2), 256), 256).unwrap();
        assert!(limit);
        assert!(z.contains_rational(&int(0)));
        assert!(z.mag_upper().top() < -100);
    }
}
