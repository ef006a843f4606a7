//! Elementary functions on balls: exp, ln, sin, powers, and the arctangent
//! series used for constants.
//!
//! Each function evaluates at the exact midpoint with `GUARD_BITS` extra
//! working precision, then widens the result by a Lipschitz bound of the
//! function over the input ball.

use std::f64::consts::{LN_2, PI};

use super::ball::RealBall;
use super::constants::{ln2, pi};
use super::float::{Float, Mag};
use super::GUARD_BITS;

/// `exp(x)`.
pub fn exp_ball(x: &RealBall) -> RealBall {
    let prec = x.prec();
    if !x.is_finite() {
        return RealBall::indeterminate(prec);
    }
    let em = match exp_point(x.mid(), prec + GUARD_BITS) {
        Some(v) => v,
        None => return RealBall::indeterminate(prec),
    };
    let r = x.rad();
    let out = if r.is_zero() {
        em
    } else {
        // |e^x - e^m| <= e^m (e^r - 1)
        let growth = if r <= Mag::pow2(-1) {
            r.mul_u64(2)
        } else {
            let rf = r.to_f64();
            if rf > 700.0 {
                Mag::inf()
            } else {
                Mag::from_f64_up(rf.exp_m1() * (1.0 + 1e-12))
            }
        };
        em.add_error(em.mag_upper().mul(growth))
    };
    out.with_prec(prec)
}

fn exp_point(m: &Float, w: u32) -> Option<RealBall> {
    if m.is_zero() {
        return Some(RealBall::one(w));
    }
    let approx = m.to_f64();
    if !approx.is_finite() || approx.abs() > 1e15 {
        return None;
    }
    let k = (approx / LN_2).round() as i64;
    let kbits = 64 - k.unsigned_abs().leading_zeros();
    let s = ((w as f64).sqrt() / 2.0).ceil() as i64;
    let wp = w + s as u32 + kbits + 16;
    let t = &RealBall::exact(m.clone(), wp) - &ln2(wp).mul_i64(k);
    let tr = t.mul_2exp(-s);
    let mut sum = RealBall::one(wp);
    let mut term = RealBall::one(wp);
    let mut n = 0i64;
    loop {
        n += 1;
        term = (&term * &tr).div_i64(n);
        sum = &sum + &term;
        if term.mag_upper().top() < -(wp as i64) - 4 {
            // remaining terms shrink by a factor of at least |tr|/(n+1) < 1/2
            sum = sum.add_error(term.mag_upper().mul_u64(2));
            break;
        }
    }
    for _ in 0..s {
        sum = sum.sqr();
    }
    Some(sum.mul_2exp(k).with_prec(w))
}

/// Natural logarithm; indeterminate unless the ball is strictly positive.
pub fn ln_ball(x: &RealBall) -> RealBall {
    let prec = x.prec();
    if !x.is_positive() {
        return RealBall::indeterminate(prec);
    }
    let lm = ln_point(x.mid(), prec + GUARD_BITS);
    let out = if x.rad().is_zero() {
        lm
    } else {
        // |ln x - ln m| <= r / (m - r)
        lm.add_error(x.rad().div(Mag::from_float_lower(&x.lower())))
    };
    out.with_prec(prec)
}

fn ln_point(m: &Float, w: u32) -> RealBall {
    let mut e = m.top();
    let mut mr = m.mul_2exp(-e);
    if mr.to_f64() < std::f64::consts::FRAC_1_SQRT_2 {
        mr = mr.mul_2exp(1);
        e -= 1;
    }
    let wp = w + 16;
    let mrb = RealBall::exact(mr, wp);
    let one = RealBall::one(wp);
    let z = &(&mrb - &one) / &(&mrb + &one);
    let series = atanh_series(&z, wp);
    let out = &series.mul_2exp(1) + &ln2(wp).mul_i64(e);
    out.with_prec(w)
}

/// `sum z^{2j+1}/(2j+1)` for `|z| <= 1/2`.
fn atanh_series(z: &RealBall, w: u32) -> RealBall {
    if z.is_exact() && z.mid().is_zero() {
        return RealBall::zero(w);
    }
    let z2 = z.sqr();
    let mut pw = z.clone();
    let mut sum = z.clone();
    let mut j = 0i64;
    loop {
        j += 1;
        pw = &pw * &z2;
        sum = &sum + &pw.div_i64(2 * j + 1);
        if pw.mag_upper().top() < -(w as i64) - 4 {
            // tail <= |pw| z^2 / (1 - z^2) <= |pw|
            return sum.add_error(pw.mag_upper());
        }
    }
}

/// `atanh(1/n)` for integer `n >= 2`.
pub(crate) fn atanh_inv_series(n: i64, w: u32) -> RealBall {
    let wp = w + 16;
    let z = RealBall::from_i64(n, wp).recip();
    atanh_series(&z, wp).with_prec(w)
}

/// `atan(1/n)` for integer `n >= 2`; alternating series.
pub(crate) fn atan_inv_series(n: i64, w: u32) -> RealBall {
    let wp = w + 16;
    let n2 = RealBall::from_i64(n * n, wp);
    let mut pw = RealBall::from_i64(n, wp).recip();
    let mut sum = pw.clone();
    let mut j = 0i64;
    loop {
        j += 1;
        pw = &pw / &n2;
        let term = pw.div_i64(2 * j + 1);
        sum = if j % 2 == 1 { &sum - &term } else { &sum + &term };
        if term.mag_upper().top() < -(wp as i64) - 4 {
            // alternating and decreasing: tail below the last term
            return sum.add_error(term.mag_upper()).with_prec(w);
        }
    }
}

/// `sin(x)`.
pub fn sin_ball(x: &RealBall) -> RealBall {
    let prec = x.prec();
    if !x.is_finite() {
        return RealBall::indeterminate(prec);
    }
    let approx = x.mid().to_f64();
    if approx.abs() > 1e15 {
        return RealBall::indeterminate(prec);
    }
    let k = (approx / PI).round() as i64;
    let kbits = 64 - k.unsigned_abs().leading_zeros();
    let wp = prec + GUARD_BITS + kbits;
    let t = &RealBall::exact(x.mid().clone(), wp) - &pi(wp).mul_i64(k);
    let t2 = t.sqr();
    let mut term = t.clone();
    let mut sum = t.clone();
    let mut n = 1i64;
    loop {
        term = -&(&term * &t2).div_i64((n + 1) * (n + 2));
        n += 2;
        sum = &sum + &term;
        if term.mag_upper().top() < -(wp as i64) - 4 {
            // |t| <= pi/2 + eps: alternating with decreasing terms from here
            sum = sum.add_error(term.mag_upper());
            break;
        }
    }
    if k % 2 != 0 {
        sum = -sum;
    }
    // sin is 1-Lipschitz
    sum.add_error(x.rad()).with_prec(prec)
}

/// `x^y` for positive `x`.
pub fn pow_ball(x: &RealBall, y: &RealBall) -> RealBall {
    let prec = x.prec().max(y.prec());
    let lx = ln_ball(&x.with_prec(prec + 16));
    exp_ball(&(y * &lx)).with_prec(prec)
}

/// `2^y`; exact when `y` is an exact integer.
pub fn pow2_ball(y: &RealBall) -> RealBall {
    let prec = y.prec();
    if y.is_exact() && y.mid().exponent() >= 0 && y.mid().bits() < 62 {
        let k = y.mid().floor();
        let k: i64 = k.try_into().expect("small exponent");
        return RealBall::one(prec).mul_2exp(k);
    }
    let wp = prec + 32;
    exp_ball(&(&y.with_prec(wp) * &ln2(wp))).with_prec(prec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rational::rat;

    #[test]
    fn exp_ln_agree_with_f64() {
        for v in [0.5, -3.25, 10.0, 1e-5, 123.456] {
            let x = RealBall::from_f64(v, 200);
            let e = exp_ball(&x);
            assert!((e.to_f64() / v.exp() - 1.0).abs() < 1e-14, "exp({v})");
            assert!(e.rel_accuracy_bits() > 190);
            let l = ln_ball(&e);
            assert!(l.contains_float(x.mid()), "ln(exp({v}))");
        }
    }

    #[test]
    fn ln_of_two_is_the_constant() {
        let l = ln_ball(&RealBall::from_i64(2, 300));
        assert!(l.overlaps(&ln2(300)));
        assert!(l.rel_accuracy_bits() > 290);
    }

    #[test]
    fn ln_widens_with_input_radius() {
        let x = RealBall::from_interval(&rat(99, 100), &rat(101, 100), 128);
        let l = ln_ball(&x);
        assert!(l.contains_float(&Float::zero()));
        assert!(l.rad().to_f64() >= 0.0099);
    }

    #[test]
    fn sin_known_values() {
        let half_pi = pi(256).mul_2exp(-1);
        let s = sin_ball(&half_pi);
        assert!(s.overlaps(&RealBall::one(256)));
        let s6 = sin_ball(&pi(256).div_i64(6));
        assert!(s6.overlaps(&RealBall::from_rational(&rat(1, 2), 256)));
        assert!(s6.rel_accuracy_bits() > 240);
        let big = sin_ball(&RealBall::from_i64(100, 128));
        assert!((big.to_f64() - 100f64.sin()).abs() < 1e-14);
    }

    #[test]
    fn pow2_exact_and_fractional() {
        let p = pow2_ball(&RealBall::from_i64(-7, 64));
        assert!(p.is_exact());
        assert_eq!(p.to_f64(), 1.0 / 128.0);
        let h = pow2_ball(&RealBall::from_rational(&rat(1, 2), 200));
        assert!(h.overlaps(&crate::numerics::constants::sqrt2(200)));
    }

    #[test]
    fn pow_general() {
        let p = pow_ball(&RealBall::from_i64(3, 128), &RealBall::from_rational(&rat(5, 2), 128));
        assert!((p.to_f64() - 3f64.powf(2.5)).abs() < 1e-12);
    }
}
