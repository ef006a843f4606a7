//! Gamma, digamma and trigamma in ball arithmetic.
//!
//! All three shift the argument upward with the functional recurrence until
//! it reaches `max(20, precision / 4)`, then apply the asymptotic
//! (Stirling-type) series. The series remainder is bounded by twice the
//! magnitude of the first omitted term.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::bernoulli::bernoulli_even;
use crate::error::{Error, Result};
use crate::numerics::constants::{ln2, pi};
use crate::numerics::elementary::{exp_ball, ln_ball};
use crate::numerics::{Float, Mag, RealBall, GUARD_BITS};

/// Error if `x` is indeterminate or overlaps a nonpositive integer.
pub(crate) fn check_pole(x: &RealBall) -> Result<()> {
    if !x.is_finite() {
        return Err(Error::domain("indeterminate argument"));
    }
    let lo = x.lower();
    if !lo.is_negative() && !lo.is_zero() {
        return Ok(());
    }
    let first = -(lo.neg().floor()); // ceil(lower)
    let last = x.upper().floor().min(BigInt::from(0));
    if first <= last {
        let mid = x.mid().add_exact(&Float::one().mul_2exp(-1)).floor();
        let nearest = mid.clamp(first, last);
        return Err(Error::Pole {
            nearest: nearest.to_i64().unwrap_or(i64::MIN),
        });
    }
    Ok(())
}

/// Number of recurrence steps that lift `x` to at least `threshold`.
fn shift_for(x: &RealBall, threshold: i64) -> i64 {
    let m = x.mid().to_f64();
    let need = threshold as f64 - m;
    if need <= 0.0 {
        0
    } else {
        need.ceil() as i64
    }
}

fn asymptotic_threshold(precision: u32) -> i64 {
    20.max(precision as i64 / 4)
}

/// Sum `sum_{k>=1} B_{2k} / (c(k) z^{e(k)})` until a term drops below
/// `2^-w` relative to `scale`, returning the partial sum widened by twice
/// the first omitted term.
fn asymptotic_tail(
    z: &RealBall,
    w: u32,
    scale_top: i64,
    first_power: &RealBall,
    step: &RealBall,
    denom: impl Fn(i64) -> i64,
    sign: i64,
) -> RealBall {
    let mut pw = first_power.clone();
    let mut sum = RealBall::zero(w);
    let mut last = Mag::inf();
    let mut k = 1i64;
    loop {
        let b = RealBall::from_rational(&bernoulli_even(k as usize), w);
        let term = (&b * &pw).div_i64(denom(k)).mul_i64(sign);
        let m = term.mag_upper();
        if m.top() < scale_top - w as i64 - 2 || m >= last {
            return sum.add_error(m.mul_u64(2));
        }
        last = m;
        sum = &sum + &term;
        pw = &pw * step;
        k += 1;
        debug_assert!(z.is_finite());
    }
}

/// `ln Gamma(z)` for `z` beyond the asymptotic threshold.
fn lgamma_asymptotic(z: &RealBall, w: u32) -> RealBall {
    let half = RealBall::one(w).mul_2exp(-1);
    let lnz = ln_ball(z);
    let ln_2pi = &ln2(w) + &ln_ball(&pi(w));
    let main = &(&(&(z - &half) * &lnz) - z) + &ln_2pi.mul_2exp(-1);
    let inv = z.recip();
    let inv2 = inv.sqr();
    // B_{2k} / (2k (2k-1) z^{2k-1})
    let tail = asymptotic_tail(z, w, main.mid().top().max(0), &inv, &inv2, |k| 2 * k * (2 * k - 1), 1);
    &main + &tail
}

/// `Gamma(x)`.
pub fn gamma_ball(x: &RealBall, precision: u32) -> Result<RealBall> {
    check_pole(x)?;
    let w = precision + GUARD_BITS;
    let xw = x.with_prec(w);
    let n = shift_for(&xw, asymptotic_threshold(precision));
    let z = &xw + &RealBall::from_i64(n, w);
    let mut g = exp_ball(&lgamma_asymptotic(&z, w));
    if n > 0 {
        let mut prod = xw.clone();
        for j in 1..n {
            prod = &prod * &(&xw + &RealBall::from_i64(j, w));
        }
        g = &g / &prod;
    }
    Ok(g.with_prec(precision))
}

/// `psi(x) = Gamma'(x) / Gamma(x)`.
pub fn digamma_ball(x: &RealBall, precision: u32) -> Result<RealBall> {
    check_pole(x)?;
    let w = precision + GUARD_BITS;
    let xw = x.with_prec(w);
    let n = shift_for(&xw, asymptotic_threshold(precision));
    let z = &xw + &RealBall::from_i64(n, w);
    let inv = z.recip();
    let inv2 = inv.sqr();
    // psi(z) ~ ln z - 1/(2z) - sum B_{2k} / (2k z^{2k})
    let main = &ln_ball(&z) - &inv.mul_2exp(-1);
    let tail = asymptotic_tail(&z, w, main.mid().top().max(0), &inv2, &inv2, |k| 2 * k, -1);
    let mut psi = &main + &tail;
    for j in 0..n {
        psi = &psi - &(&xw + &RealBall::from_i64(j, w)).recip();
    }
    Ok(psi.with_prec(precision))
}

/// `psi'(x)`.
pub fn trigamma_ball(x: &RealBall, precision: u32) -> Result<RealBall> {
    check_pole(x)?;
    let w = precision + GUARD_BITS;
    let xw = x.with_prec(w);
    let n = shift_for(&xw, asymptotic_threshold(precision));
    let z = &xw + &RealBall::from_i64(n, w);
    let inv = z.recip();
    let inv2 = inv.sqr();
    // psi'(z) ~ 1/z + 1/(2 z^2) + sum B_{2k} / z^{2k+1}
    let main = &inv + &inv2.mul_2exp(-1);
    let first = &inv2 * &inv;
    let tail = asymptotic_tail(&z, w, main.mid().top(), &first, &inv2, |_| 1, 1);
    let mut psi1 = &main + &tail;
    for j in 0..n {
        psi1 = &psi1 + &(&xw + &RealBall::from_i64(j, w)).sqr().recip();
    }
    Ok(psi1.with_prec(precision))
}

/// Exact `Gamma(x)` on the half-integer lattice as `rational * pi^(e/2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfIntegerGammaValue {
    pub rational_part: crate::numerics::Rational,
    pub sqrt_pi_exponent: i32,
}

impl HalfIntegerGammaValue {
    pub fn to_ball(&self, precision: u32) -> RealBall {
        let r = RealBall::from_rational(&self.rational_part, precision + 16);
        let e = self.sqrt_pi_exponent;
        let sqrt_pi = pi(precision + 16).sqrt();
        let factor = sqrt_pi.pow_u(e.unsigned_abs());
        let v = if e >= 0 { &r * &factor } else { &r / &factor };
        v.with_prec(precision)
    }

    pub fn mul(&self, other: &Self) -> Self {
        HalfIntegerGammaValue {
            rational_part: &self.rational_part * &other.rational_part,
            sqrt_pi_exponent: self.sqrt_pi_exponent + other.sqrt_pi_exponent,
        }
    }

    pub fn div(&self, other: &Self) -> Self {
        HalfIntegerGammaValue {
            rational_part: &self.rational_part / &other.rational_part,
            sqrt_pi_exponent: self.sqrt_pi_exponent - other.sqrt_pi_exponent,
        }
    }
}

/// `Gamma(two_x / 2)` exactly. Negative odd `two_x` is reached by the
/// downward recurrence; nonpositive even `two_x` is a pole.
pub fn gamma_half_exact(two_x: i64) -> Result<HalfIntegerGammaValue> {
    use crate::numerics::rational::{factorial, int, rat};
    if two_x % 2 == 0 {
        if two_x <= 0 {
            return Err(Error::Pole { nearest: two_x / 2 });
        }
        let n = (two_x / 2) as u64;
        return Ok(HalfIntegerGammaValue {
            rational_part: crate::numerics::Rational::from_integer(factorial(n - 1)),
            sqrt_pi_exponent: 0,
        });
    }
    if two_x > 0 {
        // Gamma(m + 1/2) = (2m)! / (4^m m!) sqrt(pi)
        let m = ((two_x - 1) / 2) as u64;
        let num = factorial(2 * m);
        let den = factorial(m) << (2 * m) as usize;
        return Ok(HalfIntegerGammaValue {
            rational_part: crate::numerics::Rational::new(num, den),
            sqrt_pi_exponent: 1,
        });
    }
    // Gamma(x) = Gamma(1/2) / (x (x+1) ... (-1/2))
    let mut prod = int(1);
    let mut k = two_x;
    while k < 1 {
        prod *= rat(k, 2);
        k += 2;
    }
    Ok(HalfIntegerGammaValue {
        rational_part: prod.recip(),
        sqrt_pi_exponent: 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::constants::euler_gamma;
    use crate::numerics::elementary::sin_ball;
    use crate::numerics::rational::{int, rat};

    const P: u32 = 256;

    fn ball(n: i64, d: i64) -> RealBall {
        RealBall::from_rational(&rat(n, d), P)
    }

    #[test]
    fn classical_values() {
        let g = gamma_ball(&ball(1, 2), P).unwrap();
        assert!(g.overlaps(&pi(P).sqrt()));
        assert!(g.rel_accuracy_bits() > 240, "{}", g.rel_accuracy_bits());
        let g5 = gamma_ball(&ball(5, 1), P).unwrap();
        assert!(g5.contains_rational(&int(24)));
        let g13 = gamma_ball(&ball(13, 2), P).unwrap();
        let expected = &RealBall::from_rational(&rat(10395, 64), P) * &pi(P).sqrt();
        assert!(g13.overlaps(&expected));
    }

    #[test]
    fn negative_arguments_and_poles() {
        let g = gamma_ball(&ball(-1, 2), P).unwrap();
        assert!(g.overlaps(&pi(P).sqrt().mul_i64(-2)));
        assert_eq!(gamma_ball(&ball(-3, 1), P), Err(Error::Pole { nearest: -3 }));
        assert_eq!(gamma_ball(&ball(0, 1), P), Err(Error::Pole { nearest: 0 }));
        let wide = RealBall::from_interval(&rat(-21, 10), &rat(-19, 10), P);
        assert_eq!(gamma_ball(&wide, P), Err(Error::Pole { nearest: -2 }));
    }

    #[test]
    fn digamma_trigamma_identities() {
        let one = RealBall::one(P);
        let psi1 = digamma_ball(&one, P).unwrap();
        assert!(psi1.overlaps(&-euler_gamma(P)));
        assert!(psi1.rel_accuracy_bits() > 240);
        let psi_half = digamma_ball(&ball(1, 2), P).unwrap();
        let expected = &-euler_gamma(P) - &ln2(P).mul_2exp(1);
        assert!(psi_half.overlaps(&expected));
        let tri = trigamma_ball(&one, P).unwrap();
        assert!(tri.overlaps(&pi(P).sqr().div_i64(6)));
        assert!(tri.rel_accuracy_bits() > 240);
    }

    #[test]
    fn half_exact_values() {
        assert_eq!(
            gamma_half_exact(2).unwrap(),
            HalfIntegerGammaValue { rational_part: int(1), sqrt_pi_exponent: 0 }
        );
        assert_eq!(
            gamma_half_exact(1).unwrap(),
            HalfIntegerGammaValue { rational_part: int(1), sqrt_pi_exponent: 1 }
        );
        assert_eq!(
            gamma_half_exact(13).unwrap(),
            HalfIntegerGammaValue { rational_part: rat(10395, 64), sqrt_pi_exponent: 1 }
        );
        assert_eq!(gamma_half_exact(-1).unwrap().rational_part, int(-2));
        assert_eq!(gamma_half_exact(-3).unwrap().rational_part, rat(4, 3));
        assert_eq!(gamma_half_exact(0), Err(Error::Pole { nearest: 0 }));
        assert_eq!(gamma_half_exact(-4), Err(Error::Pole { nearest: -2 }));
    }

    #[test]
    fn half_exact_matches_ball_path() {
        for two_x in 1..=101 {
            let exact = gamma_half_exact(two_x).unwrap().to_ball(128);
            let b = gamma_ball(&RealBall::from_rational(&rat(two_x, 2), 128), 128).unwrap();
            assert!(exact.overlaps(&b), "two_x = {two_x}");
        }
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(24))]

        #[test]
        fn gamma_recurrence(num in 1i64..50_000, prec in 64u32..400) {
            let x = RealBall::from_rational(&rat(num, 1000), prec);
            let g = gamma_ball(&x, prec).unwrap();
            let g1 = gamma_ball(&(&x + &RealBall::one(prec)), prec).unwrap();
            proptest::prop_assert!(g1.overlaps(&(&x * &g)));
        }

        #[test]
        fn reflection(num in 1i64..1000) {
            let x = RealBall::from_rational(&rat(num, 1001), 160);
            let one_minus = &RealBall::one(160) - &x;
            let lhs = &gamma_ball(&x, 160).unwrap() * &gamma_ball(&one_minus, 160).unwrap();
            let rhs = &pi(160) / &sin_ball(&(&pi(160) * &x));
            proptest::prop_assert!(lhs.overlaps(&rhs));
            proptest::prop_assert!(lhs.rel_accuracy_bits() > 140);
        }

        #[test]
        fn digamma_recurrence(num in 1i64..40_000) {
            let x = RealBall::from_rational(&rat(num, 997), 192);
            let d0 = digamma_ball(&x, 192).unwrap();
            let d1 = digamma_ball(&(&x + &RealBall::one(192)), 192).unwrap();
            proptest::prop_assert!(d1.overlaps(&(&d0 + &x.recip())));
        }
    }

    #[test]
    fn large_argument_has_full_accuracy() {
        let x = RealBall::from_i64(1000, 200);
        let l = gamma_ball(&x, 200).unwrap();
        // Gamma(1000) = 999!
        let f = crate::numerics::rational::factorial(999);
        assert!(l.contains_rational(&crate::numerics::Rational::from_integer(f)));
    }
}
