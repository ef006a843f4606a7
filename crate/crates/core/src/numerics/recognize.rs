//! Smallest-denominator rational inside an interval (continued-fraction /
//! Stern-Brocot descent).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::ball::RealBall;
use super::Rational;
use crate::error::{Error, Result};

/// The rational with the smallest denominator in the closed interval
/// `[lo, hi]`; among those, the one with the smallest numerator magnitude.
pub fn best_rational_in_interval(lo: &Rational, hi: &Rational) -> Result<Rational> {
    if lo > hi {
        return Err(Error::argument(format!("empty interval [{lo}, {hi}]")));
    }
    if !lo.is_positive() && !hi.is_negative() {
        return Ok(Rational::zero());
    }
    if hi.is_negative() {
        let (p, q) = simplest_positive(
            -hi.numer().clone(),
            hi.denom().clone(),
            -lo.numer().clone(),
            lo.denom().clone(),
        );
        return Ok(-Rational::new(p, q));
    }
    let (p, q) = simplest_positive(
        lo.numer().clone(),
        lo.denom().clone(),
        hi.numer().clone(),
        hi.denom().clone(),
    );
    Ok(Rational::new(p, q))
}

/// Search interval `[mid - rad, mid + rad]`.
pub fn best_rational_in_ball(b: &RealBall) -> Result<Rational> {
    if !b.is_finite() {
        return Err(Error::argument("indeterminate ball"));
    }
    best_rational_in_interval(&b.lower_rational(), &b.upper_rational())
}

/// `0 < ln/ld <= hn/hd`; fractions need not be reduced.
fn simplest_positive(
    mut ln: BigInt,
    mut ld: BigInt,
    mut hn: BigInt,
    mut hd: BigInt,
) -> (BigInt, BigInt) {
    let mut quotients = Vec::new();
    let terminal = loop {
        let (fl, rem) = ln.div_mod_floor(&ld);
        if rem.is_zero() {
            break fl;
        }
        let next = &fl + 1;
        if &next * &hd <= hn {
            break next;
        }
        // both endpoints in (fl, fl + 1): recurse on the reciprocals
        let nl = (hd.clone(), &hn - &fl * &hd);
        let nh = (ld.clone(), rem);
        quotients.push(fl);
        (ln, ld) = nl;
        (hn, hd) = nh;
    };
    let (mut p, mut q) = (terminal, BigInt::one());
    for a in quotients.into_iter().rev() {
        let np = &a * &p + &q;
        q = p;
        p = np;
    }
    (p, q)
}
