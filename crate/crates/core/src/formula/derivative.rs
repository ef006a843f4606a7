//! Derivatives of `P(alpha)` by term-wise logarithmic differentiation.

use num_bigint::BigInt;
use num_traits::One;

use super::sum::{ball_majorant, geometric_tail, initial_terms, upper_dyadic};
use super::terms::{f_ball, q_with_derivatives, term_ratio_ball};
use crate::error::{Error, Result};
use crate::numerics::constants::ln2;
use crate::numerics::rational::int;
use crate::numerics::{Float, Mag, Rational, RealBall, GUARD_BITS};
use crate::special::{digamma_ball, trigamma_ball};

const TERM_CAP: usize = 200_000;

#[derive(Clone, Debug, PartialEq)]
pub struct DerivativeEvaluation {
    pub alpha: RealBall,
    pub order: u8,
    pub value: RealBall,
    pub terms_used: usize,
}

/// Gamma arguments `slope * alpha + offset` with the sign and weight they
/// carry in `ln f`: `(slope, offset numerator, offset denominator, sign)`.
const ARGS: [(i64, i64, i64, i64); 5] = [(3, 5, 2, 1), (5, 2, 1, 1), (1, 1, 1, -1), (2, 3, 1, -1), (5, 13, 2, -1)];

/// Digamma and trigamma at the five gamma arguments, advanced by
/// `alpha -> alpha + 1` through the recurrences.
struct Polygammas {
    x: Vec<RealBall>,
    psi: Vec<RealBall>,
    tri: Vec<RealBall>,
}

impl Polygammas {
    fn new(alpha: &RealBall, w: u32) -> Result<Self> {
        let mut p = Polygammas {
            x: Vec::new(),
            psi: Vec::new(),
            tri: Vec::new(),
        };
        for (slope, n, d, _) in ARGS {
            let x = alpha.mul_i64(slope).add_rational(&Rational::new(n.into(), d.into()));
            p.psi.push(digamma_ball(&x, w)?);
            p.tri.push(trigamma_ball(&x, w)?);
            p.x.push(x);
        }
        Ok(p)
    }

    fn advance(&mut self) {
        for (k, (slope, ..)) in ARGS.iter().enumerate() {
            for _ in 0..*slope {
                let inv = self.x[k].recip();
                self.psi[k] = &self.psi[k] + &inv;
                self.tri[k] = &self.tri[k] - &inv.sqr();
                self.x[k] = self.x[k].add_rational(&int(1));
            }
        }
    }

    /// `(L, L')` with `L = (ln f)'`.
    fn log_derivatives(&self, alpha: &RealBall, ln2: &RealBall) -> (RealBall, RealBall) {
        let [q, dq, ddq] = q_with_derivatives(alpha);
        let dq_q = &dq / &q;
        let mut l = &dq_q - &ln2.mul_i64(4);
        let mut dl = &(&ddq / &q) - &dq_q.sqr();
        for (k, (slope, _, _, sign)) in ARGS.iter().enumerate() {
            l = &l + &self.psi[k].mul_i64(sign * slope);
            dl = &dl + &self.tri[k].mul_i64(sign * slope * slope);
        }
        (l, dl)
    }
}

fn term_derivative(order: u8, f: &RealBall, l: &RealBall, dl: &RealBall) -> RealBall {
    match order {
        1 => f * l,
        _ => f * &(&l.sqr() + dl),
    }
}

/// Bound factor applied to the tail of `f` for the derivative tail.
fn tail_factor(order: u8, l: &RealBall, dl: &RealBall) -> Rational {
    let lm = l.abs().upper_rational();
    let v = match order {
        1 => lm * int(2) + int(1),
        _ => (&lm * &lm + dl.abs().upper_rational()) * int(2) + int(1),
    };
    upper_dyadic(&v)
}

fn derivative_sum(alpha: &RealBall, order: u8, target_error: &Rational, precision: u32) -> Result<(RealBall, usize)> {
    let w = precision + GUARD_BITS;
    let ln2 = ln2(w);
    let one = RealBall::one(w);
    let min_terms = initial_terms(precision);
    let mut sum = RealBall::zero(w);
    let mut used = 0usize;
    let mut beta = alpha.with_prec(w);
    while !beta.is_positive() {
        let f = f_ball(&beta, w)?;
        let (l, dl) = Polygammas::new(&beta, w)?.log_derivatives(&beta, &ln2);
        sum = &sum + &term_derivative(order, &f, &l, &dl);
        beta = &beta + &one;
        used += 1;
        if used > TERM_CAP {
            return Err(Error::argument("alpha too far below zero"));
        }
    }
    let mut pg = Polygammas::new(&beta, w)?;
    let mut f = f_ball(&beta, w)?;
    loop {
        let (l, dl) = pg.log_derivatives(&beta, &ln2);
        sum = &sum + &term_derivative(order, &f, &l, &dl);
        used += 1;
        if used >= min_terms && f.mag_upper().top() + 8 < super::sum::log2_rational(target_error) {
            let rho = ball_majorant(&beta)?;
            let tail = geometric_tail(&f.abs().upper_rational(), &rho) * tail_factor(order, &l, &dl);
            if &tail <= target_error {
                let err = Mag::from_float_upper(&Float::from_rational(&tail, 64).0).mul_u64(2);
                return Ok((sum.add_error(err).with_prec(precision), used));
            }
        }
        if used > TERM_CAP || !f.is_finite() {
            return Err(Error::Convergence(format!("derivative tail not below target after {used} terms")));
        }
        f = &f * &term_ratio_ball(&beta);
        pg.advance();
        beta = &beta + &one;
    }
}

/// `P^(order)(alpha)` for `order` in 1..=3. Orders 1 and 2 sum the
/// differentiated terms; order 3 is a central difference of order-2 values
/// with step `2^(-precision/3)`, its truncation error estimated from a coarse
/// third difference and added to the radius.
pub fn p_derivative(alpha: &RealBall, order: u8, target_error: &Rational, precision: u32) -> Result<DerivativeEvaluation> {
    let (value, terms_used) = match order {
        1 | 2 => derivative_sum(alpha, order, target_error, precision)?,
        3 => third_derivative(alpha, target_error, precision)?,
        _ => return Err(Error::argument(format!("derivative order {order} not in 1..=3"))),
    };
    Ok(DerivativeEvaluation {
        alpha: alpha.clone(),
        order,
        value,
        terms_used,
    })
}

fn third_derivative(alpha: &RealBall, target_error: &Rational, precision: u32) -> Result<(RealBall, usize)> {
    let w = precision + GUARD_BITS;
    let a = alpha.with_prec(w);
    let h = RealBall::one(w).mul_2exp(-((precision / 3) as i64));
    let inner = Rational::new(BigInt::one(), BigInt::one() << precision as usize).min(target_error.clone());
    let (gp, n1) = derivative_sum(&(&a + &h), 2, &inner, w)?;
    let (gm, n2) = derivative_sum(&(&a - &h), 2, &inner, w)?;
    let central = &(&gp - &gm) / &h.mul_2exp(1);
    // |error| <= h^2/6 |P^(5)|; P^(5) from a third difference with step 2^-6
    let coarse_prec = 128;
    let coarse_tol = Rational::new(BigInt::one(), BigInt::one() << 100);
    let big_h = RealBall::one(coarse_prec).mul_2exp(-6);
    let ac = alpha.with_prec(coarse_prec);
    let g = |k: i64| derivative_sum(&(&ac + &big_h.mul_i64(k)), 2, &coarse_tol, coarse_prec).map(|v| v.0);
    let third = &(&(&g(2)? - &g(1)?.mul_i64(2)) + &(&g(-1)?.mul_i64(2) - &g(-2)?)) / &big_h.pow_u(3).mul_2exp(1);
    let err = third
        .abs()
        .mag_upper()
        .mul(h.sqr().mag_upper())
        .mul_u64(10)
        .div(Mag::from_u64(6));
    Ok((central.add_error(err).with_prec(precision), n1.max(n2)))
}
