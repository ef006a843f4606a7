//! Closed forms of `P(alpha)` at quarter and third values, checked against
//! the summation.

use num_bigint::BigInt;
use num_traits::One;

use super::sum::p_eval_ball;
use crate::error::Result;
use crate::numerics::constants::{pi, sqrt2};
use crate::numerics::rational::rat;
use crate::numerics::{agm, Rational, RealBall, GUARD_BITS};
use crate::special::gamma_ball;

#[derive(Clone, Debug, PartialEq)]
pub struct SpecialValueRow {
    pub alpha: Rational,
    pub closed_form: &'static str,
    pub closed_value: RealBall,
    pub p_value: RealBall,
    /// Digits on which both balls agree (0 when they are disjoint).
    pub agreeing_digits: i64,
    pub agreement: bool,
    pub limit_evaluated: bool,
}

/// Digits required for agreement on regular rows and on rows that went
/// through the pole limit.
pub const REQUIRED_DIGITS: i64 = 50;
pub const REQUIRED_DIGITS_LIMIT: i64 = 30;

struct Consts {
    w: u32,
    pi: RealBall,
    sqrt_pi: RealBall,
    g14: RealBall,
    g13: RealBall,
    g34: RealBall,
    g54: RealBall,
}

impl Consts {
    fn new(w: u32) -> Result<Self> {
        let g = |n: i64, d: i64| gamma_ball(&RealBall::from_rational(&rat(n, d), w), w);
        let pi = pi(w);
        Ok(Consts {
            w,
            sqrt_pi: pi.sqrt(),
            pi,
            g14: g(1, 4)?,
            g13: g(1, 3)?,
            g34: g(3, 4)?,
            g54: g(5, 4)?,
        })
    }

    fn int(&self, v: i64) -> RealBall {
        RealBall::from_i64(v, self.w)
    }

    fn pi32(&self) -> RealBall {
        &self.pi * &self.sqrt_pi
    }
}

type ClosedForm = (i64, i64, &'static str, fn(&Consts) -> RealBall);

const ROWS: [ClosedForm; 12] = [
    (-3, 4, "2 + 32 sqrt(2) Gamma(1/4)^2 / (21 pi^(3/2))", |c| {
        &c.int(2) + &(&(&sqrt2(c.w).mul_i64(32) * &c.g14.sqr()) / &c.pi32().mul_i64(21))
    }),
    (-2, 3, "2 - 8 pi / (sqrt(3) Gamma(1/3)^3)", |c| {
        &c.int(2) - &(&c.pi.mul_i64(8) / &(&c.int(3).sqrt() * &c.g13.pow_u(3)))
    }),
    (-1, 2, "2/3", |c| RealBall::from_rational(&rat(2, 3), c.w)),
    (-1, 3, "2 + 3 Gamma(1/3)^3 / (4 pi^2)", |c| {
        &c.int(2) + &(&c.g13.pow_u(3).mul_i64(3) / &c.pi.sqr().mul_i64(4))
    }),
    (-1, 4, "2", |c| c.int(2)),
    (1, 4, "2 - 17 Gamma(1/4)^2 / (21 sqrt(2) pi^(3/2))", |c| {
        &c.int(2) - &(&c.g14.sqr().mul_i64(17) / &(&sqrt2(c.w).mul_i64(21) * &c.pi32()))
    }),
    (1, 3, "2 - 459 sqrt(3) pi / (91 Gamma(1/3)^3)", |c| {
        &c.int(2) - &(&(&c.int(3).sqrt() * &c.pi.mul_i64(459)) / &c.g13.pow_u(3).mul_i64(91))
    }),
    (2, 3, "2 - 288927 Gamma(1/3)^3 / (344080 pi^2)", |c| {
        &c.int(2) - &(&c.g13.pow_u(3).mul_i64(288927) / &c.pi.sqr().mul_i64(344080))
    }),
    (3, 4, "2 - 9689 Gamma(3/4) / (4420 sqrt(pi) Gamma(5/4))", |c| {
        &c.int(2) - &(&c.g34.mul_i64(9689) / &(&c.sqrt_pi.mul_i64(4420) * &c.g54))
    }),
    (0, 1, "1", |c| c.int(1)),
    (-1, 1, "2/5", |c| RealBall::from_rational(&rat(2, 5), c.w)),
    (-3, 2, "2/3", |c| RealBall::from_rational(&rat(2, 3), c.w)),
];

/// `2 - 34 / (21 agm(1, sqrt 2))`, the arithmetic-geometric-mean form of
/// `P(1/4)`.
pub fn p_quarter_agm(precision: u32) -> Result<RealBall> {
    let w = precision + GUARD_BITS;
    let m = agm(&RealBall::one(w), &sqrt2(w), w)?;
    Ok((&RealBall::from_i64(2, w) - &(&RealBall::from_i64(34, w) / &m.mul_i64(21))).with_prec(precision))
}

fn agreeing_digits(a: &RealBall, b: &RealBall) -> i64 {
    if !a.overlaps(b) {
        return 0;
    }
    a.accurate_digits().min(b.accurate_digits())
}

/// The nine tabulated special values plus `alpha = 0, -1, -3/2`.
pub fn special_values_table(precision: u32) -> Result<Vec<SpecialValueRow>> {
    let w = precision + GUARD_BITS;
    let consts = Consts::new(w)?;
    let target = Rational::new(BigInt::one(), BigInt::one() << precision as usize);
    let mut rows = Vec::with_capacity(ROWS.len());
    for (n, d, closed_form, value) in ROWS {
        let alpha = rat(n, d);
        let e = p_eval_ball(&RealBall::from_rational(&alpha, w), &target, precision)?;
        let p_value = e.enclosure(precision);
        let closed_value = value(&consts).with_prec(precision);
        let agreeing = agreeing_digits(&p_value, &closed_value);
        let required = if e.limit_evaluated {
            REQUIRED_DIGITS_LIMIT
        } else {
            REQUIRED_DIGITS
        };
        rows.push(SpecialValueRow {
            alpha,
            closed_form,
            closed_value,
            p_value,
            agreeing_digits: agreeing,
            agreement: agreeing >= required,
            limit_evaluated: e.limit_evaluated,
        });
    }
    Ok(rows)
}
