//! Midpoint-radius real balls.
//!
//! A `RealBall` represents every real in `[mid - rad, mid + rad]`. All
//! arithmetic returns a ball that contains every result obtainable from
//! members of the operands. Division by a ball containing zero does not
//! fail; it yields an indeterminate ball (infinite radius), which callers
//! detect with [`RealBall::is_finite`].

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;

use super::float::{Float, Mag};
use super::Rational;

#[derive(Clone, PartialEq, Eq)]
pub struct RealBall {
    mid: Float,
    rad: Mag,
    prec: u32,
}

impl fmt::Debug for RealBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RealBall({} +/- {:.3e}, prec={})", self.mid.to_decimal(20), self.rad.to_f64(), self.prec)
    }
}

impl fmt::Display for RealBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = self.accurate_digits().clamp(1, 60);
        write!(f, "{} +/- {:.2e}", self.mid.to_decimal(digits as usize), self.rad.to_f64())
    }
}

impl RealBall {
    pub fn new(mid: Float, rad: Mag, prec: u32) -> Self {
        RealBall { mid, rad, prec }
    }

    /// Round `mid` to `prec` bits, folding the rounding error into the radius.
    pub fn from_float(mid: Float, rad: Mag, prec: u32) -> Self {
        let (m, e) = mid.round(prec);
        RealBall {
            mid: m,
            rad: rad.add(e),
            prec,
        }
    }

    pub fn exact(mid: Float, prec: u32) -> Self {
        RealBall::from_float(mid, Mag::zero(), prec)
    }

    pub fn zero(prec: u32) -> Self {
        RealBall::exact(Float::zero(), prec)
    }

    pub fn one(prec: u32) -> Self {
        RealBall::exact(Float::one(), prec)
    }

    pub fn from_i64(v: i64, prec: u32) -> Self {
        RealBall::exact(Float::from_i64(v), prec)
    }

    pub fn from_bigint(v: &BigInt, prec: u32) -> Self {
        RealBall::exact(Float::from_bigint(v.clone()), prec)
    }

    pub fn from_rational(r: &Rational, prec: u32) -> Self {
        let (m, e) = Float::from_rational(r, prec);
        RealBall { mid: m, rad: e, prec }
    }

    /// Exact conversion of a double (then rounded to `prec`).
    pub fn from_f64(v: f64, prec: u32) -> Self {
        RealBall::exact(Float::from_f64(v), prec)
    }

    /// The ball `[lo, hi]` for exact rational endpoints.
    pub fn from_interval(lo: &Rational, hi: &Rational, prec: u32) -> Self {
        assert!(lo <= hi);
        let a = RealBall::from_rational(lo, prec);
        let b = RealBall::from_rational(hi, prec);
        a.hull(&b)
    }

    pub fn indeterminate(prec: u32) -> Self {
        RealBall {
            mid: Float::zero(),
            rad: Mag::inf(),
            prec,
        }
    }

    pub fn mid(&self) -> &Float {
        &self.mid
    }

    pub fn rad(&self) -> Mag {
        self.rad
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn is_finite(&self) -> bool {
        !self.rad.is_inf()
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    /// Same ball re-rounded to a new working precision.
    pub fn with_prec(&self, prec: u32) -> Self {
        RealBall::from_float(self.mid.clone(), self.rad, prec)
    }

    pub fn add_error(&self, err: Mag) -> Self {
        RealBall {
            mid: self.mid.clone(),
            rad: self.rad.add(err),
            prec: self.prec,
        }
    }

    /// `mid - rad` as an exact float. Panics on indeterminate balls.
    pub fn lower(&self) -> Float {
        self.mid.sub_exact(&self.rad.to_float())
    }

    pub fn upper(&self) -> Float {
        self.mid.add_exact(&self.rad.to_float())
    }

    pub fn lower_rational(&self) -> Rational {
        self.lower().to_rational()
    }

    pub fn upper_rational(&self) -> Rational {
        self.upper().to_rational()
    }

    /// Upper bound on `|x|` over the ball.
    pub fn mag_upper(&self) -> Mag {
        Mag::from_float_upper(&self.mid).add(self.rad)
    }

    /// Lower bound on `|x|` over the ball (zero if the ball contains zero).
    pub fn mag_lower(&self) -> Mag {
        if !self.is_finite() {
            return Mag::zero();
        }
        let m = self.mid.abs().sub_exact(&self.rad.to_float());
        if m.is_negative() || m.is_zero() {
            Mag::zero()
        } else {
            Mag::from_float_lower(&m)
        }
    }

    pub fn contains_zero(&self) -> bool {
        !self.is_finite() || self.mag_lower().is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.is_finite() && !self.lower().is_negative() && !self.lower().is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.is_finite() && self.upper().is_negative()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.is_finite() && !self.lower().is_negative()
    }

    pub fn contains_rational(&self, r: &Rational) -> bool {
        if !self.is_finite() {
            return true;
        }
        self.lower_rational() <= *r && *r <= self.upper_rational()
    }

    pub fn contains_float(&self, x: &Float) -> bool {
        if !self.is_finite() {
            return true;
        }
        self.lower() <= *x && *x <= self.upper()
    }

    pub fn contains(&self, other: &RealBall) -> bool {
        if !self.is_finite() {
            return true;
        }
        if !other.is_finite() {
            return false;
        }
        self.lower() <= other.lower() && other.upper() <= self.upper()
    }

    pub fn overlaps(&self, other: &RealBall) -> bool {
        if !self.is_finite() || !other.is_finite() {
            return true;
        }
        self.lower() <= other.upper() && other.lower() <= self.upper()
    }

    /// Smallest ball (at the larger precision) containing both.
    pub fn hull(&self, other: &RealBall) -> RealBall {
        let prec = self.prec.max(other.prec);
        if !self.is_finite() || !other.is_finite() {
            return RealBall::indeterminate(prec);
        }
        let lo = self.lower().min(other.lower());
        let hi = self.upper().max(other.upper());
        let mid = lo.add_exact(&hi).mul_2exp(-1);
        let half = hi.sub_exact(&lo).mul_2exp(-1);
        let (m, e) = mid.round(prec);
        RealBall {
            mid: m,
            rad: Mag::from_float_upper(&half).add(e),
            prec,
        }
    }

    pub fn abs(&self) -> RealBall {
        if self.mid.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn mul_2exp(&self, k: i64) -> RealBall {
        RealBall {
            mid: self.mid.mul_2exp(k),
            rad: self.rad.mul_2exp(k),
            prec: self.prec,
        }
    }

    pub fn sqr(&self) -> RealBall {
        self * self
    }

    pub fn recip(&self) -> RealBall {
        &RealBall::one(self.prec) / self
    }

    pub fn mul_i64(&self, k: i64) -> RealBall {
        self * &RealBall::from_i64(k, self.prec)
    }

    pub fn div_i64(&self, k: i64) -> RealBall {
        self / &RealBall::from_i64(k, self.prec)
    }

    pub fn mul_rational(&self, r: &Rational) -> RealBall {
        if r.denom() == &BigInt::from(1) {
            self * &RealBall::from_bigint(r.numer(), self.prec)
        } else {
            &(self * &RealBall::from_bigint(r.numer(), self.prec))
                / &RealBall::from_bigint(r.denom(), self.prec)
        }
    }

    pub fn add_rational(&self, r: &Rational) -> RealBall {
        (self + &RealBall::from_rational(r, self.prec + 16)).with_prec(self.prec)
    }

    pub fn pow_u(&self, n: u32) -> RealBall {
        let mut result = RealBall::one(self.prec);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = base.sqr();
            }
        }
        result
    }

    /// Square root; indeterminate unless the ball is strictly positive
    /// (an exact zero returns zero).
    pub fn sqrt(&self) -> RealBall {
        if self.mid.is_zero() && self.rad.is_zero() {
            return self.clone();
        }
        if !self.is_positive() {
            return RealBall::indeterminate(self.prec);
        }
        let (s, e) = self.mid.sqrt(self.prec);
        // |sqrt(x) - sqrt(m)| <= r / (sqrt(m) + sqrt(m - r)) <= r / (2 sqrt(m - r))
        let low = Mag::from_float_lower(&self.lower()).sqrt_down();
        let prop = self.rad.div(low).mul_2exp(-1);
        RealBall {
            mid: s,
            rad: e.add(prop),
            prec: self.prec,
        }
    }

    /// Relative accuracy in bits, `log2(|mid| / rad)`; large for exact balls.
    pub fn rel_accuracy_bits(&self) -> i64 {
        if !self.is_finite() {
            return i64::MIN;
        }
        if self.rad.is_zero() {
            return i64::MAX / 2;
        }
        if self.mid.is_zero() {
            return i64::MIN / 2;
        }
        (self.mid.top() - 1) - self.rad.top()
    }

    /// Number of significant decimal digits certified by the radius.
    pub fn accurate_digits(&self) -> i64 {
        let bits = self.rel_accuracy_bits();
        if bits >= i64::MAX / 4 {
            return (self.prec as f64 * std::f64::consts::LOG10_2) as i64;
        }
        ((bits as f64) * std::f64::consts::LOG10_2).floor().max(0.0) as i64
    }

    pub fn to_f64(&self) -> f64 {
        self.mid.to_f64()
    }

    pub fn to_decimal(&self, digits: usize) -> String {
        self.mid.to_decimal(digits)
    }

    /// Midpoint rendered with as many digits as the radius certifies.
    pub fn to_decimal_certified(&self) -> String {
        let d = self.accurate_digits().max(1) as usize;
        self.mid.to_decimal(d)
    }
}

impl Neg for &RealBall {
    type Output = RealBall;
    fn neg(self) -> RealBall {
        RealBall {
            mid: self.mid.neg(),
            rad: self.rad,
            prec: self.prec,
        }
    }
}

impl Neg for RealBall {
    type Output = RealBall;
    fn neg(self) -> RealBall {
        -&self
    }
}

impl Add for &RealBall {
    type Output = RealBall;
    fn add(self, rhs: &RealBall) -> RealBall {
        let prec = self.prec.max(rhs.prec);
        if !self.is_finite() || !rhs.is_finite() {
            return RealBall::indeterminate(prec);
        }
        let (m, e) = self.mid.add(&rhs.mid, prec);
        RealBall {
            mid: m,
            rad: self.rad.add(rhs.rad).add(e),
            prec,
        }
    }
}

impl Sub for &RealBall {
    type Output = RealBall;
    fn sub(self, rhs: &RealBall) -> RealBall {
        self + &(-rhs)
    }
}

impl Mul for &RealBall {
    type Output = RealBall;
    fn mul(self, rhs: &RealBall) -> RealBall {
        let prec = self.prec.max(rhs.prec);
        if !self.is_finite() || !rhs.is_finite() {
            return RealBall::indeterminate(prec);
        }
        let (m, e) = self.mid.mul(&rhs.mid, prec);
        let am = Mag::from_float_upper(&self.mid);
        let bm = Mag::from_float_upper(&rhs.mid);
        let rad = am
            .mul(rhs.rad)
            .add(bm.mul(self.rad))
            .add(self.rad.mul(rhs.rad))
            .add(e);
        RealBall { mid: m, rad, prec }
    }
}

impl Div for &RealBall {
    type Output = RealBall;
    fn div(self, rhs: &RealBall) -> RealBall {
        let prec = self.prec.max(rhs.prec);
        if !self.is_finite() || !rhs.is_finite() || rhs.contains_zero() {
            return RealBall::indeterminate(prec);
        }
        let (q, e) = self.mid.div(&rhs.mid, prec);
        // |a/b - am/bm| <= (ar + |am/bm| br) / (|bm| - br)
        let qm = Mag::from_float_upper(&q).add(e);
        let num = self.rad.add(qm.mul(rhs.rad));
        let rad = if num.is_zero() {
            e
        } else {
            num.div(rhs.mag_lower()).add(e)
        };
        RealBall { mid: q, rad, prec }
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<RealBall> for RealBall {
            type Output = RealBall;
            fn $method(self, rhs: RealBall) -> RealBall {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&RealBall> for RealBall {
            type Output = RealBall;
            fn $method(self, rhs: &RealBall) -> RealBall {
                (&self).$method(rhs)
            }
        }
        impl $tr<RealBall> for &RealBall {
            type Output = RealBall;
            fn $method(self, rhs: RealBall) -> RealBall {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);
forward_owned_binop!(Div, div);
