//! Binary floating-point values with unbounded mantissa and exponent, plus
//! the low-precision upper-bound magnitudes used for ball radii.
//!
//! `Float` operations are exact unless a precision is supplied, in which case
//! the result is truncated toward zero and the truncation error is returned
//! as a `Mag` alongside it.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Rational;

/// `man * 2^exp`. Zero is stored as `(0, 0)`; otherwise the mantissa is odd.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Float {
    man: BigInt,
    exp: i64,
}

impl fmt::Debug for Float {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Float({} * 2^{})", self.man, self.exp)
    }
}

impl Float {
    pub fn zero() -> Self {
        Float {
            man: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn one() -> Self {
        Float {
            man: BigInt::one(),
            exp: 0,
        }
    }

    pub fn from_parts(man: BigInt, exp: i64) -> Self {
        if man.is_zero() {
            return Float::zero();
        }
        let tz = man.trailing_zeros().unwrap_or(0);
        if tz == 0 {
            Float { man, exp }
        } else {
            Float {
                man: man >> tz,
                exp: exp + tz as i64,
            }
        }
    }

    pub fn from_i64(v: i64) -> Self {
        Float::from_parts(BigInt::from(v), 0)
    }

    pub fn from_bigint(v: BigInt) -> Self {
        Float::from_parts(v, 0)
    }

    /// Exact conversion; panics on non-finite input.
    pub fn from_f64(v: f64) -> Self {
        assert!(v.is_finite(), "non-finite f64 {v}");
        if v == 0.0 {
            return Float::zero();
        }
        let bits = v.to_bits();
        let sign = if bits >> 63 == 0 { 1i64 } else { -1 };
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if raw_exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), raw_exp - 1075)
        };
        Float::from_parts(BigInt::from(m) * sign, e)
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.man
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.man.is_zero()
    }

    pub fn sign(&self) -> Sign {
        self.man.sign()
    }

    pub fn is_negative(&self) -> bool {
        self.man.is_negative()
    }

    pub fn bits(&self) -> u64 {
        self.man.bits()
    }

    /// Smallest `t` with `|self| < 2^t`. Zero maps to `i64::MIN`.
    pub fn top(&self) -> i64 {
        if self.is_zero() {
            i64::MIN
        } else {
            self.exp + self.bits() as i64
        }
    }

    pub fn neg(&self) -> Self {
        Float {
            man: -&self.man,
            exp: self.exp,
        }
    }

    pub fn abs(&self) -> Self {
        Float {
            man: self.man.abs(),
            exp: self.exp,
        }
    }

    pub fn mul_2exp(&self, k: i64) -> Self {
        if self.is_zero() {
            return Float::zero();
        }
        Float {
            man: self.man.clone(),
            exp: self.exp + k,
        }
    }

    /// Truncate toward zero to at most `prec` mantissa bits.
    pub fn round(&self, prec: u32) -> (Float, Mag) {
        let b = self.bits();
        if b <= prec as u64 {
            return (self.clone(), Mag::zero());
        }
        let shift = b - prec as u64;
        let mag: BigUint = self.man.magnitude() >> shift;
        let man = BigInt::from_biguint(self.man.sign(), mag);
        let exp = self.exp + shift as i64;
        (Float::from_parts(man, exp), Mag::pow2(exp))
    }

    pub fn add_exact(&self, other: &Float) -> Float {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(other.exp);
        let a = &self.man << (self.exp - e) as usize;
        let b = &other.man << (other.exp - e) as usize;
        Float::from_parts(a + b, e)
    }

    pub fn sub_exact(&self, other: &Float) -> Float {
        self.add_exact(&other.neg())
    }

    pub fn mul_exact(&self, other: &Float) -> Float {
        if self.is_zero() || other.is_zero() {
            return Float::zero();
        }
        Float {
            man: &self.man * &other.man,
            exp: self.exp + other.exp,
        }
    }

    pub fn add(&self, other: &Float, prec: u32) -> (Float, Mag) {
        if self.is_zero() {
            return other.round(prec);
        }
        if other.is_zero() {
            return self.round(prec);
        }
        let (big, small) = if self.top() >= other.top() {
            (self, other)
        } else {
            (other, self)
        };
        if big.top() - small.top() > prec as i64 + 2 {
            // small lies entirely below the last kept bit of big
            let (r, e) = big.round(prec);
            return (r, e.add(Mag::pow2(small.top())));
        }
        self.add_exact(other).round(prec)
    }

    pub fn sub(&self, other: &Float, prec: u32) -> (Float, Mag) {
        self.add(&other.neg(), prec)
    }

    pub fn mul(&self, other: &Float, prec: u32) -> (Float, Mag) {
        self.mul_exact(other).round(prec)
    }

    /// Quotient truncated to `prec` bits. Panics on division by zero.
    pub fn div(&self, other: &Float, prec: u32) -> (Float, Mag) {
        assert!(!other.is_zero(), "Float division by zero");
        if self.is_zero() {
            return (Float::zero(), Mag::zero());
        }
        let shift = (prec as i64 + 2 + other.bits() as i64 - self.bits() as i64).max(0);
        let num = &self.man << shift as usize;
        let (q, r) = num.div_rem(&other.man);
        let qexp = self.exp - shift - other.exp;
        let quotient_err = if r.is_zero() {
            Mag::zero()
        } else {
            Mag::pow2(qexp)
        };
        let (out, round_err) = Float::from_parts(q, qexp).round(prec);
        (out, round_err.add(quotient_err))
    }

    /// Square root truncated to `prec` bits. Panics on negative input.
    pub fn sqrt(&self, prec: u32) -> (Float, Mag) {
        assert!(!self.is_negative(), "Float sqrt of negative value");
        if self.is_zero() {
            return (Float::zero(), Mag::zero());
        }
        let mut shift = (2 * prec as i64 + 2 - self.bits() as i64).max(0);
        if (self.exp - shift).rem_euclid(2) != 0 {
            shift += 1;
        }
        let m = self.man.magnitude() << shift as usize;
        let r = m.sqrt();
        let exact = &r * &r == m;
        let rexp = (self.exp - shift) / 2;
        let (out, round_err) = Float::from_parts(BigInt::from(r), rexp).round(prec);
        let err = if exact { Mag::zero() } else { Mag::pow2(rexp) };
        (out, round_err.add(err))
    }

    /// Nearest-ish f64 (truncated mantissa); saturates to 0 or infinity.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let (r, _) = self.round(64);
        let m = r.man.to_f64().unwrap_or(f64::NAN);
        let e = r.exp;
        if e > 2000 {
            return m.signum() * f64::INFINITY;
        }
        if e < -2200 {
            return 0.0;
        }
        // split to avoid intermediate overflow/underflow of powi
        let half = (e / 2) as i32;
        m * 2f64.powi(half) * 2f64.powi(e as i32 - half)
    }

    pub fn to_rational(&self) -> Rational {
        if self.exp >= 0 {
            Rational::from_integer(&self.man << self.exp as usize)
        } else {
            Rational::new(self.man.clone(), BigInt::one() << (-self.exp) as usize)
        }
    }

    /// Correctly bounded conversion of an exact rational.
    pub fn from_rational(r: &Rational, prec: u32) -> (Float, Mag) {
        Float::from_bigint(r.numer().clone()).div(&Float::from_bigint(r.denom().clone()), prec)
    }

    /// `floor(self)` as an integer.
    pub fn floor(&self) -> BigInt {
        if self.exp >= 0 {
            &self.man << self.exp as usize
        } else {
            self.man.div_floor(&(BigInt::one() << (-self.exp) as usize))
        }
    }

    /// Decimal rendering with `digits` significant digits (truncated), in
    /// scientific notation.
    pub fn to_decimal(&self, digits: usize) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let digits = digits.max(1);
        let neg = self.is_negative();
        let a = self.abs();
        // decimal exponent estimate, corrected below
        let mut e10 = ((a.top() - 1) as f64 * std::f64::consts::LOG10_2).floor() as i64;
        let scaled = loop {
            let k = digits as i64 - 1 - e10;
            let v = scale_by_pow10(&a, k);
            let s = v.to_string();
            if s.len() > digits {
                e10 += 1;
            } else if s.len() < digits {
                e10 -= 1;
            } else {
                break s;
            }
        };
        let mut out = String::new();
        if neg {
            out.push('-');
        }
        out.push_str(&scaled[..1]);
        if digits > 1 {
            out.push('.');
            out.push_str(&scaled[1..]);
        }
        if e10 != 0 {
            out.push_str(&format!("e{e10}"));
        }
        out
    }
}

/// `floor(|a| * 10^k)` for nonnegative `a`.
fn scale_by_pow10(a: &Float, k: i64) -> BigInt {
    let p = num_traits::pow(BigInt::from(10), k.unsigned_abs() as usize);
    let (mut num, mut den) = (a.man.clone(), BigInt::one());
    if k >= 0 {
        num *= p;
    } else {
        den *= p;
    }
    if a.exp >= 0 {
        num <<= a.exp as usize;
    } else {
        den <<= (-a.exp) as usize;
    }
    num.div_floor(&den)
}

impl PartialOrd for Float {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Float {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.sub_exact(other).sign() {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        }
    }
}

const MAG_BITS: u32 = 30;
const MAG_LO: u64 = 1 << (MAG_BITS - 1);
const MAG_HI: u64 = 1 << MAG_BITS;

/// Nonnegative upper bound `man * 2^exp` with a 30-bit mantissa. Every
/// operation rounds upward. `exp == i64::MAX` encodes +infinity.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mag {
    man: u64,
    exp: i64,
}

impl fmt::Debug for Mag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_inf() {
            write!(f, "Mag(inf)")
        } else {
            write!(f, "Mag({} * 2^{})", self.man, self.exp)
        }
    }
}

impl Mag {
    pub const fn zero() -> Self {
        Mag { man: 0, exp: 0 }
    }

    pub const fn inf() -> Self {
        Mag {
            man: MAG_LO,
            exp: i64::MAX,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.man == 0
    }

    pub fn is_inf(&self) -> bool {
        self.exp == i64::MAX
    }

    pub fn pow2(e: i64) -> Self {
        Mag {
            man: MAG_LO,
            exp: e - (MAG_BITS as i64 - 1),
        }
    }

    fn from_u128_up(mut m: u128, mut exp: i64) -> Self {
        if m == 0 {
            return Mag::zero();
        }
        while m >= MAG_HI as u128 {
            let carry = m & 1;
            m = (m >> 1) + carry;
            exp += 1;
        }
        while m < MAG_LO as u128 {
            m <<= 1;
            exp -= 1;
        }
        if exp > i64::MAX / 4 {
            return Mag::inf();
        }
        Mag { man: m as u64, exp }
    }

    pub fn from_u64(v: u64) -> Self {
        Mag::from_u128_up(v as u128, 0)
    }

    /// Upper bound for a nonnegative finite f64.
    pub fn from_f64_up(v: f64) -> Self {
        assert!(v >= 0.0);
        if v.is_infinite() {
            return Mag::inf();
        }
        Mag::from_float_upper(&Float::from_f64(v))
    }

    /// Smallest representable bound `>= |x|`.
    pub fn from_float_upper(x: &Float) -> Self {
        if x.is_zero() {
            return Mag::zero();
        }
        let b = x.bits();
        let m = x.man.magnitude();
        if b <= MAG_BITS as u64 {
            return Mag::from_u128_up(m.to_u64().unwrap() as u128, x.exp);
        }
        let shift = b - MAG_BITS as u64;
        let top: BigUint = m >> shift;
        let mut t = top.to_u64().unwrap();
        if m.trailing_zeros().unwrap_or(0) < shift {
            t += 1;
        }
        Mag::from_u128_up(t as u128, x.exp + shift as i64)
    }

    /// Largest representable bound `<= |x|`.
    pub fn from_float_lower(x: &Float) -> Self {
        if x.is_zero() {
            return Mag::zero();
        }
        let b = x.bits();
        let m = x.man.magnitude();
        let (t, e) = if b <= MAG_BITS as u64 {
            (m.to_u64().unwrap(), x.exp)
        } else {
            let shift = b - MAG_BITS as u64;
            ((m >> shift).to_u64().unwrap(), x.exp + shift as i64)
        };
        let mut t = t;
        let mut e = e;
        while t < MAG_LO {
            t <<= 1;
            e -= 1;
        }
        Mag { man: t, exp: e }
    }

    pub fn to_float(&self) -> Float {
        assert!(!self.is_inf(), "infinite magnitude has no Float value");
        Float::from_parts(BigInt::from(self.man), self.exp)
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_inf() {
            f64::INFINITY
        } else {
            self.to_float().to_f64()
        }
    }

    /// Approximate base-2 logarithm; `-inf` for zero.
    pub fn log2(&self) -> f64 {
        if self.is_zero() {
            f64::NEG_INFINITY
        } else if self.is_inf() {
            f64::INFINITY
        } else {
            (self.man as f64).log2() + self.exp as f64
        }
    }

    /// Smallest `t` with `self < 2^t` (as a bound).
    pub fn top(&self) -> i64 {
        if self.is_zero() {
            i64::MIN
        } else if self.is_inf() {
            i64::MAX
        } else {
            self.exp + MAG_BITS as i64
        }
    }

    pub fn add(self, other: Mag) -> Mag {
        if self.is_inf() || other.is_inf() {
            return Mag::inf();
        }
        if self.is_zero() {
            return other;
        }
        if other.is_zero() {
            return self;
        }
        let (hi, lo) = if self.exp >= other.exp {
            (self, other)
        } else {
            (other, self)
        };
        let d = hi.exp - lo.exp;
        if d >= 60 {
            return Mag::from_u128_up(hi.man as u128 + 1, hi.exp);
        }
        Mag::from_u128_up(((hi.man as u128) << d) + lo.man as u128, lo.exp)
    }

    pub fn mul(self, other: Mag) -> Mag {
        if self.is_zero() || other.is_zero() {
            return Mag::zero();
        }
        if self.is_inf() || other.is_inf() {
            return Mag::inf();
        }
        Mag::from_u128_up(self.man as u128 * other.man as u128, self.exp + other.exp)
    }

    pub fn mul_u64(self, k: u64) -> Mag {
        self.mul(Mag::from_u64(k))
    }

    /// `self / lower`, rounded up. `lower` must be a lower bound of the
    /// true divisor; a zero divisor gives infinity.
    pub fn div(self, lower: Mag) -> Mag {
        if self.is_zero() {
            return Mag::zero();
        }
        if lower.is_zero() || self.is_inf() {
            return Mag::inf();
        }
        if lower.is_inf() {
            return Mag::zero();
        }
        let num = (self.man as u128) << 64;
        let q = num.div_ceil(lower.man as u128);
        Mag::from_u128_up(q, self.exp - lower.exp - 64)
    }

    pub fn mul_2exp(self, k: i64) -> Mag {
        if self.is_zero() || self.is_inf() {
            return self;
        }
        Mag {
            man: self.man,
            exp: self.exp + k,
        }
    }

    pub fn max(self, other: Mag) -> Mag {
        if self >= other {
            self
        } else {
            other
        }
    }

    /// Upper bound on the square root.
    pub fn sqrt_up(self) -> Mag {
        if self.is_zero() || self.is_inf() {
            return self;
        }
        let (m, e) = if self.exp.rem_euclid(2) == 0 {
            ((self.man as u128) << 60, self.exp - 60)
        } else {
            ((self.man as u128) << 61, self.exp - 61)
        };
        let mut r = isqrt_u128(m);
        if r * r < m {
            r += 1;
        }
        Mag::from_u128_up(r, e / 2)
    }

    /// Lower bound on the square root.
    pub fn sqrt_down(self) -> Mag {
        if self.is_zero() || self.is_inf() {
            return self;
        }
        let (m, e) = if self.exp.rem_euclid(2) == 0 {
            ((self.man as u128) << 60, self.exp - 60)
        } else {
            ((self.man as u128) << 61, self.exp - 61)
        };
        let mut r = isqrt_u128(m);
        let mut e = e / 2;
        while r >= MAG_HI as u128 {
            r >>= 1;
            e += 1;
        }
        Mag { man: r as u64, exp: e }
    }
}

fn isqrt_u128(n: u128) -> u128 {
    if n == 0 {
        return 0;
    }
    let mut x = (n as f64).sqrt() as u128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

impl PartialOrd for Mag {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Mag {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {}
        }
        // normalized mantissas share the same bit length
        self.exp.cmp(&other.exp).then(self.man.cmp(&other.man))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(v: f64) -> Float {
        Float::from_f64(v)
    }

    #[test]
    fn f64_round_trip() {
        for v in [1.0, -3.5, 1e-300, 6.02e23, 0.1] {
            assert_eq!(f(v).to_f64(), v);
        }
    }

    #[test]
    fn division_error_bound_holds() {
        let (q, e) = Float::from_i64(1).div(&Float::from_i64(3), 100);
        let err = (q.to_rational() - Rational::new(1.into(), 3.into())).abs();
        assert!(err <= e.to_float().to_rational());
        assert!(e.log2() < -98.0);
    }

    #[test]
    fn sqrt_error_bound_holds() {
        let (s, e) = Float::from_i64(2).sqrt(200);
        let lo = s.to_rational();
        let hi = s.add_exact(&e.to_float()).to_rational();
        let two = Rational::from_integer(2.into());
        assert!(&lo * &lo <= two && two <= &hi * &hi);
    }

    #[test]
    fn far_apart_addition_is_bounded() {
        let big = Float::from_i64(1).mul_2exp(1000);
        let small = Float::from_i64(1).mul_2exp(-1000);
        let (s, e) = big.add(&small, 64);
        assert_eq!(s, big);
        assert!(e >= Mag::from_float_upper(&small));
    }

    #[test]
    fn mag_rounds_up() {
        let third = Mag::from_u64(1).div(Mag::from_u64(3));
        assert!(third.to_f64() >= 1.0 / 3.0);
        let s = Mag::from_u64(2).sqrt_up();
        assert!(s.to_f64() >= std::f64::consts::SQRT_2);
        assert!(Mag::from_u64(2).sqrt_down().to_f64() <= std::f64::consts::SQRT_2);
        let x = Float::from_f64(0.1);
        assert!(Mag::from_float_lower(&x).to_f64() <= 0.1);
        assert!(Mag::from_float_upper(&x).to_f64() >= 0.1);
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(Float::from_i64(12345).to_decimal(3), "1.23e4");
        assert_eq!(Float::from_f64(-0.5).to_decimal(2), "-5.0e-1");
        assert_eq!(Float::from_i64(7).to_decimal(1), "7");
    }
}
