use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parse `"p/q"` or an integer `"p"`. Decimal strings are rejected.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("expected p/q rational, got {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n = BigInt::from_str(n).map_err(|_| bad())?;
    let d = BigInt::from_str(d).map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(n, d))
}

/// Parse a decimal string such as `-1.25e-3` exactly.
pub fn parse_decimal(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad decimal {s:?}"));
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (ip, fp) = mant.split_once('.').unwrap_or((mant, ""));
    if ip.is_empty() && fp.is_empty() {
        return Err(bad());
    }
    if !ip.chars().chain(fp.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{ip}{fp}");
    let mut v = Rational::from_integer(BigInt::from_str(&digits).map_err(|_| bad())?);
    let shift = exp - fp.len() as i64;
    let p = Rational::from_integer(num_traits::pow(BigInt::from(10), shift.unsigned_abs() as usize));
    if shift >= 0 {
        v *= p;
    } else {
        v /= p;
    }
    Ok(if neg { -v } else { v })
}

/// Always renders as `p/q`, including integers (`2/1`).
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// A formula parameter kept exact so that half-integer values can take the
/// exact evaluation path.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlphaValue {
    value: Rational,
    is_half_integer: bool,
}

impl AlphaValue {
    pub fn new(value: Rational) -> Self {
        let twice = &value * int(2);
        let is_half_integer = twice.is_integer();
        AlphaValue {
            value,
            is_half_integer,
        }
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        AlphaValue::new(rat(n, d))
    }

    pub fn value(&self) -> &Rational {
        &self.value
    }

    pub fn is_half_integer(&self) -> bool {
        self.is_half_integer
    }

    /// `2 * alpha` when alpha is a half-integer.
    pub fn twice(&self) -> Option<BigInt> {
        self.is_half_integer
            .then(|| (&self.value * int(2)).to_integer())
    }

    pub fn shifted(&self, k: i64) -> AlphaValue {
        AlphaValue::new(&self.value + int(k))
    }
}

impl fmt::Display for AlphaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_rational(&self.value))
    }
}

impl FromStr for AlphaValue {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_rational(s).map(AlphaValue::new)
    }
}

/// `floor(r)`.
pub fn floor(r: &Rational) -> BigInt {
    r.numer().div_floor(r.denom())
}

pub fn is_nonpositive_integer(r: &Rational) -> bool {
    r.is_integer() && !r.is_positive()
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rationals_and_rejects_decimals() {
        assert_eq!(parse_rational("29/64").unwrap(), rat(29, 64));
        assert_eq!(parse_rational("-6/4").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational("2").unwrap(), int(2));
        assert!(parse_rational("0.5").is_err());
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn parses_decimals_exactly() {
        assert_eq!(parse_decimal("0.0588235").unwrap(), rat(588235, 10_000_000));
        assert_eq!(parse_decimal("-1.5e-3").unwrap(), rat(-3, 2000));
        assert_eq!(parse_decimal("25E2").unwrap(), int(2500));
        assert!(parse_decimal("1.2.3").is_err());
    }

    #[test]
    fn formats_integers_with_denominator() {
        assert_eq!(format_rational(&int(2)), "2/1");
        assert_eq!(format_rational(&rat(8, 33)), "8/33");
    }

    #[test]
    fn half_integer_classification() {
        assert!(AlphaValue::from_ratio(1, 2).is_half_integer());
        assert!(AlphaValue::from_ratio(-3, 1).is_half_integer());
        assert!(!AlphaValue::from_ratio(1, 4).is_half_integer());
        assert_eq!(AlphaValue::from_ratio(5, 2).twice(), Some(BigInt::from(5)));
    }
}
