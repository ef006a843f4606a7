use std::fmt::Write as _;
use std::path::Path;

use num_traits::{One, Signed};

use super::scalar::Scalar;
use crate::error::{Error, Result};
use crate::numerics::{format_rational, parse_decimal, parse_rational, Rational, RealBall};

/// Raw moments `mu_k = E[X^k]`, `k = 0..=N`, of a distribution supported
/// on `[a, b]`.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentSequence<S = Rational> {
    interval: (Rational, Rational),
    moments: Vec<S>,
}

impl<S: Scalar> MomentSequence<S> {
    pub fn interval(&self) -> (&Rational, &Rational) {
        (&self.interval.0, &self.interval.1)
    }

    pub fn moments(&self) -> &[S] {
        &self.moments
    }

    /// Highest moment order `N`.
    pub fn order(&self) -> usize {
        self.moments.len() - 1
    }

    /// The first `n + 1` moments.
    pub fn truncated(&self, n: usize) -> Result<Self> {
        if n >= self.moments.len() {
            return Err(Error::argument(format!(
                "requested {} moments but only {} available",
                n + 1,
                self.moments.len()
            )));
        }
        Ok(MomentSequence {
            interval: self.interval.clone(),
            moments: self.moments[..=n].to_vec(),
        })
    }
}

fn check_interval(a: &Rational, b: &Rational) -> Result<()> {
    if a >= b {
        return Err(Error::argument(format!("empty interval [{a}, {b}]")));
    }
    Ok(())
}

impl MomentSequence<Rational> {
    pub fn new(a: Rational, b: Rational, moments: Vec<Rational>) -> Result<Self> {
        check_interval(&a, &b)?;
        if moments.first() != Some(&Rational::one()) {
            return Err(Error::argument("moment sequence must start with mu_0 = 1"));
        }
        let r = a.abs().max(b.abs());
        let mut bound = Rational::one();
        for (k, m) in moments.iter().enumerate().skip(1) {
            bound *= &r;
            if m.abs() > bound {
                return Err(Error::argument(format!("moment {k} = {m} exceeds the interval bound")));
            }
        }
        Ok(MomentSequence {
            interval: (a, b),
            moments,
        })
    }

    /// Text form: `interval a b`, then one `p/q` moment per line.
    pub fn to_text(&self) -> String {
        let mut s = format!(
            "interval {} {}\n",
            format_rational(&self.interval.0),
            format_rational(&self.interval.1)
        );
        for m in &self.moments {
            let _ = writeln!(s, "{}", format_rational(m));
        }
        s
    }

    /// Parses the text form; moments may be `p/q` or decimal strings, both
    /// read exactly. Blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| Error::Parse("empty moments file".into()))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        let (a, b) = match fields.as_slice() {
            ["interval", a, b] => (parse_rational(a)?, parse_rational(b)?),
            _ => return Err(Error::Parse(format!("expected `interval a b`, got {header:?}"))),
        };
        let moments = lines
            .map(|l| if l.contains('.') || l.contains(['e', 'E']) { parse_decimal(l) } else { parse_rational(l) })
            .collect::<Result<Vec<_>>>()?;
        Self::new(a, b, moments)
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_text())
            .map_err(|e| Error::argument(format!("cannot write {}: {e}", path.display())))
    }

    pub fn to_balls(&self, precision: u32) -> MomentSequence<RealBall> {
        MomentSequence {
            interval: self.interval.clone(),
            moments: self.moments.iter().map(|m| RealBall::from_rational(m, precision)).collect(),
        }
    }
}

impl MomentSequence<RealBall> {
    pub fn from_balls(a: Rational, b: Rational, moments: Vec<RealBall>) -> Result<Self> {
        check_interval(&a, &b)?;
        match moments.first() {
            Some(m0) if m0.contains_rational(&Rational::one()) => {}
            _ => return Err(Error::argument("moment sequence must start with mu_0 = 1")),
        }
        Ok(MomentSequence {
            interval: (a, b),
            moments,
        })
    }
}
