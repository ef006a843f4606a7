//! Generalized hypergeometric series `pFq(a; b; z)` inside the unit disc.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numerics::rational::{int, is_nonpositive_integer, rat};
use crate::numerics::{Mag, Rational, RealBall, GUARD_BITS};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PFQSpec {
    upper: Vec<Rational>,
    lower: Vec<Rational>,
    argument: Rational,
}

impl PFQSpec {
    pub fn new(upper: Vec<Rational>, lower: Vec<Rational>, argument: Rational) -> Result<Self> {
        if let Some(b) = lower.iter().find(|b| is_nonpositive_integer(b)) {
            return Err(Error::domain(format!("lower parameter {b} is a pole")));
        }
        let terminates = upper.iter().any(is_nonpositive_integer);
        if !terminates {
            if argument.abs() >= int(1) {
                return Err(Error::domain("series needs |z| < 1"));
            }
            if upper.len() > lower.len() + 1 && !argument.is_zero() {
                return Err(Error::domain("series diverges for p > q + 1"));
            }
        }
        Ok(PFQSpec {
            upper,
            lower,
            argument,
        })
    }

    pub fn upper(&self) -> &[Rational] {
        &self.upper
    }

    pub fn lower(&self) -> &[Rational] {
        &self.lower
    }

    pub fn argument(&self) -> &Rational {
        &self.argument
    }

    /// One member of the 7F6 family at `z = 27/64` whose first upper
    /// parameter is `k`.
    pub fn family(k: i64, alpha: &Rational) -> Result<Self> {
        let shift = |n: i64, d: i64| alpha + rat(n, d);
        let upper = vec![
            int(k),
            shift(2, 5),
            shift(3, 5),
            shift(4, 5),
            shift(5, 6),
            shift(7, 6),
            shift(6, 5),
        ];
        let lower = vec![
            shift(13, 10),
            shift(3, 2),
            shift(17, 10),
            shift(19, 10),
            shift(2, 1),
            shift(21, 10),
        ];
        PFQSpec::new(upper, lower, rat(27, 64))
    }
}

/// Running state of the series; `term` is the last added term.
struct Partial {
    sum: RealBall,
    term: RealBall,
    n: i64,
}

fn ratio(spec: &PFQSpec, a: &[RealBall], b: &[RealBall], z: &RealBall, n: i64, w: u32) -> RealBall {
    let nb = RealBall::from_i64(n, w);
    let mut r = z.clone();
    for ai in a {
        r = &r * &(ai + &nb);
    }
    for bj in b {
        r = &r / &(bj + &nb);
    }
    debug_assert_eq!(a.len(), spec.upper.len());
    r.div_i64(n + 1)
}

/// Geometric majorant for `|r(m)|`, `m >= n`, valid once `n` exceeds every
/// `|parameter|`: each factor `(a+m)/(b+m)` is then monotone in `m`, so its
/// supremum is `max(1, value at n)`. Unpaired lower parameters only shrink
/// the ratio and are dropped.
fn majorant(spec: &PFQSpec, n: i64) -> Rational {
    let m = int(n);
    let mut rho = spec.argument.abs();
    let mut lowers: Vec<Rational> = spec.lower.iter().map(|b| b + &m).collect();
    lowers.push(&m + int(1));
    for (i, a) in spec.upper.iter().enumerate() {
        let num = (a + &m).abs();
        let den = lowers[i.min(lowers.len() - 1)].clone();
        let f = num / den;
        if f > int(1) {
            rho *= f;
        }
    }
    rho
}

fn max_abs_parameter(spec: &PFQSpec) -> i64 {
    spec.upper
        .iter()
        .chain(spec.lower.iter())
        .map(|p| crate::numerics::rational::floor(&p.abs()))
        .max()
        .map(|v| i64::try_from(v).unwrap_or(i64::MAX - 2))
        .unwrap_or(0)
        + 2
}

fn sum_terms(spec: &PFQSpec, w: u32, until: impl Fn(&Partial) -> bool) -> Partial {
    let a: Vec<RealBall> = spec.upper.iter().map(|x| RealBall::from_rational(x, w)).collect();
    let b: Vec<RealBall> = spec.lower.iter().map(|x| RealBall::from_rational(x, w)).collect();
    let z = RealBall::from_rational(&spec.argument, w);
    let mut st = Partial {
        sum: RealBall::one(w),
        term: RealBall::one(w),
        n: 0,
    };
    while !until(&st) {
        st.term = &st.term * &ratio(spec, &a, &b, &z, st.n, w);
        st.sum = &st.sum + &st.term;
        st.n += 1;
    }
    st
}

/// Sum with an explicit cutoff of `terms` terms (indices `0..terms`) and the
/// geometric tail bound. Errors if no ratio bound below one can be verified
/// at the cutoff.
pub fn pfq_truncated(spec: &PFQSpec, terms: i64, precision: u32) -> Result<RealBall> {
    let w = precision + GUARD_BITS;
    let st = sum_terms(spec, w, |s| s.n + 1 >= terms || s.term.is_exact() && s.term.mid().is_zero());
    if st.term.is_exact() && st.term.mid().is_zero() {
        return Ok(st.sum.with_prec(precision));
    }
    let tail = tail_bound(spec, &st, w)?;
    Ok(st.sum.add_error(tail).with_prec(precision))
}

fn tail_bound(spec: &PFQSpec, st: &Partial, w: u32) -> Result<Mag> {
    if st.n < max_abs_parameter(spec) {
        return Err(Error::Convergence(format!(
            "cutoff {} is below the parameter magnitudes",
            st.n
        )));
    }
    let a: Vec<RealBall> = spec.upper.iter().map(|x| RealBall::from_rational(x, w)).collect();
    let b: Vec<RealBall> = spec.lower.iter().map(|x| RealBall::from_rational(x, w)).collect();
    let z = RealBall::from_rational(&spec.argument, w);
    let observed = ratio(spec, &a, &b, &z, st.n, w).abs().upper_rational();
    let rho = (spec.argument.abs() * rat(105, 100))
        .max(observed)
        .max(majorant(spec, st.n));
    if rho >= Rational::one() {
        return Err(Error::Convergence("no geometric ratio bound below 1".into()));
    }
    let factor = &rho / (Rational::one() - &rho);
    Ok(st.term.mag_upper().mul(Mag::from_float_upper(
        &crate::numerics::Float::from_rational(&factor, 64).0,
    )
    .mul_u64(2)))
}

/// `pFq(a; b; z)` with the truncation chosen adaptively.
pub fn pfq(spec: &PFQSpec, precision: u32) -> Result<RealBall> {
    let w = precision + GUARD_BITS;
    let start = max_abs_parameter(spec);
    let st = sum_terms(spec, w, |s| {
        if s.term.is_exact() && s.term.mid().is_zero() {
            return true;
        }
        if s.n < start {
            return false;
        }
        let scale = s.sum.mid().top().max(-(w as i64));
        s.term.mag_upper().top() < scale - w as i64 - 4
    });
    if st.term.is_exact() && st.term.mid().is_zero() {
        return Ok(st.sum.with_prec(precision));
    }
    let tail = tail_bound(spec, &st, w)?;
    Ok(st.sum.add_error(tail).with_prec(precision))
}
