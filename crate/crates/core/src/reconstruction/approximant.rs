use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::moments::MomentSequence;
use super::scalar::Scalar;
use crate::error::{Error, Result};
use crate::numerics::rational::int;
use crate::numerics::Rational;

/// `P_0(y), ..., P_n(y)` by the three-term recurrence
/// `(k+1) P_{k+1} = (2k+1) y P_k - k P_{k-1}`.
pub fn legendre_values<S: Scalar>(y: &S, n: usize) -> Vec<S> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(S::from_rational(&Rational::one(), y));
    if n >= 1 {
        out.push(y.clone());
    }
    for k in 1..n {
        let a = y.mul(&out[k]).mul_rational(&int(2 * k as i64 + 1));
        let b = out[k - 1].mul_rational(&int(k as i64));
        out.push(a.sub(&b).mul_rational(&Rational::new(BigInt::one(), BigInt::from(k + 1))));
    }
    out
}

pub fn legendre_values_f64(y: f64, n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(1.0);
    if n >= 1 {
        out.push(y);
    }
    for k in 1..n {
        let kf = k as f64;
        out.push(((2.0 * kf + 1.0) * y * out[k] - kf * out[k - 1]) / (kf + 1.0));
    }
    out
}

/// `d_N(x) = sum_k lambda_k P_k(y(x))` with `y(x) = 2(x-a)/(b-a) - 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityApproximant<S = Rational> {
    interval: (Rational, Rational),
    coefficients: Vec<S>,
}

/// `y = scale * x + shift`.
fn affine(a: &Rational, b: &Rational) -> (Rational, Rational) {
    let w = b - a;
    (int(2) / &w, -(a + b) / w)
}

/// Fits the degree-`N` approximant using every supplied moment.
pub fn fit_approximant<S: Scalar>(moments: &MomentSequence<S>) -> Result<DensityApproximant<S>> {
    fit_approximant_degree(moments, moments.order())
}

/// `lambda_k = (2k+1)/(b-a) E[P_k(y(X))]`. The moments are mapped to
/// `E[y^j]` once, then `M_k(j) = E[P_k(y) y^j]` is carried through the
/// Legendre recurrence
/// `M_{k+1}(j) = ((2k+1) M_k(j+1) - k M_{k-1}(j)) / (k+1)`.
pub fn fit_approximant_degree<S: Scalar>(moments: &MomentSequence<S>, degree: usize) -> Result<DensityApproximant<S>> {
    if degree > moments.order() {
        return Err(Error::argument(format!(
            "degree {degree} needs {} moments, got {}",
            degree + 1,
            moments.order() + 1
        )));
    }
    let (a, b) = moments.interval();
    let (scale, shift) = affine(a, b);
    let mu = &moments.moments()[..=degree];
    let like = &mu[0];
    // E[y^j] = sum_m C(j, m) scale^m shift^(j-m) mu_m
    let mut scale_pow = vec![Rational::one()];
    let mut shift_pow = vec![Rational::one()];
    for _ in 0..degree {
        scale_pow.push(scale_pow.last().unwrap() * &scale);
        shift_pow.push(shift_pow.last().unwrap() * &shift);
    }
    let mut binom = vec![BigInt::one()];
    let mut ey = Vec::with_capacity(degree + 1);
    for j in 0..=degree {
        if j > 0 {
            let mut next = vec![BigInt::one(); j + 1];
            for m in 1..j {
                next[m] = &binom[m - 1] + &binom[m];
            }
            binom = next;
        }
        let mut acc = S::from_rational(&Rational::zero(), like);
        for m in 0..=j {
            let c = Rational::from_integer(binom[m].clone()) * &scale_pow[m] * &shift_pow[j - m];
            if !c.is_zero() {
                acc = acc.add(&mu[m].mul_rational(&c));
            }
        }
        ey.push(acc);
    }
    let width = b - a;
    let mut coefficients = Vec::with_capacity(degree + 1);
    let mut prev: Vec<S> = Vec::new();
    let mut cur = ey;
    for k in 0..=degree {
        coefficients.push(cur[0].mul_rational(&(int(2 * k as i64 + 1) / &width)));
        if k == degree {
            break;
        }
        let next: Vec<S> = if k == 0 {
            cur[1..].to_vec()
        } else {
            let c1 = int(2 * k as i64 + 1);
            let c0 = int(k as i64);
            let inv = Rational::new(BigInt::one(), BigInt::from(k + 1));
            (0..cur.len() - 1)
                .map(|j| cur[j + 1].mul_rational(&c1).sub(&prev[j].mul_rational(&c0)).mul_rational(&inv))
                .collect()
        };
        prev = cur;
        cur = next;
    }
    Ok(DensityApproximant {
        interval: (a.clone(), b.clone()),
        coefficients,
    })
}

impl<S: Scalar> DensityApproximant<S> {
    pub fn interval(&self) -> (&Rational, &Rational) {
        (&self.interval.0, &self.interval.1)
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn coefficients(&self) -> &[S] {
        &self.coefficients
    }

    fn y_of(&self, x: &Rational) -> Rational {
        let (scale, shift) = affine(&self.interval.0, &self.interval.1);
        scale * x + shift
    }

    fn check_inside(&self, x: &Rational) -> Result<()> {
        if x < &self.interval.0 || x > &self.interval.1 {
            return Err(Error::argument(format!(
                "{x} outside [{}, {}]",
                self.interval.0, self.interval.1
            )));
        }
        Ok(())
    }

    pub fn density_at(&self, x: &Rational) -> Result<S> {
        self.check_inside(x)?;
        let like = &self.coefficients[0];
        let y = S::from_rational(&self.y_of(x), like);
        let p = legendre_values(&y, self.degree());
        Ok(self
            .coefficients
            .iter()
            .zip(&p)
            .fold(S::from_rational(&Rational::zero(), like), |acc, (l, pk)| acc.add(&l.mul(pk))))
    }

    /// `int_c^d d_N(x) dx` from `int P_k = (P_{k+1} - P_{k-1})/(2k+1)`.
    pub fn cumulative(&self, c: &Rational, d: &Rational) -> Result<S> {
        self.check_inside(c)?;
        self.check_inside(d)?;
        if c > d {
            return Err(Error::argument(format!("reversed range [{c}, {d}]")));
        }
        let like = &self.coefficients[0];
        let n = self.degree();
        let antiderivative = |y: &Rational| -> Vec<S> {
            let ys = S::from_rational(y, like);
            let p = legendre_values(&ys, n + 1);
            (0..=n)
                .map(|k| {
                    if k == 0 {
                        ys.clone()
                    } else {
                        p[k + 1].sub(&p[k - 1]).mul_rational(&Rational::new(BigInt::one(), BigInt::from(2 * k + 1)))
                    }
                })
                .collect()
        };
        let lo = antiderivative(&self.y_of(c));
        let hi = antiderivative(&self.y_of(d));
        let half_width = (&self.interval.1 - &self.interval.0) / int(2);
        let mut acc = S::from_rational(&Rational::zero(), like);
        for k in 0..=n {
            acc = acc.add(&self.coefficients[k].mul(&hi[k].sub(&lo[k])));
        }
        Ok(acc.mul_rational(&half_width))
    }

    /// `d_N(0)`, the density at the separability boundary.
    pub fn y_intercept(&self) -> Result<S> {
        self.density_at(&Rational::zero())
    }

    /// Double-precision density values at many points, evaluated in parallel.
    pub fn density_f64(&self, xs: &[f64]) -> Vec<f64> {
        let a = num_traits::ToPrimitive::to_f64(&self.interval.0).unwrap_or(f64::NAN);
        let b = num_traits::ToPrimitive::to_f64(&self.interval.1).unwrap_or(f64::NAN);
        let lambda: Vec<f64> = self.coefficients.iter().map(Scalar::to_f64).collect();
        xs.par_iter()
            .map(|&x| {
                let y = 2.0 * (x - a) / (b - a) - 1.0;
                legendre_values_f64(y, lambda.len() - 1)
                    .iter()
                    .zip(&lambda)
                    .map(|(p, l)| p * l)
                    .sum()
            })
            .collect()
    }
}
