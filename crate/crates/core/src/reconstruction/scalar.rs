use crate::numerics::{Rational, RealBall};

/// Arithmetic shared by exact rationals and balls, so the reconstruction
/// recurrences run unchanged in either.
pub trait Scalar: Clone + Send + Sync {
    fn from_rational(r: &Rational, like: &Self) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn mul_rational(&self, r: &Rational) -> Self;
    fn to_f64(&self) -> f64;
}

impl Scalar for Rational {
    fn from_rational(r: &Rational, _: &Self) -> Self {
        r.clone()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn mul_rational(&self, r: &Rational) -> Self {
        self * r
    }
    fn to_f64(&self) -> f64 {
        num_traits::ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

impl Scalar for RealBall {
    fn from_rational(r: &Rational, like: &Self) -> Self {
        RealBall::from_rational(r, like.prec())
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn mul_rational(&self, r: &Rational) -> Self {
        RealBall::mul_rational(self, r)
    }
    fn to_f64(&self) -> f64 {
        RealBall::to_f64(self)
    }
}
