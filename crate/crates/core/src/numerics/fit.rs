use super::ball::RealBall;
use super::Rational;
use crate::error::{Error, Result};

/// Least-squares line through the origin, `log_p ~ slope * alpha`.
#[derive(Clone, Debug)]
pub struct LogSlopeFit {
    pub slope: RealBall,
    /// `log_p - slope * alpha`, in input order.
    pub residuals: Vec<RealBall>,
}

pub fn fit_log_slope(points: &[(Rational, RealBall)]) -> Result<LogSlopeFit> {
    if points.len() < 2 {
        return Err(Error::argument("slope fit needs at least two points"));
    }
    let mut alphas: Vec<&Rational> = points.iter().map(|(a, _)| a).collect();
    alphas.sort();
    if alphas.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::argument("slope fit needs distinct alpha values"));
    }
    let prec = points.iter().map(|(_, y)| y.prec()).max().unwrap_or(64);
    let sxx: Rational = points.iter().map(|(a, _)| a * a).sum();
    let mut sxy = RealBall::zero(prec);
    for (a, y) in points {
        sxy = &sxy + &y.mul_rational(a);
    }
    let slope = &sxy / &RealBall::from_rational(&sxx, prec);
    let residuals = points
        .iter()
        .map(|(a, y)| y - &slope.mul_rational(a))
        .collect();
    Ok(LogSlopeFit { slope, residuals })
}
