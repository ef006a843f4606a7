use super::ball::RealBall;
use super::float::Mag;
use super::GUARD_BITS;
use crate::error::{Error, Result};

/// Arithmetic-geometric mean of two positive balls.
///
/// After the first step the geometric iterate is a lower bound and the
/// arithmetic iterate an upper bound for the limit, so the hull of the final
/// pair encloses it.
pub fn agm(a: &RealBall, b: &RealBall, precision: u32) -> Result<RealBall> {
    if !a.is_positive() || !b.is_positive() {
        return Err(Error::domain("agm requires positive arguments"));
    }
    let w = precision + GUARD_BITS;
    let mut x = a.with_prec(w);
    let mut y = b.with_prec(w);
    let mut last_gap = Mag::inf();
    for _ in 0..200 {
        let gap = (&x - &y).mag_upper();
        let scale = x.mag_upper().top().max(0);
        if gap.top() < scale - precision as i64 - 2 || gap >= last_gap {
            break;
        }
        last_gap = gap;
        let nx = (&x + &y).mul_2exp(-1);
        let ny = (&x * &y).sqrt();
        x = nx;
        y = ny;
    }
    Ok(x.hull(&y).with_prec(precision))
}
