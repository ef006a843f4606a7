//! Fundamental constants, computed on demand and memoized per precision.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use super::ball::RealBall;
use super::elementary::{atan_inv_series, atanh_inv_series, ln_ball};
use super::float::Mag;
use super::GUARD_BITS;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Constant {
    Pi,
    Ln2,
    Sqrt2,
    EulerGamma,
}

type Memo = RwLock<HashMap<(Constant, u32), RealBall>>;

fn memo() -> &'static Memo {
    static MEMO: OnceLock<Memo> = OnceLock::new();
    MEMO.get_or_init(|| RwLock::new(HashMap::new()))
}

fn cached(c: Constant, prec: u32, compute: impl FnOnce(u32) -> RealBall) -> RealBall {
    if let Some(v) = memo().read().expect("constant memo poisoned").get(&(c, prec)) {
        return v.clone();
    }
    let v = compute(prec + GUARD_BITS).with_prec(prec);
    memo()
        .write()
        .expect("constant memo poisoned")
        .entry((c, prec))
        .or_insert(v)
        .clone()
}

/// π via Machin's formula 16 atan(1/5) - 4 atan(1/239).
pub fn pi(prec: u32) -> RealBall {
    cached(Constant::Pi, prec, |w| {
        let a = atan_inv_series(5, w).mul_i64(16);
        let b = atan_inv_series(239, w).mul_i64(4);
        &a - &b
    })
}

/// ln 2 = 2 atanh(1/3).
pub fn ln2(prec: u32) -> RealBall {
    cached(Constant::Ln2, prec, |w| atanh_inv_series(3, w).mul_2exp(1))
}

pub fn sqrt2(prec: u32) -> RealBall {
    cached(Constant::Sqrt2, prec, |w| RealBall::from_i64(2, w).sqrt())
}

/// Euler's constant by the Brent-McMillan formula `gamma = U/V` with
/// `U = sum (n^k/k!)^2 (H_k - ln n)` and `V = sum (n^k/k!)^2`; the
/// truncation error is below `pi e^{-4n}`.
pub fn euler_gamma(prec: u32) -> RealBall {
    cached(Constant::EulerGamma, prec, |w| {
        // 4n log2(e) >= w + 8
        let n = ((w as f64 + 8.0) / (4.0 * std::f64::consts::LOG2_E)).ceil() as i64 + 1;
        let wp = w + 32;
        let ln_n = ln_ball(&RealBall::from_i64(n, wp));
        let n2 = RealBall::from_i64(n * n, wp);
        let mut term = RealBall::one(wp); // (n^k/k!)^2
        let mut harmonic = RealBall::zero(wp);
        let mut u = -&ln_n;
        let mut v = RealBall::one(wp);
        let mut k: i64 = 0;
        loop {
            k += 1;
            term = &(&term * &n2) / &RealBall::from_i64(k * k, wp);
            harmonic = &harmonic + &RealBall::from_i64(k, wp).recip();
            let weighted = &term * &(&harmonic - &ln_n);
            u = &u + &weighted;
            v = &v + &term;
            if k > 3 * n && weighted.mag_upper().top() < -(wp as i64) - 16 + v.mid().top() {
                // subsequent ratios are below (1/3)^2, and H_k grows by < 1/k
                let tail = weighted.mag_upper().add(term.mag_upper()).mul_u64(2);
                u = u.add_error(tail);
                v = v.add_error(tail);
                break;
            }
        }
        let truncation = Mag::pow2(-((4.0 * n as f64 * std::f64::consts::LOG2_E).floor() as i64) + 2);
        (&u / &v).add_error(truncation)
    })
}
