use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::numerics::rational::int;
use crate::numerics::Rational;

/// `B_{2k}` (with `B_0 = 1`), memoized.
pub fn bernoulli_even(k: usize) -> Rational {
    static TABLE: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    let table = TABLE.get_or_init(|| Mutex::new(vec![Rational::one()]));
    let mut even = table.lock().expect("bernoulli table poisoned");
    while even.len() <= k {
        let m = 2 * even.len();
        let b = next_even(&even, m);
        even.push(b);
    }
    even[k].clone()
}

/// `B_m` for even `m` from `sum_{j=0}^{m} C(m+1, j) B_j = 0`, using
/// `B_1 = -1/2` and vanishing odd terms beyond it.
fn next_even(even: &[Rational], m: usize) -> Rational {
    let mut binom = BigInt::one(); // C(m+1, j)
    let mut acc = Rational::zero();
    for j in 0..m {
        if j == 1 {
            acc += Rational::new(-&binom, BigInt::from(2));
        } else if j % 2 == 0 {
            acc += &even[j / 2] * Rational::from_integer(binom.clone());
        }
        binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
    }
    -acc / int(m as i64 + 1)
}
