//! Bernoulli numbers with the `B_1 = +1/2` convention used by the cumulant
//! formulas (all other values match the classical sequence; odd indices
//! beyond 1 are zero).

use std::sync::Mutex;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

static CACHE: Mutex<Vec<BigRational>> = Mutex::new(Vec::new());

/// Returns the Bernoulli number `B_d` (with `B_1 = +1/2`).
pub fn bernoulli(d: usize) -> BigRational {
    if d == 1 {
        return BigRational::new(BigInt::one(), BigInt::from(2));
    }
    let mut cache = CACHE.lock().expect("bernoulli cache poisoned");
    if cache.is_empty() {
        cache.push(BigRational::one());
    }
    // Recurrence for the B_1 = -1/2 convention:
    //   B_m = -1/(m+1) * sum_{j=0}^{m-1} C(m+1, j) B_j
    while cache.len() <= d {
        let m = cache.len();
        let mut acc = BigRational::zero();
        let mut binom = BigInt::one(); // C(m+1, 0)
        for (j, bj) in cache.iter().enumerate() {
            acc += BigRational::from(binom.clone()) * bj;
            binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        cache.push(-acc / BigRational::from(BigInt::from(m + 1)));
    }
    cache[d].clone()
}
