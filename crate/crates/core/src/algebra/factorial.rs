use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::One;

/// `n!` for `n <= 20`, the largest factorial that fits in a `u64`.
const SMALL_FACTORIALS: [u64; 21] = {
    let mut table = [1u64; 21];
    let mut i = 1;
    while i < 21 {
        table[i] = table[i - 1] * i as u64;
        i += 1;
    }
    table
};

pub fn factorial(n: u64) -> BigUint {
    if n <= 20 {
        return BigUint::from(SMALL_FACTORIALS[n as usize]);
    }
    (21..=n).fold(BigUint::from(SMALL_FACTORIALS[20]), |acc, k| acc * k)
}

/// Memoized big-integer factorials up to the largest argument requested.
///
/// Not shared: each worker owns its own cache.
#[derive(Debug, Clone)]
pub struct FactorialCache {
    table: Vec<BigUint>,
}

impl Default for FactorialCache {
    fn default() -> Self {
        Self::new()
    }
}

impl FactorialCache {
    pub fn new() -> Self {
        FactorialCache {
            table: vec![BigUint::one()],
        }
    }

    pub fn get(&mut self, n: u64) -> &BigUint {
        let n = n as usize;
        while self.table.len() <= n {
            let k = self.table.len();
            let next = &self.table[k - 1] * BigUint::from(k);
            self.table.push(next);
        }
        &self.table[n]
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }
}

/// Binomial coefficient `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binomial_exact(n: u64, k: i64) -> BigUint {
    if k < 0 || k as u64 > n {
        return BigUint::ZERO;
    }
    let k = (k as u64).min(n - k as u64);
    // each prefix product C(n-k+i, i) is an integer, so the division is exact
    let mut acc = BigUint::one();
    for i in 1..=k {
        acc *= n - k + i;
        acc /= i;
    }
    acc
}

/// `ln(n!)`: exact table below 21, Stirling series with four corrections above.
pub fn ln_factorial(n: u64) -> f64 {
    if n <= 20 {
        return libm::log(SMALL_FACTORIALS[n as usize] as f64);
    }
    let x = n as f64;
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let series = inv
        * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 / 1680.0)));
    x * libm::log(x) - x + 0.5 * libm::log(2.0 * core::f64::consts::PI * x) + series
}
