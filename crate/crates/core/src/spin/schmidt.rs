use alloc::vec;
use alloc::vec::Vec;

use super::StateVector;
use crate::algebra::{binomial_exact, rational_to_f64, BigRational};
use crate::{domain, Error, Result, STATE_TOLERANCE};

/// Coefficients `c_lambda` of a state over products of fully symmetric row
/// states: top row with `lambda` downs, bottom row with `lambda - p` ups.
#[derive(Debug, Clone, PartialEq)]
pub struct RowSchmidt {
    pub p: i64,
    pub coefficients: Vec<(i64, f64)>,
}

impl RowSchmidt {
    pub fn get(&self, lambda: i64) -> Option<f64> {
        self.coefficients.iter().find(|(l, _)| *l == lambda).map(|(_, c)| *c)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coefficients.iter().map(|(_, c)| c * c).sum()
    }
}

/// Row-wise Schmidt decomposition of an in-row permutation symmetric state
/// with definite `m_tot`.
pub fn row_schmidt(state: &StateVector) -> Result<RowSchmidt> {
    let shape = state.shape();
    let (m, n) = (shape.m(), shape.n());
    let twice_m = state
        .definite_twice_m()
        .ok_or_else(|| domain!("row decomposition needs a non-zero state with definite m_tot"))?;

    for row in [shape.top_sites(), shape.bottom_sites()] {
        for i in row.start..row.end.saturating_sub(1) {
            let diff = state.swap_sites(i, i + 1).max_abs_diff(state);
            if diff > STATE_TOLERANCE {
                return Err(Error::Contract(alloc::format!(
                    "state is not symmetric under exchanging sites {i} and {} (deviation {diff:e})",
                    i + 1
                )));
            }
        }
    }

    let ups = (twice_m + i64::from(shape.mu())) / 2;
    let p = i64::from(m) - ups;
    let lo = p.max(0);
    let hi = i64::from(m).min(i64::from(n) + p);
    let mut sums = vec![0.0; (hi - lo + 1).max(0) as usize];
    let (top, bottom) = (shape.top_sites(), shape.bottom_sites());
    for (b, a) in state.nonzero() {
        let lambda = i64::from(m - b.ups_in(top.start, top.end));
        debug_assert_eq!(i64::from(b.ups_in(bottom.start, bottom.end)), lambda - p);
        sums[(lambda - lo) as usize] += a;
    }
    // each symmetric row state spreads evenly over C(len, k) configurations;
    // the summed amplitude over them is sqrt(C_top * C_bottom) * c_lambda
    let coefficients = (lo..=hi)
        .map(|lambda| {
            let configs = binomial_exact(u64::from(m), lambda) * binomial_exact(u64::from(n), lambda - p);
            let count = rational_to_f64(&BigRational::from_integer(configs.into()));
            (lambda, sums[(lambda - lo) as usize] / libm::sqrt(count))
        })
        .collect();
    Ok(RowSchmidt { p, coefficients })
}
