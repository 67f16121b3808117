//! Large-`M` forms of the emission distribution near balanced imbalance.
//!
//! With `alpha = N/M` and `gamma = p/M`:
//!
//! * `alpha > 1`: `(alpha - 1) exp(-M (alpha - 1) gamma)`
//! * `alpha = 1`: `2 gamma / (1 + gamma) exp(-M gamma^2)`, peaked near `sqrt(1/(2M))`
//! * `alpha < 1`: zero below `gamma_c = 1 - alpha`, then
//!   `gamma_c exp(-2 M gamma_c^2) exp(-3 M gamma_c (gamma - gamma_c))`
//!
//! These are leading-order in `alpha - 1`; the `alpha < 1` prefactor in
//! particular is not normalized and is only useful for its shape.

use alloc::vec::Vec;

use num_rational::Ratio;

use super::ln_emission_probability;
use crate::stats::least_squares_slope;
use crate::{domain, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    AlphaGt1,
    AlphaEq1,
    AlphaLt1,
}

impl Regime {
    pub fn for_alpha(alpha: f64) -> Regime {
        if alpha > 1.0 {
            Regime::AlphaGt1
        } else if alpha < 1.0 {
            Regime::AlphaLt1
        } else {
            Regime::AlphaEq1
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Regime::AlphaGt1 => "alpha_gt_1",
            Regime::AlphaEq1 => "alpha_eq_1",
            Regime::AlphaLt1 => "alpha_lt_1",
        }
    }
}

pub fn approx_distribution(regime: Regime, m: u32, alpha: f64, gamma: f64) -> Result<f64> {
    if Regime::for_alpha(alpha) != regime {
        return Err(domain!("regime {} does not match alpha = {alpha}", regime.name()));
    }
    if !(0.0..=1.0).contains(&gamma) {
        return Err(domain!("gamma = {gamma} outside [0, 1]"));
    }
    let m = f64::from(m);
    Ok(match regime {
        Regime::AlphaGt1 => (alpha - 1.0) * libm::exp(-m * (alpha - 1.0) * gamma),
        Regime::AlphaEq1 => 2.0 * gamma / (1.0 + gamma) * libm::exp(-m * gamma * gamma),
        Regime::AlphaLt1 => {
            let gamma_c = 1.0 - alpha;
            if gamma < gamma_c {
                0.0
            } else {
                gamma_c * libm::exp(-2.0 * m * gamma_c * gamma_c) * libm::exp(-3.0 * m * gamma_c * (gamma - gamma_c))
            }
        }
    })
}

/// Peak of the balanced-case form, `sqrt(1/(2M))`.
pub fn approx_peak_location(m: u32) -> Result<f64> {
    if m == 0 {
        return Err(domain!("M must be at least 1"));
    }
    Ok(libm::sqrt(1.0 / (2.0 * f64::from(m))))
}

/// An asymptotic form bound to a system size and imbalance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticCurve {
    pub regime: Regime,
    pub m: u32,
    pub alpha: Ratio<u64>,
}

impl AsymptoticCurve {
    pub fn new(m: u32, alpha: Ratio<u64>) -> Self {
        AsymptoticCurve {
            regime: Regime::for_alpha(ratio_to_f64(alpha)),
            m,
            alpha,
        }
    }

    /// Threshold `1 - alpha`, only meaningful below balance.
    pub fn gamma_c(&self) -> Option<f64> {
        (self.regime == Regime::AlphaLt1).then(|| 1.0 - ratio_to_f64(self.alpha))
    }

    pub fn evaluate(&self, gamma: f64) -> Result<f64> {
        approx_distribution(self.regime, self.m, ratio_to_f64(self.alpha), gamma)
    }
}

fn ratio_to_f64(r: Ratio<u64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// `-d ln P / d gamma` fitted by least squares over the first `points` photon
/// counts of the exact distribution, starting at `p_min`.
pub fn fitted_decay_rate(m: u32, n: u32, points: usize) -> Result<f64> {
    let p_min = m.saturating_sub(n);
    let available = (m - p_min + 1) as usize;
    if points < 2 || points > available {
        return Err(domain!("need 2..={available} grid points, got {points}"));
    }
    let mut gammas = Vec::with_capacity(points);
    let mut logs = Vec::with_capacity(points);
    for p in p_min..p_min + points as u32 {
        gammas.push(f64::from(p) / f64::from(m));
        logs.push(ln_emission_probability(m, n, i64::from(p))?);
    }
    Ok(-least_squares_slope(&gammas, &logs))
}
