use alloc::vec::Vec;

use num_rational::Ratio;

use super::EmissionDistribution;
use crate::algebra::rational_to_f64;
use crate::{domain, Result};

/// Moments at one imbalance `alpha = N/M`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPoint {
    pub alpha: Ratio<u64>,
    pub m: u32,
    pub n: u32,
    pub gamma_bar: f64,
    pub gamma_var: f64,
    pub q_bar: f64,
    pub q_var: f64,
    pub mean_var_ratio: f64,
}

/// `N = alpha * M`, when it is a whole number.
pub fn whole_bottom_row(m: u32, alpha: Ratio<u64>) -> Result<u32> {
    let scaled = alpha * Ratio::from_integer(u64::from(m));
    if !scaled.is_integer() {
        return Err(domain!("alpha = {alpha} gives N = alpha * M = {scaled}, not a whole number, for M = {m}"));
    }
    u32::try_from(scaled.to_integer()).map_err(|_| domain!("alpha = {alpha} gives N too large for M = {m}"))
}

pub fn sweep_point(m: u32, alpha: Ratio<u64>) -> Result<SweepPoint> {
    if m == 0 {
        return Err(domain!("M must be at least 1"));
    }
    let n = whole_bottom_row(m, alpha)?;
    let dist = EmissionDistribution::new(m, n)?;
    let spinons = dist.spinon_stats();
    Ok(SweepPoint {
        alpha,
        m,
        n,
        gamma_bar: rational_to_f64(&dist.mean_gamma_exact()?),
        gamma_var: rational_to_f64(&dist.variance_gamma_exact()?),
        q_bar: spinons.q_bar,
        q_var: spinons.q_var,
        mean_var_ratio: spinons.ratio,
    })
}

/// One point per imbalance, in input order. Every `alpha * M` must be whole.
pub fn sweep_alpha(m: u32, alphas: &[Ratio<u64>]) -> Result<Vec<SweepPoint>> {
    alphas.iter().map(|&a| sweep_point(m, a)).collect()
}

/// Large-`M` limit of the mean emission fraction: `max(0, 1 - alpha)`.
pub fn extrapolate_thermo(alpha: f64) -> Result<f64> {
    if alpha.is_nan() || alpha < 0.0 {
        return Err(domain!("alpha = {alpha} must be non-negative"));
    }
    Ok(if alpha >= 1.0 { 0.0 } else { 1.0 - alpha })
}
