//! Photon-count statistics: the exact distribution, its moments, the
//! unpaired-spin statistics, asymptotic regimes and imbalance sweeps.

mod approx;
mod distribution;
mod sweep;

pub use approx::{approx_distribution, approx_peak_location, fitted_decay_rate, AsymptoticCurve, Regime};
pub use distribution::{
    emission_distribution, emission_probability, emission_probability_f64, ln_emission_probability, mean_gamma,
    spinon_stats, variance_gamma, EmissionDistribution, SpinonStats,
};
pub use sweep::{extrapolate_thermo, sweep_alpha, sweep_point, whole_bottom_row, SweepPoint};
