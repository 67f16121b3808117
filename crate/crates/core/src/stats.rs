//! Small statistics helpers: least-squares slopes and the Pearson chi-square
//! test with its upper-tail probability.

use alloc::vec::Vec;

/// Slope of the ordinary least-squares line through `(x, y)`.
pub fn least_squares_slope(x: &[f64], y: &[f64]) -> f64 {
    assert_eq!(x.len(), y.len());
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}

/// Slope of `ln y` against `ln x`.
pub fn log_log_slope(x: &[f64], y: &[f64]) -> f64 {
    let lx: Vec<f64> = x.iter().map(|v| libm::log(*v)).collect();
    let ly: Vec<f64> = y.iter().map(|v| libm::log(*v)).collect();
    least_squares_slope(&lx, &ly)
}

/// Pearson statistic after merging bins.
#[derive(Debug, Clone, PartialEq)]
pub struct ChiSquare {
    pub statistic: f64,
    pub dof: u32,
    /// `P(X >= statistic)` for `X ~ chi^2(dof)`; 1 when `dof = 0`.
    pub p_value: f64,
}

/// Minimum expected count per bin.
pub const MIN_EXPECTED: f64 = 5.0;

/// Pearson chi-square of `counts` against `probs`. Bins with expected count
/// below [`MIN_EXPECTED`] are merged into their neighbour toward the mode.
pub fn pearson_chi_square(counts: &[u64], probs: &[f64]) -> ChiSquare {
    assert_eq!(counts.len(), probs.len());
    let shots: u64 = counts.iter().sum();
    let mut bins: Vec<(f64, f64)> = counts
        .iter()
        .zip(probs)
        .map(|(c, p)| (*c as f64, p * shots as f64))
        .collect();
    if bins.is_empty() {
        return ChiSquare {
            statistic: 0.0,
            dof: 0,
            p_value: 1.0,
        };
    }
    loop {
        let mode = bins
            .iter()
            .enumerate()
            .fold(0, |best, (i, b)| if b.1 > bins[best].1 { i } else { best });
        let Some(i) = (0..bins.len()).find(|&i| bins[i].1 < MIN_EXPECTED && bins.len() > 1) else {
            break;
        };
        let j = if i < mode { i + 1 } else { i - 1 };
        let (c, e) = bins.remove(i);
        let j = if j > i { j - 1 } else { j };
        bins[j].0 += c;
        bins[j].1 += e;
    }
    let statistic = bins
        .iter()
        .filter(|(_, e)| *e > 0.0)
        .map(|(o, e)| (o - e) * (o - e) / e)
        .sum();
    let dof = bins.len().saturating_sub(1) as u32;
    let p_value = if dof == 0 {
        1.0
    } else {
        upper_regularized_gamma(f64::from(dof) / 2.0, statistic / 2.0)
    };
    ChiSquare {
        statistic,
        dof,
        p_value,
    }
}

/// `Q(a, x) = Gamma(a, x) / Gamma(a)`, by series below `a + 1` and Lentz's
/// continued fraction above.
pub fn upper_regularized_gamma(a: f64, x: f64) -> f64 {
    if x <= 0.0 {
        return 1.0;
    }
    let log_prefix = a * libm::log(x) - x - libm::lgamma(a);
    if x < a + 1.0 {
        let mut term = 1.0 / a;
        let mut sum = term;
        let mut k = a;
        for _ in 0..10_000 {
            k += 1.0;
            term *= x / k;
            sum += term;
            if term.abs() < sum.abs() * 1e-16 {
                break;
            }
        }
        (1.0 - sum * libm::exp(log_prefix)).clamp(0.0, 1.0)
    } else {
        const TINY: f64 = 1e-300;
        let mut b = x + 1.0 - a;
        let mut c = 1.0 / TINY;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..10_000 {
            let an = -(i as f64) * (i as f64 - a);
            b += 2.0;
            d = an * d + b;
            if d.abs() < TINY {
                d = TINY;
            }
            c = b + an / c;
            if c.abs() < TINY {
                c = TINY;
            }
            d = 1.0 / d;
            let delta = d * c;
            h *= delta;
            if (delta - 1.0).abs() < 1e-16 {
                break;
            }
        }
        (libm::exp(log_prefix) * h).clamp(0.0, 1.0)
    }
}

/// Upper `1 - confidence` critical value of `chi^2(dof)`, by bisection.
pub fn chi_square_critical(dof: u32, confidence: f64) -> f64 {
    let target = 1.0 - confidence;
    let (mut lo, mut hi) = (0.0, 10.0 * f64::from(dof.max(1)) + 100.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if upper_regularized_gamma(f64::from(dof) / 2.0, mid / 2.0) > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
