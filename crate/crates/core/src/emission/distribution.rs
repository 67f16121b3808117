use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_rational::{BigRational, Ratio};
use num_traits::{One, ToPrimitive, Zero};

use crate::algebra::{ln_factorial, rational_to_f64, FactorialCache};
use crate::{domain, Result};

fn check_window(m: u32, n: u32, p: i64) -> Result<()> {
    let p_min = (i64::from(m) - i64::from(n)).max(0);
    if p < p_min || p > i64::from(m) {
        return Err(domain!("photon count p = {p} outside [{p_min}, {m}] for M = {m}, N = {n}"));
    }
    Ok(())
}

/// `P_{N,M}(p) = M! N! (1 + 2p + N - M) / ((M - p)! (1 + N + p)!)`, exactly.
pub fn emission_probability(m: u32, n: u32, p: i64) -> Result<BigRational> {
    check_window(m, n, p)?;
    let (m, n, p) = (u64::from(m), u64::from(n), p as u64);
    let mut f = FactorialCache::new();
    let numerator = BigInt::from(f.get(m).clone() * f.get(n) * (1 + 2 * p + n - m));
    let denominator = BigInt::from(f.get(m - p).clone() * f.get(1 + n + p));
    Ok(BigRational::new(numerator, denominator))
}

/// `ln P_{N,M}(p)` from log-factorials; usable at any size.
pub fn ln_emission_probability(m: u32, n: u32, p: i64) -> Result<f64> {
    check_window(m, n, p)?;
    let (m, n, p) = (u64::from(m), u64::from(n), p as u64);
    Ok(ln_factorial(m) + ln_factorial(n) + libm::log((1 + 2 * p + n - m) as f64)
        - ln_factorial(m - p)
        - ln_factorial(1 + n + p))
}

pub fn emission_probability_f64(m: u32, n: u32, p: i64) -> Result<f64> {
    ln_emission_probability(m, n, p).map(libm::exp)
}

/// Exact photon-count distribution for `p = p_min..=M`.
///
/// Stored as integer weights over the common denominator
/// `(N + M + 1)! / N!`; weight `p` is
/// `(1 + 2p + N - M) * M!/(M - p)! * (N + M + 1)!/(N + p + 1)!`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmissionDistribution {
    m: u32,
    n: u32,
    weights: Vec<BigUint>,
    denominator: BigUint,
}

pub fn emission_distribution(m: u32, n: u32) -> Result<EmissionDistribution> {
    EmissionDistribution::new(m, n)
}

impl EmissionDistribution {
    pub fn new(m: u32, n: u32) -> Result<Self> {
        if m == 0 && n == 0 {
            return Err(domain!("empty register: M + N must be at least 1"));
        }
        let (mm, nn) = (u64::from(m), u64::from(n));
        let p_min = m.saturating_sub(n);
        let len = (m - p_min + 1) as usize;

        // falling(M, p) for p = p_min..=M, ascending
        let mut top = BigUint::one();
        for k in 0..u64::from(p_min) {
            top *= mm - k;
        }
        let mut falling_top = Vec::with_capacity(len);
        for p in u64::from(p_min)..=mm {
            falling_top.push(top.clone());
            top *= mm - p;
        }
        // (N + M + 1)! / (N + p + 1)! for p = M down to p_min
        let mut tail = BigUint::one();
        let mut falling_tail = Vec::with_capacity(len);
        for p in (u64::from(p_min)..=mm).rev() {
            falling_tail.push(tail.clone());
            tail *= nn + p + 1;
        }
        falling_tail.reverse();

        let weights = (u64::from(p_min)..=mm)
            .zip(falling_top.iter().zip(&falling_tail))
            .map(|(p, (a, b))| a * b * (1 + 2 * p + nn - mm))
            .collect();
        let denominator = (nn + 1..=nn + mm + 1).fold(BigUint::one(), |acc, k| acc * k);
        Ok(EmissionDistribution {
            m,
            n,
            weights,
            denominator,
        })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn p_min(&self) -> u32 {
        self.m.saturating_sub(self.n)
    }

    pub fn photon_counts(&self) -> impl Iterator<Item = u32> {
        self.p_min()..=self.m
    }

    /// Emission fraction `p / M`; undefined for `M = 0`.
    pub fn gamma(&self, p: u32) -> Option<Ratio<u64>> {
        (self.m > 0).then(|| Ratio::new(u64::from(p), u64::from(self.m)))
    }

    /// Unreduced numerator over [`Self::denominator`].
    pub fn weight(&self, p: u32) -> Option<&BigUint> {
        p.checked_sub(self.p_min()).and_then(|i| self.weights.get(i as usize))
    }

    pub fn denominator(&self) -> &BigUint {
        &self.denominator
    }

    pub fn probability(&self, p: u32) -> Option<BigRational> {
        self.weight(p)
            .map(|w| BigRational::new(BigInt::from(w.clone()), BigInt::from(self.denominator.clone())))
    }

    pub fn probabilities(&self) -> Vec<(u32, BigRational)> {
        self.photon_counts()
            .map(|p| (p, self.probability(p).expect("p in window")))
            .collect()
    }

    pub fn probabilities_f64(&self) -> Vec<(u32, f64)> {
        self.probabilities()
            .into_iter()
            .map(|(p, q)| (p, rational_to_f64(&q)))
            .collect()
    }

    pub fn total(&self) -> BigRational {
        let sum: BigUint = self.weights.iter().sum();
        BigRational::new(sum.into(), self.denominator.clone().into())
    }

    /// The weights sum to the denominator exactly.
    pub fn is_normalized(&self) -> bool {
        self.weights.iter().sum::<BigUint>() == self.denominator
    }

    /// Most probable photon count (lowest on ties).
    pub fn mode(&self) -> u32 {
        let mut best = 0;
        for (i, w) in self.weights.iter().enumerate() {
            if w > &self.weights[best] {
                best = i;
            }
        }
        self.p_min() + best as u32
    }

    fn raw_moment(&self, power: u32) -> BigRational {
        let sum: BigUint = self
            .photon_counts()
            .zip(&self.weights)
            .map(|(p, w)| w * BigUint::from(p).pow(power))
            .sum();
        BigRational::new(sum.into(), self.denominator.clone().into())
    }

    pub fn mean_p(&self) -> BigRational {
        self.raw_moment(1)
    }

    pub fn variance_p(&self) -> BigRational {
        let mean = self.mean_p();
        self.raw_moment(2) - &mean * &mean
    }

    /// Exact mean of `gamma = p / M`.
    pub fn mean_gamma_exact(&self) -> Result<BigRational> {
        let m = self.m_as_rational()?;
        Ok(self.mean_p() / m)
    }

    pub fn variance_gamma_exact(&self) -> Result<BigRational> {
        let m = self.m_as_rational()?;
        Ok(self.variance_p() / (&m * &m))
    }

    fn m_as_rational(&self) -> Result<BigRational> {
        if self.m == 0 {
            return Err(domain!("gamma = p/M is undefined for M = 0"));
        }
        Ok(BigRational::from_integer(BigInt::from(self.m)))
    }

    /// Mean and variance of the unpaired-spin count `q = N - M + 2p`.
    pub fn spinon_stats(&self) -> SpinonStats {
        let shift = BigRational::from_integer(BigInt::from(i64::from(self.n) - i64::from(self.m)));
        let two = BigRational::from_integer(BigInt::from(2));
        let q_bar = shift + &two * self.mean_p();
        let q_var = &two * &two * self.variance_p();
        let ratio = if q_var.is_zero() {
            f64::INFINITY
        } else {
            rational_to_f64(&(&q_bar / &q_var))
        };
        SpinonStats {
            q_bar: q_bar.to_f64().unwrap_or(f64::NAN),
            q_var: q_var.to_f64().unwrap_or(f64::NAN),
            ratio,
        }
    }
}

/// Unpaired-spin statistics; `ratio = q_bar / q_var`, `+inf` when the count
/// is deterministic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinonStats {
    pub q_bar: f64,
    pub q_var: f64,
    pub ratio: f64,
}

fn require_top_row(m: u32) -> Result<()> {
    if m == 0 {
        return Err(domain!("M must be at least 1"));
    }
    Ok(())
}

pub fn mean_gamma(m: u32, n: u32) -> Result<f64> {
    require_top_row(m)?;
    Ok(rational_to_f64(&EmissionDistribution::new(m, n)?.mean_gamma_exact()?))
}

pub fn variance_gamma(m: u32, n: u32) -> Result<f64> {
    require_top_row(m)?;
    Ok(rational_to_f64(&EmissionDistribution::new(m, n)?.variance_gamma_exact()?))
}

pub fn spinon_stats(m: u32, n: u32) -> Result<SpinonStats> {
    require_top_row(m)?;
    Ok(EmissionDistribution::new(m, n)?.spinon_stats())
}
