use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{rational_to_f64, BigRational};
use crate::emission::EmissionDistribution;
use crate::spin::SystemShape;
use crate::stats::pearson_chi_square;
use crate::{domain, Result};

/// Shots drawn from one generator stream. Shard `k` uses stream `k` of the
/// generator seeded with the run seed, so results do not depend on how shards
/// are scheduled.
pub const SHARD_SIZE: u64 = 1 << 16;

/// Inverse-CDF sampler for the photon count of one shape.
#[derive(Debug, Clone)]
pub struct CollapseSampler {
    p_min: u32,
    probabilities: Vec<f64>,
    cdf: Vec<f64>,
}

impl CollapseSampler {
    pub fn new(shape: SystemShape) -> Result<Self> {
        if shape.m() == 0 {
            return Err(domain!("sampling needs M >= 1"));
        }
        let dist = EmissionDistribution::new(shape.m(), shape.n())?;
        let mut running = BigRational::zero();
        let mut probabilities = Vec::new();
        let mut cdf = Vec::new();
        for (_, prob) in dist.probabilities() {
            probabilities.push(rational_to_f64(&prob));
            running += prob;
            cdf.push(rational_to_f64(&running));
        }
        Ok(CollapseSampler {
            p_min: dist.p_min(),
            probabilities,
            cdf,
        })
    }

    pub fn p_min(&self) -> u32 {
        self.p_min
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    pub fn shard_count(shots: u64) -> u64 {
        shots.div_ceil(SHARD_SIZE)
    }

    /// Histogram (indexed from `p_min`) of the shots belonging to `shard`.
    pub fn sample_shard(&self, seed: u64, shard: u64, shots: u64) -> Vec<u64> {
        let start = shard * SHARD_SIZE;
        let count = shots.saturating_sub(start).min(SHARD_SIZE);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(shard);
        let mut counts = vec![0u64; self.cdf.len()];
        let last = self.cdf.len() - 1;
        for _ in 0..count {
            let u = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
            let k = self.cdf.partition_point(|&c| c <= u).min(last);
            counts[k] += 1;
        }
        counts
    }

    /// Assembles a report from a merged histogram.
    pub fn report(&self, shots: u64, seed: u64, counts: Vec<u64>) -> SampleReport {
        let chi = pearson_chi_square(&counts, &self.probabilities);
        SampleReport {
            shots,
            seed,
            p_min: self.p_min,
            counts,
            chi_square: chi.statistic,
            dof: chi.dof,
            p_value_bound: chi.p_value,
        }
    }
}

/// Photon-count histogram with a Pearson test against the exact law.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleReport {
    pub shots: u64,
    pub seed: u64,
    pub p_min: u32,
    /// `counts[k]` is the number of shots that emitted `p_min + k` photons.
    pub counts: Vec<u64>,
    pub chi_square: f64,
    pub dof: u32,
    /// Upper-tail probability of the statistic under the exact law.
    pub p_value_bound: f64,
}

impl SampleReport {
    pub fn histogram(&self) -> impl Iterator<Item = (u32, u64)> + '_ {
        self.counts.iter().enumerate().map(|(k, &c)| (self.p_min + k as u32, c))
    }
}

pub fn sample_collapse(shape: SystemShape, shots: u64, seed: u64) -> Result<SampleReport> {
    if shots == 0 {
        return Err(domain!("shots must be at least 1"));
    }
    let sampler = CollapseSampler::new(shape)?;
    let mut counts = vec![0u64; sampler.probabilities.len()];
    for shard in 0..CollapseSampler::shard_count(shots) {
        for (total, c) in counts.iter_mut().zip(sampler.sample_shard(seed, shard, shots)) {
            *total += c;
        }
    }
    Ok(sampler.report(shots, seed, counts))
}
