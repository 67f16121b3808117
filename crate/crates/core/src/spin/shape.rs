use core::ops::{Range, RangeInclusive};

use num_rational::Ratio;

use crate::algebra::HalfInteger;
use crate::{domain, Error, Result};

/// Largest register a dense state vector is built for (`2^20` amplitudes).
pub const MAX_SITES: u32 = 20;

/// The `(M, N)` register: `M` initially-up spins on top, `N` initially-down
/// spins on the bottom.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SystemShape {
    m: u32,
    n: u32,
}

impl SystemShape {
    /// Fails only for the empty register `M = N = 0`.
    pub fn new(m: u32, n: u32) -> Result<Self> {
        if m == 0 && n == 0 {
            return Err(domain!("empty register: M + N must be at least 1"));
        }
        Ok(SystemShape { m, n })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn mu(&self) -> u32 {
        self.m + self.n
    }

    /// Imbalance `N / M`, undefined for `M = 0`.
    pub fn alpha(&self) -> Option<Ratio<u64>> {
        (self.m > 0).then(|| Ratio::new(u64::from(self.n), u64::from(self.m)))
    }

    /// Smallest possible photon count, `max(0, M - N)`.
    pub fn p_min(&self) -> u32 {
        self.m.saturating_sub(self.n)
    }

    pub fn photon_counts(&self) -> RangeInclusive<u32> {
        self.p_min()..=self.m
    }

    pub fn check_photon_count(&self, p: i64) -> Result<u32> {
        if p < i64::from(self.p_min()) || p > i64::from(self.m) {
            return Err(domain!(
                "photon count p = {p} outside [{}, {}] for M = {}, N = {}",
                self.p_min(),
                self.m,
                self.m,
                self.n
            ));
        }
        Ok(p as u32)
    }

    /// Total spin of the sector that emits `p` photons: `(N - M)/2 + p`.
    pub fn sector_spin(&self, p: u32) -> HalfInteger {
        HalfInteger::from_twice(i64::from(self.n) - i64::from(self.m) + 2 * i64::from(p))
    }

    /// `m_tot` of the initial product state, `(M - N)/2`.
    pub fn initial_m(&self) -> HalfInteger {
        HalfInteger::from_twice(i64::from(self.m) - i64::from(self.n))
    }

    /// Number of unpaired spins after `p` emissions, `N - M + 2p`.
    pub fn unpaired(&self, p: u32) -> i64 {
        i64::from(self.n) - i64::from(self.m) + 2 * i64::from(p)
    }

    pub fn top_sites(&self) -> Range<usize> {
        0..self.m as usize
    }

    pub fn bottom_sites(&self) -> Range<usize> {
        self.m as usize..self.mu() as usize
    }

    pub fn check_capacity(&self) -> Result<()> {
        if self.mu() > MAX_SITES {
            return Err(Error::Capacity {
                mu: self.mu(),
                limit: MAX_SITES,
            });
        }
        Ok(())
    }

    pub fn dimension(&self) -> usize {
        1usize << self.mu()
    }
}
