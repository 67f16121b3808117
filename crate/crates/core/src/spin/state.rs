use alloc::vec;
use alloc::vec::Vec;

use super::{BasisState, SystemShape};
use crate::{domain, Error, Result};

/// Real amplitudes over the `2^mu` basis states of a register.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    shape: SystemShape,
    amplitudes: Vec<f64>,
}

impl StateVector {
    pub fn zero(shape: SystemShape) -> Result<Self> {
        shape.check_capacity()?;
        Ok(StateVector {
            shape,
            amplitudes: vec![0.0; shape.dimension()],
        })
    }

    pub fn basis(shape: SystemShape, state: BasisState) -> Result<Self> {
        let mut v = Self::zero(shape)?;
        let slot = v
            .amplitudes
            .get_mut(state.index())
            .ok_or_else(|| domain!("basis state {:#b} has more than mu = {} sites", state.0, shape.mu()))?;
        *slot = 1.0;
        Ok(v)
    }

    pub fn from_amplitudes(shape: SystemShape, amplitudes: Vec<f64>) -> Result<Self> {
        shape.check_capacity()?;
        if amplitudes.len() != shape.dimension() {
            return Err(domain!(
                "expected {} amplitudes for mu = {}, got {}",
                shape.dimension(),
                shape.mu(),
                amplitudes.len()
            ));
        }
        Ok(StateVector { shape, amplitudes })
    }

    pub(crate) fn zeroed_like(&self) -> Self {
        StateVector {
            shape: self.shape,
            amplitudes: vec![0.0; self.amplitudes.len()],
        }
    }

    pub fn shape(&self) -> SystemShape {
        self.shape
    }

    pub fn amplitudes(&self) -> &[f64] {
        &self.amplitudes
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [f64] {
        &mut self.amplitudes
    }

    pub fn amplitude(&self, state: BasisState) -> f64 {
        self.amplitudes.get(state.index()).copied().unwrap_or(0.0)
    }

    /// Non-zero amplitudes in basis order.
    pub fn nonzero(&self) -> impl Iterator<Item = (BasisState, f64)> + '_ {
        self.amplitudes
            .iter()
            .enumerate()
            .filter(|(_, a)| **a != 0.0)
            .map(|(i, a)| (BasisState(i as u32), *a))
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a * a).sum()
    }

    pub fn norm(&self) -> f64 {
        libm::sqrt(self.norm_sqr())
    }

    pub fn dot(&self, other: &StateVector) -> f64 {
        self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a * b).sum()
    }

    pub fn scale(&mut self, factor: f64) {
        self.amplitudes.iter_mut().for_each(|a| *a *= factor);
    }

    pub fn scaled(mut self, factor: f64) -> Self {
        self.scale(factor);
        self
    }

    /// `self += factor * other`.
    pub fn add_scaled(&mut self, factor: f64, other: &StateVector) {
        for (a, b) in self.amplitudes.iter_mut().zip(&other.amplitudes) {
            *a += factor * b;
        }
    }

    pub fn normalized(mut self) -> Result<Self> {
        let norm = self.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::Contract("cannot normalize a zero vector".into()));
        }
        self.scale(1.0 / norm);
        Ok(self)
    }

    pub fn max_abs_diff(&self, other: &StateVector) -> f64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Twice `m_tot` when every non-zero amplitude shares it.
    pub fn definite_twice_m(&self) -> Option<i64> {
        let mu = self.shape.mu();
        let mut found = None;
        for (b, _) in self.nonzero() {
            let m = b.twice_m(mu);
            match found {
                None => found = Some(m),
                Some(prev) if prev != m => return None,
                _ => {}
            }
        }
        found
    }

    /// The vector with sites `i` and `j` exchanged.
    pub fn swap_sites(&self, i: usize, j: usize) -> Self {
        let mut out = self.zeroed_like();
        for (b, a) in self.nonzero() {
            let bi = b.0 >> i & 1;
            let bj = b.0 >> j & 1;
            let swapped = if bi == bj { b.0 } else { b.0 ^ (1 << i) ^ (1 << j) };
            out.amplitudes[swapped as usize] = a;
        }
        out
    }
}
