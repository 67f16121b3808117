use alloc::vec::Vec;

use crate::algebra::{rational_to_f64, BigRational};
use crate::emission::EmissionDistribution;
use crate::spin::{collapsed_state, spin_correlation, sz_expectation, StateVector, SystemShape};
use crate::{domain, Result};

/// One measurement record: photon count, its probability and the state left
/// behind.
#[derive(Debug, Clone)]
pub struct CollapseOutcome {
    pub p: u32,
    pub probability: f64,
    pub exact_probability: BigRational,
    pub state: StateVector,
}

/// The spin density matrix after tracing out the photons, kept as a weighted
/// set of mutually orthogonal pure states.
#[derive(Debug, Clone)]
pub struct CollapseEnsemble {
    pub shape: SystemShape,
    pub outcomes: Vec<CollapseOutcome>,
}

pub fn mixed_state_ensemble(shape: SystemShape) -> Result<CollapseEnsemble> {
    shape.check_capacity()?;
    let dist = EmissionDistribution::new(shape.m(), shape.n())?;
    let outcomes = dist
        .probabilities()
        .into_iter()
        .map(|(p, exact)| {
            Ok(CollapseOutcome {
                p,
                probability: rational_to_f64(&exact),
                exact_probability: exact,
                state: collapsed_state(shape, i64::from(p))?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CollapseEnsemble { shape, outcomes })
}

impl CollapseEnsemble {
    pub fn total_probability(&self) -> f64 {
        self.outcomes.iter().map(|o| o.probability).sum()
    }

    /// Largest `|<psi_p|psi_q>|` over distinct components.
    pub fn max_overlap(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, a) in self.outcomes.iter().enumerate() {
            for b in &self.outcomes[i + 1..] {
                worst = worst.max(a.state.dot(&b.state).abs());
            }
        }
        worst
    }

    /// `Tr(rho^2)`, from all pairwise overlaps rather than assuming
    /// orthogonality.
    pub fn purity(&self) -> f64 {
        let mut total = 0.0;
        for a in &self.outcomes {
            for b in &self.outcomes {
                let overlap = a.state.dot(&b.state);
                total += a.probability * b.probability * overlap * overlap;
            }
        }
        total
    }

    /// Unpaired-spin count `N - M + 2p` of each component.
    pub fn unpaired_counts(&self) -> Vec<i64> {
        self.outcomes.iter().map(|o| self.shape.unpaired(o.p)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Observable {
    SpinCorrelation(usize, usize),
    TotalSz,
    /// Number of unpaired spins.
    UnpairedCount,
}

/// `sum_p P(p) <psi_p| O |psi_p>`.
pub fn ensemble_observable(ensemble: &CollapseEnsemble, observable: Observable) -> Result<f64> {
    let mu = ensemble.shape.mu() as usize;
    if let Observable::SpinCorrelation(i, j) = observable {
        if i >= mu || j >= mu {
            return Err(domain!("site indices ({i}, {j}) outside 0..{mu}"));
        }
    }
    let mut total = 0.0;
    for o in &ensemble.outcomes {
        let value = match observable {
            Observable::SpinCorrelation(i, j) => spin_correlation(&o.state, i, j)?,
            Observable::TotalSz => sz_expectation(&o.state),
            Observable::UnpairedCount => ensemble.shape.unpaired(o.p) as f64,
        };
        total += o.probability * value;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ensemble(m: u32, n: u32) -> CollapseEnsemble {
        mixed_state_ensemble(SystemShape::new(m, n).unwrap()).unwrap()
    }

    #[test]
    fn two_site_decomposition() {
        let e = ensemble(1, 1);
        assert_eq!(e.outcomes.len(), 2);
        let h = core::f64::consts::FRAC_1_SQRT_2;
        assert_eq!(e.outcomes[0].probability, 0.5);
        assert!((e.outcomes[0].state.amplitudes()[1] - h).abs() < 1e-12);
        assert!((e.outcomes[0].state.amplitudes()[2] + h).abs() < 1e-12);
        assert!((e.outcomes[1].state.amplitudes()[0] - 1.0).abs() < 1e-12);
        assert!((ensemble_observable(&e, Observable::TotalSz).unwrap() + 0.5).abs() < 1e-12);
        assert!((ensemble_observable(&e, Observable::SpinCorrelation(0, 1)).unwrap() + 0.25).abs() < 1e-12);
        assert!(ensemble_observable(&e, Observable::SpinCorrelation(0, 2)).is_err());
    }

    #[test]
    fn ladder_components() {
        let e = ensemble(2, 2);
        let probs: Vec<f64> = e.outcomes.iter().map(|o| o.probability).collect();
        for (got, want) in probs.iter().zip([1.0 / 3.0, 0.5, 1.0 / 6.0]) {
            assert!((got - want).abs() < 1e-15);
        }
        assert_eq!(e.unpaired_counts(), [0, 2, 4]);
        assert!((ensemble_observable(&e, Observable::UnpairedCount).unwrap() - 5.0 / 3.0).abs() < 1e-12);
        assert!(e.max_overlap() < 1e-12);
        let want: f64 = probs.iter().map(|p| p * p).sum();
        assert!((e.purity() - want).abs() < 1e-12);
        assert!(e.purity() < 1.0);
    }

    #[test]
    fn dark_register_is_pure() {
        let e = ensemble(0, 3);
        assert_eq!(e.outcomes.len(), 1);
        assert_eq!(e.outcomes[0].probability, 1.0);
        assert_eq!(e.outcomes[0].state.amplitudes()[0], 1.0);
        assert!((e.purity() - 1.0).abs() < 1e-15);
    }
}
