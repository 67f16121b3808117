use super::StateVector;
use crate::{domain, Result};

/// `<S_i . S_j>` for a normalized state.
pub fn spin_correlation(state: &StateVector, i: usize, j: usize) -> Result<f64> {
    let mu = state.shape().mu() as usize;
    if i == j {
        return Err(domain!("spin correlation needs distinct sites, got i = j = {i}"));
    }
    if i >= mu || j >= mu {
        return Err(domain!("sites ({i}, {j}) outside 0..{mu}"));
    }
    let amps = state.amplitudes();
    let mut total = 0.0;
    for (b, a) in state.nonzero() {
        let (ui, uj) = (b.is_up(i), b.is_up(j));
        if ui == uj {
            total += 0.25 * a * a;
        } else {
            total -= 0.25 * a * a;
            // (S+_i S-_j + S-_i S+_j) / 2 swaps the antiparallel pair
            let swapped = b.0 ^ (1 << i) ^ (1 << j);
            total += 0.5 * a * amps[swapped as usize];
        }
    }
    Ok(total)
}

/// Outcome of comparing two real states up to a global sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhaseComparison {
    EqualSameSign,
    EqualOppositeSign,
    NotEqual,
}

/// Compares `a` with `b` and with `-b`; equal means the largest amplitude
/// deviation is at most `tol`.
pub fn states_equal_up_to_phase(a: &StateVector, b: &StateVector, tol: f64) -> PhaseComparison {
    if a.shape() != b.shape() {
        return PhaseComparison::NotEqual;
    }
    let (mut same, mut flipped) = (0.0f64, 0.0f64);
    for (x, y) in a.amplitudes().iter().zip(b.amplitudes()) {
        same = same.max((x - y).abs());
        flipped = flipped.max((x + y).abs());
    }
    if same <= tol {
        PhaseComparison::EqualSameSign
    } else if flipped <= tol {
        PhaseComparison::EqualOppositeSign
    } else {
        PhaseComparison::NotEqual
    }
}
