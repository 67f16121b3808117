//! Collective spin operators `S^-`, `S^+`, `S^z`, `S^2` and the Löwdin
//! projector onto a total-spin sector.

use super::StateVector;
use crate::algebra::HalfInteger;
use crate::{domain, Result};

/// `S^- |state>`, not normalized.
pub fn apply_lowering(state: &StateVector) -> StateVector {
    let mut out = state.zeroed_like();
    let dst = out.amplitudes_mut();
    for (b, a) in state.nonzero() {
        let mut ups = b.0;
        while ups != 0 {
            let bit = ups & ups.wrapping_neg();
            dst[(b.0 ^ bit) as usize] += a;
            ups ^= bit;
        }
    }
    out
}

/// `S^+ |state>`, not normalized.
pub fn apply_raising(state: &StateVector) -> StateVector {
    let mu = state.shape().mu();
    let full = if mu == 32 { u32::MAX } else { (1u32 << mu) - 1 };
    let mut out = state.zeroed_like();
    let dst = out.amplitudes_mut();
    for (b, a) in state.nonzero() {
        let mut downs = !b.0 & full;
        while downs != 0 {
            let bit = downs & downs.wrapping_neg();
            dst[(b.0 | bit) as usize] += a;
            downs ^= bit;
        }
    }
    out
}

/// `S^z |state>`.
pub fn apply_sz(state: &StateVector) -> StateVector {
    let mu = state.shape().mu();
    let mut out = state.clone();
    for (i, a) in out.amplitudes_mut().iter_mut().enumerate() {
        *a *= 0.5 * (2 * i64::from((i as u32).count_ones()) - i64::from(mu)) as f64;
    }
    out
}

/// `S^2 |state>` via `S^- S^+ + S^z (S^z + 1)`.
pub fn apply_s_squared(state: &StateVector) -> StateVector {
    let mu = state.shape().mu();
    let mut out = apply_lowering(&apply_raising(state));
    for (i, (o, a)) in out.amplitudes_mut().iter_mut().zip(state.amplitudes()).enumerate() {
        let sz = 0.5 * (2 * i64::from((i as u32).count_ones()) - i64::from(mu)) as f64;
        *o += sz * (sz + 1.0) * a;
    }
    out
}

pub fn sz_expectation(state: &StateVector) -> f64 {
    state.dot(&apply_sz(state)) / state.norm_sqr()
}

pub fn s_squared_expectation(state: &StateVector) -> f64 {
    state.dot(&apply_s_squared(state)) / state.norm_sqr()
}

/// `|| S^2 psi - S(S+1) psi ||` and `|| S^z psi - m psi ||` for a normalized `psi`.
pub fn eigen_residual(state: &StateVector, spin: HalfInteger, m: HalfInteger) -> (f64, f64) {
    let mut s2 = apply_s_squared(state);
    s2.add_scaled(-spin.casimir(), state);
    let mut sz = apply_sz(state);
    sz.add_scaled(-m.to_f64(), state);
    (s2.norm(), sz.norm())
}

/// Löwdin projection `P_S |state>`, not normalized.
///
/// `P_S = prod_{S' != S} (S^2 - S'(S'+1)) / (S(S+1) - S'(S'+1))` over the
/// sectors `|m_tot| <= S' <= mu/2` present at the state's `m_tot`.
pub fn project_sector(state: &StateVector, spin: HalfInteger) -> Result<StateVector> {
    let mu = i64::from(state.shape().mu());
    let twice_m = match state.definite_twice_m() {
        Some(m) => m,
        None if state.norm_sqr() == 0.0 => return Ok(state.clone()),
        None => return Err(domain!("sector projection needs a state with definite m_tot")),
    };
    let m = HalfInteger::from_twice(twice_m);
    if spin < m.abs() || spin.twice() > mu || !spin.same_parity(m) {
        return Err(domain!(
            "S = {spin} is not a sector at m_tot = {m} for mu = {mu} (need |m_tot| <= S <= mu/2, S - m_tot integer)"
        ));
    }
    let target = spin.casimir();
    let mut current = state.clone();
    let mut other = m.abs();
    while other.twice() <= mu {
        if other != spin {
            let shift = other.casimir();
            let mut next = apply_s_squared(&current);
            next.add_scaled(-shift, &current);
            next.scale(1.0 / (target - shift));
            current = next;
        }
        other = other + HalfInteger::from_int(1);
    }
    Ok(current)
}
