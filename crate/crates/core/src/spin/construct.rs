//! The initial product state, the photon-count collapse, and the RVB states.

use alloc::vec;
use alloc::vec::Vec;

use super::operators::{apply_lowering, eigen_residual, project_sector};
use super::{BasisState, StateVector, SystemShape};
use crate::algebra::{binomial_exact, f_kappa, row_lambda_range, BigRational, SqrtRational};
use crate::{domain, Error, Result, STATE_TOLERANCE};

/// Top row all up, bottom row all down.
pub fn product_state(shape: SystemShape) -> Result<StateVector> {
    let top = (1u32 << shape.m()) - 1;
    StateVector::basis(shape, BasisState(top))
}

/// A normalized collapsed state and the squared norm of its sector component,
/// which is the probability of the photon count.
#[derive(Debug, Clone)]
pub struct CollapsedState {
    pub p: u32,
    pub state: StateVector,
    pub sector_weight: f64,
}

/// State left after detecting `p` photons:
/// `(S^-)^p P_{(N-M)/2 + p} |initial>`, normalized.
pub fn collapse_with_weight(shape: SystemShape, p: i64) -> Result<CollapsedState> {
    let p = shape.check_photon_count(p)?;
    let spin = shape.sector_spin(p);
    let projected = project_sector(&product_state(shape)?, spin)?;
    let sector_weight = projected.norm_sqr();
    let mut state = projected;
    for _ in 0..p {
        state = apply_lowering(&state);
    }
    let state = state.normalized()?;

    let m = shape.initial_m() - crate::algebra::HalfInteger::from_int(i64::from(p));
    let (s2_residual, sz_residual) = eigen_residual(&state, spin, m);
    if s2_residual > STATE_TOLERANCE || sz_residual > STATE_TOLERANCE {
        return Err(Error::Contract(alloc::format!(
            "collapsed state for M = {}, N = {}, p = {p} misses S = {spin}, m = {m} (residuals {s2_residual:e}, {sz_residual:e})",
            shape.m(),
            shape.n()
        )));
    }
    Ok(CollapsedState {
        p,
        state,
        sector_weight,
    })
}

pub fn collapsed_state(shape: SystemShape, p: i64) -> Result<StateVector> {
    collapse_with_weight(shape, p).map(|c| c.state)
}

/// RVB state with `M - p` resonating top-bottom dimers, from the row-grouped
/// closed form: a basis state with `kappa` top-row downs and `kappa - p`
/// bottom-row ups carries `F_kappa / sqrt(C(M, kappa) C(N, kappa - p))`.
pub fn rvb_state(shape: SystemShape, p: i64) -> Result<StateVector> {
    let p = shape.check_photon_count(p)?;
    shape.check_capacity()?;
    let (m, n) = (shape.m(), shape.n());
    let pi = i64::from(p);

    let mut per_kappa = vec![0.0; m as usize + 1];
    for kappa in row_lambda_range(m, n, pi) {
        let configs = BigRational::from_integer(
            (binomial_exact(u64::from(m), kappa) * binomial_exact(u64::from(n), kappa - pi)).into(),
        );
        let amplitude = &f_kappa(m, n, pi, kappa)? / &SqrtRational::sqrt(configs);
        per_kappa[kappa as usize] = amplitude.to_f64();
    }

    let mut state = StateVector::zero(shape)?;
    let (top, bottom) = (shape.top_sites(), shape.bottom_sites());
    for (i, a) in state.amplitudes_mut().iter_mut().enumerate() {
        let b = BasisState(i as u32);
        let kappa = i64::from(m - b.ups_in(top.start, top.end));
        let bottom_ups = i64::from(b.ups_in(bottom.start, bottom.end));
        if bottom_ups == kappa - pi {
            *a = per_kappa[kappa as usize];
        }
    }
    let norm = state.norm();
    if (norm - 1.0).abs() > STATE_TOLERANCE {
        return Err(Error::Contract(alloc::format!("RVB closed form has norm {norm}")));
    }
    state.normalized()
}

/// Rows longer than this are not symmetrized by brute force.
const LITERAL_ROW_LIMIT: u32 = 6;

/// RVB state built literally: singlets `(|up_t dn_b> - |dn_t up_b>)/sqrt 2` on
/// the given `(top, bottom)` site pairs, all other spins down, then summed
/// over every permutation within each row and normalized.
pub fn rvb_state_from_dimers(shape: SystemShape, p: i64, dimers: &[(usize, usize)]) -> Result<StateVector> {
    let p = shape.check_photon_count(p)?;
    let (m, n) = (shape.m() as usize, shape.n() as usize);
    if shape.m() > LITERAL_ROW_LIMIT || shape.n() > LITERAL_ROW_LIMIT {
        return Err(domain!("literal symmetrization supports rows of at most {LITERAL_ROW_LIMIT} sites"));
    }
    if dimers.len() != m - p as usize {
        return Err(domain!("expected {} dimers for M = {m}, p = {p}, got {}", m - p as usize, dimers.len()));
    }
    let mut used = 0u32;
    for &(t, b) in dimers {
        if t >= m || !(m..m + n).contains(&b) {
            return Err(domain!("dimer ({t}, {b}) must join a top site in 0..{m} to a bottom site in {m}..{}", m + n));
        }
        if used >> t & 1 == 1 || used >> b & 1 == 1 {
            return Err(domain!("site reused by dimer ({t}, {b})"));
        }
        used |= 1 << t | 1 << b;
    }

    // expand the dimer product in the z basis
    let weight = libm::pow(2.0, -(dimers.len() as f64) / 2.0);
    let mut terms: Vec<(u32, f64)> = Vec::with_capacity(1 << dimers.len());
    for flips in 0u32..(1 << dimers.len()) {
        let mut mask = 0u32;
        for (k, &(t, b)) in dimers.iter().enumerate() {
            mask |= if flips >> k & 1 == 1 { 1 << b } else { 1 << t };
        }
        let sign = if flips.count_ones() % 2 == 0 { 1.0 } else { -1.0 };
        terms.push((mask, sign * weight));
    }

    let top_images = permuted_patterns(m);
    let bottom_images = permuted_patterns(n);
    let top_mask = (1u32 << m) - 1;
    let mut state = StateVector::zero(shape)?;
    let out = state.amplitudes_mut();
    for &(mask, amp) in &terms {
        let top_pattern = (mask & top_mask) as usize;
        let bottom_pattern = (mask >> m) as usize;
        for top in &top_images {
            let t = top[top_pattern];
            for bottom in &bottom_images {
                out[(t | bottom[bottom_pattern] << m) as usize] += amp;
            }
        }
    }
    state.normalized()
}

/// For every permutation of `len` sites, the image of every bit pattern.
fn permuted_patterns(len: usize) -> Vec<Vec<u32>> {
    let mut perms = Vec::new();
    let mut current: Vec<usize> = (0..len).collect();
    heap_permutations(len, &mut current, &mut perms);
    perms
        .iter()
        .map(|perm| {
            (0..1u32 << len)
                .map(|pattern| {
                    perm.iter()
                        .enumerate()
                        .filter(|(i, _)| pattern >> i & 1 == 1)
                        .fold(0u32, |acc, (_, &to)| acc | 1 << to)
                })
                .collect()
        })
        .collect()
}

fn heap_permutations(k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(current.clone());
        return;
    }
    heap_permutations(k - 1, current, out);
    for i in 0..k - 1 {
        if k.is_multiple_of(2) {
            current.swap(i, k - 1);
        } else {
            current.swap(0, k - 1);
        }
        heap_permutations(k - 1, current, out);
    }
}
