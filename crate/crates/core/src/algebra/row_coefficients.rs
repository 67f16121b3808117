//! Closed forms for the row-wise Schmidt coefficients of collapsed states.
//!
//! A state with `p` emitted photons decomposes over products of fully
//! symmetric row states, top row with `lambda` down spins and bottom row with
//! `lambda - p` up spins, for `lambda` in `p..=min(M, N + p)`.

use core::ops::RangeInclusive;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{binomial_exact, FactorialCache, SqrtRational};
use crate::{domain, Result};

fn check_photon_count(m: u32, n: u32, p: i64) -> Result<()> {
    let p_min = (i64::from(m) - i64::from(n)).max(0);
    if p < p_min || p > i64::from(m) {
        return Err(domain!("photon count p = {p} outside [{p_min}, {m}] for M = {m}, N = {n}"));
    }
    Ok(())
}

/// The Schmidt index range `p..=min(M, N + p)`.
pub fn row_lambda_range(m: u32, n: u32, p: i64) -> RangeInclusive<i64> {
    p..=i64::from(m).min(i64::from(n) + p)
}

fn check_lambda(m: u32, n: u32, p: i64, lambda: i64) -> Result<()> {
    check_photon_count(m, n, p)?;
    if !row_lambda_range(m, n, p).contains(&lambda) {
        return Err(domain!(
            "lambda = {lambda} outside [{p}, {}] for M = {m}, N = {n}, p = {p}",
            i64::from(m).min(i64::from(n) + p)
        ));
    }
    Ok(())
}

fn alternating(exponent: i64) -> i8 {
    if exponent % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `E_lambda`: coefficient of the collapsed state on the row product with
/// `lambda` top-row down spins, including the sign `(-1)^(lambda - p)`.
pub fn e_lambda(m: u32, n: u32, p: i64, lambda: i64) -> Result<SqrtRational> {
    check_lambda(m, n, p, lambda)?;
    let (m, n) = (i64::from(m), i64::from(n));
    let mut cache = FactorialCache::new();
    let mut f = |k: i64| -> BigInt { BigInt::from(cache.get(k as u64).clone()) };

    let outer = BigRational::new(f(n + p - lambda) * f(lambda), f(n - m + p) * f(p));
    let inner = BigRational::new(
        f(p) * f(n - m + p) * f(m - p) * f(n - m + 2 * p),
        f(n + p + 1) * f(lambda) * f(m - lambda) * f(n - lambda + p) * f(lambda - p),
    );
    let radicand = &outer * &outer * BigRational::from_integer(BigInt::from(n - m + 2 * p + 1)) * inner;
    Ok(SqrtRational::new(alternating(lambda - p), radicand))
}

/// `delta_{M,N,p}`, the normalization of the dimer construction.
pub fn delta_norm(m: u32, n: u32, p: i64) -> Result<SqrtRational> {
    check_photon_count(m, n, p)?;
    let (m, n) = (i64::from(m), i64::from(n));
    let mut cache = FactorialCache::new();
    let mut f = |k: i64| -> BigInt { BigInt::from(cache.get(k as u64).clone()) };
    let radicand = BigRational::new(
        f(m) * f(n) * f(m - p) * f(n - m + p) * f(p) * f(n + p + 1),
        (BigInt::from(1u8) << ((m - p) as usize)) * f(n - m + 2 * p + 1),
    );
    Ok(SqrtRational::sqrt(radicand))
}

/// `F_kappa`: row-Schmidt coefficient of the symmetrized dimer state,
/// normalized with [`delta_norm`].
pub fn f_kappa(m: u32, n: u32, p: i64, kappa: i64) -> Result<SqrtRational> {
    check_lambda(m, n, p, kappa)?;
    let delta = delta_norm(m, n, p)?;
    let (mu, nu) = (u64::from(m), u64::from(n));
    let (m, n) = (i64::from(m), i64::from(n));
    let mut cache = FactorialCache::new();
    let mut f = |k: i64| -> BigInt { BigInt::from(cache.get(k as u64).clone()) };

    let multiplicity = BigInt::from(binomial_exact(mu - p as u64, kappa - p))
        * f(m - kappa)
        * f(kappa)
        * f(kappa - p)
        * f(n - kappa + p);
    let rows = BigInt::from(binomial_exact(mu, kappa)) * BigInt::from(binomial_exact(nu, kappa - p));
    let numerator = &multiplicity * &multiplicity * rows;
    let denominator = BigInt::from(1u8) << ((m - p) as usize);
    let unnormalized = SqrtRational::new(alternating(kappa - p), BigRational::new(numerator, denominator));
    Ok(&unnormalized / &delta)
}
