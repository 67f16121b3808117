use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{FactorialCache, HalfInteger, SqrtRational};
use crate::{domain, Result};

/// Clebsch-Gordan coefficient `<j1 m1; j2 m2 | J M>` in the Condon-Shortley
/// phase convention, evaluated exactly from the Racah sum.
pub fn cg_general(
    j1: HalfInteger,
    m1: HalfInteger,
    j2: HalfInteger,
    m2: HalfInteger,
    j: HalfInteger,
    m: HalfInteger,
) -> Result<SqrtRational> {
    for (name, jj, mm) in [("j1", j1, m1), ("j2", j2, m2), ("J", j, m)] {
        if jj.twice() < 0 {
            return Err(domain!("{name} = {jj} is negative"));
        }
        if mm.abs() > jj {
            return Err(domain!("|m| <= j violated for {name} = {jj}, m = {mm}"));
        }
        if !jj.same_parity(mm) {
            return Err(domain!("{name} - m must be an integer ({name} = {jj}, m = {mm})"));
        }
    }
    if m1 + m2 != m {
        return Err(domain!("m1 + m2 = M violated: {m1} + {m2} != {m}"));
    }
    if j < (j1 - j2).abs() || j > j1 + j2 {
        return Err(domain!("triangle inequality |j1 - j2| <= J <= j1 + j2 violated: j1 = {j1}, j2 = {j2}, J = {j}"));
    }
    if !(j1 + j2).same_parity(j) {
        return Err(domain!("j1 + j2 + J must be an integer"));
    }

    // every combination below is an integer once the checks above pass
    let int = |h: HalfInteger| -> i64 { h.to_int().expect("integral combination") };
    let a = int(j1 + j2 - j);
    let b = int(j1 - j2 + j);
    let c = int(j2 + j - j1);
    let d = int(j1 + j2 + j) + 1;
    let j1pm = int(j1 + m1);
    let j1mm = int(j1 - m1);
    let j2pm = int(j2 + m2);
    let j2mm = int(j2 - m2);
    let jpm = int(j + m);
    let jmm = int(j - m);
    let shift1 = int(j - j2 + m1);
    let shift2 = int(j - j1 - m2);

    let mut cache = FactorialCache::new();
    let mut fact = |n: i64| -> BigInt { BigInt::from(cache.get(n as u64).clone()) };

    let k_min = 0.max(-shift1).max(-shift2);
    let k_max = a.min(j1mm).min(j2pm);
    let mut sum = BigRational::zero();
    for k in k_min..=k_max {
        let denom = fact(k)
            * fact(a - k)
            * fact(j1mm - k)
            * fact(j2pm - k)
            * fact(shift1 + k)
            * fact(shift2 + k);
        let term = BigRational::new(BigInt::one(), denom);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    if sum.is_zero() {
        return Ok(SqrtRational::zero());
    }

    let triangle = BigRational::new(
        BigInt::from(j.twice() + 1) * fact(a) * fact(b) * fact(c),
        fact(d),
    );
    let projections = fact(j1pm) * fact(j1mm) * fact(j2pm) * fact(j2mm) * fact(jpm) * fact(jmm);
    let radicand = triangle * BigRational::from_integer(projections) * &sum * &sum;
    let sign = if sum.is_positive() { 1 } else { -1 };
    Ok(SqrtRational::new(sign, radicand))
}
