//! Exact combinatorial and angular-momentum arithmetic.

mod clebsch_gordan;
mod factorial;
mod half_integer;
mod row_coefficients;
mod sqrt_rational;

pub use clebsch_gordan::cg_general;
pub use factorial::{binomial_exact, factorial, ln_factorial, FactorialCache};
pub use half_integer::HalfInteger;
pub use row_coefficients::{delta_norm, e_lambda, f_kappa, row_lambda_range};
pub use sqrt_rational::SqrtRational;

pub use num_bigint::{BigInt, BigUint};
pub use num_rational::BigRational;

use num_traits::ToPrimitive;

/// Nearest double to an exact rational.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}
