use core::cmp::Ordering;
use core::fmt;
use core::ops::{Div, Mul, Neg};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A signed square root of a non-negative rational: `sign * sqrt(radicand)`.
///
/// Products and quotients stay in this form. Sums do not, so there is no
/// `Add` implementation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SqrtRational {
    sign: i8,
    radicand: BigRational,
}

impl SqrtRational {
    pub fn zero() -> Self {
        SqrtRational {
            sign: 0,
            radicand: BigRational::zero(),
        }
    }

    pub fn one() -> Self {
        SqrtRational {
            sign: 1,
            radicand: BigRational::one(),
        }
    }

    /// `sign * sqrt(radicand)`; panics on a negative radicand.
    pub fn new(sign: i8, radicand: BigRational) -> Self {
        assert!(!radicand.is_negative(), "negative radicand {radicand}");
        if sign == 0 || radicand.is_zero() {
            return Self::zero();
        }
        SqrtRational {
            sign: sign.signum(),
            radicand,
        }
    }

    /// `+sqrt(radicand)`.
    pub fn sqrt(radicand: BigRational) -> Self {
        Self::new(1, radicand)
    }

    /// Embeds an ordinary rational `r` as `sign(r) * sqrt(r^2)`.
    pub fn from_rational(r: &BigRational) -> Self {
        let sign = match r.cmp(&BigRational::zero()) {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        };
        Self::new(sign, r * r)
    }

    pub fn from_integer(i: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(BigInt::from(i)))
    }

    pub fn signum(&self) -> i8 {
        self.sign
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    pub fn radicand(&self) -> &BigRational {
        &self.radicand
    }

    /// The exact square; the sign is discarded.
    pub fn square(&self) -> BigRational {
        self.radicand.clone()
    }

    pub fn abs(&self) -> Self {
        Self::new(self.sign.abs(), self.radicand.clone())
    }

    pub fn to_f64(&self) -> f64 {
        let r = self.radicand.to_f64().unwrap_or(f64::NAN);
        f64::from(self.sign) * libm::sqrt(r)
    }
}

impl Neg for SqrtRational {
    type Output = SqrtRational;
    fn neg(self) -> SqrtRational {
        SqrtRational {
            sign: -self.sign,
            radicand: self.radicand,
        }
    }
}

impl Mul for &SqrtRational {
    type Output = SqrtRational;
    fn mul(self, rhs: &SqrtRational) -> SqrtRational {
        SqrtRational::new(self.sign * rhs.sign, &self.radicand * &rhs.radicand)
    }
}

impl Mul for SqrtRational {
    type Output = SqrtRational;
    fn mul(self, rhs: SqrtRational) -> SqrtRational {
        &self * &rhs
    }
}

impl Div for &SqrtRational {
    type Output = SqrtRational;
    /// Panics when dividing by zero.
    fn div(self, rhs: &SqrtRational) -> SqrtRational {
        assert!(!rhs.is_zero(), "division by a zero SqrtRational");
        SqrtRational::new(self.sign * rhs.sign, &self.radicand / &rhs.radicand)
    }
}

impl Div for SqrtRational {
    type Output = SqrtRational;
    fn div(self, rhs: SqrtRational) -> SqrtRational {
        &self / &rhs
    }
}

impl fmt::Display for SqrtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            0 => write!(f, "0"),
            s => write!(f, "{}sqrt({})", if s > 0 { '+' } else { '-' }, self.radicand),
        }
    }
}
