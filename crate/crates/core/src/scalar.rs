//! Coefficient fields.
//!
//! Algebraic verification runs over exact rationals; the disk function
//! theory and anything needing square roots of non-squares runs over `f64`.
//! A computation is monomorphised over one of them, so the two modes never
//! mix.

use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Default tolerance τ for float-mode comparisons.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

pub type Rational = BigRational;

pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    /// True for exact arithmetic; comparisons ignore tolerances.
    const EXACT: bool;

    fn from_i64(v: i64) -> Self;

    fn from_ratio(num: i64, den: i64) -> Self;

    /// Exact zero test used for canonical storage.
    fn is_exact_zero(&self) -> bool;

    /// Zero test under tolerance `tol` (exact mode ignores `tol`).
    fn is_negligible(&self, tol: f64) -> bool;

    fn checked_div(&self, rhs: &Self) -> Option<Self>;

    /// Square root, if it exists in the field. Rationals need perfect squares.
    fn sqrt(&self) -> Option<Self>;

    fn abs(&self) -> Self;

    fn to_f64(&self) -> f64;

    /// Sign with tolerance: -1, 0 or 1.
    fn sign(&self, tol: f64) -> i8 {
        if self.is_negligible(tol) {
            0
        } else if self.to_f64() > 0.0 {
            1
        } else {
            -1
        }
    }

    fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        (self.clone() - other.clone()).is_negligible(tol)
    }

    /// Coefficient text used by the JSON encoding.
    fn to_coeff_string(&self) -> String;

    fn parse_coeff(s: &str) -> Option<Self>;
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn is_exact_zero(&self) -> bool {
        self.is_zero()
    }

    fn is_negligible(&self, _tol: f64) -> bool {
        self.is_zero()
    }

    fn checked_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            None
        } else {
            Some(self / rhs)
        }
    }

    fn sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = exact_isqrt(self.numer())?;
        let d = exact_isqrt(self.denom())?;
        Some(BigRational::new(n, d))
    }

    fn abs(&self) -> Self {
        Signed::abs(self)
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn sign(&self, _tol: f64) -> i8 {
        if self.is_zero() {
            0
        } else if self.is_positive() {
            1
        } else {
            -1
        }
    }

    fn to_coeff_string(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }

    fn parse_coeff(s: &str) -> Option<Self> {
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().ok()?;
                let d: BigInt = d.trim().parse().ok()?;
                if d.is_zero() {
                    None
                } else {
                    Some(BigRational::new(n, d))
                }
            }
            None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
        }
    }
}

fn exact_isqrt(v: &BigInt) -> Option<BigInt> {
    let r = v.sqrt();
    (&r * &r == *v).then_some(r)
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn is_exact_zero(&self) -> bool {
        *self == 0.0
    }

    fn is_negligible(&self, tol: f64) -> bool {
        f64::abs(*self) <= tol
    }

    fn checked_div(&self, rhs: &Self) -> Option<Self> {
        if *rhs == 0.0 {
            None
        } else {
            Some(self / rhs)
        }
    }

    fn sqrt(&self) -> Option<Self> {
        (*self >= 0.0).then(|| f64::sqrt(*self))
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn to_coeff_string(&self) -> String {
        format!("{self:?}")
    }

    fn parse_coeff(s: &str) -> Option<Self> {
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            let n: f64 = n.trim().parse().ok()?;
            let d: f64 = d.trim().parse().ok()?;
            return (d != 0.0).then(|| n / d);
        }
        s.parse().ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn rational_sqrt_requires_perfect_squares() {
        assert_eq!(Scalar::sqrt(&q(9, 4)), Some(q(3, 2)));
        assert_eq!(Scalar::sqrt(&q(2, 1)), None);
        assert_eq!(Scalar::sqrt(&q(-4, 1)), None);
        assert_eq!(Scalar::sqrt(&q(0, 1)), Some(q(0, 1)));
    }

    #[test]
    fn rational_division_by_zero_is_none() {
        assert!(q(1, 2).checked_div(&q(0, 1)).is_none());
        assert_eq!(q(1, 2).checked_div(&q(3, 1)), Some(q(1, 6)));
    }

    #[test]
    fn coeff_strings_round_trip() {
        for v in [q(-7, 3), q(0, 1), q(5, 1)] {
            assert_eq!(Rational::parse_coeff(&v.to_coeff_string()), Some(v));
        }
        assert_eq!(Rational::parse_coeff("4"), Some(q(4, 1)));
        assert_eq!(Rational::parse_coeff("1/0"), None);
        assert_eq!(f64::parse_coeff("0.25"), Some(0.25));
        assert_eq!(f64::parse_coeff("1/4"), Some(0.25));
    }

    #[test]
    fn float_tolerance() {
        assert!(1e-12_f64.is_negligible(DEFAULT_TOLERANCE));
        assert!(!1e-6_f64.is_negligible(DEFAULT_TOLERANCE));
        assert_eq!((-0.5f64).sign(1e-9), -1);
    }
}
