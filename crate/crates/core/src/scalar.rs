//! Coefficient traits shared by every container in the crate.
//!
//! All algebraic containers (polynomials, group-algebra elements, tensor
//! words, series) are generic over a [`Scalar`]. Exact work uses
//! [`BigRational`](num_rational::BigRational) or the polynomial ring
//! [`ThetaScalar`](crate::exact::ThetaScalar); `f64` is supported for
//! quick numerical experiments where exactness does not matter.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// A commutative ring with identity, exact where the implementation allows.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Send
    + Sync
{
    fn from_i64(n: i64) -> Self;

    /// Exact quotient `self / rhs` when it exists in the ring.
    fn try_div(&self, rhs: &Self) -> Option<Self>;

    /// Embed a rational number. Rings without division return `None`
    /// for non-integral values.
    fn from_rational(q: &BigRational) -> Option<Self>;

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }
}

/// A [`Scalar`] in which every nonzero element is invertible.
pub trait Field: Scalar + Div<Output = Self> {
    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num) / Self::from_i64(den)
    }

    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }
}

impl Scalar for BigRational {
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn try_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            None
        } else {
            Some(self / rhs)
        }
    }

    fn from_rational(q: &BigRational) -> Option<Self> {
        Some(q.clone())
    }
}

impl Field for BigRational {}

impl Scalar for f64 {
    fn from_i64(n: i64) -> Self {
        n as f64
    }

    fn try_div(&self, rhs: &Self) -> Option<Self> {
        if *rhs == 0.0 {
            None
        } else {
            Some(self / rhs)
        }
    }

    fn from_rational(q: &BigRational) -> Option<Self> {
        use num_traits::ToPrimitive;
        q.to_f64()
    }
}

impl Field for f64 {}

/// Shorthand for a rational constant.
pub fn q(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Binomial coefficient as a big integer.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `(-1)^d / binom(n-1, d)`, the coefficient attached to a permutation with
/// `d` descents in the Eulerian idempotent (before the overall `1/n`).
pub fn eulerian_weight(n: usize, d: usize) -> BigRational {
    let sign = if d.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    };
    BigRational::new(sign, binomial(n as u64 - 1, d as u64))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(binomial(0, 0), BigInt::from(1));
        assert_eq!(binomial(3, 5), BigInt::from(0));
        assert_eq!(factorial(5), BigInt::from(120));
    }

    #[test]
    fn rational_pow_and_div() {
        let half = q(1, 2);
        assert_eq!(Scalar::pow(&half, 3), q(1, 8));
        assert_eq!(half.try_div(&BigRational::zero()), None);
        assert_eq!(BigRational::from_ratio(3, 6), half);
    }

    #[test]
    fn eulerian_weights() {
        assert_eq!(eulerian_weight(3, 1), q(-1, 2));
        assert_eq!(eulerian_weight(3, 2), q(1, 1));
    }
}
