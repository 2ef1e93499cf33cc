//! Dense univariate polynomials and rational functions in one variable.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::scalar::{Field, Scalar};

/// Univariate polynomial with coefficients in a field, stored densely from
/// the constant term upwards. Trailing zeros are never stored.
#[derive(Clone, PartialEq, Debug, Default, Hash, Eq, PartialOrd, Ord)]
pub struct UPoly<C> {
    coeffs: Vec<C>,
}

impl<C: Field> UPoly<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn constant(c: C) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn var() -> Self {
        Self::new(vec![C::zero(), C::one()])
    }

    pub fn monomial(c: C, deg: usize) -> Self {
        let mut coeffs = vec![C::zero(); deg + 1];
        coeffs[deg] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> C {
        self.coeffs.get(k).cloned().unwrap_or_else(C::zero)
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&C> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &C) -> C {
        self.coeffs
            .iter()
            .rev()
            .fold(C::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![C::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let top = rem.len() - 1;
            let c = rem[top].clone() / lead.clone();
            let shift = top - dd;
            for (k, dc) in divisor.coeffs.iter().enumerate() {
                rem[shift + k] = rem[shift + k].clone() - c.clone() * dc.clone();
            }
            quot[shift] = c;
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        (Self::new(quot), Self::new(rem))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => {
                let inv = l.inv();
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Render with the given variable name.
    pub fn display_with(&self, var: &str) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cs = c.to_string();
            let part = match k {
                0 => cs,
                _ => {
                    let v = if k == 1 {
                        var.to_string()
                    } else {
                        format!("{var}^{k}")
                    };
                    if c.is_one() {
                        v
                    } else if *c == -C::one() {
                        format!("-{v}")
                    } else {
                        format!("{cs}*{v}")
                    }
                }
            };
            parts.push(part);
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

impl<C: Field> Zero for UPoly<C> {
    fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<C: Field> One for UPoly<C> {
    fn one() -> Self {
        Self::constant(C::one())
    }
}

impl<C: Field> Add for UPoly<C> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<C: Field> Sub for UPoly<C> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<C: Field> Neg for UPoly<C> {
    type Output = Self;
    fn neg(self) -> Self {
        UPoly {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl<C: Field> Mul for UPoly<C> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![C::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }
}

impl<C: Field> fmt::Display for UPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("θ"))
    }
}

impl<C: Field> Scalar for UPoly<C> {
    fn from_i64(n: i64) -> Self {
        Self::constant(C::from_i64(n))
    }

    fn try_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(rhs);
        r.is_zero().then_some(q)
    }

    fn from_rational(q: &BigRational) -> Option<Self> {
        C::from_rational(q).map(Self::constant)
    }
}

/// Rational function in one variable, kept reduced with a monic denominator.
/// Equality is decided by cross-multiplication.
#[derive(Clone, Debug)]
pub struct URatFn<C> {
    num: UPoly<C>,
    den: UPoly<C>,
}

impl<C: Field> URatFn<C> {
    pub fn new(num: UPoly<C>, den: UPoly<C>) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (mut num, _) = num.div_rem(&g);
        let (mut den, _) = den.div_rem(&g);
        let lead = den.leading().cloned().expect("nonzero denominator");
        let inv = lead.inv();
        num = num.scale(&inv);
        den = den.scale(&inv);
        URatFn { num, den }
    }

    pub fn from_poly(p: UPoly<C>) -> Self {
        URatFn {
            num: p,
            den: UPoly::one(),
        }
    }

    pub fn numer(&self) -> &UPoly<C> {
        &self.num
    }

    pub fn denom(&self) -> &UPoly<C> {
        &self.den
    }
}

impl<C: Field> PartialEq for URatFn<C> {
    fn eq(&self, other: &Self) -> bool {
        self.num.clone() * other.den.clone() == other.num.clone() * self.den.clone()
    }
}

impl<C: Field> Zero for URatFn<C> {
    fn zero() -> Self {
        URatFn {
            num: UPoly::zero(),
            den: UPoly::one(),
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl<C: Field> One for URatFn<C> {
    fn one() -> Self {
        Self::from_poly(UPoly::one())
    }
}

impl<C: Field> Add for URatFn<C> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(
            self.num * rhs.den.clone() + rhs.num * self.den.clone(),
            self.den * rhs.den,
        )
    }
}

impl<C: Field> Sub for URatFn<C> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<C: Field> Neg for URatFn<C> {
    type Output = Self;
    fn neg(self) -> Self {
        URatFn {
            num: -self.num,
            den: self.den,
        }
    }
}

impl<C: Field> Mul for URatFn<C> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::new(self.num * rhs.num, self.den * rhs.den)
    }
}

impl<C: Field> Div for URatFn<C> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        assert!(!rhs.is_zero(), "division by zero rational function");
        Self::new(self.num * rhs.den, self.den * rhs.num)
    }
}

impl<C: Field> fmt::Display for URatFn<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num.display_with("q"))
        } else {
            write!(
                f,
                "({}) / ({})",
                self.num.display_with("q"),
                self.den.display_with("q")
            )
        }
    }
}

impl<C: Field> Scalar for URatFn<C> {
    fn from_i64(n: i64) -> Self {
        Self::from_poly(UPoly::from_i64(n))
    }

    fn try_div(&self, rhs: &Self) -> Option<Self> {
        (!rhs.is_zero()).then(|| self.clone() / rhs.clone())
    }

    fn from_rational(q: &BigRational) -> Option<Self> {
        UPoly::from_rational(q).map(Self::from_poly)
    }
}

impl<C: Field> Field for URatFn<C> {}
