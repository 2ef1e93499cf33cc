//! Truncated power series without constant term, with compositional
//! inversion.

use std::fmt;

use super::ExactError;
use crate::scalar::Field;

/// `Σ_{k=1}^{N} c_k t^k + O(t^{N+1})`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncSeries<C> {
    /// `coeffs[k-1]` is the coefficient of `t^k`.
    coeffs: Vec<C>,
}

impl<C: Field> TruncSeries<C> {
    /// Series of order `order` with the given coefficients of `t^1, t^2, ...`;
    /// missing coefficients are zero, extra ones are dropped.
    pub fn new(order: usize, coeffs: impl IntoIterator<Item = C>) -> Self {
        let mut cs: Vec<C> = coeffs.into_iter().take(order).collect();
        cs.resize(order, C::zero());
        TruncSeries { coeffs: cs }
    }

    /// The series `t`.
    pub fn identity(order: usize) -> Self {
        Self::new(order, std::iter::once(C::one()))
    }

    pub fn from_fn(order: usize, f: impl Fn(usize) -> C) -> Self {
        Self::new(order, (1..=order).map(f))
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient of `t^k` (`k ≥ 1`); zero beyond the order.
    pub fn coeff(&self, k: usize) -> C {
        assert!(k >= 1, "series have no constant term");
        self.coeffs.get(k - 1).cloned().unwrap_or_else(C::zero)
    }

    fn check_order(&self, other: &Self) -> Result<(), ExactError> {
        if self.order() != other.order() {
            return Err(ExactError::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, ExactError> {
        self.check_order(other)?;
        Ok(Self::from_fn(self.order(), |k| {
            self.coeff(k) + other.coeff(k)
        }))
    }

    /// Truncated product. The result has valuation ≥ 2.
    pub fn mul(&self, other: &Self) -> Result<Self, ExactError> {
        self.check_order(other)?;
        let n = self.order();
        Ok(Self::from_fn(n, |k| {
            (1..k).fold(C::zero(), |acc, i| acc + self.coeff(i) * other.coeff(k - i))
        }))
    }

    /// `self(inner(t))`.
    pub fn compose(&self, inner: &Self) -> Result<Self, ExactError> {
        self.check_order(inner)?;
        let n = self.order();
        let mut acc = Self::new(n, std::iter::empty());
        let mut power = inner.clone();
        for k in 1..=n {
            let c = self.coeff(k);
            if !c.is_zero() {
                acc = Self::from_fn(n, |j| acc.coeff(j) + c.clone() * power.coeff(j));
            }
            if k < n {
                power = power.mul(inner)?;
            }
        }
        Ok(acc)
    }

    /// The series `g` with `self(g(t)) = t` modulo `t^{N+1}`, solved one
    /// degree at a time.
    pub fn comp_inverse(&self) -> Result<Self, ExactError> {
        let n = self.order();
        if n == 0 {
            return Ok(self.clone());
        }
        let lin = self.coeff(1);
        if lin.is_zero() {
            return Err(ExactError::ZeroLinearTerm);
        }
        let lin_inv = lin.inv();
        let mut g = Self::new(n, std::iter::once(lin_inv.clone()));
        for k in 2..=n {
            // with g_k still zero, the t^k coefficient of self(g) must be
            // cancelled by lin * g_k
            let residual = self.compose(&g)?.coeff(k);
            let mut cs = g.coeffs.clone();
            cs[k - 1] = -(residual * lin_inv.clone());
            g = TruncSeries { coeffs: cs };
        }
        Ok(g)
    }
}

impl<C: Field> fmt::Display for TruncSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("({c})*t^{}", i + 1))
            .collect();
        if parts.is_empty() {
            write!(f, "O(t^{})", self.order() + 1)
        } else {
            write!(f, "{} + O(t^{})", parts.join(" + "), self.order() + 1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;
    use num_rational::BigRational;

    type S = TruncSeries<BigRational>;

    #[test]
    fn identity_inverts_to_itself() {
        let t = S::identity(6);
        assert_eq!(t.comp_inverse().unwrap(), t);
    }

    #[test]
    fn catalan_inverse() {
        // oracle: t - t^2 inverts to Σ Catalan(k-1) t^k
        let f = S::new(4, [q(1, 1), q(-1, 1)]);
        let g = f.comp_inverse().unwrap();
        assert_eq!(g, S::new(4, [q(1, 1), q(1, 1), q(2, 1), q(5, 1)]));
        assert_eq!(f.compose(&g).unwrap(), S::identity(4));
    }

    #[test]
    fn zero_linear_term_is_rejected() {
        let f = S::new(3, [q(0, 1), q(1, 1)]);
        assert_eq!(f.comp_inverse(), Err(ExactError::ZeroLinearTerm));
    }

    #[test]
    fn order_mismatch() {
        assert!(S::identity(3).mul(&S::identity(4)).is_err());
    }
}
