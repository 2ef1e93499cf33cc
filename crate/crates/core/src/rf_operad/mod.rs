//! The operad `RF^θ` of rational functions: partial composition through
//! formal-group-law blocks, the symmetric-group action, the convolution
//! algebra on `∏ RF(n)`, and the families `G_n`, `F_n` built from
//! descent-weighted sums over permutations.

mod builders;
mod conv;
mod parse;

use std::fmt;

use thiserror::Error;

use crate::exact::{ExactError, FactoredRatFn, LinFactor, MPoly};
use crate::scalar::Scalar;
use crate::symgroup::Perm;

pub use builders::{
    build_fn, build_fn_via_vshaped, build_gn, chain_fraction, e_family, f_family, fn_terms,
    fn_vshaped_terms, gn_terms, TermSum,
};
pub use conv::{ConvFamily, WindowTable};
pub use parse::{parse_fraction, ParseFractionError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RfError {
    #[error("slot {slot} out of range for arity {arity}")]
    SlotOutOfRange { slot: usize, arity: usize },
    #[error("permutation of size {perm} acting on arity {arity}")]
    SizeMismatch { perm: usize, arity: usize },
    #[error("convolution orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("{0}")]
    Precondition(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Element of `RF^θ(n)`: a rational function in `x_1..x_n`.
#[derive(Clone, Debug)]
pub struct RFElem<C> {
    value: FactoredRatFn<C>,
}

impl<C: Scalar> RFElem<C> {
    pub fn new(value: FactoredRatFn<C>) -> Self {
        RFElem { value }
    }

    pub fn arity(&self) -> usize {
        self.value.nvars()
    }

    pub fn value(&self) -> &FactoredRatFn<C> {
        &self.value
    }

    pub fn into_value(self) -> FactoredRatFn<C> {
        self.value
    }

    pub fn theta(&self) -> &C {
        self.value.theta()
    }

    /// `μ_n = 1 ∈ RF(n)`, the n-ary commutative product.
    pub fn mu(arity: usize, theta: C) -> Self {
        RFElem::new(FactoredRatFn::one(arity, theta))
    }

    /// The Rota–Baxter operator `R = 1/x_1 ∈ RF(1)`.
    pub fn rb_operator(theta: C) -> Self {
        RFElem::new(FactoredRatFn::reciprocal(
            1,
            C::one(),
            &[LinFactor::from_vars(&[1])],
            theta,
        ))
    }

    /// The Zinbiel product `ν = μ ∘_1 R = 1/x_1 ∈ RF(2)`.
    pub fn nu(theta: C) -> Self {
        RFElem::new(FactoredRatFn::reciprocal(
            2,
            C::one(),
            &[LinFactor::from_vars(&[1])],
            theta,
        ))
    }

    /// `self ∘_slot g`: the block `F^θ(x_slot..x_{slot+n-1})` is substituted
    /// into variable `slot` of `self`, and the result is multiplied by `g`
    /// on that block. An arity-0 `g` is a scalar and plugs in the empty
    /// block (the group-law unit `0`).
    pub fn compose(&self, g: &Self, slot: usize) -> Result<Self, RfError> {
        let m = self.arity();
        if !(1..=m).contains(&slot) {
            return Err(RfError::SlotOutOfRange { slot, arity: m });
        }
        if self.theta() != g.theta() {
            return Err(ExactError::ThetaMismatch.into());
        }
        let n = g.arity();
        let total = m + n - 1;
        let theta = self.theta().clone();
        let images: Vec<MPoly<C>> = (1..=m)
            .map(|k| {
                if k < slot {
                    MPoly::var(total, k - 1)
                } else if k == slot {
                    if n == 0 {
                        MPoly::zero(total)
                    } else {
                        let block: Vec<usize> = (slot..slot + n).collect();
                        LinFactor::from_vars(&block).expand(total, &theta)
                    }
                } else {
                    MPoly::var(total, k + n - 2)
                }
            })
            .collect();
        let outer = self.value.try_subst(&images)?;
        let shift: Vec<usize> = (0..n).map(|j| slot - 1 + j).collect();
        let inner = g.value.rename(&shift, total);
        Ok(RFElem::new(outer.try_mul(&inner)?))
    }

    /// Right action `(f·p)(x_1..x_n) = f(x_{p(1)}..x_{p(n)})`.
    pub fn act(&self, p: &Perm) -> Result<Self, RfError> {
        if p.len() != self.arity() {
            return Err(RfError::SizeMismatch {
                perm: p.len(),
                arity: self.arity(),
            });
        }
        let map: Vec<usize> = p.one_line().iter().map(|v| v - 1).collect();
        Ok(RFElem::new(self.value.rename(&map, self.arity())))
    }

    pub fn try_eq(&self, other: &Self) -> Result<bool, RfError> {
        Ok(self.value.try_eq(&other.value)?)
    }
}

impl<C: Scalar> PartialEq for RFElem<C> {
    /// Panics when the parameters differ.
    fn eq(&self, other: &Self) -> bool {
        self.arity() == other.arity() && self.value == other.value
    }
}

impl<C: Scalar> fmt::Display for RFElem<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.arity(), self.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ThetaScalar;
    use crate::scalar::q;
    use num_rational::BigRational;
    use num_traits::{One, Zero};

    type Q = BigRational;

    fn recip_q(n: usize, facs: &[&[usize]]) -> RFElem<Q> {
        let fs: Vec<LinFactor> = facs.iter().map(|v| LinFactor::from_vars(v)).collect();
        RFElem::new(FactoredRatFn::reciprocal(n, Q::one(), &fs, Q::zero()))
    }

    #[test]
    fn constants_compose_to_constants() {
        let mu = RFElem::mu(2, Q::zero());
        let c = mu.compose(&mu, 1).unwrap();
        assert_eq!(c, RFElem::mu(3, Q::zero()));
    }

    #[test]
    fn nu_composed_with_itself() {
        let nu = RFElem::nu(Q::zero());
        assert_eq!(nu.compose(&nu, 1).unwrap(), recip_q(3, &[&[1], &[1, 2]]));
    }

    #[test]
    fn rota_baxter_composite_with_symbolic_theta() {
        let th = ThetaScalar::var();
        let r = RFElem::rb_operator(th.clone());
        let mu = RFElem::mu(2, th.clone());
        // R(R(a1) a2) = R ∘_1 (μ ∘_1 R)
        let inner = mu.compose(&r, 1).unwrap();
        let lhs = r.compose(&inner, 1).unwrap();
        let expect = FactoredRatFn::reciprocal(
            2,
            ThetaScalar::one(),
            &[LinFactor::from_vars(&[1, 2]), LinFactor::from_vars(&[1])],
            th,
        );
        assert_eq!(lhs.value(), &expect);
    }

    #[test]
    fn symmetric_action() {
        let f = recip_q(2, &[&[1]]);
        let swap = Perm::from_one_line(&[2, 1]).unwrap();
        assert_eq!(f.act(&Perm::identity(2)).unwrap(), f);
        assert_eq!(f.act(&swap).unwrap(), recip_q(2, &[&[2]]));
        let sym = recip_q(2, &[&[1, 2]]);
        assert_eq!(sym.act(&swap).unwrap(), sym);
        assert!(f.act(&Perm::identity(3)).is_err());
    }

    #[test]
    fn slot_errors() {
        let nu = RFElem::nu(Q::zero());
        assert_eq!(
            nu.compose(&nu, 3),
            Err(RfError::SlotOutOfRange { slot: 3, arity: 2 })
        );
        assert!(nu.compose(&nu, 0).is_err());
    }

    #[test]
    fn scalar_plug_in() {
        let scalar = RFElem::new(FactoredRatFn::constant(0, q(3, 1), Q::zero()));
        let mu = RFElem::mu(2, Q::zero());
        let c = mu.compose(&scalar, 2).unwrap();
        assert_eq!(c.arity(), 1);
        assert_eq!(c.value(), &FactoredRatFn::constant(1, q(3, 1), Q::zero()));
        // 1/(x1+x2) with x2 -> 0 keeps a family factor
        let f = recip_q(2, &[&[1, 2]]);
        assert_eq!(
            f.compose(&scalar, 2).unwrap().value(),
            &recip_q(1, &[&[1]]).scale3()
        );
        // R with its only input removed has a pole
        assert!(RFElem::nu(Q::zero()).compose(&scalar, 1).is_err());
    }

    impl RFElem<Q> {
        fn scale3(&self) -> FactoredRatFn<Q> {
            self.value.scale(&q(3, 1))
        }
    }
}
