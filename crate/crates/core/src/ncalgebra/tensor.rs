use std::collections::BTreeMap;

use super::{NCPoly, NCWord, NcError};
use crate::scalar::Field;

/// An element of `A ⊗ A`, truncated above total weight `bound`.
#[derive(Clone, Debug)]
pub struct TensorSquare<S> {
    bound: u32,
    terms: BTreeMap<(NCWord, NCWord), S>,
}

impl<S: Field> PartialEq for TensorSquare<S> {
    fn eq(&self, other: &Self) -> bool {
        self.bound == other.bound && self.terms == other.terms
    }
}

impl<S: Field> TensorSquare<S> {
    pub fn zero(bound: u32) -> Self {
        TensorSquare {
            bound,
            terms: BTreeMap::new(),
        }
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(NCWord, NCWord), &S)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, u: &NCWord, v: &NCWord) -> S {
        self.terms
            .get(&(u.clone(), v.clone()))
            .cloned()
            .unwrap_or_else(S::zero)
    }

    pub fn add_term(&mut self, u: NCWord, v: NCWord, c: S) {
        if u.weight() + v.weight() > self.bound || c.is_zero() {
            return;
        }
        let key = (u, v);
        let v = self.terms.get(&key).cloned().unwrap_or_else(S::zero) + c;
        if v.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, v);
        }
    }

    /// `p ⊗ q`, keeping pairs of total weight at most the common bound.
    pub fn tensor(p: &NCPoly<S>, q: &NCPoly<S>) -> Result<Self, NcError> {
        if p.bound() != q.bound() {
            return Err(NcError::BoundMismatch(p.bound(), q.bound()));
        }
        let mut out = Self::zero(p.bound());
        for (u, a) in p.terms() {
            for (v, b) in q.terms() {
                out.add_term(u.clone(), v.clone(), a.clone() * b.clone());
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self, NcError> {
        if self.bound != other.bound {
            return Err(NcError::BoundMismatch(self.bound, other.bound));
        }
        let mut out = self.clone();
        for ((u, v), c) in &other.terms {
            out.add_term(u.clone(), v.clone(), c.clone());
        }
        Ok(out)
    }
}

/// `Δ` with every generator primitive: a word maps to the sum over its
/// subsequence/complement splittings.
pub fn coproduct<S: Field>(p: &NCPoly<S>) -> Result<TensorSquare<S>, NcError> {
    if p.has_d() {
        return Err(NcError::DInCoproduct);
    }
    let mut out = TensorSquare::zero(p.bound());
    for (w, c) in p.terms() {
        let n = w.len();
        assert!(n < 32, "word too long for subset enumeration");
        for mask in 0u32..(1 << n) {
            let (mut left, mut right) = (Vec::new(), Vec::new());
            for (k, &g) in w.0.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    left.push(g);
                } else {
                    right.push(g);
                }
            }
            out.add_term(NCWord(left), NCWord(right), c.clone());
        }
    }
    Ok(out)
}
