use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use super::{Perm, SymGroupError};
use crate::scalar::Scalar;

/// Order in which two permutations are multiplied in the group algebra.
#[derive(Clone, Copy, PartialEq, Eq, Debug, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CompositionOrder {
    /// `(σ·τ)(i) = σ(τ(i))`
    RightToLeft,
    /// `(σ·τ)(i) = τ(σ(i))`
    LeftToRight,
}

impl fmt::Display for CompositionOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CompositionOrder::RightToLeft => f.write_str("(s*t)(i) = s(t(i))"),
            CompositionOrder::LeftToRight => f.write_str("(s*t)(i) = t(s(i))"),
        }
    }
}

/// Element of the group algebra `S[S_n]`.
#[derive(Clone, PartialEq, Debug)]
pub struct GroupAlgElem<S> {
    n: usize,
    terms: BTreeMap<Perm, S>,
}

impl<S: Scalar> GroupAlgElem<S> {
    pub fn zero(n: usize) -> Self {
        GroupAlgElem {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::basis(Perm::identity(n))
    }

    pub fn basis(p: Perm) -> Self {
        let mut e = Self::zero(p.len());
        e.add_term(p, S::one());
        e
    }

    pub fn from_terms(
        n: usize,
        terms: impl IntoIterator<Item = (Perm, S)>,
    ) -> Result<Self, SymGroupError> {
        let mut e = Self::zero(n);
        for (p, c) in terms {
            if p.len() != n {
                return Err(SymGroupError::ArityMismatch {
                    left: n,
                    right: p.len(),
                });
            }
            e.add_term(p, c);
        }
        Ok(e)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Perm, &S)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, p: &Perm) -> S {
        self.terms.get(p).cloned().unwrap_or_else(S::zero)
    }

    pub fn add_term(&mut self, p: Perm, c: S) {
        debug_assert_eq!(p.len(), self.n);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(p) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, SymGroupError> {
        self.check(other)?;
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SymGroupError> {
        self.add(&other.scale(&-S::one()))
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero(self.n);
        for (p, a) in &self.terms {
            out.add_term(p.clone(), a.clone() * c.clone());
        }
        out
    }

    fn check(&self, other: &Self) -> Result<(), SymGroupError> {
        if self.n != other.n {
            return Err(SymGroupError::ArityMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    /// Product with the default convention `(σ·τ)(i) = σ(τ(i))`.
    pub fn mul(&self, other: &Self) -> Result<Self, SymGroupError> {
        self.mul_with(other, CompositionOrder::RightToLeft)
    }

    pub fn mul_with(&self, other: &Self, order: CompositionOrder) -> Result<Self, SymGroupError> {
        self.check(other)?;
        let mut acc: BTreeMap<Perm, S> = BTreeMap::new();
        for (s, a) in &self.terms {
            for (t, b) in &other.terms {
                let p = match order {
                    CompositionOrder::RightToLeft => s.compose(t),
                    CompositionOrder::LeftToRight => t.compose(s),
                };
                let c = a.clone() * b.clone();
                let slot = acc.entry(p).or_insert_with(S::zero);
                *slot = slot.clone() + c;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(GroupAlgElem {
            n: self.n,
            terms: acc,
        })
    }

    /// Replace every permutation by its inverse.
    pub fn invert_perms(&self) -> Self {
        let mut out = Self::zero(self.n);
        for (p, c) in &self.terms {
            out.add_term(p.inverse(), c.clone());
        }
        out
    }

    pub fn map_coeffs<T: Scalar>(&self, f: impl Fn(&S) -> T) -> GroupAlgElem<T> {
        let mut out = GroupAlgElem::zero(self.n);
        for (p, c) in &self.terms {
            out.add_term(p.clone(), f(c));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.values().all(|c| c.is_zero())
    }
}

impl<S: Scalar> fmt::Display for GroupAlgElem<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(p, c)| format!("{c}*{p}")).collect();
        f.write_str(&parts.join(" + "))
    }
}
