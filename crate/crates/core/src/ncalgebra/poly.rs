use std::collections::BTreeMap;
use std::fmt;

use super::NcError;
use crate::scalar::Field;

/// A generator of the free algebra: `B(i)` has weight `i ≥ 1`, `D` weight 0.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Generator {
    D,
    B(u8),
}

impl Generator {
    pub fn weight(self) -> u32 {
        match self {
            Generator::D => 0,
            Generator::B(i) => i as u32,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::D => f.write_str("d"),
            Generator::B(i) => write!(f, "b{i}"),
        }
    }
}

/// A word in the generators; the empty word is the unit.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct NCWord(pub Vec<Generator>);

impl NCWord {
    pub fn unit() -> Self {
        NCWord(Vec::new())
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().map(|g| g.weight()).sum()
    }

    pub fn d_count(&self) -> usize {
        self.0.iter().filter(|&&g| g == Generator::D).count()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        NCWord(v)
    }
}

impl fmt::Display for NCWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, g) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("·")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// A noncommutative polynomial truncated above weight `bound`.
///
/// Words carry at most one `d`; a product that would create a second one
/// is reported as an error.
#[derive(Clone, Debug)]
pub struct NCPoly<S> {
    bound: u32,
    terms: BTreeMap<NCWord, S>,
}

impl<S: Field> PartialEq for NCPoly<S> {
    fn eq(&self, other: &Self) -> bool {
        self.bound == other.bound && self.terms == other.terms
    }
}

impl<S: Field> NCPoly<S> {
    pub fn zero(bound: u32) -> Self {
        NCPoly {
            bound,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(bound: u32) -> Self {
        Self::monomial(bound, NCWord::unit(), S::one())
    }

    /// `c·w`, or zero when `w` is above the bound.
    pub fn monomial(bound: u32, w: NCWord, c: S) -> Self {
        let mut p = Self::zero(bound);
        p.add_term(w, c);
        p
    }

    pub fn generator(bound: u32, g: Generator) -> Self {
        Self::monomial(bound, NCWord(vec![g]), S::one())
    }

    pub fn b(bound: u32, i: u8) -> Self {
        assert!(i >= 1, "b-generators have positive weight");
        Self::generator(bound, Generator::B(i))
    }

    pub fn d(bound: u32) -> Self {
        Self::generator(bound, Generator::D)
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn terms(&self) -> impl Iterator<Item = (&NCWord, &S)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &NCWord) -> S {
        self.terms.get(w).cloned().unwrap_or_else(S::zero)
    }

    /// Adds `c·w`, dropping it if `w` exceeds the bound.
    pub fn add_term(&mut self, w: NCWord, c: S) {
        if w.weight() > self.bound || c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get().clone() + c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    fn check_bound(&self, other: &Self) -> Result<(), NcError> {
        if self.bound == other.bound {
            Ok(())
        } else {
            Err(NcError::BoundMismatch(self.bound, other.bound))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, NcError> {
        self.check_bound(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, NcError> {
        self.add(&other.scale(&-S::one()))
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero(self.bound);
        }
        NCPoly {
            bound: self.bound,
            terms: self
                .terms
                .iter()
                .map(|(w, v)| (w.clone(), v.clone() * c.clone()))
                .collect(),
        }
    }

    /// The same element viewed at another truncation.
    pub fn with_bound(&self, bound: u32) -> Self {
        let mut out = Self::zero(bound);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    /// Component of weight exactly `k`.
    pub fn homogeneous(&self, k: u32) -> Self {
        NCPoly {
            bound: self.bound,
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.weight() == k)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn has_d(&self) -> bool {
        self.terms.keys().any(|w| w.d_count() > 0)
    }

    /// Smallest weight of a word present, `None` for zero.
    pub fn min_weight(&self) -> Option<u32> {
        self.terms.keys().map(NCWord::weight).min()
    }

    fn bilinear(
        &self,
        other: &Self,
        mut coeff: impl FnMut(&NCWord, &NCWord) -> Result<Option<S>, NcError>,
    ) -> Result<Self, NcError> {
        self.check_bound(other)?;
        let mut out = Self::zero(self.bound);
        for (u, a) in &self.terms {
            let wu = u.weight();
            for (v, b) in &other.terms {
                if wu + v.weight() > self.bound {
                    continue;
                }
                let Some(k) = coeff(u, v)? else { continue };
                if u.d_count() + v.d_count() > 1 {
                    return Err(NcError::TwoD);
                }
                out.add_term(u.concat(v), a.clone() * b.clone() * k);
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Result<Self, NcError> {
        self.bilinear(other, |_, _| Ok(Some(S::one())))
    }

    /// `[u, v] = uv − vu`.
    pub fn bracket(&self, other: &Self) -> Result<Self, NcError> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    /// `u ≺ v = |u|/(|u|+|v|)·uv` on homogeneous parts.
    pub fn prec(&self, other: &Self) -> Result<Self, NcError> {
        self.bilinear(other, |u, v| foissy_coeff(u.weight(), v.weight()))
    }

    /// `u ≻ v = |v|/(|u|+|v|)·uv` on homogeneous parts.
    pub fn succ(&self, other: &Self) -> Result<Self, NcError> {
        self.bilinear(other, |u, v| foissy_coeff(v.weight(), u.weight()))
    }

    pub fn map_coeffs(&self, f: impl Fn(&NCWord, &S) -> S) -> Self {
        let mut out = Self::zero(self.bound);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), f(w, c));
        }
        out
    }
}

fn foissy_coeff<S: Field>(num: u32, other: u32) -> Result<Option<S>, NcError> {
    if num + other == 0 {
        return Err(NcError::BothWeightZero);
    }
    Ok((num > 0).then(|| S::from_ratio(num as i64, (num + other) as i64)))
}

impl<S: Field> fmt::Display for NCPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            if c.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "({c})*{w}")?;
            }
        }
        Ok(())
    }
}

pub fn nc_mul<S: Field>(u: &NCPoly<S>, v: &NCPoly<S>) -> Result<NCPoly<S>, NcError> {
    u.mul(v)
}

pub fn nc_bracket<S: Field>(u: &NCPoly<S>, v: &NCPoly<S>) -> Result<NCPoly<S>, NcError> {
    u.bracket(v)
}

pub fn foissy_prec<S: Field>(u: &NCPoly<S>, v: &NCPoly<S>) -> Result<NCPoly<S>, NcError> {
    u.prec(v)
}

pub fn foissy_succ<S: Field>(u: &NCPoly<S>, v: &NCPoly<S>) -> Result<NCPoly<S>, NcError> {
    u.succ(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;
    use num_rational::BigRational as Q;

    fn w(gs: &[Generator]) -> NCWord {
        NCWord(gs.to_vec())
    }

    use Generator::{B, D};

    #[test]
    fn brackets() {
        let b1 = NCPoly::<Q>::b(3, 1);
        let d = NCPoly::<Q>::d(3);
        let c = b1.bracket(&d).unwrap();
        assert_eq!(c.coeff(&w(&[B(1), D])), q(1, 1));
        assert_eq!(c.coeff(&w(&[D, B(1)])), q(-1, 1));
        assert!(b1.bracket(&b1).unwrap().is_zero());
        let cc = b1.bracket(&c).unwrap();
        assert_eq!(cc.len(), 3);
        assert_eq!(cc.coeff(&w(&[B(1), B(1), D])), q(1, 1));
        assert_eq!(cc.coeff(&w(&[B(1), D, B(1)])), q(-2, 1));
        assert_eq!(cc.coeff(&w(&[D, B(1), B(1)])), q(1, 1));
    }

    #[test]
    fn truncation_and_two_d() {
        let b2 = NCPoly::<Q>::b(3, 2);
        assert!(b2.mul(&b2).unwrap().is_zero());
        let d = NCPoly::<Q>::d(3);
        assert_eq!(d.mul(&d), Err(NcError::TwoD));
        assert_eq!(d.add(&NCPoly::d(2)), Err(NcError::BoundMismatch(3, 2)));
    }

    #[test]
    fn foissy_products() {
        let b1 = NCPoly::<Q>::b(4, 1);
        let d = NCPoly::<Q>::d(4);
        assert_eq!(b1.prec(&d).unwrap(), b1.mul(&d).unwrap());
        assert_eq!(d.succ(&b1).unwrap(), d.mul(&b1).unwrap());
        assert!(d.prec(&b1).unwrap().is_zero());
        assert!(b1.succ(&d).unwrap().is_zero());
        assert_eq!(b1.prec(&b1).unwrap(), b1.mul(&b1).unwrap().scale(&q(1, 2)));
        assert_eq!(d.prec(&NCPoly::one(4)), Err(NcError::BothWeightZero));
    }

    #[test]
    fn display() {
        let p = NCPoly::<Q>::b(3, 1)
            .mul(&NCPoly::d(3))
            .unwrap()
            .scale(&q(1, 2));
        assert_eq!(p.to_string(), "(1/2)*b1·d");
        assert_eq!(NCPoly::<Q>::zero(1).to_string(), "0");
    }
}
