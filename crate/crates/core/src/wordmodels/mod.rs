//! Multilinear words with the shuffle and half-shuffle products and the
//! deconcatenation coproduct, the convolution logarithm of the identity,
//! and the dictionary sending words to rational functions.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exact::FactoredRatFn;
use crate::rf_operad::{chain_fraction, RFElem};
use crate::symgroup::{GroupAlgElem, Perm};

type Q = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("letter {0} repeated")]
    RepeatedLetter(u8),
    #[error("letters must be positive")]
    ZeroLetter,
    #[error("words share letter {0}")]
    Overlap(u8),
    #[error("half-shuffle needs a nonempty right factor")]
    EmptyRight,
    #[error("letters of {0} are not exactly 1..n")]
    NotStandard(Word),
    #[error("order {0} above 6")]
    TooLarge(usize),
}

/// A word of pairwise distinct positive letters.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn new(letters: Vec<u8>) -> Result<Self, WordError> {
        if letters.contains(&0) {
            return Err(WordError::ZeroLetter);
        }
        let mut sorted = letters.clone();
        sorted.sort_unstable();
        if let Some(pair) = sorted.windows(2).find(|p| p[0] == p[1]) {
            return Err(WordError::RepeatedLetter(pair[0]));
        }
        Ok(Word(letters))
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn check_disjoint(&self, other: &Self) -> Result<(), WordError> {
        match self.0.iter().find(|l| other.0.contains(l)) {
            Some(&l) => Err(WordError::Overlap(l)),
            None => Ok(()),
        }
    }

    /// One-line permutation when the letters are exactly `1..n`.
    pub fn to_perm(&self) -> Result<Perm, WordError> {
        let one_line: Vec<usize> = self.0.iter().map(|&l| l as usize).collect();
        Perm::from_one_line(&one_line).map_err(|_| WordError::NotStandard(self.clone()))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("∅");
        }
        let sep = if self.0.iter().any(|&l| l > 9) {
            ","
        } else {
            ""
        };
        let parts: Vec<String> = self.0.iter().map(u8::to_string).collect();
        f.write_str(&parts.join(sep))
    }
}

/// A rational linear combination of words.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct TensorElem(BTreeMap<Word, Q>);

impl TensorElem {
    pub fn zero() -> Self {
        TensorElem(BTreeMap::new())
    }

    pub fn word(w: Word) -> Self {
        let mut t = Self::zero();
        t.add_term(w, Q::one());
        t
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Q)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> Q {
        self.0.get(w).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, w: Word, c: Q) {
        if c.is_zero() {
            return;
        }
        let v = self.0.remove(&w).unwrap_or_else(Q::zero) + c;
        if !v.is_zero() {
            self.0.insert(w, v);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.0 {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = Self::zero();
        for (w, v) in &self.0 {
            out.add_term(w.clone(), v * c);
        }
        out
    }

    fn bilinear(
        &self,
        other: &Self,
        op: impl Fn(&Word, &Word) -> Result<TensorElem, WordError>,
    ) -> Result<Self, WordError> {
        let mut out = Self::zero();
        for (u, a) in &self.0 {
            for (v, b) in &other.0 {
                for (w, c) in op(u, v)?.0 {
                    out.add_term(w, c * a * b);
                }
            }
        }
        Ok(out)
    }

    pub fn shuffle(&self, other: &Self) -> Result<Self, WordError> {
        self.bilinear(other, shuffle)
    }

    pub fn half_shuffle(&self, other: &Self) -> Result<Self, WordError> {
        self.bilinear(other, half_shuffle)
    }
}

impl fmt::Display for TensorElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(w, c)| {
                if c.is_one() {
                    w.to_string()
                } else {
                    format!("({c})*{w}")
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

fn interleave(u: &[u8], v: &[u8], prefix: &mut Vec<u8>, out: &mut TensorElem) {
    match (u.split_first(), v.split_first()) {
        (None, _) | (_, None) => {
            let mut w = prefix.clone();
            w.extend_from_slice(u);
            w.extend_from_slice(v);
            out.add_term(Word(w), Q::one());
        }
        (Some((&a, ur)), Some((&b, vr))) => {
            prefix.push(a);
            interleave(ur, v, prefix, out);
            prefix.pop();
            prefix.push(b);
            interleave(u, vr, prefix, out);
            prefix.pop();
        }
    }
}

/// All interleavings of `u` and `v`.
pub fn shuffle(u: &Word, v: &Word) -> Result<TensorElem, WordError> {
    u.check_disjoint(v)?;
    let mut out = TensorElem::zero();
    interleave(&u.0, &v.0, &mut Vec::new(), &mut out);
    Ok(out)
}

/// Interleavings of `u` and `v` in which the last letter of `v` stays last.
pub fn half_shuffle(u: &Word, v: &Word) -> Result<TensorElem, WordError> {
    u.check_disjoint(v)?;
    let Some((&last, init)) = v.0.split_last() else {
        return Err(WordError::EmptyRight);
    };
    let mut out = TensorElem::zero();
    for (w, c) in shuffle(u, &Word(init.to_vec()))?.0 {
        let mut w = w.0;
        w.push(last);
        out.add_term(Word(w), c);
    }
    Ok(out)
}

/// Every splitting `w = u·v`, empty parts included.
pub fn deconcat(w: &Word) -> Vec<(Word, Word)> {
    (0..=w.len())
        .map(|k| (Word(w.0[..k].to_vec()), Word(w.0[k..].to_vec())))
        .collect()
}

/// `log(id)` in the convolution algebra of (shuffle, deconcatenation),
/// evaluated on `12…n` and read as a group-algebra element through the
/// one-line permutation of each word.
pub fn conv_log_identity(n: usize) -> Result<GroupAlgElem<Q>, WordError> {
    if n > 6 {
        return Err(WordError::TooLarge(n));
    }
    if n == 0 {
        return Ok(GroupAlgElem::zero(0));
    }
    // J^{*k}(12…n) is the shuffle of the k consecutive blocks of each
    // composition of n into k parts; log(ε + J) = Σ (-1)^{k+1} J^{*k} / k.
    let mut total = TensorElem::zero();
    for cuts in 0u32..(1 << (n - 1)) {
        let k = cuts.count_ones() as i64 + 1;
        let mut blocks = Vec::new();
        let mut start = 0;
        for i in 1..=n {
            if i == n || cuts >> (i - 1) & 1 == 1 {
                blocks.push(Word((start as u8 + 1..=i as u8).collect()));
                start = i;
            }
        }
        let mut prod = TensorElem::word(blocks[0].clone());
        for b in &blocks[1..] {
            prod = prod.shuffle(&TensorElem::word(b.clone()))?;
        }
        let sign = if k % 2 == 1 { 1 } else { -1 };
        total = total.add(&prod.scale(&Q::new(sign.into(), k.into())));
    }
    let terms: Vec<(Perm, Q)> = total
        .0
        .into_iter()
        .map(|(w, c)| Ok((w.to_perm()?, c)))
        .collect::<Result<_, WordError>>()?;
    Ok(GroupAlgElem::from_terms(n, terms).expect("words on 1..n give permutations of n"))
}

fn check_standard(w: &Word) -> Result<(), WordError> {
    w.to_perm().map(|_| ())
}

/// `∏_{j=1}^{n-1} 1/(x_{w_1}+…+x_{w_j})` at θ = 0; the dictionary matching a
/// word with the left-nested `ν`-comb in its letters.
pub fn word_to_fraction(w: &Word) -> Result<RFElem<Q>, WordError> {
    check_standard(w)?;
    Ok(RFElem::new(chain_fraction(
        w.len(),
        &letters_usize(w),
        w.len().saturating_sub(1),
        Q::zero(),
    )))
}

/// `∏_{j=1}^{n} 1/(x_{w_1}+…+x_{w_j})` at θ = 0 on `nvars ≥ max letter`
/// variables; the variant under which shuffles become products.
pub fn word_to_full_fraction(w: &Word, nvars: usize) -> FactoredRatFn<Q> {
    chain_fraction(nvars, &letters_usize(w), w.len(), Q::zero())
}

/// Partial-sum fraction `∏_{j=1}^{n-1}` on `nvars` variables, for words
/// whose letters are any subset of `1..=nvars`.
pub fn word_to_fraction_in(w: &Word, nvars: usize) -> FactoredRatFn<Q> {
    chain_fraction(
        nvars,
        &letters_usize(w),
        w.len().saturating_sub(1),
        Q::zero(),
    )
}

/// Linear extension of [`word_to_fraction_in`] (or of the full variant when
/// `full` is set) to a combination of words.
pub fn tensor_to_fraction(t: &TensorElem, nvars: usize, full: bool) -> FactoredRatFn<Q> {
    let fracs: Vec<(Q, FactoredRatFn<Q>)> = t
        .terms()
        .map(|(w, c)| {
            let f = if full {
                word_to_full_fraction(w, nvars)
            } else {
                word_to_fraction_in(w, nvars)
            };
            (c.clone(), f)
        })
        .collect();
    FactoredRatFn::sum(nvars, Q::zero(), fracs.iter().map(|(c, f)| (c.clone(), f)))
        .expect("all fractions share arity and θ")
}

fn letters_usize(w: &Word) -> Vec<usize> {
    w.0.iter().map(|&l| l as usize).collect()
}

/// The letters of `w` relabelled `1..n` in the same relative order.
pub fn standardize(w: &Word) -> Word {
    let mut sorted = w.0.clone();
    sorted.sort_unstable();
    Word(
        w.0.iter()
            .map(|l| sorted.iter().position(|m| m == l).unwrap() as u8 + 1)
            .collect(),
    )
}

/// `ν ∘ (F_u, F_v)` in `RF^0`, relabelled so that block variables are the
/// letters of `u` and `v`; the letters of `u` and `v` together must be `1..n`.
pub fn nu_compose_words(u: &Word, v: &Word) -> Result<RFElem<Q>, WordError> {
    u.check_disjoint(v)?;
    if u.is_empty() || v.is_empty() {
        return Err(WordError::EmptyRight);
    }
    let fu = word_to_fraction(&standardize(u))?;
    let fv = word_to_fraction(&standardize(v))?;
    let nu = RFElem::nu(Q::zero());
    let composed = nu
        .compose(&fv, 2)
        .and_then(|h| h.compose(&fu, 1))
        .expect("slots are in range and θ agrees");
    let mut order: Vec<usize> = u.0.iter().map(|&l| l as usize).collect();
    order.sort_unstable();
    let mut right: Vec<usize> = v.0.iter().map(|&l| l as usize).collect();
    right.sort_unstable();
    order.extend(right);
    let p = Perm::from_one_line(&order)
        .map_err(|_| WordError::NotStandard(Word(u.0.iter().chain(&v.0).copied().collect())))?;
    Ok(composed.act(&p).expect("permutation size equals arity"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;
    use crate::symgroup::eulerian_idempotent;

    fn w(s: &[u8]) -> Word {
        Word::new(s.to_vec()).unwrap()
    }

    fn sum(ws: &[&[u8]]) -> TensorElem {
        ws.iter().fold(TensorElem::zero(), |acc, x| {
            acc.add(&TensorElem::word(w(x)))
        })
    }

    #[test]
    fn word_validation() {
        assert_eq!(Word::new(vec![1, 1]), Err(WordError::RepeatedLetter(1)));
        assert_eq!(Word::new(vec![0]), Err(WordError::ZeroLetter));
        assert!(Word::new(vec![1, 65]).is_ok());
    }

    #[test]
    fn shuffle_examples() {
        assert_eq!(
            shuffle(&w(&[1]), &w(&[2])).unwrap(),
            sum(&[&[1, 2], &[2, 1]])
        );
        assert_eq!(
            shuffle(&w(&[1]), &w(&[2, 3])).unwrap(),
            sum(&[&[1, 2, 3], &[2, 1, 3], &[2, 3, 1]])
        );
        assert_eq!(
            shuffle(&w(&[1, 2]), &Word::empty()).unwrap(),
            sum(&[&[1, 2]])
        );
        assert_eq!(shuffle(&w(&[1]), &w(&[1])), Err(WordError::Overlap(1)));
    }

    #[test]
    fn half_shuffle_examples() {
        assert_eq!(half_shuffle(&w(&[1]), &w(&[2])).unwrap(), sum(&[&[1, 2]]));
        assert_eq!(
            half_shuffle(&w(&[1, 2]), &w(&[3])).unwrap(),
            sum(&[&[1, 2, 3]])
        );
        assert_eq!(
            half_shuffle(&w(&[1]), &w(&[2, 3])).unwrap(),
            sum(&[&[1, 2, 3], &[2, 1, 3]])
        );
        assert_eq!(
            half_shuffle(&w(&[1]), &Word::empty()),
            Err(WordError::EmptyRight)
        );
    }

    #[test]
    fn deconcat_examples() {
        assert_eq!(
            deconcat(&Word::empty()),
            vec![(Word::empty(), Word::empty())]
        );
        assert_eq!(deconcat(&w(&[1, 2])).len(), 3);
        assert_eq!(deconcat(&w(&[1, 2]))[1], (w(&[1]), w(&[2])));
        assert_eq!(deconcat(&w(&[1, 2, 3])).len(), 4);
    }

    #[test]
    fn conv_log_examples() {
        assert_eq!(conv_log_identity(1).unwrap(), GroupAlgElem::identity(1));
        let two = conv_log_identity(2).unwrap();
        assert_eq!(two.coeff(&Perm::identity(2)), q(1, 2));
        assert_eq!(two.coeff(&Perm::from_one_line(&[2, 1]).unwrap()), q(-1, 2));
        for n in 1..=4 {
            let e = eulerian_idempotent::<Q>(n).unwrap().invert_perms();
            assert_eq!(conv_log_identity(n).unwrap(), e);
        }
        assert!(conv_log_identity(7).is_err());
    }

    #[test]
    fn fractions() {
        let x = |vars: &[usize]| crate::exact::LinFactor::from_vars(vars);
        let f12 = word_to_fraction(&w(&[1, 2])).unwrap();
        assert_eq!(
            f12.value(),
            &FactoredRatFn::reciprocal(2, q(1, 1), &[x(&[1])], q(0, 1))
        );
        let f21 = word_to_fraction(&w(&[2, 1])).unwrap();
        assert_eq!(
            f21.value(),
            &FactoredRatFn::reciprocal(2, q(1, 1), &[x(&[2])], q(0, 1))
        );
        let f123 = word_to_fraction(&w(&[1, 2, 3])).unwrap();
        assert_eq!(
            f123.value(),
            &FactoredRatFn::reciprocal(3, q(1, 1), &[x(&[1]), x(&[1, 2])], q(0, 1))
        );
        assert!(word_to_fraction(&w(&[1, 3])).is_err());
    }

    #[test]
    fn nu_composition_matches_half_shuffle() {
        let (u, v) = (w(&[2]), w(&[3, 1]));
        let lhs = half_shuffle(&u, &v).unwrap();
        assert!(tensor_to_fraction(&lhs, 3, false)
            .try_eq(nu_compose_words(&u, &v).unwrap().value())
            .unwrap());
    }

    #[test]
    fn shuffle_is_product_of_full_fractions() {
        let (u, v) = (w(&[3, 1]), w(&[2]));
        let lhs = tensor_to_fraction(&shuffle(&u, &v).unwrap(), 3, true);
        let rhs = word_to_full_fraction(&u, 3)
            .try_mul(&word_to_full_fraction(&v, 3))
            .unwrap();
        assert!(lhs.try_eq(&rhs).unwrap());
    }

    #[test]
    fn standardize_relabels() {
        assert_eq!(standardize(&w(&[5, 2, 9])), w(&[2, 1, 3]));
    }
}
