//! Permutations, descent statistics and the group algebra `ℚ[S_n]` with the
//! first Eulerian idempotent and the V-shaped sums `V_i`.

mod groupalg;
mod perm;

use thiserror::Error;

pub use groupalg::{CompositionOrder, GroupAlgElem};
pub use perm::Perm;

use crate::exact::UPoly;
use crate::scalar::{eulerian_weight, Field};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymGroupError {
    #[error("not a permutation in one-line notation: {0:?}")]
    NotAPermutation(Vec<usize>),
    #[error("arity mismatch: S_{left} vs S_{right}")]
    ArityMismatch { left: usize, right: usize },
    #[error("arity must be at least 1")]
    EmptyArity,
    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
}

fn require_positive(n: usize) -> Result<(), SymGroupError> {
    if n < 1 {
        Err(SymGroupError::EmptyArity)
    } else {
        Ok(())
    }
}

/// `Σ_{ρ ∈ S_n} q^{des(ρ)}`.
pub fn eulerian_poly<C: Field>(n: usize) -> Result<UPoly<C>, SymGroupError> {
    require_positive(n)?;
    let mut counts = vec![0i64; n];
    for p in Perm::all(n) {
        counts[p.descents()] += 1;
    }
    Ok(UPoly::new(counts.into_iter().map(C::from_i64).collect()))
}

/// The `2^{n-1}` permutations decreasing to the position of 1 and increasing after it.
pub fn vshaped(n: usize) -> Result<Vec<Perm>, SymGroupError> {
    require_positive(n)?;
    // choose which of 2..n sit left of the 1; left part decreasing, right increasing
    let mut out = Vec::with_capacity(1 << (n - 1));
    for mask in 0u32..(1 << (n - 1)) {
        let (mut left, mut right) = (Vec::new(), Vec::new());
        for v in 2..=n {
            if mask >> (v - 2) & 1 == 1 {
                left.push(v);
            } else {
                right.push(v);
            }
        }
        left.reverse();
        left.push(1);
        left.extend(right);
        out.push(Perm::from_one_line(&left).expect("V-shaped word is a permutation"));
    }
    out.sort();
    Ok(out)
}

/// `E = (1/n) Σ_σ (-1)^{des σ} / binom(n-1, des σ) · σ`.
pub fn eulerian_idempotent<C: Field>(n: usize) -> Result<GroupAlgElem<C>, SymGroupError> {
    require_positive(n)?;
    let inv_n = C::from_ratio(1, n as i64);
    let mut e = GroupAlgElem::zero(n);
    for p in Perm::all(n) {
        let w = C::from_rational(&eulerian_weight(n, p.descents())).expect("field embeds ℚ");
        e.add_term(p, w * inv_n.clone());
    }
    Ok(e)
}

/// `V_i = (-1)^{i-1} Σ_{λ ∈ I_n, λ(i) = 1} λ`.
pub fn vi_element<C: Field>(n: usize, i: usize) -> Result<GroupAlgElem<C>, SymGroupError> {
    require_positive(n)?;
    if !(1..=n).contains(&i) {
        return Err(SymGroupError::IndexOutOfRange { index: i, n });
    }
    let sign = if i % 2 == 1 { C::one() } else { -C::one() };
    let mut v = GroupAlgElem::zero(n);
    for lam in vshaped(n)? {
        if lam.apply(i) == 1 {
            v.add_term(lam, sign.clone());
        }
    }
    Ok(v)
}
