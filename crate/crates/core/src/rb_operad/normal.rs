use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::{RBExpr, RbError};
use crate::exact::{FactoredRatFn, LinFactor, ThetaScalar};
use crate::rf_operad::{RFElem, RfError};
use crate::scalar::Scalar;
use crate::symgroup::Perm;

/// Rewriting steps allowed per expression.
pub const STEP_BUDGET: usize = 1_000_000;

/// Which `R·R` pair is expanded next.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Deepest redex first, scanning left to right; its first two `R` factors.
    LeftmostInnermost,
    /// Shallowest redex first, scanning right to left; its last two `R` factors.
    RightmostOutermost,
}

/// Chain `I_1 ⊊ … ⊊ I_k ⊆ {1..n}` with exponents `d_1..d_k ≥ 1`, standing
/// for `R^{d_k}(… R^{d_1}(a_{I_1}) a_{I_2 ∖ I_1} …) a_{[n] ∖ I_k}`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct NestedRBMon {
    n: usize,
    chain: Vec<u32>,
    exps: Vec<u32>,
}

impl NestedRBMon {
    /// Panics unless the chain is strictly increasing and exponents positive.
    pub fn new(n: usize, chain: Vec<u32>, exps: Vec<u32>) -> Self {
        assert_eq!(chain.len(), exps.len());
        assert!(exps.iter().all(|&e| e >= 1), "exponents must be positive");
        assert!(
            chain.iter().all(|&m| m != 0 && (n >= 32 || m >> n == 0)),
            "subset outside 1..{n}"
        );
        for w in chain.windows(2) {
            assert!(
                w[0] & w[1] == w[0] && w[0] != w[1],
                "chain must be strictly nested"
            );
        }
        NestedRBMon { n, chain, exps }
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn chain(&self) -> &[u32] {
        &self.chain
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn weight(&self) -> u32 {
        self.exps.iter().sum()
    }

    /// Normal-form tree with leaves outside each layer multiplied in.
    pub fn to_expr(&self) -> RBExpr {
        let leaves = |mask: u32| -> Vec<RBExpr> {
            (0..self.n)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| RBExpr::leaf(i + 1))
                .collect()
        };
        let full = if self.n >= 32 {
            u32::MAX
        } else {
            (1u32 << self.n) - 1
        };
        let mut inner: Option<RBExpr> = None;
        let mut prev = 0u32;
        for (&mask, &e) in self.chain.iter().zip(&self.exps) {
            let mut factors = leaves(mask & !prev);
            factors.extend(inner.take());
            let mut t = RBExpr::mul(factors);
            for _ in 0..e {
                t = RBExpr::r(t);
            }
            inner = Some(t);
            prev = mask;
        }
        let mut factors = leaves(full & !prev);
        factors.extend(inner);
        RBExpr::mul(factors)
    }
}

impl fmt::Display for NestedRBMon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.chain.is_empty() {
            return f.write_str("[]");
        }
        let sets: Vec<String> = self
            .chain
            .iter()
            .map(|&m| LinFactor::from_mask(m).to_string())
            .collect();
        let exps: Vec<String> = self.exps.iter().map(u32::to_string).collect();
        write!(f, "[{}; {}]", sets.join("⊂"), exps.join(","))
    }
}

/// Linear combination of nested monomials of one arity.
#[derive(Clone, PartialEq, Debug)]
pub struct RBLinComb {
    n: usize,
    terms: BTreeMap<NestedRBMon, ThetaScalar>,
}

impl RBLinComb {
    pub fn zero(n: usize) -> Self {
        RBLinComb {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn add_term(&mut self, m: NestedRBMon, c: ThetaScalar) {
        assert_eq!(m.arity(), self.n);
        let slot = self
            .terms
            .entry(m.clone())
            .or_insert_with(ThetaScalar::zero);
        *slot = slot.clone() + c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&NestedRBMon, &ThetaScalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &NestedRBMon) -> ThetaScalar {
        self.terms.get(m).cloned().unwrap_or_else(ThetaScalar::zero)
    }

    /// Image in `RF^θ` as the sum of the monomial images.
    pub fn to_rf(&self, theta: &ThetaScalar) -> Result<RFElem<ThetaScalar>, RfError> {
        let images: Vec<(ThetaScalar, FactoredRatFn<ThetaScalar>)> = self
            .terms
            .iter()
            .map(|(m, c)| (c.clone(), nested_to_rf(m, theta.clone()).into_value()))
            .collect();
        let sum = FactoredRatFn::sum(
            self.n,
            theta.clone(),
            images.iter().map(|(c, f)| (c.clone(), f)),
        )?;
        Ok(RFElem::new(sum))
    }
}

impl fmt::Display for RBLinComb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                if c.is_one() {
                    m.to_string()
                } else {
                    format!("({c})*{m}")
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// `1 / ∏_j (F^θ_{I_j})^{d_j}`.
pub fn nested_to_rf<C: Scalar>(m: &NestedRBMon, theta: C) -> RFElem<C> {
    let mut factors = Vec::new();
    for (&mask, &e) in m.chain.iter().zip(&m.exps) {
        factors.extend(std::iter::repeat_n(LinFactor::from_mask(mask), e as usize));
    }
    RFElem::new(FactoredRatFn::reciprocal(m.n, C::one(), &factors, theta))
}

fn r_count(children: &[RBExpr]) -> usize {
    children
        .iter()
        .filter(|c| matches!(c, RBExpr::R(_)))
        .count()
}

/// Path of child indices to a product with two `R` factors, plus the two
/// factor positions to expand.
fn find_redex(t: &RBExpr, strategy: Strategy) -> Option<(Vec<usize>, usize, usize)> {
    fn here(cs: &[RBExpr], strategy: Strategy) -> Option<(usize, usize)> {
        if r_count(cs) < 2 {
            return None;
        }
        let rs: Vec<usize> = (0..cs.len())
            .filter(|&i| matches!(cs[i], RBExpr::R(_)))
            .collect();
        Some(match strategy {
            Strategy::LeftmostInnermost => (rs[0], rs[1]),
            Strategy::RightmostOutermost => (rs[rs.len() - 2], rs[rs.len() - 1]),
        })
    }
    fn walk(t: &RBExpr, strategy: Strategy, path: &mut Vec<usize>) -> Option<(usize, usize)> {
        match t {
            RBExpr::Leaf(_) => None,
            RBExpr::R(c) => {
                path.push(0);
                let found = walk(c, strategy, path);
                if found.is_none() {
                    path.pop();
                }
                found
            }
            RBExpr::Mul(cs) => {
                if strategy == Strategy::RightmostOutermost {
                    if let Some(p) = here(cs, strategy) {
                        return Some(p);
                    }
                }
                let order: Vec<usize> = match strategy {
                    Strategy::LeftmostInnermost => (0..cs.len()).collect(),
                    Strategy::RightmostOutermost => (0..cs.len()).rev().collect(),
                };
                for i in order {
                    path.push(i);
                    if let Some(p) = walk(&cs[i], strategy, path) {
                        return Some(p);
                    }
                    path.pop();
                }
                if strategy == Strategy::LeftmostInnermost {
                    return here(cs, strategy);
                }
                None
            }
        }
    }
    let mut path = Vec::new();
    walk(t, strategy, &mut path).map(|(i, j)| (path, i, j))
}

/// `R(u)R(v)·rest → R(R(u)v)·rest + R(uR(v))·rest + θ R(uv)·rest`.
fn expand_pair(
    cs: &[RBExpr],
    i: usize,
    j: usize,
    theta: &ThetaScalar,
) -> Vec<(ThetaScalar, RBExpr)> {
    let inner = |k: usize| match &cs[k] {
        RBExpr::R(c) => (**c).clone(),
        _ => unreachable!("redex factors are R nodes"),
    };
    let (u, v) = (inner(i), inner(j));
    let rest: Vec<RBExpr> = cs
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != i && k != j)
        .map(|(_, c)| c.clone())
        .collect();
    let with_rest =
        |core: RBExpr| RBExpr::mul(std::iter::once(RBExpr::r(core)).chain(rest.iter().cloned()));
    vec![
        (
            ThetaScalar::one(),
            with_rest(RBExpr::mul([RBExpr::r(u.clone()), v.clone()])),
        ),
        (
            ThetaScalar::one(),
            with_rest(RBExpr::mul([u.clone(), RBExpr::r(v.clone())])),
        ),
        (theta.clone(), with_rest(RBExpr::mul([u, v]))),
    ]
}

fn rewrite_at(
    t: &RBExpr,
    path: &[usize],
    i: usize,
    j: usize,
    theta: &ThetaScalar,
) -> Vec<(ThetaScalar, RBExpr)> {
    match (t, path.split_first()) {
        (RBExpr::Mul(cs), None) => expand_pair(cs, i, j, theta),
        (RBExpr::R(c), Some((_, rest))) => rewrite_at(c, rest, i, j, theta)
            .into_iter()
            .map(|(k, e)| (k, RBExpr::r(e)))
            .collect(),
        (RBExpr::Mul(cs), Some((&idx, rest))) => rewrite_at(&cs[idx], rest, i, j, theta)
            .into_iter()
            .map(|(k, e)| {
                let mut children = cs.clone();
                children[idx] = e;
                (k, RBExpr::mul(children))
            })
            .collect(),
        _ => unreachable!("redex path follows the tree"),
    }
}

/// Read off the nested monomial of a tree without `R·R` pairs.
fn monomial_of(t: &RBExpr, n: usize) -> NestedRBMon {
    fn chain(t: &RBExpr) -> (Vec<u32>, Vec<u32>) {
        match t {
            RBExpr::Leaf(_) => (Vec::new(), Vec::new()),
            RBExpr::Mul(cs) => {
                let rs: Vec<&RBExpr> = cs.iter().filter(|c| matches!(c, RBExpr::R(_))).collect();
                debug_assert!(
                    rs.len() <= 1,
                    "normal trees have at most one R factor per product"
                );
                rs.first().map(|r| chain(r)).unwrap_or_default()
            }
            RBExpr::R(c) => {
                let (mut ch, mut ex) = chain(c);
                let s = c.leaf_mask();
                if ch.last() == Some(&s) {
                    *ex.last_mut().unwrap() += 1;
                } else {
                    ch.push(s);
                    ex.push(1);
                }
                (ch, ex)
            }
        }
    }
    let (ch, ex) = chain(t);
    NestedRBMon::new(n, ch, ex)
}

/// Rewrite `e` with the weight-θ relation until no product has two `R`
/// factors, and collect the nested monomials. `theta` may be the
/// indeterminate or a constant.
pub fn rb_normalize(
    e: &RBExpr,
    theta: &ThetaScalar,
    strategy: Strategy,
) -> Result<RBLinComb, RbError> {
    let n = e.arity();
    let mut pending: BTreeMap<RBExpr, ThetaScalar> = BTreeMap::new();
    pending.insert(e.clone(), ThetaScalar::one());
    let mut out = RBLinComb::zero(n);
    let mut steps = 0usize;
    while let Some((t, c)) = pending.pop_first() {
        match find_redex(&t, strategy) {
            None => out.add_term(monomial_of(&t, n), c),
            Some((path, i, j)) => {
                steps += 1;
                if steps > STEP_BUDGET {
                    return Err(RbError::StepBudget(STEP_BUDGET));
                }
                for (k, t2) in rewrite_at(&t, &path, i, j, theta) {
                    let k = k * c.clone();
                    if k.is_zero() {
                        continue;
                    }
                    let slot = pending.entry(t2.clone()).or_insert_with(ThetaScalar::zero);
                    *slot = slot.clone() + k;
                    if slot.is_zero() {
                        pending.remove(&t2);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Image of `e` in `RF^θ` by composing `μ` and `R` along the tree.
pub fn rb_to_rf_direct<C: Scalar>(e: &RBExpr, theta: C) -> Result<RFElem<C>, RfError> {
    // value in the variables of the sorted leaf labels, plus those labels
    fn go<C: Scalar>(e: &RBExpr, theta: &C) -> Result<(RFElem<C>, Vec<usize>), RfError> {
        match e {
            RBExpr::Leaf(i) => Ok((RFElem::mu(1, theta.clone()), vec![*i as usize])),
            RBExpr::R(c) => {
                let (v, labels) = go(c, theta)?;
                Ok((RFElem::rb_operator(theta.clone()).compose(&v, 1)?, labels))
            }
            RBExpr::Mul(cs) => {
                let parts = cs
                    .iter()
                    .map(|c| go(c, theta))
                    .collect::<Result<Vec<_>, _>>()?;
                let mut f = RFElem::mu(cs.len(), theta.clone());
                for (slot, (v, _)) in parts.iter().enumerate().rev() {
                    f = f.compose(v, slot + 1)?;
                }
                let block: Vec<usize> = parts.iter().flat_map(|(_, l)| l.iter().copied()).collect();
                let mut sorted = block.clone();
                sorted.sort_unstable();
                let ranks: Vec<usize> = block
                    .iter()
                    .map(|l| sorted.binary_search(l).expect("label present") + 1)
                    .collect();
                let p = Perm::from_one_line(&ranks).expect("ranks form a permutation");
                Ok((f.act(&p)?, sorted))
            }
        }
    }
    Ok(go(e, &theta)?.0)
}
