use num_rational::BigRational;
use num_traits::Zero;

use super::{NCPoly, NcError};
use crate::rf_operad::gn_terms;
use crate::scalar::Field;

type Q = BigRational;

/// `f_i = i·b_i`.
pub fn f_gen<S: Field>(bound: u32, i: u8) -> NCPoly<S> {
    NCPoly::b(bound, i).scale(&S::from_i64(i as i64))
}

/// `ad_{y_k} … ad_{y_1}(x)`: the first entry of `ys` is applied first.
pub fn ad_chain<S: Field>(ys: &[NCPoly<S>], x: &NCPoly<S>) -> Result<NCPoly<S>, NcError> {
    ys.iter().try_fold(x.clone(), |acc, y| y.bracket(&acc))
}

/// `a_1..a_W` from `a_n = [b_n, d] + Σ_{i+j=n} (i/n)[b_i, a_j]`.
pub fn a_sequence<S: Field>(bound: u32) -> Result<Vec<NCPoly<S>>, NcError> {
    let d = NCPoly::d(bound);
    let mut a: Vec<NCPoly<S>> = Vec::with_capacity(bound as usize);
    for n in 1..=bound {
        let mut an = NCPoly::b(bound, n as u8).bracket(&d)?;
        for i in 1..n {
            let j = n - i;
            let term = NCPoly::b(bound, i as u8).bracket(&a[j as usize - 1])?;
            an = an.add(&term.scale(&S::from_ratio(i as i64, n as i64)))?;
        }
        a.push(an);
    }
    Ok(a)
}

/// `λ_n = n·a_n`.
pub fn lambda_sequence<S: Field>(bound: u32) -> Result<Vec<NCPoly<S>>, NcError> {
    Ok(a_sequence::<S>(bound)?
        .into_iter()
        .enumerate()
        .map(|(k, a)| a.scale(&S::from_i64(k as i64 + 1)))
        .collect())
}

/// Visit every composition of each total `≤ max_total` into `parts` positive parts.
pub fn for_each_composition(parts: usize, max_total: u32, f: &mut dyn FnMut(&[u32])) {
    fn rec(parts: usize, left: u32, cur: &mut Vec<u32>, f: &mut dyn FnMut(&[u32])) {
        if cur.len() == parts {
            f(cur);
            return;
        }
        let still = (parts - cur.len() - 1) as u32;
        for i in 1..=left.saturating_sub(still) {
            cur.push(i);
            rec(parts, left - i, cur, f);
            cur.pop();
        }
    }
    if parts as u32 > max_total {
        return;
    }
    rec(parts, max_total, &mut Vec::new(), f);
}

/// `ξ = Σ_n Σ_{i_1..i_n} G_n(i_1, …, i_n) ad_{f_{i_n}} … ad_{f_{i_2}}(f_{i_1})`
/// truncated at weight `bound`.
pub fn xi_element<S: Field>(bound: u32) -> Result<NCPoly<S>, NcError> {
    let mut xi = NCPoly::zero(bound);
    for n in 1..=bound as usize {
        let g = gn_terms(n, Q::zero()).map_err(|e| NcError::Coefficient(e.to_string()))?;
        let mut err = None;
        for_each_composition(n, bound, &mut |idx| {
            if err.is_some() {
                return;
            }
            let point: Vec<Q> = idx.iter().map(|&i| Q::from_integer(i.into())).collect();
            let step = || -> Result<NCPoly<S>, NcError> {
                let c = g
                    .eval(&point)
                    .ok_or_else(|| NcError::Coefficient("pole at a positive point".into()))?;
                let c = S::from_rational(&c)
                    .ok_or_else(|| NcError::Coefficient("scalar ring lacks ℚ".into()))?;
                let fs: Vec<NCPoly<S>> = idx[1..].iter().map(|&i| f_gen(bound, i as u8)).collect();
                Ok(ad_chain(&fs, &f_gen(bound, idx[0] as u8))?.scale(&c))
            };
            match step().and_then(|t| xi.add(&t)) {
                Ok(sum) => xi = sum,
                Err(e) => err = Some(e),
            }
        });
        if let Some(e) = err {
            return Err(e);
        }
    }
    Ok(xi)
}

/// `Σ_k ad_x^k(target)/k!`; `x` must have no weight-0 component.
pub fn exp_ad<S: Field>(x: &NCPoly<S>, target: &NCPoly<S>) -> Result<NCPoly<S>, NcError> {
    if x.min_weight() == Some(0) {
        return Err(NcError::WeightZeroComponent);
    }
    let mut sum = target.clone();
    let mut term = target.clone();
    let mut k = 1i64;
    while !term.is_zero() {
        term = x.bracket(&term)?.scale(&S::from_ratio(1, k));
        sum = sum.add(&term)?;
        k += 1;
    }
    Ok(sum)
}

/// `β^{≺1} = β`, `β^{≺(k+1)} = β ≺ β^{≺k}` with `β = Σ_{i ≤ W} b_i`; all `k ≥ 1`.
pub fn prec_powers<S: Field>(bound: u32) -> Result<Vec<NCPoly<S>>, NcError> {
    let beta = (1..=bound).try_fold(NCPoly::zero(bound), |acc, i| {
        acc.add(&NCPoly::b(bound, i as u8))
    })?;
    let mut out = Vec::new();
    let mut p = beta.clone();
    while !p.is_zero() {
        let next = beta.prec(&p)?;
        out.push(p);
        p = next;
    }
    Ok(out)
}

/// `1 + Σ_{k ≥ 1} β^{≺k}` truncated at weight `bound`.
pub fn group_element<S: Field>(bound: u32) -> Result<NCPoly<S>, NcError> {
    prec_powers::<S>(bound)?
        .iter()
        .try_fold(NCPoly::one(bound), |acc, p| acc.add(p))
}

/// `Σ_k (-1)^{k+1} (p - 1)^k / k`; `p` must have constant term 1.
pub fn nc_log<S: Field>(p: &NCPoly<S>) -> Result<NCPoly<S>, NcError> {
    let one = NCPoly::one(p.bound());
    if p.coeff(&super::NCWord::unit()) != S::one() {
        return Err(NcError::ConstantTermNotOne);
    }
    let x = p.sub(&one)?;
    if x.min_weight() == Some(0) {
        return Err(NcError::WeightZeroComponent);
    }
    let mut sum = NCPoly::zero(p.bound());
    let mut power = x.clone();
    let mut k = 1i64;
    while !power.is_zero() {
        let c = S::from_ratio(if k % 2 == 1 { 1 } else { -1 }, k);
        sum = sum.add(&power.scale(&c))?;
        power = power.mul(&x)?;
        k += 1;
    }
    Ok(sum)
}
