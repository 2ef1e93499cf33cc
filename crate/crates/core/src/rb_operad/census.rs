use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{nested_to_rf, NestedRBMon, RbError};
use crate::exact::{FactorMultiset, FactoredRatFn, MPoly, QRatFn, TruncSeries, UPoly};
use crate::scalar::{binomial, factorial};
use crate::symgroup::eulerian_poly;

type Q = BigRational;

/// Visit every strict chain of nonempty subsets of `{1..n}` with positive
/// exponents summing to `weight`.
fn for_each_chain(n: usize, weight: u32, f: &mut dyn FnMut(&[u32], &[u32])) {
    fn rec(
        n: usize,
        prev: u32,
        left: u32,
        chain: &mut Vec<u32>,
        exps: &mut Vec<u32>,
        f: &mut dyn FnMut(&[u32], &[u32]),
    ) {
        if left == 0 {
            f(chain, exps);
            return;
        }
        let full = (1u32 << n) - 1;
        for mask in (prev + 1)..=full {
            if mask & prev != prev {
                continue;
            }
            for e in 1..=left {
                chain.push(mask);
                exps.push(e);
                rec(n, mask, left - e, chain, exps, f);
                chain.pop();
                exps.pop();
            }
        }
    }
    assert!((1..32).contains(&n), "arity out of range");
    rec(n, 0, weight, &mut Vec::new(), &mut Vec::new(), f);
}

/// All nested monomials of arity `n` and weight exactly `weight`.
pub fn monomials(n: usize, weight: u32) -> Vec<NestedRBMon> {
    let mut out = Vec::new();
    for_each_chain(n, weight, &mut |c, e| {
        out.push(NestedRBMon::new(n, c.to_vec(), e.to_vec()))
    });
    out
}

/// Number of nested monomials of arity `n` in each weight `0..=dmax`.
pub fn census(n: usize, dmax: u32) -> Result<Vec<u64>, RbError> {
    if !(1..=12).contains(&n) {
        return Err(RbError::Bounds(format!("arity {n} outside 1..=12")));
    }
    Ok((0..=dmax)
        .map(|d| {
            let mut count = 0u64;
            for_each_chain(n, d, &mut |_, _| count += 1);
            count
        })
        .collect())
}

/// Coefficients of `q^0..q^dmax` in `P_n(q)/(1-q)^n`.
pub fn hilbert_coeffs(n: usize, dmax: u32) -> Result<Vec<BigInt>, RbError> {
    let p = eulerian_poly::<Q>(n).map_err(|e| RbError::Bounds(e.to_string()))?;
    Ok((0..=dmax as usize)
        .map(|d| {
            // 1/(1-q)^n = Σ_k binom(k+n-1, n-1) q^k
            (0..=d.min(n - 1)).fold(BigInt::zero(), |acc, j| {
                acc + p.coeff(j).to_integer() * binomial((d - j + n - 1) as u64, (n - 1) as u64)
            })
        })
        .collect())
}

/// One coefficient comparison of the Poincaré-series inversion.
#[derive(Clone, Debug, PartialEq)]
pub struct PoincareRow {
    pub n: usize,
    pub computed: QRatFn,
    pub expected: QRatFn,
}

impl PoincareRow {
    pub fn matches(&self) -> bool {
        self.computed == self.expected
    }
}

/// Invert `Σ_{n≥1} (-1)^{n-1} t^n (1-q^n)/n` to order `maxn` and compare the
/// coefficient of `t^n` with `P_n(q) / (n! (1-q)^n)`.
pub fn poincare_inverse_check(maxn: usize) -> Result<Vec<PoincareRow>, RbError> {
    if maxn > 8 {
        return Err(RbError::Bounds(format!("order {maxn} above 8")));
    }
    let one = UPoly::<Q>::constant(Q::one());
    let f = TruncSeries::from_fn(maxn, |n| {
        let sign = if n % 2 == 1 { Q::one() } else { -Q::one() };
        let num = one.clone() - UPoly::monomial(Q::one(), n);
        QRatFn::from_poly(num.scale(&(sign / Q::from_integer(n.into()))))
    });
    let g = f
        .comp_inverse()
        .map_err(|e| RbError::Bounds(e.to_string()))?;
    let one_minus_q = one.clone() - UPoly::var();
    (1..=maxn)
        .map(|n| {
            let p = eulerian_poly::<Q>(n).map_err(|e| RbError::Bounds(e.to_string()))?;
            let den = (0..n).fold(
                UPoly::constant(Q::from_integer(factorial(n as u64))),
                |acc, _| acc * one_minus_q.clone(),
            );
            Ok(PoincareRow {
                n,
                computed: g.coeff(n),
                expected: QRatFn::new(p, den),
            })
        })
        .collect()
}

/// Rank of a family of fractions of one arity as vectors over `ℚ`.
pub fn rank_over_q(fracs: &[FactoredRatFn<Q>]) -> usize {
    let Some(first) = fracs.first() else { return 0 };
    let n = first.nvars();
    let theta = first.theta().clone();
    let mut lcm = FactorMultiset::new();
    for f in fracs {
        for (j, &e) in f.denominator() {
            let slot = lcm.entry(*j).or_insert(0);
            *slot = (*slot).max(e);
        }
    }
    // numerators over the common denominator
    let rows: Vec<MPoly<Q>> = fracs
        .iter()
        .map(|f| {
            let cofactor = lcm.iter().fold(MPoly::one(n), |acc, (j, &e)| {
                let have = f.denominator().get(j).copied().unwrap_or(0);
                acc.mul(&j.expand(n, &theta).pow(e - have))
            });
            f.numerator().mul(&cofactor)
        })
        .collect();
    let mut columns: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
    for r in &rows {
        for (m, _) in r.terms() {
            let next = columns.len();
            columns.entry(m.clone()).or_insert(next);
        }
    }
    let mut matrix: Vec<Vec<Q>> = rows
        .iter()
        .map(|r| {
            let mut v = vec![Q::zero(); columns.len()];
            for (m, c) in r.terms() {
                v[columns[m]] = c.clone();
            }
            v
        })
        .collect();
    row_echelon_rank(&mut matrix)
}

fn row_echelon_rank(m: &mut [Vec<Q>]) -> usize {
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = m[rank][col].recip();
        for r in rank + 1..m.len() {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone() * inv.clone();
            let (upper, lower) = m.split_at_mut(r);
            for (x, p) in lower[0][col..ncols]
                .iter_mut()
                .zip(&upper[rank][col..ncols])
            {
                *x -= factor.clone() * p.clone();
            }
        }
        rank += 1;
    }
    rank
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InjectivityOutcome {
    pub monomials: usize,
    pub rank: usize,
}

impl InjectivityOutcome {
    pub fn full_rank(&self) -> bool {
        self.rank == self.monomials
    }
}

/// Rank of the `RF^θ` images of all nested monomials of arity `n` whose
/// weight lies in `weights`, at the given value of θ.
pub fn injectivity_check(
    n: usize,
    weights: &[u32],
    theta: &Q,
) -> Result<InjectivityOutcome, RbError> {
    if !(1..=4).contains(&n) || weights.iter().any(|&w| w > 4) {
        return Err(RbError::Bounds(
            "injectivity runs for n ≤ 4 and weights ≤ 4".into(),
        ));
    }
    let mons: Vec<NestedRBMon> = weights.iter().flat_map(|&w| monomials(n, w)).collect();
    let images: Vec<FactoredRatFn<Q>> = mons
        .iter()
        .map(|m| nested_to_rf(m, theta.clone()).into_value())
        .collect();
    Ok(InjectivityOutcome {
        monomials: mons.len(),
        rank: rank_over_q(&images),
    })
}

/// `R(z^k) = z^{k+1}/(k+1)` on `ℚ[z]`: check `R(z^a)R(z^b) = R(R(z^a)z^b + z^aR(z^b))`
/// for all `a, b ≤ amax`; returns the failing pairs.
pub fn rb_poly_model_check(amax: u32) -> Vec<(u32, u32)> {
    let integrate = |p: &UPoly<Q>| -> UPoly<Q> {
        let mut cs = vec![Q::zero()];
        cs.extend(
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(k, c)| c / Q::from_integer((k + 1).into())),
        );
        UPoly::new(cs)
    };
    let mono = |a: u32| UPoly::monomial(Q::one(), a as usize);
    let mut failures = Vec::new();
    for a in 0..=amax {
        for b in 0..=amax {
            let (x, y) = (mono(a), mono(b));
            let lhs = integrate(&x) * integrate(&y);
            let rhs = integrate(&(integrate(&x) * y.clone() + x.clone() * integrate(&y)));
            if lhs != rhs {
                failures.push((a, b));
            }
        }
    }
    failures
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    #[test]
    fn census_examples() {
        assert_eq!(census(1, 4).unwrap(), vec![1, 1, 1, 1, 1]);
        assert_eq!(census(2, 2).unwrap(), vec![1, 3, 5]);
        assert!(census(0, 2).is_err());
    }

    #[test]
    fn hilbert_examples() {
        let ints = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(hilbert_coeffs(1, 3).unwrap(), ints(&[1, 1, 1, 1]));
        assert_eq!(hilbert_coeffs(2, 3).unwrap(), ints(&[1, 3, 5, 7]));
        assert_eq!(hilbert_coeffs(3, 1).unwrap(), ints(&[1, 7]));
    }

    #[test]
    fn census_matches_hilbert() {
        for n in 1..=4 {
            let c = census(n, 4).unwrap();
            let h = hilbert_coeffs(n, 4).unwrap();
            assert_eq!(c.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>(), h);
        }
    }

    #[test]
    fn poincare_rows() {
        assert!(poincare_inverse_check(0).unwrap().is_empty());
        let rows = poincare_inverse_check(4).unwrap();
        assert!(rows.iter().all(PoincareRow::matches));
        // t^1 coefficient is 1/(1-q)
        let expect = QRatFn::new(
            UPoly::constant(q(1, 1)),
            UPoly::new(vec![q(1, 1), q(-1, 1)]),
        );
        assert_eq!(rows[0].computed, expect);
        assert!(poincare_inverse_check(9).is_err());
    }

    #[test]
    fn injectivity_examples() {
        for d in 0..=3 {
            assert!(injectivity_check(1, &[d], &q(0, 1)).unwrap().full_rank());
        }
        let out = injectivity_check(2, &[1], &q(0, 1)).unwrap();
        assert_eq!(
            out,
            InjectivityOutcome {
                monomials: 3,
                rank: 3
            }
        );
        assert!(injectivity_check(2, &[1], &q(1, 1)).unwrap().full_rank());
        assert!(injectivity_check(2, &[0, 1, 2], &q(2, 1))
            .unwrap()
            .full_rank());
    }

    #[test]
    fn rank_detects_dependence() {
        let th = q(0, 1);
        let zin = |a: usize| {
            FactoredRatFn::reciprocal(
                2,
                q(1, 1),
                &[
                    crate::exact::LinFactor::from_vars(&[a]),
                    crate::exact::LinFactor::from_vars(&[1, 2]),
                ],
                th.clone(),
            )
        };
        let prod = FactoredRatFn::reciprocal(
            2,
            q(1, 1),
            &[
                crate::exact::LinFactor::from_vars(&[1]),
                crate::exact::LinFactor::from_vars(&[2]),
            ],
            th.clone(),
        );
        assert_eq!(rank_over_q(&[zin(1), zin(2), prod]), 2);
    }

    #[test]
    fn polynomial_model() {
        assert!(rb_poly_model_check(0).is_empty());
        assert!(rb_poly_model_check(6).is_empty());
    }
}
