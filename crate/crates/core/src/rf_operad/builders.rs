use super::{ConvFamily, RFElem, RfError};
use crate::exact::{FactoredRatFn, LinFactor};
use crate::scalar::{eulerian_weight, q, Scalar};
use crate::symgroup::{vshaped, Perm};

/// A formal linear combination of fractions of one arity, kept unexpanded
/// so it can be evaluated term by term or collapsed exactly.
#[derive(Clone, Debug)]
pub struct TermSum<C> {
    nvars: usize,
    theta: C,
    terms: Vec<(C, FactoredRatFn<C>)>,
}

impl<C: Scalar> TermSum<C> {
    pub fn new(nvars: usize, theta: C) -> Self {
        TermSum {
            nvars,
            theta,
            terms: Vec::new(),
        }
    }

    pub fn push(&mut self, c: C, f: FactoredRatFn<C>) {
        assert_eq!(f.nvars(), self.nvars);
        if !c.is_zero() {
            self.terms.push((c, f));
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(C, FactoredRatFn<C>)] {
        &self.terms
    }

    /// Exact sum over a common denominator.
    pub fn collapse(&self) -> Result<FactoredRatFn<C>, RfError> {
        let items = self.terms.iter().map(|(c, f)| (c.clone(), f));
        Ok(FactoredRatFn::sum(self.nvars, self.theta.clone(), items)?)
    }

    /// Value at a point; `None` if some term has a pole there.
    pub fn eval(&self, point: &[C]) -> Option<C> {
        self.terms.iter().try_fold(C::zero(), |acc, (c, f)| {
            Some(acc + c.clone() * f.eval(point)?)
        })
    }

    /// Apply the variable relabelling of the symmetric action to every term.
    pub fn act(&self, p: &Perm) -> Self {
        let map: Vec<usize> = p.one_line().iter().map(|v| v - 1).collect();
        let terms = self
            .terms
            .iter()
            .map(|(c, f)| (c.clone(), f.rename(&map, self.nvars)))
            .collect();
        TermSum {
            nvars: self.nvars,
            theta: self.theta.clone(),
            terms,
        }
    }

    pub fn extend(&mut self, c: &C, other: &Self) {
        for (d, f) in &other.terms {
            self.push(c.clone() * d.clone(), f.clone());
        }
    }
}

/// `∏_{j=1}^{len} 1/F(x_{w_1},...,x_{w_j})` for a sequence `w` of one-based
/// variables.
pub fn chain_fraction<C: Scalar>(
    nvars: usize,
    word: &[usize],
    len: usize,
    theta: C,
) -> FactoredRatFn<C> {
    let mut factors = Vec::with_capacity(len);
    let mut mask = 0u32;
    for &v in &word[..len] {
        mask |= 1 << (v - 1);
        factors.push(LinFactor::from_mask(mask));
    }
    FactoredRatFn::reciprocal(nvars, C::one(), &factors, theta)
}

fn require_positive(n: usize) -> Result<(), RfError> {
    if n < 1 {
        return Err(RfError::Precondition("arity must be at least 1".into()));
    }
    Ok(())
}

/// `(1/n) Σ_ρ (-1)^{d(ρ^{-1})}/binom(n-1, d(ρ^{-1})) ∏_{j=1}^{n} 1/(x_{ρ(1)}+…+x_{ρ(j)})`
/// over the permutations accepted by `keep`.
fn descent_weighted_sum<C: Scalar>(
    n: usize,
    theta: C,
    keep: impl Fn(&Perm) -> bool,
) -> Result<TermSum<C>, RfError> {
    require_positive(n)?;
    let inv_n = C::from_rational(&q(1, n as i64)).expect("coefficient ring contains the rationals");
    let mut sum = TermSum::new(n, theta.clone());
    for rho in Perm::all(n).filter(|p| keep(p)) {
        let w = C::from_rational(&eulerian_weight(n, rho.inverse().descents()))
            .expect("coefficient ring contains the rationals");
        sum.push(
            w * inv_n.clone(),
            chain_fraction(n, &rho.one_line(), n, theta.clone()),
        );
    }
    Ok(sum)
}

pub fn gn_terms<C: Scalar>(n: usize, theta: C) -> Result<TermSum<C>, RfError> {
    descent_weighted_sum(n, theta, |p| p.apply(1) == 1)
}

pub fn fn_terms<C: Scalar>(n: usize, theta: C) -> Result<TermSum<C>, RfError> {
    descent_weighted_sum(n, theta, |_| true)
}

/// `F_n(x) = Σ_{σ ∈ I_n} (-1)^{σ^{-1}(1)-1} G_n(x_{σ^{-1}(1)}, ..., x_{σ^{-1}(n)})`,
/// with `G_n` left as `g` (unexpanded or collapsed).
fn vshaped_signed_sum<C: Scalar>(g: &TermSum<C>) -> Result<TermSum<C>, RfError> {
    let n = g.nvars();
    let mut sum = TermSum::new(n, g.theta.clone());
    for sigma in vshaped(n).map_err(|e| RfError::Precondition(e.to_string()))? {
        let inv = sigma.inverse();
        let sign = if inv.apply(1) % 2 == 1 {
            C::one()
        } else {
            -C::one()
        };
        sum.extend(&sign, &g.act(&inv));
    }
    Ok(sum)
}

/// Route (b) as an unexpanded sum over `I_n × {ρ : ρ(1) = 1}`.
pub fn fn_vshaped_terms<C: Scalar>(n: usize, theta: C) -> Result<TermSum<C>, RfError> {
    vshaped_signed_sum(&gn_terms(n, theta)?)
}

pub fn build_gn<C: Scalar>(n: usize, theta: C) -> Result<RFElem<C>, RfError> {
    Ok(RFElem::new(gn_terms(n, theta)?.collapse()?))
}

/// `F_n` as the descent-weighted sum over all of `S_n`.
pub fn build_fn<C: Scalar>(n: usize, theta: C) -> Result<RFElem<C>, RfError> {
    Ok(RFElem::new(fn_terms(n, theta)?.collapse()?))
}

/// `F_n` as the signed sum of relabelled copies of `G_n`; `G_n` is
/// collapsed first so only `2^{n-1}` fractions are summed.
pub fn build_fn_via_vshaped<C: Scalar>(n: usize, theta: C) -> Result<RFElem<C>, RfError> {
    let g = build_gn(n, theta.clone())?.into_value();
    let mut collapsed = TermSum::new(n, theta);
    collapsed.push(C::one(), g);
    Ok(RFElem::new(vshaped_signed_sum(&collapsed)?.collapse()?))
}

/// `E_0 = 1`, `E_k = ∏_{j=1}^{k} 1/(x_1+…+x_j)`.
pub fn e_family<C: Scalar>(order: usize, theta: C) -> Result<ConvFamily<C>, RfError> {
    let ident: Vec<usize> = (1..=order).collect();
    ConvFamily::from_fn(order, theta.clone(), |k| {
        chain_fraction(k, &ident, k, theta.clone())
    })
}

/// `F_0 = 0`, `F_k = build_fn(k)`.
pub fn f_family<C: Scalar>(order: usize, theta: C) -> Result<ConvFamily<C>, RfError> {
    let mut components = vec![FactoredRatFn::zero(0, theta.clone())];
    for k in 1..=order {
        components.push(build_fn(k, theta.clone())?.into_value());
    }
    ConvFamily::new(components, theta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::{One, Zero};

    type Q = BigRational;

    fn recip(n: usize, facs: &[&[usize]]) -> FactoredRatFn<Q> {
        let fs: Vec<LinFactor> = facs.iter().map(|v| LinFactor::from_vars(v)).collect();
        FactoredRatFn::reciprocal(n, Q::one(), &fs, Q::zero())
    }

    #[test]
    fn g_examples() {
        assert_eq!(build_gn(1, Q::zero()).unwrap().value(), &recip(1, &[&[1]]));
        assert_eq!(
            build_gn(2, Q::zero()).unwrap().value(),
            &recip(2, &[&[1], &[1, 2]]).scale(&q(1, 2))
        );
        assert_eq!(gn_terms(3, Q::zero()).unwrap().len(), 2);
        assert!(build_gn::<Q>(0, Q::zero()).is_err());
    }

    #[test]
    fn f_examples() {
        assert_eq!(build_fn(1, Q::zero()).unwrap().value(), &recip(1, &[&[1]]));
        let expect = recip(2, &[&[1], &[1, 2]])
            .try_sub(&recip(2, &[&[2], &[1, 2]]))
            .unwrap()
            .scale(&q(1, 2));
        assert_eq!(build_fn(2, Q::zero()).unwrap().value(), &expect);
        assert_eq!(build_fn_via_vshaped(2, Q::zero()).unwrap().value(), &expect);
    }

    #[test]
    fn routes_agree_small() {
        for n in 1..=4 {
            let a = build_fn(n, Q::zero()).unwrap();
            let b = build_fn_via_vshaped(n, Q::zero()).unwrap();
            assert_eq!(a, b, "n = {n}");
        }
    }

    #[test]
    fn log_of_chain_family_small() {
        let e = e_family(3, Q::zero()).unwrap();
        let f = f_family(3, Q::zero()).unwrap();
        assert!(e.conv_log().unwrap().try_eq(&f).unwrap());
        assert!(f.conv_exp().unwrap().try_eq(&e).unwrap());
    }
}
