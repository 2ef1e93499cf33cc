//! Rational functions whose denominators are products of formal-group-law
//! blocks `F^θ_J`.

use std::collections::BTreeMap;
use std::fmt;

use super::{ExactError, MPoly};
use crate::scalar::Scalar;

/// A nonempty subset `J ⊆ {1..n}` standing for the polynomial `F^θ_J`,
/// the iterated formal group law `x + y + θxy` applied to the variables of
/// `J`. At `θ = 0` this is the plain subset sum.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct LinFactor(u32);

impl LinFactor {
    /// From a bitmask over zero-based variable indices.
    pub fn from_mask(mask: u32) -> Self {
        assert!(mask != 0, "factor subset must be nonempty");
        LinFactor(mask)
    }

    /// From one-based variable indices.
    pub fn from_vars(vars: &[usize]) -> Self {
        let mask = vars.iter().fold(0u32, |m, &v| {
            assert!((1..=32).contains(&v), "variable index {v} out of range");
            m | 1 << (v - 1)
        });
        Self::from_mask(mask)
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        false
    }

    pub fn contains(self, var: usize) -> bool {
        self.0 >> var & 1 == 1
    }

    /// Zero-based variable indices in increasing order.
    pub fn vars(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&i| self.0 >> i & 1 == 1)
    }

    pub fn max_var(self) -> usize {
        31 - self.0.leading_zeros() as usize
    }

    /// `F^θ_J = Σ_{∅≠K⊆J} θ^{|K|-1} x_K`.
    pub fn expand<C: Scalar>(self, nvars: usize, theta: &C) -> MPoly<C> {
        assert!(
            self.max_var() < nvars,
            "factor {self} exceeds arity {nvars}"
        );
        let mut p = MPoly::zero(nvars);
        let mask = self.0;
        let mut sub = mask;
        while sub != 0 {
            let k = sub.count_ones();
            let c = if k == 1 { C::one() } else { theta.pow(k - 1) };
            let mono = (0..nvars).map(|i| sub >> i & 1).collect();
            p.add_term(mono, c);
            sub = (sub - 1) & mask;
        }
        p
    }

    /// Evaluate `F^θ_J` at a point: `(∏(1 + θ x_j) - 1) / θ` unrolled.
    pub fn eval<C: Scalar>(self, point: &[C], theta: &C) -> C {
        let mut acc: Option<C> = None;
        for v in self.vars() {
            let x = point[v].clone();
            acc = Some(match acc {
                None => x,
                Some(a) => a.clone() + x.clone() + theta.clone() * a * x,
            });
        }
        acc.expect("nonempty factor")
    }

    pub fn map_vars(self, map: &[usize]) -> Self {
        LinFactor(self.vars().fold(0, |m, v| m | 1 << map[v]))
    }
}

impl fmt::Display for LinFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<String> = self.vars().map(|v| (v + 1).to_string()).collect();
        write!(f, "{{{}}}", vs.join(","))
    }
}

/// Multiset of family factors.
pub type FactorMultiset = BTreeMap<LinFactor, u32>;

/// An element of `k(x_1..x_n)` written as `numerator / ∏ F^θ_J^{e_J}`.
///
/// `theta` is the value of the formal-group-law parameter in the
/// coefficient ring: the indeterminate for symbolic work, a constant for
/// specialized work. Values with different `theta` never mix.
#[derive(Clone, Debug)]
pub struct FactoredRatFn<C> {
    num: MPoly<C>,
    den: FactorMultiset,
    theta: C,
}

impl<C: Scalar> FactoredRatFn<C> {
    pub fn new(num: MPoly<C>, den: FactorMultiset, theta: C) -> Self {
        let nvars = num.nvars();
        for j in den.keys() {
            assert!(j.max_var() < nvars, "factor {j} exceeds arity {nvars}");
        }
        let mut f = FactoredRatFn { num, den, theta };
        f.den.retain(|_, e| *e > 0);
        if f.num.is_zero() {
            f.den.clear();
        }
        f
    }

    pub fn from_poly(num: MPoly<C>, theta: C) -> Self {
        Self::new(num, FactorMultiset::new(), theta)
    }

    pub fn zero(nvars: usize, theta: C) -> Self {
        Self::from_poly(MPoly::zero(nvars), theta)
    }

    pub fn one(nvars: usize, theta: C) -> Self {
        Self::constant(nvars, C::one(), theta)
    }

    pub fn constant(nvars: usize, c: C, theta: C) -> Self {
        Self::from_poly(MPoly::constant(nvars, c), theta)
    }

    /// `c / ∏ factors` with the given factor multiset.
    pub fn reciprocal(nvars: usize, c: C, factors: &[LinFactor], theta: C) -> Self {
        let mut den = FactorMultiset::new();
        for &j in factors {
            *den.entry(j).or_insert(0) += 1;
        }
        Self::new(MPoly::constant(nvars, c), den, theta)
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn numerator(&self) -> &MPoly<C> {
        &self.num
    }

    pub fn denominator(&self) -> &FactorMultiset {
        &self.den
    }

    pub fn theta(&self) -> &C {
        &self.theta
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn check_compatible(&self, other: &Self) -> Result<(), ExactError> {
        if self.nvars() != other.nvars() {
            return Err(ExactError::ArityMismatch {
                left: self.nvars(),
                right: other.nvars(),
            });
        }
        if self.theta != other.theta {
            return Err(ExactError::ThetaMismatch);
        }
        Ok(())
    }

    fn expand_factors(&self, factors: &FactorMultiset) -> MPoly<C> {
        let n = self.nvars();
        factors.iter().fold(MPoly::one(n), |acc, (j, &e)| {
            acc.mul(&j.expand(n, &self.theta).pow(e))
        })
    }

    /// Expanded denominator polynomial.
    pub fn denominator_poly(&self) -> MPoly<C> {
        self.expand_factors(&self.den)
    }

    /// Plain numerator/denominator pair with the denominator expanded.
    pub fn to_num_den(&self) -> (MPoly<C>, MPoly<C>) {
        (self.num.clone(), self.denominator_poly())
    }

    /// Divide common family factors out of the numerator.
    fn cancel(mut self) -> Self {
        if self.num.is_zero() {
            self.den.clear();
            return self;
        }
        let n = self.nvars();
        let factors: Vec<LinFactor> = self.den.keys().copied().collect();
        for j in factors {
            let poly = j.expand(n, &self.theta);
            while self.den[&j] > 0 {
                match self.num.exact_div(&poly) {
                    Some(quot) => {
                        self.num = quot;
                        *self.den.get_mut(&j).unwrap() -= 1;
                    }
                    None => break,
                }
            }
        }
        self.den.retain(|_, e| *e > 0);
        self
    }

    /// Sum of many fractions over their least common factor multiset.
    pub fn sum<'a>(
        nvars: usize,
        theta: C,
        items: impl IntoIterator<Item = (C, &'a FactoredRatFn<C>)>,
    ) -> Result<Self, ExactError>
    where
        C: 'a,
    {
        let items: Vec<(C, &FactoredRatFn<C>)> = items
            .into_iter()
            .filter(|(c, f)| !c.is_zero() && !f.is_zero())
            .collect();
        let mut lcm = FactorMultiset::new();
        for (_, f) in &items {
            if f.nvars() != nvars {
                return Err(ExactError::ArityMismatch {
                    left: nvars,
                    right: f.nvars(),
                });
            }
            if f.theta != theta {
                return Err(ExactError::ThetaMismatch);
            }
            for (j, &e) in &f.den {
                let slot = lcm.entry(*j).or_insert(0);
                *slot = (*slot).max(e);
            }
        }
        let skeleton = Self::one(nvars, theta.clone());
        let mut num = MPoly::zero(nvars);
        for (c, f) in items {
            let cofactor: FactorMultiset = lcm
                .iter()
                .map(|(j, &e)| (*j, e - f.den.get(j).copied().unwrap_or(0)))
                .collect();
            let term = f.num.mul(&skeleton.expand_factors(&cofactor)).scale(&c);
            num = num.add(&term);
        }
        Ok(Self::new(num, lcm, theta).cancel())
    }

    /// Exact sum.
    pub fn try_add(&self, other: &Self) -> Result<Self, ExactError> {
        self.check_compatible(other)?;
        Self::sum(
            self.nvars(),
            self.theta.clone(),
            [(C::one(), self), (C::one(), other)],
        )
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, ExactError> {
        self.check_compatible(other)?;
        Self::sum(
            self.nvars(),
            self.theta.clone(),
            [(C::one(), self), (-C::one(), other)],
        )
    }

    /// Exact product; denominators concatenate as multisets.
    pub fn try_mul(&self, other: &Self) -> Result<Self, ExactError> {
        self.check_compatible(other)?;
        let mut den = self.den.clone();
        for (j, &e) in &other.den {
            *den.entry(*j).or_insert(0) += e;
        }
        Ok(Self::new(self.num.mul(&other.num), den, self.theta.clone()).cancel())
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::new(self.num.scale(c), self.den.clone(), self.theta.clone())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-C::one())
    }

    /// Semantic equality by cross-multiplication against the non-shared
    /// parts of the two factor multisets.
    pub fn try_eq(&self, other: &Self) -> Result<bool, ExactError> {
        self.check_compatible(other)?;
        let mut only_self = FactorMultiset::new();
        let mut only_other = FactorMultiset::new();
        for (j, &e) in &self.den {
            let o = other.den.get(j).copied().unwrap_or(0);
            if e > o {
                only_self.insert(*j, e - o);
            }
        }
        for (j, &e) in &other.den {
            let s = self.den.get(j).copied().unwrap_or(0);
            if e > s {
                only_other.insert(*j, e - s);
            }
        }
        let lhs = self.num.mul(&self.expand_factors(&only_other));
        let rhs = other.num.mul(&self.expand_factors(&only_self));
        Ok(lhs == rhs)
    }

    /// Substitute `x_i -> images[i]`. Every image must itself be a family
    /// polynomial `F^θ_K`, and images feeding one factor must have disjoint
    /// supports, so each denominator factor maps to a family factor.
    pub fn try_subst(&self, images: &[MPoly<C>]) -> Result<Self, ExactError> {
        if images.len() != self.nvars() {
            return Err(ExactError::ArityMismatch {
                left: self.nvars(),
                right: images.len(),
            });
        }
        let target = images.first().map(|p| p.nvars()).unwrap_or(0);
        if images.iter().any(|p| p.nvars() != target) {
            return Err(ExactError::LeavesFamily(
                "images have different arities".into(),
            ));
        }
        let needed: Vec<usize> = self.den.keys().flat_map(|j| j.vars()).collect();
        let mut blocks: Vec<Option<u32>> = vec![None; images.len()];
        for &v in &needed {
            if blocks[v].is_some() {
                continue;
            }
            let img = &images[v];
            // the zero image is the empty block, the unit of the group law
            if img.is_zero() {
                blocks[v] = Some(0);
                continue;
            }
            let support = img.support();
            if support.is_empty() {
                return Err(ExactError::LeavesFamily(format!(
                    "image of x{} is constant",
                    v + 1
                )));
            }
            let k = LinFactor::from_mask(support.iter().fold(0, |m, &i| m | 1 << i));
            if k.expand(target, &self.theta) != *img {
                return Err(ExactError::LeavesFamily(format!(
                    "image of x{} is not a formal-group-law block",
                    v + 1
                )));
            }
            blocks[v] = Some(k.mask());
        }
        let mut den = FactorMultiset::new();
        for (j, &e) in &self.den {
            let mut mask = 0u32;
            for v in j.vars() {
                let b = blocks[v].expect("block recorded");
                if mask & b != 0 {
                    return Err(ExactError::LeavesFamily(format!(
                        "factor {j} maps to overlapping blocks"
                    )));
                }
                mask |= b;
            }
            if mask == 0 {
                return Err(ExactError::LeavesFamily(format!(
                    "factor {j} vanishes identically"
                )));
            }
            *den.entry(LinFactor::from_mask(mask)).or_insert(0) += e;
        }
        let num = self.num.substitute(images, target);
        Ok(Self::new(num, den, self.theta.clone()).cancel())
    }

    /// Injective renaming of variables: old `i` becomes `map[i]`.
    pub fn rename(&self, map: &[usize], target_nvars: usize) -> Self {
        let num = self.num.rename(map, target_nvars);
        let den = self
            .den
            .iter()
            .map(|(j, &e)| (j.map_vars(map), e))
            .collect();
        Self::new(num, den, self.theta.clone())
    }

    /// Value at a point; `None` when a denominator factor vanishes there.
    pub fn eval(&self, point: &[C]) -> Option<C> {
        let d = self.den.iter().fold(C::one(), |acc, (j, &e)| {
            acc * j.eval(point, &self.theta).pow(e)
        });
        if d.is_zero() {
            return None;
        }
        self.num.eval(point).try_div(&d)
    }

    /// Map coefficients and the parameter into another ring.
    pub fn map_coeffs<D: Scalar>(&self, f: impl Fn(&C) -> D) -> FactoredRatFn<D> {
        let theta = f(&self.theta);
        FactoredRatFn::new(self.num.map_coeffs(&f), self.den.clone(), theta)
    }
}

impl<C: Scalar> PartialEq for FactoredRatFn<C> {
    /// Panics on arity or parameter mismatch; use [`FactoredRatFn::try_eq`]
    /// to handle those as errors.
    fn eq(&self, other: &Self) -> bool {
        self.try_eq(other)
            .expect("comparing incompatible rational functions")
    }
}

impl<C: Scalar> fmt::Display for FactoredRatFn<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.num.to_string();
        if self.den.is_empty() {
            return f.write_str(&num);
        }
        let facs: Vec<String> = self
            .den
            .iter()
            .map(|(j, &e)| {
                if e == 1 {
                    j.to_string()
                } else {
                    format!("{j}^{e}")
                }
            })
            .collect();
        if self.num.len() > 1 {
            write!(f, "({num}) / {}", facs.join(" "))
        } else {
            write!(f, "{num} / {}", facs.join(" "))
        }
    }
}
