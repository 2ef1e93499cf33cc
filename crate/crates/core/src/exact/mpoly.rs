//! Sparse multivariate polynomials over a [`Scalar`] ring.

use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::Scalar;

/// Exponent vector; its length is the number of variables.
pub type Monomial = Vec<u32>;

/// Polynomial in `x_1..x_n`. Terms are keyed by exponent vector in
/// lexicographic order (`x_1 > x_2 > ...`), so the last entry is the
/// lex-leading term. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Debug)]
pub struct MPoly<C> {
    nvars: usize,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Scalar> MPoly<C> {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, C::one())
    }

    /// The variable `x_{i+1}` (zero-based index `i`).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(
            i < nvars,
            "variable index {i} out of range for {nvars} variables"
        );
        let mut m = vec![0; nvars];
        m[i] = 1;
        Self::term(m, C::one())
    }

    pub fn term(mono: Monomial, c: C) -> Self {
        let nvars = mono.len();
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(mono, c);
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.len(), nvars, "exponent vector length mismatch");
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, mono: &[u32]) -> C {
        self.terms.get(mono).cloned().unwrap_or_else(C::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.iter().sum()).max()
    }

    /// Variables (zero-based) that occur with positive exponent.
    pub fn support(&self) -> Vec<usize> {
        (0..self.nvars)
            .filter(|&i| self.terms.keys().any(|m| m[i] > 0))
            .collect()
    }

    pub fn as_constant(&self) -> Option<C> {
        match self.terms.len() {
            0 => Some(C::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.iter().all(|&e| e == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn add_term(&mut self, mono: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "polynomial arity mismatch");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        let mut out = Self::zero(self.nvars);
        for (m, a) in &self.terms {
            out.add_term(m.clone(), a.clone() * c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "polynomial arity mismatch");
        let mut out = Self::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m: Monomial = ma.iter().zip(mb).map(|(a, b)| a + b).collect();
                out.add_term(m, ca.clone() * cb.clone());
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn eval(&self, point: &[C]) -> C {
        assert_eq!(point.len(), self.nvars, "evaluation point has wrong length");
        let mut acc = C::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m) {
                if e > 0 {
                    t = t * x.pow(e);
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// Substitute `x_i -> images[i]`; all images share the target arity.
    pub fn substitute(&self, images: &[MPoly<C>], target_nvars: usize) -> Self {
        assert_eq!(images.len(), self.nvars, "one image per variable required");
        assert!(images.iter().all(|p| p.nvars == target_nvars));
        let mut powers: Vec<Vec<MPoly<C>>> = vec![vec![MPoly::one(target_nvars)]; self.nvars];
        let mut out = Self::zero(target_nvars);
        for (m, c) in &self.terms {
            let mut t = MPoly::constant(target_nvars, c.clone());
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul(&images[i]);
                    powers[i].push(next);
                }
                t = t.mul(&powers[i][e as usize]);
            }
            for (tm, tc) in t.terms {
                out.add_term(tm, tc);
            }
        }
        out
    }

    /// Rename variables injectively: old variable `i` becomes `map[i]` in
    /// a ring with `target_nvars` variables.
    pub fn rename(&self, map: &[usize], target_nvars: usize) -> Self {
        assert_eq!(map.len(), self.nvars);
        let mut out = Self::zero(target_nvars);
        for (m, c) in &self.terms {
            let mut nm = vec![0; target_nvars];
            for (i, &e) in m.iter().enumerate() {
                nm[map[i]] += e;
            }
            out.add_term(nm, c.clone());
        }
        out
    }

    /// Apply a coefficient map, e.g. specializing a parameter.
    pub fn map_coeffs<D: Scalar>(&self, f: impl Fn(&C) -> D) -> MPoly<D> {
        let mut out = MPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// Exact quotient `self / divisor`, or `None` when the divisor does not
    /// divide. Uses lex-leading-term division, which decides divisibility
    /// for a single divisor over an integral domain.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        assert_eq!(self.nvars, divisor.nvars, "polynomial arity mismatch");
        let (lm, lc) = divisor.terms.iter().next_back()?;
        let mut rem = self.clone();
        let mut quot = Self::zero(self.nvars);
        while let Some((m, c)) = rem.terms.iter().next_back() {
            if m.iter().zip(lm).any(|(a, b)| a < b) {
                return None;
            }
            let qm: Monomial = m.iter().zip(lm).map(|(a, b)| a - b).collect();
            let qc = c.try_div(lc)?;
            for (dm, dc) in &divisor.terms {
                let key: Monomial = dm.iter().zip(&qm).map(|(a, b)| a + b).collect();
                rem.add_term(key, -(qc.clone() * dc.clone()));
            }
            quot.add_term(qm, qc);
        }
        Some(quot)
    }
}

impl<C: Scalar> fmt::Display for MPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let vars: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        format!("x{}", i + 1)
                    } else {
                        format!("x{}^{e}", i + 1)
                    }
                })
                .collect();
            let cs = c.to_string();
            let needs_parens = cs.contains(' ');
            let body = if vars.is_empty() {
                if needs_parens {
                    format!("({cs})")
                } else {
                    cs
                }
            } else if c.is_one() {
                vars.join("*")
            } else if *c == -C::one() {
                format!("-{}", vars.join("*"))
            } else if needs_parens {
                format!("({cs})*{}", vars.join("*"))
            } else {
                format!("{cs}*{}", vars.join("*"))
            };
            if first {
                f.write_str(&body)?;
                first = false;
            } else if let Some(rest) = body.strip_prefix('-') {
                write!(f, " - {rest}")?;
            } else {
                write!(f, " + {body}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ThetaScalar;
    use crate::scalar::q;
    use num_rational::BigRational;

    type P = MPoly<BigRational>;

    fn x(i: usize) -> P {
        P::var(3, i)
    }

    #[test]
    fn ring_ops() {
        let s = x(0).add(&x(1));
        let sq = s.mul(&s);
        assert_eq!(sq.len(), 3);
        assert_eq!(sq.coeff(&[1, 1, 0]), q(2, 1));
        assert_eq!(s.pow(3).coeff(&[2, 1, 0]), q(3, 1));
        assert!(s.sub(&s).is_zero());
        assert_eq!(sq.to_string(), "x1^2 + 2*x1*x2 + x2^2");
    }

    #[test]
    fn exact_division() {
        let s = x(0).add(&x(1));
        let p = s.mul(&x(2)).mul(&s);
        assert_eq!(p.exact_div(&s), Some(s.mul(&x(2))));
        assert_eq!(p.exact_div(&x(0)), None);
        let q0 = x(0).add(&P::one(3));
        assert_eq!(q0.exact_div(&s), None);
    }

    #[test]
    fn exact_division_over_theta_ring() {
        // F = x1 + x2 + θ x1 x2 divides F * (x1 + θ)
        type T = MPoly<ThetaScalar>;
        let th = ThetaScalar::var();
        let a = T::var(2, 0);
        let b = T::var(2, 1);
        let f = a.add(&b).add(&a.mul(&b).scale(&th));
        let g = a.add(&T::constant(2, th.clone()));
        assert_eq!(f.mul(&g).exact_div(&f), Some(g.clone()));
        assert_eq!(g.exact_div(&f), None);
    }

    #[test]
    fn substitution_and_rename() {
        let p = x(0).mul(&x(0)).add(&x(1));
        let images = vec![x(1).add(&x(2)), P::constant(3, q(2, 1)), x(0)];
        let r = p.substitute(&images, 3);
        assert_eq!(r.eval(&[q(0, 1), q(1, 1), q(1, 1)]), q(6, 1));
        let renamed = p.rename(&[2, 0, 1], 3);
        assert_eq!(renamed, x(2).mul(&x(2)).add(&x(0)));
    }
}
