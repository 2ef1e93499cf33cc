use num_rational::BigRational;

use super::RfError;
use crate::exact::FactoredRatFn;
use crate::scalar::{Field, Scalar};

fn rational<C: Scalar>(num: i64, den: i64) -> C {
    C::from_rational(&BigRational::new(num.into(), den.into()))
        .expect("coefficient ring contains the rationals")
}

/// Element of `∏_{k=0}^{N} RF(k)` under the convolution product
/// `(F∗G)_k = Σ_{m+n=k} F_m(x_1..x_m) · G_n(x_{m+1}..x_k)`.
#[derive(Clone, Debug)]
pub struct ConvFamily<C> {
    components: Vec<FactoredRatFn<C>>,
    theta: C,
}

impl<C: Scalar> ConvFamily<C> {
    /// Components must have arities `0, 1, ..., N` in order.
    pub fn new(components: Vec<FactoredRatFn<C>>, theta: C) -> Result<Self, RfError> {
        for (k, c) in components.iter().enumerate() {
            if c.nvars() != k {
                return Err(RfError::Precondition(format!(
                    "component {k} has arity {}",
                    c.nvars()
                )));
            }
            if *c.theta() != theta {
                return Err(crate::exact::ExactError::ThetaMismatch.into());
            }
        }
        Ok(ConvFamily { components, theta })
    }

    pub fn from_fn(
        order: usize,
        theta: C,
        f: impl Fn(usize) -> FactoredRatFn<C>,
    ) -> Result<Self, RfError> {
        Self::new((0..=order).map(f).collect(), theta)
    }

    pub fn zero(order: usize, theta: C) -> Self {
        let components = (0..=order)
            .map(|k| FactoredRatFn::zero(k, theta.clone()))
            .collect();
        ConvFamily { components, theta }
    }

    /// The convolution unit: `1` in arity 0, zero elsewhere.
    pub fn unit(order: usize, theta: C) -> Self {
        let mut u = Self::zero(order, theta.clone());
        u.components[0] = FactoredRatFn::one(0, theta);
        u
    }

    pub fn order(&self) -> usize {
        self.components.len() - 1
    }

    pub fn theta(&self) -> &C {
        &self.theta
    }

    pub fn component(&self, k: usize) -> &FactoredRatFn<C> {
        &self.components[k]
    }

    pub fn components(&self) -> &[FactoredRatFn<C>] {
        &self.components
    }

    fn check(&self, other: &Self) -> Result<(), RfError> {
        if self.order() != other.order() {
            return Err(RfError::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        if self.theta != other.theta {
            return Err(crate::exact::ExactError::ThetaMismatch.into());
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, RfError> {
        self.check(other)?;
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.try_add(b))
            .collect::<Result<_, _>>()?;
        Ok(ConvFamily {
            components,
            theta: self.theta.clone(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, RfError> {
        self.add(&other.scale(&-C::one()))
    }

    pub fn scale(&self, c: &C) -> Self {
        let components = self.components.iter().map(|f| f.scale(c)).collect();
        ConvFamily {
            components,
            theta: self.theta.clone(),
        }
    }

    pub fn conv_mul(&self, other: &Self) -> Result<Self, RfError> {
        self.check(other)?;
        let mut components = Vec::with_capacity(self.components.len());
        for k in 0..=self.order() {
            let mut products = Vec::new();
            for m in 0..=k {
                let (f, g) = (&self.components[m], &other.components[k - m]);
                if f.is_zero() || g.is_zero() {
                    continue;
                }
                let left = f.rename(&(0..m).collect::<Vec<_>>(), k);
                let right = g.rename(&(m..k).collect::<Vec<_>>(), k);
                products.push(left.try_mul(&right)?);
            }
            let sum = FactoredRatFn::sum(
                k,
                self.theta.clone(),
                products.iter().map(|p| (C::one(), p)),
            )?;
            components.push(sum);
        }
        Ok(ConvFamily {
            components,
            theta: self.theta.clone(),
        })
    }

    /// `Σ_j coeffs[j] · X^{∗j}` for a family `X` with zero arity-0 part;
    /// powers beyond the order vanish.
    fn power_series(x: &Self, coeffs: impl Fn(usize) -> C) -> Result<Self, RfError> {
        let n = x.order();
        let mut acc = Self::unit(n, x.theta.clone()).scale(&coeffs(0));
        let mut power = Self::unit(n, x.theta.clone());
        for j in 1..=n {
            power = power.conv_mul(x)?;
            acc = acc.add(&power.scale(&coeffs(j)))?;
        }
        Ok(acc)
    }

    pub fn conv_exp(&self) -> Result<Self, RfError> {
        if !self.components[0].is_zero() {
            return Err(RfError::Precondition(
                "exp needs a zero arity-0 component".into(),
            ));
        }
        let mut inv_fact = vec![C::one()];
        for j in 1..=self.order() {
            let prev = inv_fact[j - 1].clone();
            inv_fact.push(prev * rational(1, j as i64));
        }
        Self::power_series(self, |j| inv_fact[j].clone())
    }

    pub fn conv_log(&self) -> Result<Self, RfError> {
        let one = FactoredRatFn::one(0, self.theta.clone());
        if !self.components[0].try_eq(&one)? {
            return Err(RfError::Precondition(
                "log needs arity-0 component equal to 1".into(),
            ));
        }
        let x = self.sub(&Self::unit(self.order(), self.theta.clone()))?;
        Self::power_series(&x, |j| match j {
            0 => C::zero(),
            j if j % 2 == 1 => rational(1, j as i64),
            j => rational(-1, j as i64),
        })
    }

    pub fn try_eq(&self, other: &Self) -> Result<bool, RfError> {
        self.check(other)?;
        for (a, b) in self.components.iter().zip(&other.components) {
            if !a.try_eq(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Evaluate every component on every consecutive window of `point`.
    pub fn eval_windows(&self, point: &[C]) -> Option<WindowTable<C>>
    where
        C: Field,
    {
        if point.len() > self.order() {
            return None;
        }
        WindowTable::from_fn(point.len(), |i, j| {
            self.components[j - i].eval(&point[i..j])
        })
    }
}

impl<C: Scalar> PartialEq for ConvFamily<C> {
    /// Panics on incompatible families.
    fn eq(&self, other: &Self) -> bool {
        self.try_eq(other).expect("comparing incompatible families")
    }
}

/// A family evaluated at a point `p_1..p_N`: entry `(i, j)` holds the
/// arity-`(j-i)` component at `p_{i+1}..p_j`. Convolution of families
/// becomes the product of these upper-triangular tables.
#[derive(Clone, Debug, PartialEq)]
pub struct WindowTable<C> {
    n: usize,
    entries: Vec<Vec<C>>,
}

impl<C: Field> WindowTable<C> {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Option<C>) -> Option<Self> {
        let mut entries = vec![vec![C::zero(); n + 1]; n + 1];
        for (i, row) in entries.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate().skip(i) {
                *slot = f(i, j)?;
            }
        }
        Some(WindowTable { n, entries })
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| Some(if i == j { C::one() } else { C::zero() })).expect("total")
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, i: usize, j: usize) -> &C {
        &self.entries[i][j]
    }

    /// The top-arity component at the full point.
    pub fn top(&self) -> &C {
        &self.entries[0][self.n]
    }

    fn zip(&self, other: &Self, f: impl Fn(&C, &C) -> C) -> Self {
        assert_eq!(self.n, other.n, "window tables of different size");
        Self::from_fn(self.n, |i, j| {
            Some(f(&self.entries[i][j], &other.entries[i][j]))
        })
        .expect("total")
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a.clone() - b.clone())
    }

    pub fn scale(&self, c: &C) -> Self {
        self.zip(self, |a, _| a.clone() * c.clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "window tables of different size");
        Self::from_fn(self.n, |i, j| {
            Some((i..=j).fold(C::zero(), |acc, m| {
                acc + self.entries[i][m].clone() * other.entries[m][j].clone()
            }))
        })
        .expect("total")
    }

    fn power_series(x: &Self, coeffs: impl Fn(usize) -> C) -> Self {
        let mut acc = Self::identity(x.n).scale(&coeffs(0));
        let mut power = Self::identity(x.n);
        for j in 1..=x.n {
            power = power.mul(x);
            acc = acc.add(&power.scale(&coeffs(j)));
        }
        acc
    }

    /// Panics unless the diagonal is zero.
    pub fn exp(&self) -> Self {
        assert!(
            (0..=self.n).all(|i| self.entries[i][i].is_zero()),
            "exp needs a zero diagonal"
        );
        let mut inv_fact = vec![C::one()];
        for j in 1..=self.n {
            inv_fact.push(inv_fact[j - 1].clone() * C::from_ratio(1, j as i64));
        }
        Self::power_series(self, |j| inv_fact[j].clone())
    }

    /// Panics unless the diagonal is one.
    pub fn log(&self) -> Self {
        assert!(
            (0..=self.n).all(|i| self.entries[i][i].is_one()),
            "log needs a unit diagonal"
        );
        let x = self.sub(&Self::identity(self.n));
        Self::power_series(&x, |j| match j {
            0 => C::zero(),
            j if j % 2 == 1 => C::from_ratio(1, j as i64),
            j => C::from_ratio(-1, j as i64),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::LinFactor;
    use crate::scalar::q;
    use num_traits::{One, Zero};

    type Q = BigRational;
    type Fam = ConvFamily<Q>;

    fn recip(n: usize, facs: &[&[usize]]) -> FactoredRatFn<Q> {
        let fs: Vec<LinFactor> = facs.iter().map(|v| LinFactor::from_vars(v)).collect();
        FactoredRatFn::reciprocal(n, Q::one(), &fs, Q::zero())
    }

    fn only_first(order: usize) -> Fam {
        Fam::from_fn(order, Q::zero(), |k| {
            if k == 1 {
                recip(1, &[&[1]])
            } else {
                FactoredRatFn::zero(k, Q::zero())
            }
        })
        .unwrap()
    }

    #[test]
    fn unit_is_neutral() {
        let f = only_first(3);
        assert_eq!(f.conv_mul(&Fam::unit(3, Q::zero())).unwrap(), f);
        assert_eq!(Fam::unit(3, Q::zero()).conv_mul(&f).unwrap(), f);
    }

    #[test]
    fn square_of_first_component() {
        let f = only_first(2);
        let sq = f.conv_mul(&f).unwrap();
        assert_eq!(sq.component(2), &recip(2, &[&[1], &[2]]));
        assert!(sq.component(1).is_zero());
    }

    #[test]
    fn exponential_examples() {
        let e0 = Fam::zero(3, Q::zero()).conv_exp().unwrap();
        assert_eq!(e0, Fam::unit(3, Q::zero()));
        let e = only_first(2).conv_exp().unwrap();
        assert_eq!(e.component(2), &recip(2, &[&[1], &[2]]).scale(&q(1, 2)));
        assert!(Fam::unit(2, Q::zero()).conv_exp().is_err());
        assert!(Fam::zero(2, Q::zero()).conv_log().is_err());
    }

    #[test]
    fn log_inverts_exp() {
        let f = Fam::from_fn(4, Q::zero(), |k| match k {
            0 => FactoredRatFn::zero(0, Q::zero()),
            1 => recip(1, &[&[1]]).scale(&q(2, 1)),
            2 => recip(2, &[&[2], &[1, 2]]),
            3 => recip(3, &[&[1, 3]]).scale(&q(-1, 3)),
            _ => recip(4, &[&[1, 2, 3, 4], &[4]]),
        })
        .unwrap();
        let round = f.conv_exp().unwrap().conv_log().unwrap();
        assert!(round.try_eq(&f).unwrap());
    }

    #[test]
    fn window_tables_match_symbolic_convolution() {
        let f = Fam::from_fn(3, Q::zero(), |k| match k {
            0 => FactoredRatFn::zero(0, Q::zero()),
            1 => recip(1, &[&[1]]),
            2 => recip(2, &[&[1, 2]]),
            _ => recip(3, &[&[2], &[3]]),
        })
        .unwrap();
        let pt = [q(2, 1), q(3, 5), q(-7, 2)];
        let sym = f.conv_exp().unwrap().eval_windows(&pt).unwrap();
        let num = f.eval_windows(&pt).unwrap().exp();
        assert_eq!(sym, num);
        assert_eq!(num.log(), f.eval_windows(&pt).unwrap());
    }
}
