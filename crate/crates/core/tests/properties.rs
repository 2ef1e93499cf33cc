use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use opcalc::exact::{FactorMultiset, FactoredRatFn, LinFactor, MPoly, TruncSeries};
use opcalc::rf_operad::RFElem;
use opcalc::symgroup::Perm;

type Q = BigRational;
type F = FactoredRatFn<Q>;

const N: usize = 3;

fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

fn poly() -> impl Strategy<Value = MPoly<Q>> {
    prop::collection::vec((prop::collection::vec(0u32..3, N), -4i64..=4), 0..4)
        .prop_map(|terms| MPoly::from_terms(N, terms.into_iter().map(|(m, c)| (m, q(c, 1)))))
}

fn ratfn(theta: i64) -> impl Strategy<Value = F> {
    (poly(), prop::collection::vec((1u32..8, 1u32..3), 0..3)).prop_map(move |(num, facs)| {
        let mut den = FactorMultiset::new();
        for (mask, e) in facs {
            *den.entry(LinFactor::from_mask(mask)).or_insert(0) += e;
        }
        F::new(num, den, q(theta, 1))
    })
}

/// Positive points keep every `F^θ` factor nonzero for `θ ≥ 0`.
fn point() -> impl Strategy<Value = Vec<Q>> {
    prop::collection::vec((1i64..30, 1i64..8).prop_map(|(p, d)| q(p, d)), N)
}

fn triple() -> impl Strategy<Value = (F, F, F)> {
    (0i64..3).prop_flat_map(|t| (ratfn(t), ratfn(t), ratfn(t)))
}

fn series() -> impl Strategy<Value = TruncSeries<Q>> {
    (
        1usize..7,
        prop::collection::vec((-5i64..=5, 1i64..4), 7),
        prop::sample::select(vec![-3i64, -1, 1, 2, 5]),
    )
        .prop_map(|(order, cs, lin)| {
            let coeffs = std::iter::once(q(lin, 1)).chain(cs.into_iter().map(|(a, b)| q(a, b)));
            TruncSeries::new(order, coeffs)
        })
}

fn perm3() -> impl Strategy<Value = Perm> {
    Just((1..=N).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Perm::from_one_line(&v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn addition_is_commutative_and_associative((a, b, c) in triple()) {
        prop_assert!(a.try_add(&b).unwrap().try_eq(&b.try_add(&a).unwrap()).unwrap());
        let l = a.try_add(&b).unwrap().try_add(&c).unwrap();
        let r = a.try_add(&b.try_add(&c).unwrap()).unwrap();
        prop_assert!(l.try_eq(&r).unwrap());
        prop_assert!(a.try_sub(&a).unwrap().is_zero());
    }

    #[test]
    fn multiplication_is_associative_and_distributive((a, b, c) in triple()) {
        let l = a.try_mul(&b).unwrap().try_mul(&c).unwrap();
        let r = a.try_mul(&b.try_mul(&c).unwrap()).unwrap();
        prop_assert!(l.try_eq(&r).unwrap());
        let d = a.try_mul(&b.try_add(&c).unwrap()).unwrap();
        let e = a.try_mul(&b).unwrap().try_add(&a.try_mul(&c).unwrap()).unwrap();
        prop_assert!(d.try_eq(&e).unwrap());
        let one = F::one(N, a.theta().clone());
        prop_assert!(a.try_mul(&one).unwrap().try_eq(&a).unwrap());
    }

    #[test]
    fn evaluation_is_a_ring_morphism((a, b, _c) in triple(), x in point()) {
        let (va, vb) = (a.eval(&x).unwrap(), b.eval(&x).unwrap());
        prop_assert_eq!(a.try_add(&b).unwrap().eval(&x).unwrap(), &va + &vb);
        prop_assert_eq!(a.try_mul(&b).unwrap().eval(&x).unwrap(), &va * &vb);
    }

    #[test]
    fn equality_agrees_with_cross_multiplication((a, b, _c) in triple(), x in point()) {
        let (na, da) = a.to_num_den();
        let (nb, db) = b.to_num_den();
        let crossed = na.mul(&db).sub(&nb.mul(&da)).is_zero();
        prop_assert_eq!(a.try_eq(&b).unwrap(), crossed);
        if crossed {
            prop_assert_eq!(a.eval(&x), b.eval(&x));
        }
    }

    #[test]
    fn series_inverse_is_two_sided(f in series()) {
        let g = f.comp_inverse().unwrap();
        let id = TruncSeries::identity(f.order());
        prop_assert_eq!(f.compose(&g).unwrap(), id.clone());
        prop_assert_eq!(g.compose(&f).unwrap(), id);
    }

    #[test]
    fn relabeling_by_a_permutation_and_back(a in ratfn(1), p in perm3()) {
        let f = RFElem::new(a);
        let back = f.act(&p).unwrap().act(&p.inverse()).unwrap();
        prop_assert!(back.try_eq(&f).unwrap());
        prop_assert_eq!(p.compose(&p.inverse()), Perm::identity(N));
    }
}

#[test]
fn zero_and_one_are_distinct() {
    let z = F::zero(N, Q::zero());
    let o = F::one(N, Q::zero());
    assert!(!z.try_eq(&o).unwrap());
    assert!(o.eval(&[Q::one(), Q::one(), Q::one()]).unwrap().is_one());
}
