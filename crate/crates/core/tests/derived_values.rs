//! Small hand-derivable values, each compared against an oracle computed
//! here without going through the routine under test.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use opcalc::exact::{FactoredRatFn, LinFactor, ThetaScalar, TruncSeries};
use opcalc::ncalgebra::{
    coproduct, exp_ad, group_element, nc_log, xi_element, Generator, NCPoly, NCWord,
};
use opcalc::rb_operad::{census, monomials};
use opcalc::rf_operad::{build_fn, build_gn, ConvFamily, RFElem};
use opcalc::symgroup::{eulerian_idempotent, eulerian_poly, vshaped, GroupAlgElem, Perm};
use opcalc::wordmodels::{
    conv_log_identity, deconcat, half_shuffle, shuffle, word_to_fraction, Word,
};

type Q = BigRational;
type P = NCPoly<Q>;

fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

fn perm(v: &[usize]) -> Perm {
    Perm::from_one_line(v).unwrap()
}

fn word(v: &[u8]) -> Word {
    Word::new(v.to_vec()).unwrap()
}

fn recip(n: usize, facs: &[&[usize]]) -> FactoredRatFn<Q> {
    let fs: Vec<LinFactor> = facs.iter().map(|v| LinFactor::from_vars(v)).collect();
    FactoredRatFn::reciprocal(n, Q::one(), &fs, Q::zero())
}

/// A fixed point with distinct positive coordinates.
fn pt(n: usize) -> Vec<Q> {
    (0..n).map(|k| q(2 * k as i64 + 3, k as i64 + 2)).collect()
}

fn at_point(f: &FactoredRatFn<Q>) -> Q {
    f.eval(&pt(f.nvars())).expect("nonzero denominator")
}

// ---------- exact arithmetic ----------

#[test]
fn reciprocal_square_and_partial_fractions() {
    let a = recip(1, &[&[1]]);
    assert_eq!(a.try_mul(&a).unwrap(), recip(1, &[&[1], &[1]]));
    let lhs = recip(2, &[&[1], &[2]]);
    let rhs = recip(2, &[&[1], &[1, 2]])
        .try_add(&recip(2, &[&[2], &[1, 2]]))
        .unwrap();
    assert!(lhs.try_eq(&rhs).unwrap());
    let x = pt(2);
    let direct = Q::one() / (&x[0] * &x[1]);
    assert_eq!(at_point(&rhs), direct);
}

#[test]
fn series_inverse_matches_catalan_numbers() {
    // t - t^2 inverts to the Catalan generating function shifted by one
    let f = TruncSeries::new(4, [Q::one(), -Q::one()]);
    let g = f.comp_inverse().unwrap();
    for n in 1..5u64 {
        let k = n - 1;
        let catalan = opcalc::scalar::binomial(2 * k, k) / BigInt::from(k + 1);
        assert_eq!(g.coeff(n as usize), Q::from_integer(catalan), "t^{n}");
    }
}

// ---------- symmetric groups ----------

fn brute_descents(v: &[usize]) -> usize {
    v.windows(2).filter(|w| w[0] > w[1]).count()
}

#[test]
fn descent_counts_and_eulerian_numbers() {
    assert_eq!(perm(&[3, 2, 1]).descents(), 2);
    assert_eq!(perm(&[1, 3, 2]).descents(), 1);
    // recurrence A(n,k) = (k+1)A(n-1,k) + (n-k)A(n-1,k-1)
    let mut a: Vec<Vec<i64>> = vec![vec![1]];
    for n in 2..=6usize {
        let prev = &a[n - 2];
        let row: Vec<i64> = (0..n)
            .map(|k| {
                let stay = prev.get(k).copied().unwrap_or(0) * (k as i64 + 1);
                let grow = if k > 0 {
                    prev.get(k - 1).copied().unwrap_or(0) * (n - k) as i64
                } else {
                    0
                };
                stay + grow
            })
            .collect();
        a.push(row);
    }
    for n in 1..=6 {
        let p = eulerian_poly::<Q>(n).unwrap();
        let mut counts = vec![0i64; n];
        for s in Perm::all(n) {
            counts[brute_descents(&s.one_line())] += 1;
        }
        for k in 0..n {
            assert_eq!(p.coeff(k), Q::from_integer(a[n - 1][k].into()));
            assert_eq!(counts[k], a[n - 1][k]);
        }
    }
    assert_eq!(
        eulerian_poly::<Q>(3).unwrap().coeffs(),
        &[q(1, 1), q(4, 1), q(1, 1)]
    );
}

#[test]
fn vshaped_sets_by_filtering() {
    assert_eq!(vshaped(2).unwrap(), vec![perm(&[1, 2]), perm(&[2, 1])]);
    let three: Vec<Vec<usize>> = vshaped(3).unwrap().iter().map(Perm::one_line).collect();
    assert_eq!(
        three,
        vec![vec![1, 2, 3], vec![2, 1, 3], vec![3, 1, 2], vec![3, 2, 1]]
    );
    for n in 1..=6 {
        let filtered = Perm::all(n)
            .filter(|p| {
                let v = p.one_line();
                let m = v.iter().position(|&x| x == 1).unwrap();
                v[..=m].windows(2).all(|w| w[0] > w[1]) && v[m..].windows(2).all(|w| w[0] < w[1])
            })
            .count();
        assert_eq!(vshaped(n).unwrap().len(), filtered);
        assert_eq!(filtered, 1 << (n - 1));
    }
}

#[test]
fn small_group_algebra_products() {
    let id = GroupAlgElem::<Q>::identity(2);
    let s = GroupAlgElem::basis(perm(&[2, 1]));
    let d = id.sub(&s).unwrap();
    assert_eq!(d.mul(&s).unwrap(), s.sub(&id).unwrap());
    let e2 = eulerian_idempotent::<Q>(2).unwrap();
    assert_eq!(e2, d.scale(&q(1, 2)));
    assert_eq!(e2.mul(&e2).unwrap(), e2);
}

#[test]
fn eulerian_idempotent_three_coefficients() {
    let e = eulerian_idempotent::<Q>(3).unwrap();
    for p in Perm::all(3) {
        let expected = match brute_descents(&p.one_line()) {
            0 => q(1, 3),
            1 => q(-1, 6),
            _ => q(1, 3),
        };
        assert_eq!(e.coeff(&p), expected, "{:?}", p.one_line());
    }
}

// ---------- rational-function operad ----------

#[test]
fn nu_composed_with_itself() {
    let nu = RFElem::nu(Q::zero());
    let c = nu.compose(&nu, 1).unwrap();
    let x = pt(3);
    assert_eq!(at_point(c.value()), Q::one() / (&x[0] * (&x[0] + &x[1])));
    assert!(c.value().try_eq(&recip(3, &[&[1], &[1, 2]])).unwrap());
}

#[test]
fn rb_double_application_at_symbolic_theta() {
    let th = ThetaScalar::var();
    let mu = RFElem::mu(2, th.clone());
    let r = RFElem::rb_operator(th.clone());
    let inner = mu.compose(&r, 1).unwrap();
    let outer = r.compose(&inner, 1).unwrap();
    let fs = [LinFactor::from_vars(&[1, 2]), LinFactor::from_vars(&[1])];
    let expected = FactoredRatFn::reciprocal(2, ThetaScalar::constant(Q::one()), &fs, th);
    assert!(outer.value().try_eq(&expected).unwrap());
}

#[test]
fn relabeling_under_the_swap() {
    let nu = RFElem::nu(Q::zero());
    let swapped = nu.act(&perm(&[2, 1])).unwrap();
    assert!(swapped.value().try_eq(&recip(2, &[&[2]])).unwrap());
    let sym = RFElem::new(recip(2, &[&[1, 2]]));
    assert!(sym.act(&perm(&[2, 1])).unwrap().try_eq(&sym).unwrap());
}

#[test]
fn convolution_square_and_exponential() {
    let f = ConvFamily::from_fn(2, Q::zero(), |k| match k {
        1 => recip(1, &[&[1]]),
        0 => FactoredRatFn::zero(0, Q::zero()),
        _ => FactoredRatFn::zero(k, Q::zero()),
    })
    .unwrap();
    let sq = f.conv_mul(&f).unwrap();
    assert!(sq.component(2).try_eq(&recip(2, &[&[1], &[2]])).unwrap());
    let e = f.conv_exp().unwrap();
    assert!(e
        .component(2)
        .try_eq(&recip(2, &[&[1], &[2]]).scale(&q(1, 2)))
        .unwrap());
    assert!(e.conv_log().unwrap().try_eq(&f).unwrap());
}

#[test]
fn gn_and_fn_at_arity_two() {
    let g2 = build_gn(2, Q::zero()).unwrap();
    assert!(g2
        .value()
        .try_eq(&recip(2, &[&[1], &[1, 2]]).scale(&q(1, 2)))
        .unwrap());
    let f2 = build_fn(2, Q::zero()).unwrap();
    let x = pt(2);
    let s = &x[0] + &x[1];
    let oracle = q(1, 2) * (Q::one() / (&x[0] * &s) - Q::one() / (&x[1] * &s));
    assert_eq!(at_point(f2.value()), oracle);
    let swap = g2.act(&perm(&[2, 1])).unwrap();
    let via_swap = g2.value().try_sub(swap.value()).unwrap();
    assert!(via_swap.try_eq(f2.value()).unwrap());
}

// ---------- Rota-Baxter census ----------

/// Strict chains of nonempty subsets of `[n]` of each length, counted over bitmasks.
fn chains_by_length(n: usize) -> Vec<u64> {
    let full = 1u32 << n;
    let mut by_len = vec![0u64; n + 1];
    // ends[s] = number of chains of the current length ending at subset s
    let mut ends: Vec<u64> = (0..full).map(|s| u64::from(s != 0)).collect();
    for slot in by_len.iter_mut().skip(1) {
        *slot = ends.iter().sum();
        let mut next = vec![0u64; full as usize];
        for s in 1..full {
            for t in 1..full {
                if s != t && s & t == s {
                    next[t as usize] += ends[s as usize];
                }
            }
        }
        ends = next;
    }
    by_len
}

fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn census_against_chain_enumeration() {
    assert_eq!(census(2, 2).unwrap(), vec![1, 3, 5]);
    assert_eq!(census(1, 4).unwrap(), vec![1; 5]);
    assert_eq!(census(3, 1).unwrap(), vec![1, 7]);
    for n in 1..=5usize {
        let chains = chains_by_length(n);
        let counts = census(n, 5).unwrap();
        for d in 0..=5u64 {
            let oracle: u64 = if d == 0 {
                1
            } else {
                (1..=n.min(d as usize))
                    .map(|k| chains[k] * binom(d - 1, k as u64 - 1))
                    .sum()
            };
            assert_eq!(counts[d as usize], oracle, "n = {n}, d = {d}");
            assert_eq!(monomials(n, d as u32).len() as u64, oracle);
        }
    }
}

// ---------- free algebra with d ----------

fn w(gs: &[Generator]) -> NCWord {
    NCWord(gs.to_vec())
}

#[test]
fn double_bracket_expansion() {
    use Generator::{B, D};
    let b1 = P::b(4, 1);
    let d = P::d(4);
    let e = b1.bracket(&b1.bracket(&d).unwrap()).unwrap();
    assert_eq!(e.len(), 3);
    assert_eq!(e.coeff(&w(&[B(1), B(1), D])), q(1, 1));
    assert_eq!(e.coeff(&w(&[B(1), D, B(1)])), q(-2, 1));
    assert_eq!(e.coeff(&w(&[D, B(1), B(1)])), q(1, 1));
}

#[test]
fn half_products_of_weight_one_letters() {
    use Generator::B;
    let b1 = P::b(4, 1);
    assert_eq!(
        b1.prec(&b1).unwrap(),
        P::monomial(4, w(&[B(1), B(1)]), q(1, 2))
    );
    assert_eq!(
        b1.succ(&b1).unwrap(),
        P::monomial(4, w(&[B(1), B(1)]), q(1, 2))
    );
}

#[test]
fn xi_and_lie_formula_at_weight_two() {
    let xi = xi_element::<Q>(2).unwrap();
    assert_eq!(xi, P::b(2, 1).add(&P::b(2, 2)).unwrap());
    let d = P::d(2);
    let b1 = P::b(2, 1);
    let b2 = P::b(2, 2);
    let a1 = b1.bracket(&d).unwrap();
    let a2 = b2
        .bracket(&d)
        .unwrap()
        .add(
            &b1.bracket(&b1.bracket(&d).unwrap())
                .unwrap()
                .scale(&q(1, 2)),
        )
        .unwrap();
    let lhs = exp_ad(&xi, &d).unwrap();
    assert_eq!(lhs, d.add(&a1).unwrap().add(&a2).unwrap());
    let one_term = exp_ad(&P::b(1, 1), &P::d(1)).unwrap();
    assert_eq!(
        one_term,
        P::d(1).add(&P::b(1, 1).bracket(&P::d(1)).unwrap()).unwrap()
    );
}

#[test]
fn coproduct_of_b1_squared() {
    use Generator::B;
    let x = P::monomial(4, w(&[B(1), B(1)]), Q::one());
    let delta = coproduct(&x).unwrap();
    let e = NCWord(vec![]);
    assert_eq!(delta.len(), 3);
    assert_eq!(delta.coeff(&w(&[B(1), B(1)]), &e), q(1, 1));
    assert_eq!(delta.coeff(&w(&[B(1)]), &w(&[B(1)])), q(2, 1));
    assert_eq!(delta.coeff(&e, &w(&[B(1), B(1)])), q(1, 1));
}

#[test]
fn group_element_and_log_at_weight_two() {
    use Generator::B;
    let g = group_element::<Q>(2).unwrap();
    let expected = P::b(2, 2)
        .add(&P::monomial(2, w(&[B(1), B(1)]), q(1, 2)))
        .unwrap();
    assert_eq!(g.homogeneous(2), expected);
    let one_plus_b1 = P::one(2).add(&P::b(2, 1)).unwrap();
    let log = nc_log(&one_plus_b1).unwrap();
    let oracle = P::b(2, 1)
        .sub(&P::monomial(2, w(&[B(1), B(1)]), q(1, 2)))
        .unwrap();
    assert_eq!(log, oracle);
    assert_eq!(nc_log(&g).unwrap().homogeneous(1), P::b(2, 1));
}

// ---------- word models ----------

fn words_of(t: &opcalc::wordmodels::TensorElem) -> Vec<(Vec<u8>, Q)> {
    t.terms()
        .map(|(w, c)| (w.letters().to_vec(), c.clone()))
        .collect()
}

#[test]
fn shuffles_of_short_words() {
    let s = shuffle(&word(&[1]), &word(&[2, 3])).unwrap();
    assert_eq!(
        words_of(&s),
        vec![
            (vec![1, 2, 3], Q::one()),
            (vec![2, 1, 3], Q::one()),
            (vec![2, 3, 1], Q::one())
        ]
    );
    let left_comb = half_shuffle(&word(&[1, 2]), &word(&[3])).unwrap();
    assert_eq!(words_of(&left_comb), vec![(vec![1, 2, 3], Q::one())]);
    let two = half_shuffle(&word(&[1]), &word(&[2, 3])).unwrap();
    assert_eq!(
        words_of(&two),
        vec![(vec![1, 2, 3], Q::one()), (vec![2, 1, 3], Q::one())]
    );
    let zinbiel = half_shuffle(&word(&[1, 2]), &word(&[3]))
        .unwrap()
        .add(&half_shuffle(&word(&[2, 1]), &word(&[3])).unwrap());
    assert_eq!(two, zinbiel);
    assert_eq!(deconcat(&word(&[1, 2, 3])).len(), 4);
}

#[test]
fn log_of_identity_on_words() {
    let two = conv_log_identity(2).unwrap();
    assert_eq!(two.coeff(&perm(&[1, 2])), q(1, 2));
    assert_eq!(two.coeff(&perm(&[2, 1])), q(-1, 2));
    for n in 1..=5 {
        let oracle = eulerian_idempotent::<Q>(n).unwrap();
        let got = conv_log_identity(n).unwrap();
        for p in Perm::all(n) {
            assert_eq!(got.coeff(&p), oracle.coeff(&p.inverse()), "n = {n}");
        }
    }
}

#[test]
fn word_dictionary_values() {
    let f12 = word_to_fraction(&word(&[1, 2])).unwrap();
    assert!(f12.value().try_eq(&recip(2, &[&[1]])).unwrap());
    let f21 = word_to_fraction(&word(&[2, 1])).unwrap();
    assert!(f21.value().try_eq(&recip(2, &[&[2]])).unwrap());
    let f123 = word_to_fraction(&word(&[1, 2, 3])).unwrap();
    let nu = RFElem::nu(Q::zero());
    assert!(f123.try_eq(&nu.compose(&nu, 1).unwrap()).unwrap());
}
