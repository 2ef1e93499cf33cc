use num_traits::{One, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use super::{random_point, Params, Tally, EVAL_POINTS, Q};
use crate::exact::{FactoredRatFn, LinFactor, MPoly, ThetaScalar};
use crate::rf_operad::{
    build_fn, build_fn_via_vshaped, chain_fraction, e_family, f_family, fn_terms, fn_vshaped_terms,
    RFElem, WindowTable,
};
use crate::scalar::Scalar;
use crate::symgroup::{eulerian_idempotent, vi_element, CompositionOrder, Perm};

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// `(1 + x_1 + 2x_n) / (x_n · F^θ_{1..n})`: no symmetry, a family factor,
/// and a nonconstant numerator.
fn sample<C: Scalar>(n: usize, theta: &C) -> RFElem<C> {
    let all: Vec<usize> = (1..=n).collect();
    let den = FactoredRatFn::reciprocal(
        n,
        C::one(),
        &[LinFactor::from_vars(&[n]), LinFactor::from_vars(&all)],
        theta.clone(),
    );
    let num = MPoly::one(n)
        .add(&MPoly::var(n, 0))
        .add(&MPoly::var(n, n - 1).scale(&C::from_i64(2)));
    RFElem::new(
        den.try_mul(&FactoredRatFn::from_poly(num, theta.clone()))
            .expect("same arity and θ"),
    )
}

fn samples<C: Scalar>(n: usize, theta: &C) -> Vec<(String, RFElem<C>)> {
    let mut out = vec![(format!("s{n}"), sample(n, theta))];
    match n {
        1 => out.push(("R".into(), RFElem::rb_operator(theta.clone()))),
        2 => out.push(("nu".into(), RFElem::nu(theta.clone()))),
        _ => {}
    }
    out
}

pub(super) fn operad_axioms_params(p: &Params) -> Value {
    json!({"composite_arity": p.exact_arity(), "theta": p.theta.to_json()})
}

pub(super) fn operad_axioms(p: &Params, t: &mut Tally) -> Result<(), String> {
    let top = p.exact_arity();
    for theta in p.theta.scalars() {
        let el: Vec<Vec<(String, RFElem<ThetaScalar>)>> = (0..=top)
            .map(|n| if n == 0 { vec![] } else { samples(n, &theta) })
            .collect();
        for m in 1..=top {
            for n in 1..=top + 1 - m {
                for (fname, f) in &el[m] {
                    for (gname, g) in &el[n] {
                        // equivariance, outer and inner
                        for i in 1..=m {
                            for s in Perm::all(m) {
                                let lhs = f.act(&s).and_then(|fs| fs.compose(g, i)).map_err(err)?;
                                let j = s.inverse().apply(i);
                                let rhs = f
                                    .compose(g, j)
                                    .and_then(|c| c.act(&s.expand_slot(i, n)))
                                    .map_err(err)?;
                                t.case(lhs.try_eq(&rhs).map_err(err)?, || {
                                    format!("({fname}·{s})∘{i}{gname}")
                                });
                            }
                            for tau in Perm::all(n) {
                                let lhs =
                                    g.act(&tau).and_then(|gt| f.compose(&gt, i)).map_err(err)?;
                                let rhs = f
                                    .compose(g, i)
                                    .and_then(|c| c.act(&Perm::insert_block(m, i, &tau)))
                                    .map_err(err)?;
                                t.case(lhs.try_eq(&rhs).map_err(err)?, || {
                                    format!("{fname}∘{i}({gname}·{tau})")
                                });
                            }
                        }
                        // sequential and parallel associativity with a third element
                        let third = (top + 2).saturating_sub(m + n);
                        for hs in el.iter().take(third + 1).skip(1) {
                            for (hname, h) in hs {
                                for i in 1..=m {
                                    for j in 1..=n {
                                        let lhs = f
                                            .compose(g, i)
                                            .and_then(|c| c.compose(h, i + j - 1))
                                            .map_err(err)?;
                                        let rhs = g
                                            .compose(h, j)
                                            .and_then(|c| f.compose(&c, i))
                                            .map_err(err)?;
                                        t.case(lhs.try_eq(&rhs).map_err(err)?, || {
                                            format!("({fname}∘{i}{gname})∘{}{hname}", i + j - 1)
                                        });
                                    }
                                    for k in i + 1..=m {
                                        let lhs = f
                                            .compose(g, i)
                                            .and_then(|c| c.compose(h, k + n - 1))
                                            .map_err(err)?;
                                        let rhs = f
                                            .compose(h, k)
                                            .and_then(|c| c.compose(g, i))
                                            .map_err(err)?;
                                        t.case(lhs.try_eq(&rhs).map_err(err)?, || {
                                            format!(
                                                "parallel {fname}: {gname} at {i}, {hname} at {k}"
                                            )
                                        });
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn recip<C: Scalar>(n: usize, blocks: &[&[usize]], theta: &C) -> FactoredRatFn<C> {
    let fs: Vec<LinFactor> = blocks.iter().map(|b| LinFactor::from_vars(b)).collect();
    FactoredRatFn::reciprocal(n, C::one(), &fs, theta.clone())
}

/// `ν∘₂ν = ν∘₁ν + (ν∘₁ν)·(12)` at θ = 0.
pub(super) fn zinbiel_nu(_: &Params, t: &mut Tally) -> Result<(), String> {
    let nu = RFElem::nu(Q::zero());
    let left = nu.compose(&nu, 2).map_err(err)?;
    let comb = nu.compose(&nu, 1).map_err(err)?;
    let swapped = comb
        .act(&Perm::from_one_line(&[2, 1, 3]).expect("perm"))
        .map_err(err)?;
    let right = comb.value().try_add(swapped.value()).map_err(err)?;
    t.case(left.value().try_eq(&right).map_err(err)?, || {
        format!("{left} vs {right}")
    });
    t.case(left.value() == &recip(3, &[&[1], &[2]], &Q::zero()), || {
        format!("ν∘₂ν = {left}")
    });
    t.case(
        comb.value() == &recip(3, &[&[1], &[1, 2]], &Q::zero()),
        || format!("ν∘₁ν = {comb}"),
    );
    Ok(())
}

/// The four composites of `μ` and `R` and the weight-θ Rota–Baxter identity.
pub(super) fn rb_identity_rf(p: &Params, t: &mut Tally) -> Result<(), String> {
    for theta in p.theta.scalars() {
        let r = RFElem::rb_operator(theta.clone());
        let mu = RFElem::mu(2, theta.clone());
        let r1 = mu.compose(&r, 1).map_err(err)?; // R(a1) a2
        let r2 = mu.compose(&r, 2).map_err(err)?; // a1 R(a2)
        let rr = r1.compose(&r, 2).map_err(err)?; // R(a1) R(a2)
        let r_r1 = r.compose(&r1, 1).map_err(err)?; // R(R(a1) a2)
        let r_r2 = r.compose(&r2, 1).map_err(err)?; // R(a1 R(a2))
        let r_mu = r.compose(&mu, 1).map_err(err)?; // R(a1 a2)
        let expect = [
            ("R(a1)R(a2)", &rr, recip(2, &[&[1], &[2]], &theta)),
            ("R(R(a1)a2)", &r_r1, recip(2, &[&[1, 2], &[1]], &theta)),
            ("R(a1R(a2))", &r_r2, recip(2, &[&[1, 2], &[2]], &theta)),
            ("R(a1a2)", &r_mu, recip(2, &[&[1, 2]], &theta)),
        ];
        for (name, got, want) in &expect {
            t.case(got.value().try_eq(want).map_err(err)?, || {
                format!("{name} = {got} at θ = {theta}")
            });
        }
        let rhs = FactoredRatFn::sum(
            2,
            theta.clone(),
            [
                (ThetaScalar::one(), r_r1.value()),
                (ThetaScalar::one(), r_r2.value()),
                (theta.clone(), r_mu.value()),
            ],
        )
        .map_err(err)?;
        t.case(rr.value().try_eq(&rhs).map_err(err)?, || {
            format!("Rota–Baxter identity at θ = {theta}")
        });
    }
    Ok(())
}

pub(super) fn family_params(p: &Params) -> Value {
    let eval: Vec<usize> = (5..=p.max_arity).collect();
    json!({
        "exact_arity": p.exact_arity(),
        "eval_arities": eval,
        "eval_points": if eval.is_empty() { 0 } else { EVAL_POINTS },
        "seed": format!("{:#x}", p.seed),
        "theta": "0",
    })
}

/// Window tables of `E` and `F` at one point.
fn eval_tables(
    point: &[Q],
    f_terms: &[crate::rf_operad::TermSum<Q>],
) -> Result<(WindowTable<Q>, WindowTable<Q>), String> {
    let n = point.len();
    let ident: Vec<usize> = (1..=n).collect();
    let e = WindowTable::from_fn(n, |i, j| {
        chain_fraction(j - i, &ident[..j - i], j - i, Q::zero()).eval(&point[i..j])
    })
    .ok_or("pole in E")?;
    let f = WindowTable::from_fn(n, |i, j| {
        if i == j {
            Some(Q::zero())
        } else {
            f_terms[j - i].eval(&point[i..j])
        }
    })
    .ok_or("pole in F")?;
    Ok((e, f))
}

fn f_term_sums(n: usize) -> Result<Vec<crate::rf_operad::TermSum<Q>>, String> {
    let mut v = vec![crate::rf_operad::TermSum::new(0, Q::zero())];
    for k in 1..=n {
        v.push(fn_terms(k, Q::zero()).map_err(err)?);
    }
    Ok(v)
}

/// Shared driver: an exact comparison up to the exact arity, then tables
/// at random points for the larger arities.
fn family_check(
    p: &Params,
    t: &mut Tally,
    exact: impl Fn(usize, &mut Tally) -> Result<(), String>,
    eval: impl Fn(&[Q], &[crate::rf_operad::TermSum<Q>]) -> Result<bool, String>,
) -> Result<(), String> {
    exact(p.exact_arity(), t)?;
    if p.max_arity >= 5 {
        let mut rng = p.rng();
        let sums = f_term_sums(p.max_arity)?;
        for n in 5..=p.max_arity {
            for k in 0..EVAL_POINTS {
                let pt = random_point(&mut rng, n);
                t.case(eval(&pt, &sums)?, || format!("arity {n}, point #{k}"));
            }
        }
    }
    Ok(())
}

pub(super) fn solomon(p: &Params, t: &mut Tally) -> Result<(), String> {
    family_check(
        p,
        t,
        |order, t| {
            let log = e_family(order, Q::zero())
                .and_then(|e| e.conv_log())
                .map_err(err)?;
            let f = f_family(order, Q::zero()).map_err(err)?;
            for k in 0..=order {
                t.case(
                    log.component(k).try_eq(f.component(k)).map_err(err)?,
                    || format!("log(E)_{k} ≠ F_{k}"),
                );
            }
            Ok(())
        },
        |pt, sums| {
            let (e, f) = eval_tables(pt, sums)?;
            Ok(e.log() == f)
        },
    )
}

pub(super) fn exp_f_e(p: &Params, t: &mut Tally) -> Result<(), String> {
    family_check(
        p,
        t,
        |order, t| {
            let exp = f_family(order, Q::zero())
                .and_then(|f| f.conv_exp())
                .map_err(err)?;
            let e = e_family(order, Q::zero()).map_err(err)?;
            for k in 0..=order {
                t.case(
                    exp.component(k).try_eq(e.component(k)).map_err(err)?,
                    || format!("exp(F)_{k} ≠ E_{k}"),
                );
            }
            Ok(())
        },
        |pt, sums| {
            let (e, f) = eval_tables(pt, sums)?;
            Ok(f.exp() == e)
        },
    )
}

/// The full-`S_n` sum for `F_n` against the V-shaped signed sum of `G_n`.
pub(super) fn log_general(p: &Params, t: &mut Tally) -> Result<(), String> {
    family_check(
        p,
        t,
        |order, t| {
            for n in 1..=order {
                let a = build_fn(n, Q::zero()).map_err(err)?;
                let b = build_fn_via_vshaped(n, Q::zero()).map_err(err)?;
                t.case(a.try_eq(&b).map_err(err)?, || {
                    format!("routes differ at n = {n}")
                });
            }
            Ok(())
        },
        |pt, sums| {
            let n = pt.len();
            let b = fn_vshaped_terms(n, Q::zero()).map_err(err)?;
            Ok(sums[n].eval(pt).is_some() && sums[n].eval(pt) == b.eval(pt))
        },
    )
}

pub(super) fn descent_params(p: &Params) -> Value {
    json!({"n_max": descent_n(p)})
}

fn descent_n(p: &Params) -> usize {
    (p.max_arity + 1).min(6)
}

/// `E² = E` for every `n` up to the descent bound.
pub(super) fn euler_idempotent(p: &Params, t: &mut Tally) -> Result<(), String> {
    for n in 1..=descent_n(p) {
        let e = eulerian_idempotent::<Q>(n).map_err(err)?;
        t.case(e.mul(&e).map_err(err)? == e, || {
            format!("E² ≠ E at n = {n}")
        });
        // coefficient depends on the descent number only
        let mut by_descent: Vec<Option<Q>> = vec![None; n];
        let mut uniform = true;
        for (perm, c) in e.terms() {
            let slot = &mut by_descent[perm.descents()];
            match slot {
                Some(v) if v != c => uniform = false,
                Some(_) => {}
                None => *slot = Some(c.clone()),
            }
        }
        t.case(uniform && e.len() == (1..=n).product::<usize>(), || {
            format!("coefficients of E not a function of descents at n = {n}")
        });
    }
    Ok(())
}

/// Whether `E·V_i = E` for all `i ≤ n ≤ n_max`, per multiplication order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EDotViRow {
    pub order: CompositionOrder,
    pub convention: String,
    pub holds: bool,
    pub failing_pairs: Vec<(usize, usize)>,
}

pub fn e_dot_vi_table(n_max: usize) -> Result<Vec<EDotViRow>, String> {
    let mut rows = Vec::new();
    for order in [CompositionOrder::RightToLeft, CompositionOrder::LeftToRight] {
        let mut failing = Vec::new();
        for n in 1..=n_max {
            let e = eulerian_idempotent::<Q>(n).map_err(err)?;
            for i in 1..=n {
                let v = vi_element::<Q>(n, i).map_err(err)?;
                if e.mul_with(&v, order).map_err(err)? != e {
                    failing.push((n, i));
                }
            }
        }
        rows.push(EDotViRow {
            order,
            convention: order.to_string(),
            holds: failing.is_empty(),
            failing_pairs: failing,
        });
    }
    Ok(rows)
}

/// Passes when `E·V_i = E` under the fixed order `(σ·τ)(i) = σ(τ(i))`;
/// the reversed order is reported alongside.
pub(super) fn e_dot_vi(p: &Params, t: &mut Tally) -> Result<(), String> {
    let n_max = descent_n(p);
    let rows = e_dot_vi_table(n_max)?;
    for row in &rows {
        let status = if row.holds {
            "holds".to_string()
        } else {
            format!("fails at {} of the (n, i) pairs", row.failing_pairs.len())
        };
        t.note(format!("{}: {status}", row.convention));
    }
    let fixed = rows
        .iter()
        .find(|r| r.order == CompositionOrder::RightToLeft)
        .expect("both orders present");
    for n in 1..=n_max {
        for i in 1..=n {
            t.case(!fixed.failing_pairs.contains(&(n, i)), || {
                format!("E·V_{i} ≠ E at n = {n}")
            });
        }
    }
    Ok(())
}
