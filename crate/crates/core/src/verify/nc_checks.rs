use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::{Params, Tally, Q};
use crate::ncalgebra::{
    a_sequence, ad_chain, coproduct, exp_ad, f_gen, for_each_composition, group_element,
    lambda_sequence, nc_log, prec_powers, xi_element, NCPoly, NcError, TensorSquare,
};
use crate::rf_operad::{fn_terms, gn_terms, TermSum};
use crate::scalar::eulerian_weight;
use crate::symgroup::{vshaped, Perm};

type P = NCPoly<Q>;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn sum_all(ps: &[P], bound: u32) -> Result<P, NcError> {
    ps.iter().try_fold(P::zero(bound), |acc, p| acc.add(p))
}

fn word(bound: u32, letters: &[u8]) -> P {
    letters.iter().fold(P::one(bound), |acc, &i| {
        acc.mul(&P::b(bound, i)).expect("no d letters")
    })
}

pub(super) fn weight_params(p: &Params) -> Value {
    json!({"max_weight": p.max_weight})
}

pub(super) fn solomon_dynkin_params(p: &Params) -> Value {
    json!({"n_max": p.max_arity.min(5)})
}

/// `(1/n) Σ_ρ c(d(ρ)) b_{ρ(1)}⋯b_{ρ(n)}` against the left-nested bracket sum
/// over `ρ(1) = 1`, letters `b_1..b_n` pairwise distinct.
pub(super) fn solomon_dynkin(p: &Params, t: &mut Tally) -> Result<(), String> {
    for n in 1..=p.max_arity.min(5) {
        let bound = (n * (n + 1) / 2) as u32;
        let inv_n = Q::new(1.into(), (n as i64).into());
        let mut lhs = P::zero(bound);
        let mut rhs = P::zero(bound);
        for rho in Perm::all(n) {
            let c = eulerian_weight(n, rho.descents()) * inv_n.clone();
            let letters: Vec<u8> = rho.one_line().iter().map(|&v| v as u8).collect();
            lhs = lhs.add(&word(bound, &letters).scale(&c)).map_err(err)?;
            if rho.apply(1) == 1 {
                let nested = letters[1..]
                    .iter()
                    .try_fold(P::b(bound, 1), |acc, &l| acc.bracket(&P::b(bound, l)))
                    .map_err(err)?;
                rhs = rhs.add(&nested.scale(&c)).map_err(err)?;
            }
        }
        t.case(lhs == rhs, || format!("n = {n}"));
    }
    Ok(())
}

pub(super) fn preparation_params(p: &Params) -> Value {
    json!({"n_max": p.max_arity.min(4), "max_weight": p.max_weight})
}

/// The V-shaped expansion of `[ad_{y_n}⋯ad_{y_2}(y_1), d]` on distinct
/// letters, and its consequence `[ξ^{(n)}, d] = Σ F_n(i) ad_{f_{i_n}}⋯ad_{f_{i_1}}(d)`.
pub(super) fn preparation_lemma(p: &Params, t: &mut Tally) -> Result<(), String> {
    let n_max = p.max_arity.min(4);
    for n in 1..=n_max {
        let bound = (n * (n + 1) / 2) as u32;
        let d = P::d(bound);
        let vs = vshaped(n).map_err(err)?;
        for tuple in Perm::all(n) {
            let ys: Vec<P> = tuple
                .one_line()
                .iter()
                .map(|&i| P::b(bound, i as u8))
                .collect();
            let lhs = ad_chain(&ys[1..], &ys[0])
                .and_then(|c| c.bracket(&d))
                .map_err(err)?;
            let mut rhs = P::zero(bound);
            for sigma in &vs {
                let sign = if sigma.inverse().apply(1) % 2 == 1 {
                    Q::one()
                } else {
                    -Q::one()
                };
                let order: Vec<P> = (1..=n).map(|k| ys[sigma.apply(k) - 1].clone()).collect();
                rhs = rhs
                    .add(&ad_chain(&order, &d).map_err(err)?.scale(&sign))
                    .map_err(err)?;
            }
            t.case(lhs == rhs, || format!("n = {n}, letters {tuple}"));
        }
    }
    let w = p.max_weight;
    let d = P::d(w);
    for n in 1..=n_max.min(w as usize) {
        let g = gn_terms(n, Q::zero()).map_err(err)?;
        let f = fn_terms(n, Q::zero()).map_err(err)?;
        let mut xi_n = P::zero(w);
        let mut rhs = P::zero(w);
        let mut failure = None;
        for_each_composition(n, w, &mut |idx| {
            let step = || -> Result<(P, P), String> {
                let coeff = |s: &TermSum<Q>| {
                    let pt: Vec<Q> = idx.iter().map(|&i| Q::from_integer(i.into())).collect();
                    s.eval(&pt)
                        .ok_or_else(|| "pole at a positive point".to_string())
                };
                let fs: Vec<P> = idx.iter().map(|&i| f_gen(w, i as u8)).collect();
                let x = ad_chain(&fs[1..], &fs[0]).map_err(err)?.scale(&coeff(&g)?);
                let y = ad_chain(&fs, &d).map_err(err)?.scale(&coeff(&f)?);
                Ok((x, y))
            };
            match step()
                .and_then(|(x, y)| Ok((xi_n.add(&x).map_err(err)?, rhs.add(&y).map_err(err)?)))
            {
                Ok((a, b)) => {
                    xi_n = a;
                    rhs = b;
                }
                Err(e) => failure = Some(e),
            }
        });
        if let Some(e) = failure {
            return Err(e);
        }
        let lhs = xi_n.bracket(&d).map_err(err)?;
        t.case(lhs == rhs, || format!("[ξ^({n}), d] at W = {w}"));
    }
    Ok(())
}

/// `exp(ad_ξ)(d) = d + Σ a_n` at every truncation up to `W`, plus the
/// weight-2 hand values.
pub(super) fn formula_lie(p: &Params, t: &mut Tally) -> Result<(), String> {
    for w in 1..=p.max_weight {
        let xi = xi_element::<Q>(w).map_err(err)?;
        let d = P::d(w);
        let lhs = exp_ad(&xi, &d).map_err(err)?;
        let rhs = d
            .add(&sum_all(&a_sequence(w).map_err(err)?, w).map_err(err)?)
            .map_err(err)?;
        t.case(lhs == rhs, || format!("W = {w}"));
    }
    if p.max_weight >= 2 {
        let (b1, b2, d) = (P::b(2, 1), P::b(2, 2), P::d(2));
        t.case(
            xi_element::<Q>(2).map_err(err)? == b1.add(&b2).map_err(err)?,
            || "ξ ≠ b1 + b2 at W = 2".into(),
        );
        let a2 = b2
            .bracket(&d)
            .and_then(|x| {
                x.add(
                    &b1.bracket(&b1.bracket(&d)?)?
                        .scale(&Q::new(1.into(), 2.into())),
                )
            })
            .map_err(err)?;
        t.case(a_sequence::<Q>(2).map_err(err)?[1] == a2, || {
            "a2 ≠ [b2,d] + ½[b1,[b1,d]]".into()
        });
    }
    Ok(())
}

/// `G·d = (d + Σ a_i)·G` for the dendriform group element.
pub(super) fn formula_gp(p: &Params, t: &mut Tally) -> Result<(), String> {
    for w in 1..=p.max_weight {
        let g = group_element::<Q>(w).map_err(err)?;
        let d = P::d(w);
        let lhs = g.mul(&d).map_err(err)?;
        let da = d
            .add(&sum_all(&a_sequence(w).map_err(err)?, w).map_err(err)?)
            .map_err(err)?;
        let rhs = da.mul(&g).map_err(err)?;
        t.case(lhs == rhs, || format!("W = {w}"));
    }
    Ok(())
}

fn primitive(x: &P) -> Result<TensorSquare<Q>, NcError> {
    let one = P::one(x.bound());
    TensorSquare::tensor(x, &one)?.add(&TensorSquare::tensor(&one, x)?)
}

/// `Δ(G) = G⊗G` and primitivity of `log G`.
pub(super) fn grouplike(p: &Params, t: &mut Tally) -> Result<(), String> {
    for w in 1..=p.max_weight {
        let g = group_element::<Q>(w).map_err(err)?;
        let dg = coproduct(&g).map_err(err)?;
        t.case(dg == TensorSquare::tensor(&g, &g).map_err(err)?, || {
            format!("Δ(G) ≠ G⊗G at W = {w}")
        });
        let l = nc_log(&g).map_err(err)?;
        t.case(
            coproduct(&l).map_err(err)? == primitive(&l).map_err(err)?,
            || format!("log G not primitive at W = {w}"),
        );
    }
    Ok(())
}

pub(super) fn bsm_params(p: &Params) -> Value {
    json!({"s_max": p.max_weight, "m_max": p.max_weight.min(3)})
}

/// `Δ(b_s^{(m)}) = Σ_{p,r} b_r^{(p)} ⊗ b_{s-r}^{(m-p)}` with `β^{≺m} = Σ_s b_s^{(m)}`.
pub(super) fn coproduct_bsm(p: &Params, t: &mut Tally) -> Result<(), String> {
    let w = p.max_weight;
    let powers = prec_powers::<Q>(w).map_err(err)?;
    let part = |m: u32, s: u32| -> P {
        if m == 0 {
            return if s == 0 { P::one(w) } else { P::zero(w) };
        }
        powers
            .get(m as usize - 1)
            .map_or_else(|| P::zero(w), |x| x.homogeneous(s))
    };
    for m in 1..=w.min(3) {
        for s in 1..=w {
            let lhs = coproduct(&part(m, s)).map_err(err)?;
            let mut rhs = TensorSquare::zero(w);
            for q in 0..=m {
                for r in 0..=s {
                    rhs = rhs
                        .add(&TensorSquare::tensor(&part(q, r), &part(m - q, s - r)).map_err(err)?)
                        .map_err(err)?;
                }
            }
            t.case(lhs == rhs, || format!("m = {m}, s = {s}"));
        }
    }
    Ok(())
}

/// `log(1 + Σ β^{≺k}) = ξ`.
pub(super) fn comparison_log(p: &Params, t: &mut Tally) -> Result<(), String> {
    for w in 1..=p.max_weight {
        let lhs = nc_log(&group_element::<Q>(w).map_err(err)?).map_err(err)?;
        t.case(lhs == xi_element::<Q>(w).map_err(err)?, || {
            format!("W = {w}")
        });
    }
    Ok(())
}

pub(super) fn telescope_params(p: &Params) -> Value {
    json!({"k_max": p.max_weight.min(3), "n_max": p.max_weight})
}

fn compositions(parts: usize, total: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for_each_composition(parts, total, &mut |c| {
        if c.iter().sum::<u32>() == total {
            out.push(c.to_vec());
        }
    });
    out
}

/// `∏_j 1/(i_1 + … + i_j)`.
fn partial_sum_weight(idx: &[u32]) -> Q {
    let mut acc = 0i64;
    idx.iter().fold(Q::one(), |c, &i| {
        acc += i as i64;
        c / Q::from_integer(acc.into())
    })
}

/// The weight-`n` component of the `k`-th telescoping relation in the
/// `f`/`λ` picture.
pub(super) fn telescope(p: &Params, t: &mut Tally) -> Result<(), String> {
    let w = p.max_weight;
    let d = P::d(w);
    let lambda = lambda_sequence::<Q>(w).map_err(err)?;
    let f = |i: u32| f_gen::<Q>(w, i as u8);
    for k in 1..=w.min(3) as usize {
        for n in k as u32..=w {
            let mut lhs = P::zero(w);
            let mut rhs = P::zero(w);
            for idx in compositions(k, n) {
                let c = partial_sum_weight(&idx);
                let fs: Vec<P> = idx.iter().map(|&i| f(i)).collect();
                lhs = lhs
                    .add(&ad_chain(&fs, &d).map_err(err)?.scale(&c))
                    .map_err(err)?;
                let first = ad_chain(&fs[1..], &lambda[idx[0] as usize - 1]).map_err(err)?;
                rhs = rhs.add(&first.scale(&c)).map_err(err)?;
            }
            for idx in compositions(k + 1, n) {
                let c = partial_sum_weight(&idx);
                let fs: Vec<P> = idx[1..].iter().map(|&i| f(i)).collect();
                let term = ad_chain(&fs, &lambda[idx[0] as usize - 1]).map_err(err)?;
                rhs = rhs.sub(&term.scale(&c)).map_err(err)?;
            }
            t.case(lhs == rhs, || format!("k = {k}, n = {n}"));
        }
    }
    Ok(())
}

pub(super) fn foissy_params(p: &Params) -> Value {
    json!({"max_weight": p.max_weight.min(4)})
}

fn weight_of(x: &P) -> u32 {
    x.min_weight().unwrap_or(0)
}

fn lie_foissy(x: &P, y: &P) -> Result<P, NcError> {
    if x.is_zero() || y.is_zero() {
        return Ok(P::zero(x.bound()));
    }
    let (a, b) = (weight_of(x) as i64, weight_of(y) as i64);
    Ok(x.bracket(y)?.scale(&Q::new(a.into(), (a + b).into())))
}

/// Pre-Lie identity for `x◁y = |x|/(|x|+|y|)[x,y]` on homogeneous Lie
/// elements, the dendriform identities for `(≺, ≻)` on positive-weight
/// words, and the `d`-rules.
pub(super) fn foissy_axioms(p: &Params, t: &mut Tally) -> Result<(), String> {
    let top = p.max_weight.min(4);
    let bound = 3 * top;
    // homogeneous Lie elements: generators and nested brackets within weight `top`
    let mut lie: Vec<P> = (1..=top).map(|i| P::b(bound, i as u8)).collect();
    for _ in 0..2 {
        let mut next = lie.clone();
        for x in &lie {
            for y in &lie {
                if weight_of(x) + weight_of(y) > top {
                    continue;
                }
                let z = x.bracket(y).map_err(err)?;
                if !z.is_zero() && !next.contains(&z) && !next.contains(&z.scale(&-Q::one())) {
                    next.push(z);
                }
            }
        }
        lie = next;
    }
    for x in &lie {
        for y in &lie {
            for z in &lie {
                let assoc = |a: &P, b: &P, c: &P| -> Result<P, NcError> {
                    lie_foissy(&lie_foissy(a, b)?, c)?.sub(&lie_foissy(a, &lie_foissy(b, c)?)?)
                };
                let l = assoc(x, y, z).map_err(err)?;
                let r = assoc(x, z, y).map_err(err)?;
                t.case(l == r, || format!("pre-Lie on {x} | {y} | {z}"));
            }
        }
    }
    // positive-weight words in the b letters
    let mut words: Vec<P> = Vec::new();
    for parts in 1..=top as usize {
        for_each_composition(parts, top, &mut |c| {
            let letters: Vec<u8> = c.iter().map(|&i| i as u8).collect();
            words.push(word(bound, &letters));
        });
    }
    for x in &words {
        for y in &words {
            let split = x.prec(y).and_then(|a| a.add(&x.succ(y)?)).map_err(err)?;
            t.case(split == x.mul(y).map_err(err)?, || {
                format!("≺ + ≻ ≠ product on {x}, {y}")
            });
            for z in &words {
                let ok = (|| -> Result<bool, NcError> {
                    let yz = y.prec(z)?.add(&y.succ(z)?)?;
                    let xy = x.prec(y)?.add(&x.succ(y)?)?;
                    Ok(x.prec(y)?.prec(z)? == x.prec(&yz)?
                        && x.succ(y)?.prec(z)? == x.succ(&y.prec(z)?)?
                        && xy.succ(z)? == x.succ(&y.succ(z)?)?)
                })()
                .map_err(err)?;
                t.case(ok, || format!("dendriform on {x} | {y} | {z}"));
            }
        }
    }
    let d = P::d(bound);
    for u in words.iter().take(4) {
        t.case(d.prec(u).map_err(err)?.is_zero(), || format!("d≺{u} ≠ 0"));
        t.case(u.succ(&d).map_err(err)?.is_zero(), || format!("{u}≻d ≠ 0"));
        t.case(u.prec(&d).map_err(err)? == u.mul(&d).map_err(err)?, || {
            format!("{u}≺d ≠ {u}d")
        });
        t.case(d.succ(u).map_err(err)? == d.mul(u).map_err(err)?, || {
            format!("d≻{u} ≠ d{u}")
        });
    }
    t.case(
        d.prec(&P::one(bound)) == Err(NcError::BothWeightZero),
        || "weight-0 pair accepted".into(),
    );
    Ok(())
}
