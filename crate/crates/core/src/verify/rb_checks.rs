use num_bigint::BigInt;
use serde_json::{json, Value};

use super::{Params, Tally, ThetaSpec, Q};
use crate::rb_operad::{
    census, hilbert_coeffs, injectivity_check, poincare_inverse_check, random_expr, rb_normalize,
    rb_poly_model_check, rb_to_rf_direct, RBExpr, Strategy,
};

pub(crate) const RANDOM_EXPRS: usize = 200;
const RANDOM_DEPTH: usize = 3;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn random_arity(p: &Params) -> usize {
    p.exact_arity()
}

pub(super) fn random_params(p: &Params) -> Value {
    json!({
        "expressions": RANDOM_EXPRS,
        "arity_max": random_arity(p),
        "r_depth_max": RANDOM_DEPTH,
        "seed": format!("{:#x}", p.seed),
        "theta": p.theta.to_json(),
    })
}

/// The seeded sample shared by the rewriting checks.
pub(crate) fn random_sample(p: &Params) -> Vec<RBExpr> {
    use rand::Rng;
    let mut rng = p.rng();
    let top = random_arity(p);
    (0..RANDOM_EXPRS)
        .map(|_| {
            let n = rng.gen_range(1..=top);
            random_expr(&mut rng, n, RANDOM_DEPTH)
        })
        .collect()
}

/// Both rewriting strategies reach the same normal form.
pub(super) fn rb_confluence(p: &Params, t: &mut Tally) -> Result<(), String> {
    let exprs = random_sample(p);
    for theta in p.theta.scalars() {
        for e in &exprs {
            let a = rb_normalize(e, &theta, Strategy::LeftmostInnermost).map_err(err)?;
            let b = rb_normalize(e, &theta, Strategy::RightmostOutermost).map_err(err)?;
            t.case(a == b, || format!("{e} at θ = {theta}"));
        }
    }
    Ok(())
}

/// The `RF^θ` image of the normal form equals the direct image.
pub(super) fn rb_normal_soundness(p: &Params, t: &mut Tally) -> Result<(), String> {
    let exprs = random_sample(p);
    for theta in p.theta.scalars() {
        for e in &exprs {
            let normal = rb_normalize(e, &theta, Strategy::LeftmostInnermost).map_err(err)?;
            let via_normal = normal.to_rf(&theta).map_err(err)?;
            let direct = rb_to_rf_direct(e, theta.clone()).map_err(err)?;
            t.case(via_normal.try_eq(&direct).map_err(err)?, || {
                format!("{e} at θ = {theta}")
            });
        }
    }
    Ok(())
}

pub(super) fn census_params(p: &Params) -> Value {
    json!({"n_max": p.max_arity, "d_max": p.max_weight})
}

/// Nested-monomial counts against `P_n(q)/(1-q)^n`.
pub(super) fn census_hilbert(p: &Params, t: &mut Tally) -> Result<(), String> {
    for n in 1..=p.max_arity {
        let counts = census(n, p.max_weight).map_err(err)?;
        let series = hilbert_coeffs(n, p.max_weight).map_err(err)?;
        for (d, (c, h)) in counts.iter().zip(&series).enumerate() {
            t.case(&BigInt::from(*c) == h, || {
                format!("n = {n}, d = {d}: {c} vs {h}")
            });
        }
    }
    Ok(())
}

pub(super) fn poincare_params(p: &Params) -> Value {
    json!({"order": p.max_arity + 1})
}

pub(super) fn poincare_inverse(p: &Params, t: &mut Tally) -> Result<(), String> {
    for row in poincare_inverse_check(p.max_arity + 1).map_err(err)? {
        t.case(row.matches(), || {
            format!("t^{}: {} vs {}", row.n, row.computed, row.expected)
        });
    }
    Ok(())
}

fn injectivity_thetas(p: &Params) -> Vec<Q> {
    match &p.theta {
        ThetaSpec::Symbolic => (0..=2).map(|k| Q::from_integer(k.into())).collect(),
        ThetaSpec::List(v) => v.clone(),
    }
}

pub(super) fn injectivity_params(p: &Params) -> Value {
    let thetas: Vec<String> = injectivity_thetas(p).iter().map(Q::to_string).collect();
    json!({"n_max": p.max_arity.min(3), "d_max": p.max_weight.min(3), "theta": thetas})
}

/// Full rank of the nested-monomial images, weight by weight and jointly.
pub(super) fn injectivity(p: &Params, t: &mut Tally) -> Result<(), String> {
    let d_max = p.max_weight.min(3);
    let all: Vec<u32> = (0..=d_max).collect();
    for theta in injectivity_thetas(p) {
        for n in 1..=p.max_arity.min(3) {
            for d in 0..=d_max {
                let out = injectivity_check(n, &[d], &theta).map_err(err)?;
                t.case(out.full_rank(), || {
                    format!(
                        "n = {n}, d = {d}, θ = {theta}: rank {} of {}",
                        out.rank, out.monomials
                    )
                });
            }
            let out = injectivity_check(n, &all, &theta).map_err(err)?;
            t.case(out.full_rank(), || {
                format!(
                    "n = {n}, d ≤ {d_max}, θ = {theta}: rank {} of {}",
                    out.rank, out.monomials
                )
            });
        }
    }
    Ok(())
}

pub(super) fn poly_params(p: &Params) -> Value {
    json!({"degree_max": p.max_weight + 1})
}

/// `R(z^k) = z^{k+1}/(k+1)` is a weight-0 Rota–Baxter operator on `ℚ[z]`.
pub(super) fn rb_poly_model(p: &Params, t: &mut Tally) -> Result<(), String> {
    let top = p.max_weight + 1;
    let failures = rb_poly_model_check(top);
    for a in 0..=top {
        for b in 0..=top {
            t.case(!failures.contains(&(a, b)), || format!("z^{a}, z^{b}"));
        }
    }
    Ok(())
}
