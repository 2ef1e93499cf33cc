use num_rational::BigRational;
use serde_json::{json, Value};

use super::{Params, Tally};
use crate::symgroup::{eulerian_idempotent, Perm};
use crate::wordmodels::{
    conv_log_identity, half_shuffle, nu_compose_words, shuffle, tensor_to_fraction,
    word_to_full_fraction, TensorElem, Word, WordError,
};

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn zinbiel_len(p: &Params) -> usize {
    p.max_arity.min(5)
}

fn dictionary_len(p: &Params) -> usize {
    p.max_arity.min(4)
}

pub(super) fn dictionary_params(p: &Params) -> Value {
    json!({"zinbiel_total_length": zinbiel_len(p), "dictionary_total_length": dictionary_len(p)})
}

/// Every way to cut a permutation of `1..len` into `parts` nonempty
/// consecutive words.
fn splittings(len: usize, parts: usize) -> Vec<Vec<Word>> {
    let mut out = Vec::new();
    for perm in Perm::all(len) {
        let letters: Vec<u8> = perm.one_line().iter().map(|&v| v as u8).collect();
        for cuts in 0u32..(1 << (len.saturating_sub(1))) {
            if cuts.count_ones() as usize != parts - 1 {
                continue;
            }
            let mut words = Vec::with_capacity(parts);
            let mut start = 0;
            for i in 1..=len {
                if i == len || cuts >> (i - 1) & 1 == 1 {
                    words.push(Word::new(letters[start..i].to_vec()).expect("distinct letters"));
                    start = i;
                }
            }
            out.push(words);
        }
    }
    out
}

fn nu(u: &TensorElem, v: &TensorElem) -> Result<TensorElem, WordError> {
    u.half_shuffle(v)
}

/// Zinbiel identity and symmetrized half-shuffle up to the Zinbiel length;
/// the word-to-fraction dictionary as a `ν`- and product morphism up to
/// the dictionary length.
pub(super) fn dictionary(p: &Params, t: &mut Tally) -> Result<(), String> {
    for len in 3..=zinbiel_len(p) {
        for ws in splittings(len, 3) {
            let [a, b, c] = [0, 1, 2].map(|k| TensorElem::word(ws[k].clone()));
            let lhs = nu(&a, &nu(&b, &c).map_err(err)?).map_err(err)?;
            let rhs = nu(&nu(&a, &b).map_err(err)?, &c)
                .map_err(err)?
                .add(&nu(&nu(&b, &a).map_err(err)?, &c).map_err(err)?);
            t.case(lhs == rhs, || {
                format!("Zinbiel on {}, {}, {}", ws[0], ws[1], ws[2])
            });
        }
    }
    for len in 2..=zinbiel_len(p) {
        for ws in splittings(len, 2) {
            let (u, v) = (&ws[0], &ws[1]);
            let sh = shuffle(u, v).map_err(err)?;
            let sym = half_shuffle(u, v)
                .map_err(err)?
                .add(&half_shuffle(v, u).map_err(err)?);
            t.case(sh == sym, || format!("shuffle vs ν on {u}, {v}"));
            if len > dictionary_len(p) {
                continue;
            }
            let nu_words = tensor_to_fraction(&half_shuffle(u, v).map_err(err)?, len, false);
            let composed = nu_compose_words(u, v).map_err(err)?;
            t.case(nu_words.try_eq(composed.value()).map_err(err)?, || {
                format!("ν-morphism on {u}, {v}")
            });
            let sh_frac = tensor_to_fraction(&sh, len, true);
            let prod = word_to_full_fraction(u, len)
                .try_mul(&word_to_full_fraction(v, len))
                .map_err(err)?;
            t.case(sh_frac.try_eq(&prod).map_err(err)?, || {
                format!("shuffle-morphism on {u}, {v}")
            });
        }
    }
    Ok(())
}

pub(super) fn log_params(p: &Params) -> Value {
    json!({"n_max": p.max_arity})
}

/// `log(id)` in the (shuffle, deconcatenation) convolution algebra equals
/// `E` with every permutation inverted.
pub(super) fn conv_log(p: &Params, t: &mut Tally) -> Result<(), String> {
    for n in 1..=p.max_arity {
        let lhs = conv_log_identity(n).map_err(err)?;
        let rhs = eulerian_idempotent::<BigRational>(n)
            .map_err(err)?
            .invert_perms();
        t.case(lhs == rhs, || format!("n = {n}"));
    }
    Ok(())
}
