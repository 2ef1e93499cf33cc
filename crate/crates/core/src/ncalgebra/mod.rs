//! Weight-truncated free associative algebra on `b_1, b_2, …` (weight `i`)
//! and one letter `d` (weight 0), with commutators, the Foissy products,
//! the `a_n` recursion, the element `ξ`, `exp(ad)`, the shuffle coproduct,
//! the dendriform group element and the truncated logarithm.
//!
//! Commutators are unsigned throughout. The `f`/`λ` picture is reached by
//! [`f_gen`] and [`lambda_sequence`] (`f_i = i·b_i`, `λ_n = n·a_n`).

mod formulas;
mod poly;
mod tensor;

use thiserror::Error;

pub use formulas::{
    a_sequence, ad_chain, exp_ad, f_gen, for_each_composition, group_element, lambda_sequence,
    nc_log, prec_powers, xi_element,
};
pub use poly::{foissy_prec, foissy_succ, nc_bracket, nc_mul, Generator, NCPoly, NCWord};
pub use tensor::{coproduct, TensorSquare};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NcError {
    #[error("product would create a word with two d letters")]
    TwoD,
    #[error("Foissy product of two weight-0 operands")]
    BothWeightZero,
    #[error("coproduct is only defined on the b-subalgebra (found a d letter)")]
    DInCoproduct,
    #[error("operands truncated at different weights ({0} and {1})")]
    BoundMismatch(u32, u32),
    #[error("element has a weight-0 component")]
    WeightZeroComponent,
    #[error("constant term is not 1")]
    ConstantTermNotOne,
    #[error("coefficient evaluation failed: {0}")]
    Coefficient(String),
}
