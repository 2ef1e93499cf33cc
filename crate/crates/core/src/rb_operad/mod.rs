//! Free commutative Rota–Baxter algebras of weight θ on multilinear
//! inputs: expression trees, rewriting to nested monomials, the map to
//! `RF^θ`, and the counting and independence checks.

mod census;
mod expr;
mod normal;
mod random;

use thiserror::Error;

pub use census::{
    census, hilbert_coeffs, injectivity_check, monomials, poincare_inverse_check, rank_over_q,
    rb_poly_model_check, InjectivityOutcome, PoincareRow,
};
pub use expr::{rb_parse, RBExpr};
pub use normal::{
    nested_to_rf, rb_normalize, rb_to_rf_direct, NestedRBMon, RBLinComb, Strategy, STEP_BUDGET,
};
pub use random::random_expr;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RbError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("leaf a{0} appears more than once")]
    RepeatedLeaf(usize),
    #[error("leaf a{0} is missing (leaves must be a1..an)")]
    MissingLeaf(usize),
    #[error("rewriting exceeded the budget of {0} steps")]
    StepBudget(usize),
    #[error("bad bounds: {0}")]
    Bounds(String),
}
