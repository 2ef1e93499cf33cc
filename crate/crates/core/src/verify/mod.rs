//! The check registry: every identity the library verifies, addressable by
//! a stable id, runnable at configurable bounds, with text and JSON reports.

mod nc_checks;
mod rb_checks;
mod rf_checks;
mod word_checks;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_rational::BigRational;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::exact::ThetaScalar;

pub use rf_checks::{e_dot_vi_table, EDotViRow};

type Q = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("unknown check id '{0}'")]
    UnknownCheck(String),
    #[error("bounds exceeded: {0}")]
    Bounds(String),
    #[error("unknown report format '{0}' (expected text or json)")]
    UnknownFormat(String),
    #[error("cannot parse theta list: {0}")]
    Theta(String),
}

macro_rules! registry {
    ($($variant:ident => $name:literal),* $(,)?) => {
        /// Identifier of a registered check.
        #[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
        pub enum CheckId { $($variant),* }

        impl CheckId {
            /// Every check, in registry order.
            pub const ALL: &'static [CheckId] = &[$(CheckId::$variant),*];

            pub fn as_str(self) -> &'static str {
                match self { $(CheckId::$variant => $name),* }
            }
        }

        impl FromStr for CheckId {
            type Err = VerifyError;
            fn from_str(s: &str) -> Result<Self, VerifyError> {
                match s {
                    $($name => Ok(CheckId::$variant),)*
                    other => Err(VerifyError::UnknownCheck(other.to_string())),
                }
            }
        }
    };
}

registry! {
    OperadAxioms => "operad-axioms",
    ZinbielNu => "zinbiel-nu",
    RbIdentityRf => "rb-identity-rf",
    Solomon => "solomon",
    LogGeneral => "log-general",
    ExpFE => "exp-f-e",
    EulerIdempotent => "euler-idempotent",
    EDotVi => "e-dot-vi",
    SolomonDynkin => "solomon-dynkin",
    PreparationLemma => "preparation-lemma",
    FormulaLie => "formula-lie",
    FormulaGp => "formula-gp",
    Grouplike => "grouplike",
    CoproductBsm => "coproduct-bsm",
    ComparisonLog => "comparison-log",
    Telescope => "telescope",
    FoissyAxioms => "foissy-axioms",
    RbConfluence => "rb-confluence",
    RbNormalSoundness => "rb-normal-soundness",
    CensusHilbert => "census-hilbert",
    PoincareInverse => "poincare-inverse",
    Injectivity => "injectivity",
    RbPolyModel => "rb-poly-model",
    WordmodelDictionary => "wordmodel-dictionary",
    WordmodelLog => "wordmodel-log",
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Values of θ to run θ-dependent checks at.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ThetaSpec {
    /// θ kept as an indeterminate.
    Symbolic,
    List(Vec<Q>),
}

impl FromStr for ThetaSpec {
    type Err = VerifyError;

    /// `symbolic`, or a comma-separated list of integers and fractions `p/q`.
    fn from_str(s: &str) -> Result<Self, VerifyError> {
        if s.trim() == "symbolic" {
            return Ok(ThetaSpec::Symbolic);
        }
        let values = s
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<Q>()
                    .map_err(|_| VerifyError::Theta(part.trim().to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ThetaSpec::List(values))
    }
}

impl ThetaSpec {
    pub fn scalars(&self) -> Vec<ThetaScalar> {
        match self {
            ThetaSpec::Symbolic => vec![ThetaScalar::var()],
            ThetaSpec::List(v) => v.iter().cloned().map(ThetaScalar::constant).collect(),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            ThetaSpec::Symbolic => json!("symbolic"),
            ThetaSpec::List(v) => Value::Array(v.iter().map(|q| json!(q.to_string())).collect()),
        }
    }
}

pub const MAX_ARITY: usize = 6;
pub const MAX_WEIGHT: u32 = 6;
pub const DEFAULT_SEED: u64 = 0xC0FFEE;

/// User-facing bounds shared by all checks; each check derives its own
/// effective limits from these.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Params {
    /// Largest operadic arity. Exact work stops at 4; arities above it are
    /// covered by seeded evaluation.
    pub max_arity: usize,
    /// Weight truncation for the free-algebra checks.
    pub max_weight: u32,
    pub theta: ThetaSpec,
    pub seed: u64,
}

impl Default for Params {
    fn default() -> Self {
        Params {
            max_arity: 5,
            max_weight: 5,
            theta: ThetaSpec::Symbolic,
            seed: DEFAULT_SEED,
        }
    }
}

impl Params {
    pub fn validate(&self) -> Result<(), VerifyError> {
        if !(1..=MAX_ARITY).contains(&self.max_arity) {
            return Err(VerifyError::Bounds(format!(
                "max-arity must be in 1..={MAX_ARITY}"
            )));
        }
        if !(1..=MAX_WEIGHT).contains(&self.max_weight) {
            return Err(VerifyError::Bounds(format!(
                "max-weight must be in 1..={MAX_WEIGHT}"
            )));
        }
        if let ThetaSpec::List(v) = &self.theta {
            if v.is_empty() {
                return Err(VerifyError::Bounds("theta list is empty".into()));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "max_arity": self.max_arity,
            "max_weight": self.max_weight,
            "theta": self.theta.to_json(),
            "seed": format!("{:#x}", self.seed),
        })
    }

    pub(crate) fn exact_arity(&self) -> usize {
        self.max_arity.min(4)
    }

    pub(crate) fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

/// Positive rationals `p/q` with `1 ≤ p ≤ 29`, `1 ≤ q ≤ 7`, so every
/// partial sum of coordinates is nonzero.
pub(crate) fn random_point<G: Rng>(rng: &mut G, n: usize) -> Vec<Q> {
    (0..n)
        .map(|_| Q::new(rng.gen_range(1..30).into(), rng.gen_range(1..8).into()))
        .collect()
}

pub(crate) const EVAL_POINTS: usize = 8;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub id: String,
    pub params: Value,
    pub status: Status,
    pub detail: String,
    pub millis: u64,
}

/// Accumulates the cases of one check.
#[derive(Default, Debug)]
pub(crate) struct Tally {
    cases: usize,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Tally {
    pub(crate) fn case(&mut self, ok: bool, label: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(label());
        }
    }

    pub(crate) fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    fn finish(self, error: Option<String>) -> (Status, String) {
        let notes = if self.notes.is_empty() {
            String::new()
        } else {
            format!("; {}", self.notes.join("; "))
        };
        if let Some(e) = error {
            return (
                Status::Fail,
                format!("error after {} cases: {e}{notes}", self.cases),
            );
        }
        if self.cases == 0 {
            return (Status::Skipped, format!("no cases within bounds{notes}"));
        }
        if self.failures.is_empty() {
            return (
                Status::Pass,
                format!(
                    "{} {} hold{notes}",
                    self.cases,
                    if self.cases == 1 { "case" } else { "cases" }
                ),
            );
        }
        let shown: Vec<&str> = self.failures.iter().take(3).map(String::as_str).collect();
        (
            Status::Fail,
            format!(
                "{} of {} cases failed: {}{notes}",
                self.failures.len(),
                self.cases,
                shown.join(" | ")
            ),
        )
    }
}

type Body = fn(&Params, &mut Tally) -> Result<(), String>;

fn entry(id: CheckId) -> (Body, fn(&Params) -> Value) {
    use CheckId::*;
    match id {
        OperadAxioms => (rf_checks::operad_axioms, rf_checks::operad_axioms_params),
        ZinbielNu => (rf_checks::zinbiel_nu, |_| json!({"theta": "0"})),
        RbIdentityRf => (
            rf_checks::rb_identity_rf,
            |p| json!({"theta": p.theta.to_json()}),
        ),
        Solomon => (rf_checks::solomon, rf_checks::family_params),
        LogGeneral => (rf_checks::log_general, rf_checks::family_params),
        ExpFE => (rf_checks::exp_f_e, rf_checks::family_params),
        EulerIdempotent => (rf_checks::euler_idempotent, rf_checks::descent_params),
        EDotVi => (rf_checks::e_dot_vi, rf_checks::descent_params),
        SolomonDynkin => (nc_checks::solomon_dynkin, nc_checks::solomon_dynkin_params),
        PreparationLemma => (nc_checks::preparation_lemma, nc_checks::preparation_params),
        FormulaLie => (nc_checks::formula_lie, nc_checks::weight_params),
        FormulaGp => (nc_checks::formula_gp, nc_checks::weight_params),
        Grouplike => (nc_checks::grouplike, nc_checks::weight_params),
        CoproductBsm => (nc_checks::coproduct_bsm, nc_checks::bsm_params),
        ComparisonLog => (nc_checks::comparison_log, nc_checks::weight_params),
        Telescope => (nc_checks::telescope, nc_checks::telescope_params),
        FoissyAxioms => (nc_checks::foissy_axioms, nc_checks::foissy_params),
        RbConfluence => (rb_checks::rb_confluence, rb_checks::random_params),
        RbNormalSoundness => (rb_checks::rb_normal_soundness, rb_checks::random_params),
        CensusHilbert => (rb_checks::census_hilbert, rb_checks::census_params),
        PoincareInverse => (rb_checks::poincare_inverse, rb_checks::poincare_params),
        Injectivity => (rb_checks::injectivity, rb_checks::injectivity_params),
        RbPolyModel => (rb_checks::rb_poly_model, rb_checks::poly_params),
        WordmodelDictionary => (word_checks::dictionary, word_checks::dictionary_params),
        WordmodelLog => (word_checks::conv_log, word_checks::log_params),
    }
}

/// Run one check. Failures are reported, not returned as errors.
pub fn run_check(id: CheckId, params: &Params) -> Result<Report, VerifyError> {
    params.validate()?;
    let (body, describe) = entry(id);
    let start = Instant::now();
    let mut tally = Tally::default();
    let error = body(params, &mut tally).err();
    let (status, detail) = tally.finish(error);
    Ok(Report {
        id: id.as_str().to_string(),
        params: describe(params),
        status,
        detail,
        millis: start.elapsed().as_millis() as u64,
    })
}

/// Run the given checks concurrently; reports come back in the order given.
pub fn run_checks(ids: &[CheckId], params: &Params) -> Result<Vec<Report>, VerifyError> {
    params.validate()?;
    ids.par_iter().map(|&id| run_check(id, params)).collect()
}

/// Every registered check, in registry order.
pub fn run_all(params: &Params) -> Result<Vec<Report>, VerifyError> {
    run_checks(CheckId::ALL, params)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Format {
    Text,
    Json,
}

impl FromStr for Format {
    type Err = VerifyError;
    fn from_str(s: &str) -> Result<Self, VerifyError> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            other => Err(VerifyError::UnknownFormat(other.to_string())),
        }
    }
}

pub fn all_pass(reports: &[Report]) -> bool {
    reports.iter().all(|r| r.status == Status::Pass)
}

pub fn emit_report(reports: &[Report], params: &Params, format: Format) -> String {
    match format {
        Format::Json => {
            let doc = json!({
                "version": 1,
                "params": params.to_json(),
                "checks": reports,
            });
            serde_json::to_string_pretty(&doc).expect("report values serialize") + "\n"
        }
        Format::Text => {
            let mut out = String::new();
            for r in reports {
                out += &format!(
                    "{} {:<22} {:>7} ms  {}\n",
                    r.status, r.id, r.millis, r.detail
                );
            }
            let passed = reports.iter().filter(|r| r.status == Status::Pass).count();
            out += &format!("{passed}/{} checks passed\n", reports.len());
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_round_trip() {
        assert_eq!(CheckId::ALL.len(), 25);
        for &id in CheckId::ALL {
            assert_eq!(id.as_str().parse::<CheckId>().unwrap(), id);
        }
        assert_eq!(
            "nope".parse::<CheckId>(),
            Err(VerifyError::UnknownCheck("nope".into()))
        );
    }

    #[test]
    fn theta_and_format_parsing() {
        assert_eq!(
            "symbolic".parse::<ThetaSpec>().unwrap(),
            ThetaSpec::Symbolic
        );
        let l: ThetaSpec = "0, 1/2,-3".parse().unwrap();
        assert_eq!(
            l,
            ThetaSpec::List(vec![
                Q::from_integer(0.into()),
                Q::new(1.into(), 2.into()),
                Q::from_integer((-3).into())
            ])
        );
        assert!("x".parse::<ThetaSpec>().is_err());
        assert_eq!("json".parse::<Format>().unwrap(), Format::Json);
        assert!("yaml".parse::<Format>().is_err());
    }

    #[test]
    fn bounds_are_validated() {
        let p = Params {
            max_arity: 9,
            ..Params::default()
        };
        assert!(matches!(
            run_check(CheckId::ZinbielNu, &p),
            Err(VerifyError::Bounds(_))
        ));
        let p = Params {
            max_weight: 0,
            ..Params::default()
        };
        assert!(p.validate().is_err());
    }

    #[test]
    fn empty_selection() {
        let reports = run_checks(&[], &Params::default()).unwrap();
        assert!(reports.is_empty());
        let json = emit_report(&reports, &Params::default(), Format::Json);
        let v: Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["checks"], json!([]));
        assert_eq!(v["version"], json!(1));
    }

    #[test]
    fn tally_outcomes() {
        let mut t = Tally::default();
        t.case(true, || unreachable!());
        assert_eq!(t.finish(None).0, Status::Pass);
        let mut t = Tally::default();
        t.case(false, || "bad".into());
        let (s, d) = t.finish(None);
        assert_eq!(s, Status::Fail);
        assert!(d.contains("bad"));
        assert_eq!(Tally::default().finish(None).0, Status::Skipped);
    }
}
