use opcalc::verify::{
    all_pass, emit_report, run_all, run_check, run_checks, CheckId, Format, Params, Report, Status,
    ThetaSpec,
};
use serde_json::{json, Value};

fn small() -> Params {
    Params {
        max_arity: 2,
        max_weight: 1,
        ..Params::default()
    }
}

fn strip_millis(mut doc: Value) -> Value {
    for c in doc["checks"].as_array_mut().unwrap() {
        c["millis"] = json!(0);
    }
    doc
}

#[test]
fn registry_has_twenty_five_distinct_ids() {
    assert_eq!(CheckId::ALL.len(), 25);
    let mut ids: Vec<&str> = CheckId::ALL.iter().map(|c| c.as_str()).collect();
    ids.sort();
    ids.dedup();
    assert_eq!(ids.len(), 25);
}

#[test]
fn zinbiel_check_passes() {
    let r = run_check(CheckId::ZinbielNu, &Params::default()).unwrap();
    assert_eq!(r.status, Status::Pass, "{}", r.detail);
}

#[test]
fn lie_formula_passes_at_weight_two() {
    let p = Params {
        max_weight: 2,
        ..Params::default()
    };
    let r = run_check(CheckId::FormulaLie, &p).unwrap();
    assert_eq!(r.status, Status::Pass, "{}", r.detail);
}

#[test]
fn everything_passes_at_reduced_bounds() {
    let reports = run_all(&small()).unwrap();
    assert_eq!(reports.len(), 25);
    let order: Vec<&str> = reports.iter().map(|r| r.id.as_str()).collect();
    let expected: Vec<&str> = CheckId::ALL.iter().map(|c| c.as_str()).collect();
    assert_eq!(order, expected);
    for r in &reports {
        assert_eq!(r.status, Status::Pass, "{}: {}", r.id, r.detail);
    }
}

#[test]
fn theta_lists_are_honoured() {
    let p = Params {
        theta: "0,1,-1/2".parse().unwrap(),
        ..small()
    };
    let q = |n: i64, d: i64| num_rational::BigRational::new(n.into(), d.into());
    assert_eq!(p.theta, ThetaSpec::List(vec![q(0, 1), q(1, 1), q(-1, 2)]));
    for id in [
        CheckId::OperadAxioms,
        CheckId::RbIdentityRf,
        CheckId::RbConfluence,
        CheckId::Injectivity,
    ] {
        let r = run_check(id, &p).unwrap();
        assert_eq!(r.status, Status::Pass, "{}: {}", r.id, r.detail);
    }
}

#[test]
fn empty_selection_gives_empty_report() {
    let reports = run_checks(&[], &small()).unwrap();
    assert!(reports.is_empty());
    let doc: Value = serde_json::from_str(&emit_report(&reports, &small(), Format::Json)).unwrap();
    assert_eq!(doc["version"], 1);
    assert_eq!(doc["checks"], json!([]));
}

#[test]
fn json_report_shape_and_determinism() {
    let ids = [
        CheckId::ZinbielNu,
        CheckId::RbConfluence,
        CheckId::WordmodelLog,
    ];
    let p = small();
    let first: Value = serde_json::from_str(&emit_report(
        &run_checks(&ids, &p).unwrap(),
        &p,
        Format::Json,
    ))
    .unwrap();
    let second: Value = serde_json::from_str(&emit_report(
        &run_checks(&ids, &p).unwrap(),
        &p,
        Format::Json,
    ))
    .unwrap();
    assert_eq!(strip_millis(first.clone()), strip_millis(second));
    assert_eq!(first["params"]["seed"], "0xc0ffee");
    assert_eq!(first["params"]["theta"], "symbolic");
    for c in first["checks"].as_array().unwrap() {
        let keys: Vec<&str> = c.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(keys, ["id", "params", "status", "detail", "millis"]);
        assert_eq!(c["status"], "pass");
        assert!(c["millis"].is_u64());
    }
}

#[test]
fn seed_is_recorded_in_check_params() {
    let a = run_check(CheckId::RbConfluence, &small()).unwrap();
    let b = run_check(CheckId::RbConfluence, &Params { seed: 7, ..small() }).unwrap();
    assert_eq!(a.params["seed"], "0xc0ffee");
    assert_eq!(b.params["seed"], "0x7");
    assert_eq!(b.status, Status::Pass);
}

#[test]
fn failures_and_skips_are_not_passes() {
    let fail = Report {
        id: "x".into(),
        params: json!({}),
        status: Status::Fail,
        detail: "no".into(),
        millis: 0,
    };
    let skip = Report {
        status: Status::Skipped,
        ..fail.clone()
    };
    assert!(!all_pass(std::slice::from_ref(&fail)));
    assert!(!all_pass(std::slice::from_ref(&skip)));
    let doc: Value =
        serde_json::from_str(&emit_report(&[fail, skip], &small(), Format::Json)).unwrap();
    assert_eq!(doc["checks"][0]["status"], "fail");
    assert_eq!(doc["checks"][1]["status"], "skipped");
}

#[test]
fn out_of_range_bounds_are_rejected() {
    assert!(run_check(
        CheckId::ZinbielNu,
        &Params {
            max_arity: 7,
            ..Params::default()
        }
    )
    .is_err());
    assert!(run_check(
        CheckId::ZinbielNu,
        &Params {
            max_weight: 0,
            ..Params::default()
        }
    )
    .is_err());
    assert!("bogus".parse::<CheckId>().is_err());
    assert!("yaml".parse::<Format>().is_err());
}
