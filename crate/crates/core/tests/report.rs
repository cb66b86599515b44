use qzm::commands::{cmd_enumerate, cmd_fprime, cmd_verify_field};
use qzm::report::{CheckRecord, Expectation, Format, Outcome, Report, RunConfig, SCHEMA};

fn cfg(n: usize, k: u32) -> RunConfig {
    RunConfig { n, k, ..RunConfig::default() }
}

#[test]
fn json_carries_schema_and_config() {
    let rep = cmd_verify_field(&cfg(2, 2)).unwrap();
    let v: serde_json::Value = serde_json::from_str(&rep.to_json().unwrap()).unwrap();
    assert_eq!(v["schema"], SCHEMA);
    assert_eq!(v["tool"], "qzm");
    assert_eq!(v["epsilon"], "(-q)^-l");
    assert_eq!(v["config"]["h"], 4);
    assert_eq!(v["config"]["command"], "verify-field");
    assert_eq!(v["summary"]["fail"], 0);
    let back: Report = serde_json::from_value(v).unwrap();
    assert_eq!(back, rep);
}

#[test]
fn fprime_json_is_deterministic() {
    let a = cmd_fprime(&cfg(2, 2)).unwrap().to_json_untimed().unwrap();
    let b = cmd_fprime(&cfg(2, 2)).unwrap().to_json_untimed().unwrap();
    assert_eq!(a, b);
}

#[test]
fn csv_has_fixed_header() {
    let rep = cmd_enumerate(&cfg(3, 1)).unwrap();
    let text = rep.render(Format::Csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "name,params,expectation,result,detail,sizes,certificate,wall_ms");
    assert_eq!(lines.count(), rep.checks.len());
}

#[test]
fn enumerate_counts() {
    for (n, k, count) in [(2, 1, 3), (2, 3, 5), (3, 1, 7), (3, 2, 11)] {
        let rep = cmd_enumerate(&cfg(n, k)).unwrap();
        assert_eq!(rep.check("diagram").count(), count, "n={n} k={k}");
        assert_eq!(rep.exit_code(), 0);
    }
}

#[test]
fn exit_code_tracks_paper_claims() {
    let mut rep = Report::new(&cfg(2, 1));
    rep.push(CheckRecord::new("x", Expectation::Exploratory).result(Outcome::Fail));
    rep.push(CheckRecord::new("y", Expectation::DerivedOracle).result(Outcome::Pass));
    assert_eq!(rep.exit_code(), 0);
    assert_eq!(rep.summary.exploratory_findings, 1);
    rep.push(CheckRecord::new("z", Expectation::PaperClaim).result(Outcome::Fail));
    assert_eq!(rep.exit_code(), 1);
    assert_eq!((rep.summary.total, rep.summary.pass, rep.summary.fail), (3, 1, 2));
}

#[test]
fn tiny_budget_is_reported() {
    let c = RunConfig { budget: 2, ..cfg(3, 1) };
    let rep = cmd_fprime(&c).unwrap();
    assert!(rep.summary.budget > 0);
    assert!(rep.checks.iter().filter(|c| c.result == Outcome::Budget).all(|c| c.detail.is_some()));
}

#[test]
fn bad_parameters_are_errors() {
    assert!(cmd_fprime(&cfg(1, 1)).is_err());
    assert!(cmd_enumerate(&RunConfig { k: 0, ..cfg(2, 1) }).is_err());
    assert!("yaml".parse::<Format>().is_err());
}
