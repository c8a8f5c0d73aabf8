use std::process::Command;

use serde_json::Value;
use wedgehom_cli::report::Report;

fn schema() -> jsonschema::Validator {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../docs/report-schema.json"))
        .expect("schema file");
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).expect("valid schema")
}

fn reports(args: &[&str]) -> Vec<Value> {
    let out = Command::new(env!("CARGO_BIN_EXE_wedgehom"))
        .arg("--json")
        .args(args)
        .output()
        .unwrap();
    String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).expect("one object per line"))
        .collect()
}

#[test]
fn every_command_validates() {
    let v = schema();
    let mut seen = 0;
    for args in [
        &["homology", "wedge(C(4)@1, P(5)@3)"][..],
        &["--field", "2", "homology", "C(6)"],
        &["reduce", "wedge(P(7)@1, P(7)@1, P(5)@1)"],
        &["predict", "wedge(wedge(C(3)@1, C(3)@1)@2, P(3)@2)"],
        &["verify", "P(4)"],
        &["verify", "--decompose", "wedge(C(3)@1, C(3)@1)"],
        &["verify", "--decompose", "wedge(C(5)@1, C(5)@1)"],
        &["verify", "--decompose", "wedge(C(4)@1, P(5)@3)"],
        &["verify", "wedge(P(4)@4, P(5)@1)"],
        &["--max-vertices", "6", "sweep", "cycles", "--max", "8"],
    ] {
        for report in reports(args) {
            let errors: Vec<String> = v.iter_errors(&report).map(|e| e.to_string()).collect();
            assert!(errors.is_empty(), "{args:?}: {errors:?}\n{report}");
            seen += 1;
        }
    }
    assert_eq!(seen, 9 + 6);
}

#[test]
fn schema_rejects_broken_reports() {
    let v = schema();
    let good = reports(&["verify", "P(4)"]).remove(0);
    assert!(v.is_valid(&good));

    let mut no_match = good.clone();
    no_match["match"] = Value::Null;
    assert!(!v.is_valid(&no_match));

    let mut extra = good.clone();
    extra["surprise"] = Value::Bool(true);
    assert!(!v.is_valid(&extra));

    let mut missing = good.clone();
    missing.as_object_mut().unwrap().remove("timing_ms");
    assert!(!v.is_valid(&missing));

    let mut version = good;
    version["version"] = Value::from("2");
    assert!(!v.is_valid(&version));
}

#[test]
fn reports_round_trip() {
    for line in reports(&["verify", "--decompose", "wedge(C(3)@1, C(3)@1)"])
        .into_iter()
        .chain(reports(&["--field", "integers", "verify", "wedge(P(4)@4, P(5)@1)"]))
    {
        let r: Report = serde_json::from_value(line.clone()).unwrap();
        assert_eq!(serde_json::to_value(&r).unwrap(), line);
        let again: Report = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        assert_eq!(again, r);
    }
}
