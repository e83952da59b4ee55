use std::process::{Command, Output};

fn difcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_difcat")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn validator() -> jsonschema::Validator {
    let raw = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/report.schema.json")).unwrap();
    jsonschema::validator_for(&serde_json::from_str(&raw).unwrap()).unwrap()
}

fn assert_valid(v: &jsonschema::Validator, out: &str) {
    let json: serde_json::Value = serde_json::from_str(out).unwrap();
    let errors: Vec<String> = v.iter_errors(&json).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}\n{out}");
}

#[test]
fn diff_of_square() {
    let o = difcat(&["diff", "--rig", "int", "--arity", "1", "[x1^2]"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "[2*x1*v1]");
}

#[test]
fn second_derivative_of_cube() {
    let o = difcat(&["nderiv", "--n", "2", "--rig", "int", "--arity", "1", "[x1^3]"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "[6*x1*v1*w1]");
}

#[test]
fn partial_names_its_direction() {
    let o = difcat(&["partial", "--i", "2", "--arity", "2", "[x1*x2^2; x1]"]);
    assert_eq!(stdout(&o).trim(), "[2*x1*x2*v2; 0]");
}

#[test]
fn faa_compose_lists_components() {
    let o = difcat(&["faa-compose", "--arity", "1", "--rig", "zmod:5", "[x1^2]", "[x1 + 1]"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "(g∘f)^(0) = [x1^2 + 2*x1 + 1]");
    assert_eq!(lines[1], "(g∘f)^(1) = [2*x1*v1 + 2*v1]");
    assert_eq!(lines[2], "(g∘f)^(2) = [2*v1*w1]");
    assert_eq!(lines.len(), 3);
}

#[test]
fn kleisli_iso_passes() {
    let o = difcat(&["check", "kleisli-iso", "--mod", "2", "--dim", "2", "--degree", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("suite kleisli-iso: PASS"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["diff", "--rig", "nope", "[x1]"],
        vec!["diff", "--arity", "1", "[x2]"],
        vec!["diff", "--rig", "zmod:4", "[x1]"],
        vec!["check", "teapot"],
        vec!["frobnicate"],
    ] {
        let o = difcat(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn nat_subtraction_is_a_usage_error() {
    let o = difcat(&["diff", "--rig", "nat", "[x1 - 1]"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn json_reports_validate_and_are_reproducible() {
    let v = validator();
    let runs: Vec<Vec<&str>> = vec![
        vec!["check", "cdc", "--samples", "10", "--seed", "7", "--json"],
        vec!["check", "modality", "--mod", "2", "--dim", "1", "--degree", "2", "--json"],
        vec!["check", "kleisli-iso", "--dim", "1", "--degree", "2", "--json"],
        vec!["check", "yoneda", "--dim", "1", "--json"],
        vec!["check", "presheaf", "--dim", "1", "--json"],
    ];
    for args in runs {
        let first = stdout(&difcat(&args));
        assert_valid(&v, &first);
        assert_eq!(first, stdout(&difcat(&args)), "{args:?}");
        assert!(!first.contains("elapsed_ms"));
    }
}

#[test]
fn timing_is_opt_in() {
    let o = difcat(&["check", "yoneda", "--dim", "1", "--json", "--timing"]);
    let out = stdout(&o);
    assert_valid(&validator(), &out);
    assert!(out.contains("elapsed_ms"));
}

#[test]
fn verb_json_validates() {
    let o = difcat(&["diff", "--json", "[x1^2]"]);
    let out = stdout(&o);
    assert_valid(&validator(), &out);
    let json: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(json["result"][0], "[2*x1*v1]");
}

#[test]
fn failing_check_exits_one() {
    let kleisli: &[&str] = &["check", "kleisli-iso", "--dim", "1", "--degree", "3", "--fault"];
    let modality: &[&str] = &["check", "modality", "--mod", "2", "--dim", "2", "--degree", "2", "--fault"];
    let runs = [
        (kleisli, "drop-partition-term"),
        (kleisli, "omit-derivative-sum"),
        (modality, "unsorted-tail"),
        (modality, "swap-counit-cases"),
        (modality, "drop-coproduct-term"),
    ];
    for (base, fault) in runs {
        let o = difcat(&[base, &[fault]].concat());
        assert_eq!(o.status.code(), Some(1), "{fault}");
        assert!(stdout(&o).contains("counterexample:"), "{fault}");
    }
}
