use std::path::PathBuf;
use std::process::Command as Process;

use hyperkirwan::cli::{canonical_json, run, Command, Report, RunConfig, SCHEMA};
use hyperkirwan::hyperpolygon::EdgeLengths;
use hyperkirwan::ideal::Budget;
use serde_json::Value;

const GOLDEN: [(&str, &str); 3] = [
    ("1,1,1", "report_1_1_1.json"),
    ("1,1,1,2", "report_1_1_1_2.json"),
    ("1,2,4,8,16", "report_1_2_4_8_16.json"),
];

fn report_for(xi: &str) -> Report {
    run(&RunConfig::new(Command::Report).with_xi(xi.parse().unwrap()).with_budget(Budget::default()))
}

fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn assert_schema_valid(report: &Report) {
    let schema: Value = serde_json::from_str(SCHEMA).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let value = report.to_value();
    let errors: Vec<String> = validator.iter_errors(&value).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}");
}

#[test]
fn golden_reports_are_stable() {
    for (xi, file) in GOLDEN {
        let canonical = canonical_json(&report_for(xi).to_value());
        let path = golden_path(file);
        if std::env::var_os("HYPERKIRWAN_UPDATE_GOLDEN").is_some() {
            std::fs::write(&path, &canonical).unwrap();
        }
        let expected = std::fs::read_to_string(&path).unwrap();
        assert_eq!(canonical, expected, "golden report for xi = {xi} changed");
    }
}

#[test]
fn repeated_runs_are_byte_identical() {
    let a = canonical_json(&report_for("1,1,1,2").to_value());
    let b = canonical_json(&report_for("1,1,1,2").to_value());
    assert_eq!(a, b);
    assert!(!a.contains("elapsed_ms") && !a.contains("total_ms"));
}

#[test]
fn every_command_validates_against_schema() {
    let xi: EdgeLengths = "1,1,1,2".parse().unwrap();
    for command in Command::ALL {
        let mut config = RunConfig::new(command).with_budget(Budget::default());
        config = if command == Command::LocalizeDemo { config.with_fixture("segre") } else { config.with_xi(xi.clone()) };
        let report = run(&config);
        assert!(report.passed, "{}", command.name());
        assert_eq!(report.exit_code(), 0);
        assert_schema_valid(&report);
    }
    for bad in [
        RunConfig::new(Command::Shorts).with_xi("1,1,1,1".parse().unwrap()),
        RunConfig::new(Command::Report),
        RunConfig::new(Command::LocalizeDemo).with_fixture("no-such-fixture"),
    ] {
        assert_schema_valid(&run(&bad));
    }
}

#[test]
fn report_summary_for_hand_fixture() {
    let r = report_for("1,1,1,2");
    assert!(r.passed);
    assert_eq!(r.instance.as_ref().unwrap().shorts, Some(8));
    assert_eq!(r.result["betti"], serde_json::json!([1, 4]));
    assert_eq!(r.result["certificates"].as_array().unwrap().len(), 7);
}

#[test]
fn exit_codes() {
    let non_generic = run(&RunConfig::new(Command::Shorts).with_xi("1,1,1,1".parse().unwrap()));
    assert_eq!(non_generic.exit_code(), 3);
    assert_eq!(non_generic.failure.as_ref().unwrap().witness, Some(vec![1, 2]));

    let tight = Budget { max_basis: 100_000, max_degree: 4 };
    let budget = run(&RunConfig::new(Command::Verify).with_xi("1,2,4,8,16".parse().unwrap()).with_budget(tight));
    assert_eq!(budget.exit_code(), 4);

    assert_eq!(run(&RunConfig::new(Command::Betti)).exit_code(), 2);
    assert_eq!(run(&RunConfig::new(Command::LocalizeDemo).with_fixture("no-such-fixture")).exit_code(), 2);
    assert_eq!(run(&RunConfig::new(Command::LocalizeDemo).with_fixture("/nonexistent/fixture.json")).exit_code(), 2);
    let zero = Budget { max_basis: 0, max_degree: 10 };
    assert_eq!(run(&RunConfig::new(Command::Shorts).with_xi("1,1,1".parse().unwrap()).with_budget(zero)).exit_code(), 2);
}

#[test]
fn localize_demo_segre() {
    let r = run(&RunConfig::new(Command::LocalizeDemo).with_fixture("segre"));
    assert!(r.passed);
    assert_eq!(r.result["rationalized-iso"], Value::Bool(true));
    assert_eq!(r.result["integral-surjective"], Value::Bool(false));
}

fn binary(args: &[&str]) -> (i32, String) {
    let out = Process::new(env!("CARGO_BIN_EXE_hyperkirwan"))
        .args(args)
        .env_remove("HYPERKIRWAN_MAX_BASIS")
        .env_remove("HYPERKIRWAN_MAX_DEGREE")
        .output()
        .unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn binary_matches_library() {
    let (code, stdout) = binary(&["report", "--xi", "1,1,1"]);
    assert_eq!(code, 0);
    let value: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(canonical_json(&value), std::fs::read_to_string(golden_path("report_1_1_1.json")).unwrap());

    let (code, stdout) = binary(&["shorts", "--xi", "1,1,1,1"]);
    assert_eq!(code, 3);
    let value: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(value["failure"]["witness"], serde_json::json!([1, 2]));

    assert_eq!(binary(&["shorts", "--xi", "1,0.5,1"]).0, 2);
    assert_eq!(binary(&["shorts", "--xi", "1,1,1", "--format", "yaml"]).0, 2);
    assert_eq!(binary(&["frobnicate"]).0, 2);

    let (code, text) = binary(&["localize-demo", "--fixture", "segre", "--format", "text"]);
    assert_eq!(code, 0);
    assert!(text.contains("rationalized-iso: true") && text.contains("integral-surjective: false"));

    let dir = std::env::temp_dir().join(format!("hyperkirwan-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("r.json");
    let (code, stdout) = binary(&["betti", "--xi", "1,1,1,2", "--out", out.to_str().unwrap()]);
    assert_eq!((code, stdout.as_str()), (0, ""));
    let value: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(value["result"]["betti"], serde_json::json!([1, 4]));
    assert_eq!(binary(&["betti", "--xi", "1,1,1,2", "--out", dir.join("missing/r.json").to_str().unwrap()]).0, 5);
    std::fs::remove_dir_all(&dir).unwrap();
}
