use std::fs;
use std::path::Path;
use std::process::Command;

use ltc_cli::{run, Outcome};
use serde_json::Value;

fn ltc(args: &str) -> Outcome {
    run(std::iter::once("ltc").chain(args.split_whitespace()))
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn schema_validator() -> jsonschema::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/schema.json");
    let schema: Value = serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&schema).unwrap()
}

#[test]
fn golden_outputs_are_byte_identical() {
    for (args, file) in [
        ("survey --n 2", "survey_n2.txt"),
        ("survey --n 4 --format csv", "survey_n4.csv"),
        ("verify --max-n 4 --format json", "verify_n4.json"),
        ("witnesses --n 6 --m 4 --format json", "witnesses_n6_m4.json"),
        ("saturate --n 4 --m 3", "saturate_n4_m3.txt"),
    ] {
        let out = ltc(&format!("{args} --no-cache"));
        assert_eq!(out.code, 0, "{args}: {}", out.stderr);
        assert_eq!(out.stdout, golden(file), "{args}");
    }
}

#[test]
fn repeated_runs_agree() {
    let a = ltc("survey --n 5 --seed 3 --no-cache");
    let b = ltc("survey --n 5 --seed 3 --no-cache");
    assert_eq!(a, b);
}

#[test]
fn json_outputs_match_schema() {
    let validator = schema_validator();
    for args in [
        "survey --n 3",
        "verify --max-n 3",
        "witnesses --n 4",
        "witnesses --n 5 --m 4",
        "saturate --n 3",
        "saturate --grid --max-n 3",
    ] {
        let out = ltc(&format!("{args} --format json --no-cache"));
        assert_eq!(out.code, 0, "{args}");
        let doc: Value = serde_json::from_str(&out.stdout).unwrap();
        let errors: Vec<String> = validator.iter_errors(&doc).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{args}: {errors:?}");
    }
}

#[test]
fn verify_report_round_trips() {
    let out = ltc("verify --max-n 3 --format json --no-cache");
    let report: ltc_cli::verify::VerificationReport = serde_json::from_str(&out.stdout).unwrap();
    assert!(report.passed());
    assert_eq!(report.records.len(), 11);
    let direct = ltc_cli::verify::run_verify(3, 3, &ltc_core::Sampler::new(0)).unwrap();
    assert_eq!(report, direct);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        "verify --max-n 0",
        "verify --max-n 9",
        "witnesses --n 4 --m 4",
        "witnesses --n 4 --m 0",
        "witnesses --n 5",
        "survey --n 0",
        "survey --n 11",
        "saturate --n 4 --m 2 --k 3",
        "saturate --grid --n 3",
        "saturate --n 3 --trials 0",
        "survey --n 2 --format xml",
        "frobnicate",
    ] {
        let out = ltc(args);
        assert_eq!(out.code, 2, "{args}");
        assert!(out.stdout.is_empty(), "{args}");
        assert!(!out.stderr.is_empty(), "{args}");
    }
    assert_eq!(ltc("--help").code, 0);
}

#[test]
fn survey_csv_has_one_row_per_parameter() {
    let out = ltc("survey --n 4 --format csv --no-cache");
    let mut reader = csv::Reader::from_reader(out.stdout.as_bytes());
    assert_eq!(reader.headers().unwrap(), vec!["w", "k", "cell", "ltcFlag"]);
    assert_eq!(reader.records().count(), 16);
}

#[test]
fn survey_n6_fibers() {
    let out = ltc("survey --n 6 --format json --no-cache");
    let doc: Value = serde_json::from_str(&out.stdout).unwrap();
    let fibers: Vec<u64> = doc["fibers"].as_array().unwrap().iter().map(|f| f["observed"].as_u64().unwrap()).collect();
    assert_eq!(fibers, [1, 1, 6, 6, 15, 15, 20]);
}

#[test]
fn witness_counts() {
    let count = |args: &str| {
        let doc: Value = serde_json::from_str(&ltc(&format!("{args} --format json --no-cache")).stdout).unwrap();
        doc["records"].as_array().unwrap().len()
    };
    assert_eq!(count("witnesses --n 2"), 1);
    assert_eq!(count("witnesses --n 6 --m 4"), 4);
    assert_eq!(count("witnesses --n 8"), 56);
}

#[test]
fn saturate_rows() {
    let doc: Value = serde_json::from_str(&ltc("saturate --n 4 --m 3 --format json --no-cache").stdout).unwrap();
    let predicted: Vec<u64> = doc["rows"].as_array().unwrap().iter().map(|r| r["predicted"].as_u64().unwrap()).collect();
    assert_eq!(predicted, [2, 3, 4, 4]);
    let out = ltc("saturate --n 4 --m 2 --k 0 --format csv --no-cache");
    assert_eq!(out.stdout, "n,m,k,predicted,generic,witness,agree\n4,2,0,4,4,4,true\n");
}

#[test]
fn cache_hit_matches_cold_run() {
    let dir = tempfile::tempdir().unwrap();
    let cached = format!("verify --max-n 3 --cache-dir {}", dir.path().display());
    let cold = ltc("verify --max-n 3 --no-cache");
    let first = ltc(&cached);
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
    let second = ltc(&cached);
    assert_eq!(first, cold);
    assert_eq!(second, cold);
    // a different seed is a different entry
    ltc(&format!("{cached} --seed 5"));
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 2);
}

#[test]
fn cache_entry_is_replayed() {
    let dir = tempfile::tempdir().unwrap();
    let args = format!("saturate --n 3 --m 1 --cache-dir {}", dir.path().display());
    ltc(&args);
    let file = fs::read_dir(dir.path()).unwrap().next().unwrap().unwrap().path();
    let mut entry: Value = serde_json::from_str(&fs::read_to_string(&file).unwrap()).unwrap();
    entry["output"] = Value::from("replayed\n");
    fs::write(&file, entry.to_string()).unwrap();
    assert_eq!(ltc(&args).stdout, "replayed\n");
    // a stale tool version is recomputed and overwritten
    entry["version"] = Value::from("ltc-0.0.0");
    fs::write(&file, entry.to_string()).unwrap();
    let fresh = ltc(&args);
    assert_eq!(fresh, ltc("saturate --n 3 --m 1 --no-cache"));
    assert!(fs::read_to_string(&file).unwrap().contains(ltc_cli::cache::TOOL_VERSION));
}

#[test]
fn corrupt_cache_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let args = format!("survey --n 2 --cache-dir {}", dir.path().display());
    ltc(&args);
    let file = fs::read_dir(dir.path()).unwrap().next().unwrap().unwrap().path();
    fs::write(&file, "{not json").unwrap();
    let out = ltc(&args);
    assert_eq!(out.code, 3);
    assert!(out.stderr.contains("corrupt"), "{}", out.stderr);

    let mut entry: Value = serde_json::json!({
        "version": ltc_cli::cache::TOOL_VERSION, "key": "something else", "exitCode": 0, "output": ""
    });
    fs::write(&file, entry.to_string()).unwrap();
    assert_eq!(ltc(&args).code, 3);
    entry["key"] = Value::from(42);
    fs::write(&file, entry.to_string()).unwrap();
    assert_eq!(ltc(&args).code, 3);
}

#[test]
fn cache_dir_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_ltc"))
        .args(["survey", "--n", "3"])
        .env("LTC_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
    let bypass = Command::new(env!("CARGO_BIN_EXE_ltc"))
        .args(["survey", "--n", "4", "--no-cache"])
        .env("LTC_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    assert!(bypass.status.success());
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn binary_exit_codes() {
    let code = |args: &[&str]| Command::new(env!("CARGO_BIN_EXE_ltc")).args(args).output().unwrap().status.code();
    assert_eq!(code(&["verify", "--max-n", "3", "--no-cache"]), Some(0));
    assert_eq!(code(&["verify", "--max-n", "0"]), Some(2));
    assert_eq!(code(&["witnesses", "--n", "4", "--m", "4"]), Some(2));
}
