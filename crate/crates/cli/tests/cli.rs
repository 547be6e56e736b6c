use std::process::{Command, Output};

use serde_json::Value;

fn sumsetlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sumsetlab"))
        .args(args)
        .env_remove("SUMSETLAB_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = sumsetlab(&all);
    (o.status.code().unwrap(), serde_json::from_str(&stdout(&o)).expect("valid JSON"))
}

#[test]
fn cube_upper_constant() {
    let o = sumsetlab(&["constants", "--which", "cube-upper", "--n", "2", "--m", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("0.7324867603"), "{text}");
    assert!(text.contains("log(nm+1)/(n log(m+1))"));
    let (_, v) = json(&["constants", "--which", "cube-upper", "--n", "2", "--m", "2"]);
    let expected = 5f64.ln() / (2.0 * 3f64.ln());
    assert!((v["value"].as_f64().unwrap() - expected).abs() < 1e-15);
    assert!(v["residual"].as_f64().unwrap().abs() < 1e-12);
    assert_eq!(v["version"], "sumsetlab/1");
}

#[test]
fn two_sets_exhaustive_passes() {
    let (code, v) = json(&["verify", "--statement", "two-sets", "--m", "2", "--d", "1", "--mode", "exhaustive"]);
    assert_eq!(code, 0);
    assert_eq!(v["instances"], 49);
    assert_eq!(v["violations"], 0);
    assert_eq!(v["statement"], "two-sets");
    assert_eq!(v["config"]["statement"], "two-sets");
    assert_eq!(v["version"], "sumsetlab/1");
    assert!(v["near_equalities"].as_array().is_some_and(|a| !a.is_empty()));
}

#[test]
fn violation_exits_one_with_witness() {
    let (code, v) = json(&["verify", "--statement", "two-sets", "--m", "2", "--d", "1", "--p", "0.75"]);
    assert_eq!(code, 1);
    assert!(v["violations"].as_u64().unwrap() >= 1);
    let sets = &v["violation_examples"][0]["sets"];
    assert_eq!(sets[0]["points"], serde_json::json!([[0], [1], [2]]));
}

#[test]
fn subtle_identity_case() {
    let (code, v) = json(&["lemmas", "--which", "subtle", "--p", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["pass"], true);
    assert!(v["min_margin"].as_f64().unwrap().abs() < 1e-9);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["frobnicate"],
        vec!["verify", "--statement", "nonsense"],
        vec!["verify", "--statement", "three-sets", "--mode", "random"],
        vec!["verify", "--statement", "two-sets", "--seed", "3"],
        vec!["constants", "--which", "tau"],
        vec!["lemmas", "--which", "no-such-lemma"],
        vec!["search", "--budget", "0", "--seed", "1"],
        vec!["verify", "--statement", "two-sets", "--out", "/nonexistent-dir/r.json"],
    ] {
        assert_eq!(sumsetlab(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn csv_and_json_carry_the_same_numbers() {
    let base = ["verify", "--statement", "three-sets", "--d", "2", "--p", "1.5", "--mode", "random", "--count", "200", "--seed", "9"];
    let (_, v) = json(&base);
    let mut with_csv = base.to_vec();
    with_csv.extend(["--format", "csv"]);
    let o = sumsetlab(&with_csv);
    assert_eq!(o.status.code(), Some(0));
    let mut rdr = csv::Reader::from_reader(o.stdout.as_slice());
    let rows: Vec<(String, String)> =
        rdr.deserialize().map(|r: Result<(String, String), _>| r.unwrap()).collect();
    let mut numeric = 0;
    for (field, value) in &rows {
        if field == "wall_time_ms" {
            continue;
        }
        let pointer = format!("/{}", field.replace('.', "/"));
        let j = v.pointer(&pointer).unwrap_or_else(|| panic!("{field} missing from JSON"));
        if let Some(x) = j.as_f64() {
            assert_eq!(value.parse::<f64>().unwrap(), x, "{field}");
            numeric += 1;
        }
    }
    assert!(numeric > 20);
    assert!(rows.iter().any(|(f, _)| f == "min_log_margin"));
}

#[test]
fn report_round_trips_through_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let p = path.to_str().unwrap();
    let args = ["verify", "--statement", "energy", "--d", "2", "--out", p];
    let o = sumsetlab(&args);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS"));
    let text = std::fs::read_to_string(&path).unwrap();
    let mut v: Value = serde_json::from_str(&text).unwrap();
    let config = v.as_object_mut().unwrap().remove("config").unwrap();
    v.as_object_mut().unwrap().remove("command");
    assert_eq!(config["statement"], "energy");
    let report: sumsetlab::verify::CampaignReport = serde_json::from_value(v.clone()).unwrap();
    assert_eq!(report.instances, 15);
    assert_eq!(serde_json::to_value(&report).unwrap(), v);
}

#[test]
fn random_runs_are_reproducible() {
    let args = ["verify", "--statement", "cube-containing", "--k", "2", "--d", "2", "--mode", "random", "--count", "300", "--seed", "5"];
    let (_, mut a) = json(&args);
    let (_, mut b) = json(&args);
    a["wall_time_ms"] = Value::Null;
    b["wall_time_ms"] = Value::Null;
    assert_eq!(a, b);
}

#[test]
fn thread_override_is_respected() {
    let o = Command::new(env!("CARGO_BIN_EXE_sumsetlab"))
        .args(["verify", "--statement", "n-fold", "--n", "3", "--d", "1"])
        .env("SUMSETLAB_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let bad = Command::new(env!("CARGO_BIN_EXE_sumsetlab"))
        .args(["verify", "--statement", "n-fold"])
        .env("SUMSETLAB_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn search_and_prekopa() {
    let (code, v) = json(&["search", "--n", "2", "--m", "1", "--d", "2", "--budget", "3", "--seed", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["instances"], 3);
    let (code, v) = json(&["prekopa", "--k", "3", "--lambda", "1"]);
    assert_eq!(code, 0);
    assert!((v["sum"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert_eq!(v["weights"].as_array().unwrap().len(), 3);
}
