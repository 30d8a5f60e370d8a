use std::path::Path;
use std::process::{Command, Output};

use anonsim::gen::{verify_covering_map, CoveringMap};
use anonsim::graph::Graph;

fn anonsim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_anonsim")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn sample_is_seeded_and_parses() {
    let a = anonsim(&["sample", "--n", "30", "--p", "0.2", "--seed", "9"]);
    let b = anonsim(&["sample", "--n", "30", "--p", "0.2", "--seed", "9"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let g = Graph::from_text(&stdout(&a)).unwrap();
    assert_eq!(g, anonsim::gen::sample_gnp(30, 0.2, 9).unwrap());
}

#[test]
fn sample_writes_to_out() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.txt");
    let o = anonsim(&["sample", "--n", "12", "--p", "0.5", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    assert_eq!(Graph::from_text(&std::fs::read_to_string(path).unwrap()).unwrap().n(), 12);
}

#[test]
fn naive_protocol_misses_the_fixture_triangle() {
    let dir = tempfile::tempdir().unwrap();
    let fixture = anonsim(&["fixtures", "naive6"]);
    let file = write(dir.path(), "naive6.txt", &stdout(&fixture));
    let o = anonsim(&["run", "--algo", "triangle-naive", "--graph", &file]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["witness"], "none");
    assert_eq!(v["n"], 6);
    assert!(v["transcript"].get("per_round").is_none());
}

#[test]
fn sound_triangle_reports_an_exact_witness() {
    let o = anonsim(&["run", "--algo", "triangle-sound", "--gnp", "80,0.3", "--seed", "4", "--ids", "perm-seed"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["witness"]["exact"].is_array(), "{v}");
    assert!(v["outcome"]["solved"].is_array());
}

#[test]
fn trace_adds_per_round_records() {
    let o = anonsim(&["run", "--algo", "cr", "--gnp", "10,0.4", "--rounds", "2", "--trace"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rounds = v["transcript"]["per_round"].as_array().unwrap();
    assert_eq!(rounds.len(), 3 * 10);
    assert!(rounds[0]["state_digest"].is_string());
}

#[test]
fn identifier_dump_format() {
    let o = anonsim(&["run", "--algo", "ac-ids", "--gnp", "9,0.5", "--c-mod", "4", "--dump-ids"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 9);
    for (v, l) in lines.iter().enumerate() {
        let (head, entries) = l.split_once(": ").unwrap();
        assert_eq!(head, v.to_string());
        assert_eq!(entries.split(',').count(), 4);
        assert!(entries.split(',').all(|x| x.parse::<u64>().is_ok()));
    }
}

#[test]
fn model_mismatch_and_bad_input_exit_1() {
    assert_eq!(code(&anonsim(&["run", "--algo", "maxdegree", "--model", "MB", "--gnp", "5,0.5"])), 1);
    assert_eq!(code(&anonsim(&["run", "--algo", "bes"])), 1);
    assert_eq!(code(&anonsim(&["exp", "triangle", "--n", "10", "--p", "1.5"])), 1);
    assert_eq!(code(&anonsim(&["exp", "cover", "--n", "10", "--p", "0.5", "--rounds", "9"])), 1);
    assert_eq!(code(&anonsim(&["exp", "triangle", "--n", "10", "--p", "0.5", "--threshold", "nope"])), 1);
    assert_eq!(code(&anonsim(&["nonsense"])), 1);
}

#[test]
fn cover_experiment_on_the_common_cover_pair() {
    let o = anonsim(&["exp", "cover", "--n", "6", "--family", "fig1", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["rows"][0]["successes"], 2);
    assert_eq!(v["rows"][0]["violations"], 0);
}

#[test]
fn csv_report_is_reproducible() {
    let args = ["exp", "ecc-lemma", "--n", "60,80", "--p", "0.2", "--trials", "3", "--seed", "5", "--sample", "4"];
    let a = anonsim(&args);
    let b = anonsim(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("experiment,algorithm,cell,n,p,eps,trials,successes"));
    assert_eq!(lines.count(), 2);
}

#[test]
fn threshold_miss_exits_3() {
    let base = ["exp", "id-collision", "--n", "12", "--family", "cycle", "--trials", "2", "--c-mod", "5"];
    assert_eq!(code(&anonsim(&base)), 0);
    let o = anonsim(&[&base[..], &["--threshold", "ac_distinct"]].concat());
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("below 0.95"));
    assert_eq!(code(&anonsim(&[&base[..], &["--min-fraction", "0"]].concat())), 0);

    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "t.toml", "ac_distinct = 0.0\n");
    let o = anonsim(&[&base[..], &["--threshold", "ac_distinct", "--thresholds", &file]].concat());
    assert_eq!(code(&o), 0);
}

#[test]
fn eps_grid_derives_p() {
    let o = anonsim(&["exp", "switch", "--n", "100", "--eps", "0.9", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let p = v["rows"][0]["p"].as_f64().unwrap();
    assert!((p - 100f64.powf(-0.1)).abs() < 1e-12);
    assert!((v["rows"][0]["eps"].as_f64().unwrap() - 0.9).abs() < 1e-9);
}

#[test]
fn covering_fixtures_verify() {
    let lift = CoveringMap::from_text(&stdout(&anonsim(&["fixtures", "lift"]))).unwrap();
    assert_eq!(lift.source.n(), 16);
    assert!(verify_covering_map(&lift).unwrap());

    let dc = CoveringMap::from_text(&stdout(&anonsim(&["fixtures", "double-cover", "--gnp", "15,0.4", "--seed", "3"])))
        .unwrap();
    assert_eq!(dc.source.n(), 30);
    assert!(verify_covering_map(&dc).unwrap());
    assert!(dc.is_triangle_free_source());

    let text = stdout(&anonsim(&["fixtures", "fig1"]));
    let blocks: Vec<&str> = text.split("# F -> H\n").collect();
    for b in blocks {
        assert!(verify_covering_map(&CoveringMap::from_text(b).unwrap()).unwrap());
    }

    assert_eq!(code(&anonsim(&["fixtures", "appc-paths", "--n", "4"])), 1);
    assert!(stdout(&anonsim(&["fixtures", "appc-paths", "--n", "8"])).contains("# H\n8 7\n"));
}
