use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use finsite::{fixtures, GrothendieckTopology, Sieve, TopologyFile};
use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_finsite"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn fixture_path(rel: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/fixtures")
        .join(rel)
        .to_string_lossy()
        .into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn validate_category_file() {
    let o = run(&["validate", &fixture_path("categories/walk.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "valid: 2 objects, 3 arrows");
}

#[test]
fn validate_missing_composite_names_the_pair() {
    let dir = tempfile::tempdir().unwrap();
    let mut desc: Value = serde_json::from_str(fixtures::WALK_JSON).unwrap();
    let compose = desc["compose"].as_array_mut().unwrap();
    compose.retain(|e| !(e["first"] == "u" && e["then"] == "id_b"));
    let path = write(dir.path(), "walk.json", &desc.to_string());
    let o = run(&["validate", &path]);
    assert_eq!(o.status.code(), Some(1));
    let line = stdout(&o);
    assert!(line.starts_with("invalid:"), "{line}");
    assert!(line.contains("missing composite id_b∘u"), "{line}");
}

#[test]
fn validate_topology_strict_and_saturated() {
    let file = fixture_path("topologies/walk_bad_transitivity.json");
    let o = run(&["validate", &file]);
    assert_eq!(o.status.code(), Some(1));
    let line = stdout(&o);
    assert!(line.contains("transitivity"), "{line}");
    // the witness: the empty sieve on b, locally covering over {u}
    assert!(line.contains("{} on `b`") && line.contains("{u}"), "{line}");

    let o = run(&["--saturate", "validate", &file]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("valid: topology on WALK"));
}

#[test]
fn validate_presheaf_file() {
    let o = run(&["validate", &fixture_path("presheaves/z2_swap.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "valid: presheaf on Z2, 3 elements");
}

#[test]
fn parse_and_usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "broken.json", "{\"objects\": [");
    assert_eq!(run(&["validate", &path]).status.code(), Some(2));
    assert_eq!(run(&["analyze", "NO_SUCH_CATEGORY"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&[]).status.code(), Some(2));
}

#[test]
fn analyze_walk() {
    let o = run(&["analyze", "WALK"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["boolean"], false);
    assert_eq!(v["de_morgan"], true);
    assert_eq!(v["groupoid"], false);
    assert_eq!(v["right_ore"], true);
    assert!(v["witness"].get("de_morgan").is_none());
    let w = &v["witness"]["boolean"];
    assert_eq!(w["cod"], "b");
    assert_eq!(w["arrows"], serde_json::json!(["u"]));

    // the witness must fail the defining check: R ∪ ¬R does not cover
    let walk = fixtures::walk();
    let r = Sieve::from_names(&walk, "b", &["u"]).unwrap();
    let lem = r.union(&r.not()).unwrap();
    assert!(!GrothendieckTopology::trivial(&walk).is_covering(&lem));

    let expected = GrothendieckTopology::dense(&walk).unwrap().to_file();
    let jb: TopologyFile = serde_json::from_value(v["booleanization"].clone()).unwrap();
    assert_eq!(jb, expected);
}

#[test]
fn analyze_cospan_and_z2() {
    let v = json(&run(&["analyze", "COSPAN"]));
    assert_eq!(v["de_morgan"], false);
    assert_eq!(v["right_ore"], false);
    assert_eq!(v["witness"]["de_morgan"]["cod"], "c");
    assert_eq!(v["witness"]["de_morgan"]["arrows"], serde_json::json!(["f"]));

    let v = json(&run(&["analyze", "z2"]));
    assert_eq!(v["boolean"], true);
    assert_eq!(v["de_morgan"], true);
    assert_eq!(v["subcanonical"], true);
    assert_eq!(v["witness"], serde_json::json!({}));
}

#[test]
fn output_is_byte_deterministic() {
    for args in [
        &["analyze", "SPAN"][..],
        &["oracle", "WALK"][..],
        &["reduce", "WALK", "--topology", "walk_jcov"][..],
    ] {
        let a = run(args);
        let b = run(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn booleanize_and_demorganize() {
    let jb: TopologyFile = serde_json::from_slice(&run(&["booleanize", "WALK"]).stdout).unwrap();
    let dense = fixtures::topology("walk_dense").unwrap().to_file();
    assert_eq!(jb, dense);

    let jm: TopologyFile = serde_json::from_slice(&run(&["demorganize", "COSPAN"]).stdout).unwrap();
    assert!(jm.covers["c"].contains(&vec!["f".to_string(), "g".to_string()]));
    assert_eq!(jm.covers["a"], vec![vec!["id_a".to_string()]]);
}

#[test]
fn reduce_walk_jcov() {
    let v = json(&run(&["reduce", "WALK", "--topology", "walk_jcov"]));
    assert_eq!(v["kept_objects"], serde_json::json!(["b"]));
    assert_eq!(v["category"]["objects"], serde_json::json!(["b"]));
    assert_eq!(v["topology"]["covers"]["b"], serde_json::json!([["id_b"]]));
}

#[test]
fn closure_of_sieve_and_subpresheaf() {
    let dir = tempfile::tempdir().unwrap();
    let sieve = write(dir.path(), "s.json", r#"{"cod": "b", "arrows": ["u"]}"#);
    let v = json(&run(&["closure", "WALK", "--topology", "walk_dense", "--sieve", &sieve]));
    assert_eq!(v["closure"]["arrows"], serde_json::json!(["id_b", "u"]));
    assert_eq!(v["covering"], true);
    assert_eq!(v["closed"], false);

    let v = json(&run(&["closure", "WALK", "--sieve", &sieve]));
    assert_eq!(v["closure"]["arrows"], serde_json::json!(["u"]));
    assert_eq!(v["closed"], true);

    let sub = write(
        dir.path(),
        "a.json",
        r#"{"presheaf": "walk_fork", "chosen": {"a": ["x"]}}"#,
    );
    let v = json(&run(&[
        "closure",
        "WALK",
        "--topology",
        "walk_dense",
        "--subpresheaf",
        &sub,
        "--presheaf",
        "walk_fork",
    ]));
    assert_eq!(v["closure"]["chosen"]["a"], serde_json::json!(["x"]));
    assert_eq!(v["closure"]["chosen"]["b"], serde_json::json!(["p"]));
    assert_eq!(v["closed"], false);
    assert_eq!(v["dense"], false);

    assert_eq!(run(&["closure", "WALK"]).status.code(), Some(2));
}

#[test]
fn subcanonical_verdicts() {
    let v = json(&run(&["subcanonical", "WALK", "--topology", "walk_dense"]));
    assert_eq!(v["subcanonical"], false);
    assert_eq!(v["witness"]["arrows"], serde_json::json!(["u"]));
    let v = json(&run(&["subcanonical", "PAIR"]));
    assert_eq!(v["subcanonical"], true);
    assert!(v.get("witness").is_none());
}

#[test]
fn oracle_passes_on_walk_cospan_term() {
    let o = run(&["oracle", "WALK"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["passed"], true);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["status"] == "pass"));

    let v = json(&run(&["oracle", "COSPAN"]));
    assert_eq!(v["passed"], true);
    let ore = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "groupoid_and_ore")
        .unwrap();
    assert!(ore["detail"].as_str().unwrap().contains("De Morgan/right Ore: both false"));

    let start = Instant::now();
    let o = run(&["oracle", "TERM"]);
    assert!(start.elapsed() < Duration::from_secs(1));
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn oracle_respects_bound() {
    let o = run(&["--bound", "4", "oracle", "COSPAN"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("bound 4"));
}

#[test]
fn category_from_file_path() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "walk.json", fixtures::WALK_JSON);
    let topo = write(dir.path(), "j.json", fixtures::TOPOLOGIES[0].1);
    let v = json(&run(&["analyze", &path, "--topology", &topo]));
    assert_eq!(v["category"], "walk");
    assert_eq!(v["kept_objects"], serde_json::json!(["b"]));
    assert_eq!(v["boolean"], true);
}

#[test]
fn fixture_listing() {
    let o = run(&["--fixtures"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for name in ["WALK", "SPAN", "COSPAN", "Z2", "M2", "TERM", "DISC2", "PAIR"] {
        assert!(text.contains(&format!("category\t{name}\n")), "{name}");
    }
    assert!(text.contains("topology\twalk_jcov"));
    assert_eq!(run(&["fixtures"]).stdout, o.stdout);

    let o = run(&["fixtures", "walk"]);
    let desc: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(desc["objects"], serde_json::json!(["a", "b"]));
    assert_eq!(run(&["fixtures", "nope"]).status.code(), Some(2));
}
