use std::path::PathBuf;
use std::process::{Command, Output};

fn towerlim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_towerlim"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn demo() -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../scenarios/demo.scn")
        .to_string_lossy()
        .into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut all = args.to_vec();
    all.push("--json");
    let o = towerlim(&all);
    assert!(
        o.status.success(),
        "{:?}: {}",
        args,
        String::from_utf8_lossy(&o.stderr)
    );
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

#[test]
fn primorial_tower_reports_index_chain() {
    let o = towerlim(&["tower", "analyze", "primorial", "--horizon", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("chain of indices: 1·2·6·30"), "{text}");
    assert!(text.contains("Mittag-Leffler below horizon: no"));

    let v = json(&["tower", "analyze", "primorial", "--horizon", "4"]);
    assert_eq!(
        v["stages"][0]["chain_indices"],
        serde_json::json!(["1", "2", "6", "30"])
    );
    assert_eq!(v["lim1"]["zero_certified"], false);
}

#[test]
fn finite_builtin_is_certified() {
    let v = json(&["tower", "analyze", "reduction"]);
    assert_eq!(v["lim1"]["zero_certified"], true);
    assert_eq!(v["lim_at_horizon"], "Z/16");
}

#[test]
fn reduce_example() {
    let v = json(&["prufer", "reduce", "--class", "2:1,3:2,5:1,7:3", "--n", "2"]);
    assert_eq!(v["member"], true);
    assert_eq!(v["k"], "5");
    assert_eq!(v["residual"], "(0, 0, 1/5, 5/7)");
}

#[test]
fn scenario_classes_resolve_by_name() {
    let d = demo();
    let v = json(&[
        "prufer",
        "membership",
        "--scenario",
        &d,
        "--class",
        "deep",
        "--n",
        "2",
    ]);
    assert_eq!(v["member"], false);
    assert_eq!(v["blocker"]["prime"], 3);
    assert_eq!(v["primes"].as_array().unwrap().len(), 6);
}

#[test]
fn witness_reducers_are_odd_primorials() {
    let v = json(&["prufer", "witness", "--coord", "2:1", "--windows", "2..6"]);
    let ks: Vec<&str> = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["minimal_reducer"].as_str().unwrap())
        .collect();
    assert_eq!(ks, ["3", "15", "105", "1155", "15015"]);
}

#[test]
fn delta_table_bounds_come_from_scenario() {
    let v = json(&["delta-table", "--scenario", &demo()]);
    assert_eq!(v["max_n"], 12);
    assert_eq!(v["max_k"], 16);
    assert_eq!(v["rows"][2][2], "6");
    let par = json(&["delta-table", "--scenario", &demo(), "--parallel"]);
    assert_eq!(v, par);
}

#[test]
fn six_term_on_demo_scenario() {
    let o = towerlim(&["six-term", "check", &demo()]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&["six-term", "check", &demo(), "--ses", "prime-power"]);
    assert_eq!(
        v["sequences"][0]["limits"],
        serde_json::json!(["Z/243", "Z/59049", "Z/243"])
    );
}

#[test]
fn output_is_deterministic() {
    let args = ["paper-repro", "--json"];
    let a = towerlim(&args);
    let b = towerlim(&args);
    let c = towerlim(&["paper-repro", "--json", "--parallel"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn output_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("towerlim-out-{}.json", std::process::id()));
    let p = path.to_string_lossy().into_owned();
    let o = towerlim(&[
        "delta-table",
        "--max-n",
        "3",
        "--max-k",
        "3",
        "--json",
        "--output",
        &p,
    ]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["rows"][0], serde_json::json!(["1", "1", "1"]));
    std::fs::remove_file(path).unwrap();
}

#[test]
fn input_errors_exit_2_with_position() {
    let path = std::env::temp_dir().join(format!("towerlim-bad-{}.scn", std::process::id()));
    std::fs::write(&path, "horizon 4\ntower t = scaling x\n").unwrap();
    let p = path.to_string_lossy().into_owned();
    let o = towerlim(&["tower", "analyze", "t", "--scenario", &p]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 2, column 19"), "{err}");
    std::fs::remove_file(path).unwrap();

    assert_eq!(
        towerlim(&["tower", "analyze", "nonesuch"]).status.code(),
        Some(2)
    );
    assert_eq!(
        towerlim(&["prufer", "reduce", "--class", "6:1", "--n", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        towerlim(&["six-term", "check", "/nonexistent.scn"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn failed_checks_exit_1() {
    let o = towerlim(&["paper-repro", "--inject-fault", "delta"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL delta-oracle"));
}
