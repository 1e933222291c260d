use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn digitop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_digitop"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn write_output(dir: &Path, name: &str, args: &[&str]) -> String {
    let out = digitop(args);
    assert_eq!(code(&out), 0, "{args:?}: {}", stderr(&out));
    let path = dir.join(name);
    fs::write(&path, &out.stdout).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn verify_fixtures() {
    assert_eq!(code(&digitop(&["verify", "d8-split", "--level", "np1"])), 0);
    let np2 = digitop(&["verify", "d8-split", "--level", "np2"]);
    assert_eq!(code(&np2), 1);
    assert!(stdout(&np2).contains("witness"));

    let cube = digitop(&["verify", "d8-cube", "--level", "np1"]);
    assert_eq!(code(&cube), 1);
    assert!(stdout(&cube).contains("(e,r) ~ (s,r)"), "{}", stdout(&cube));
    assert_eq!(code(&digitop(&["verify", "d8-cube", "--level", "np2"])), 1);
}

#[test]
fn json_reports_carry_the_verdict() {
    let out = digitop(&["--json", "verify", "scc16-mod4", "--level", "np2"]);
    assert_eq!(code(&out), 1);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verdict"], false);
    assert_eq!(v["witness"]["kind"], "multiplication");
    assert_eq!(v["witness"]["first"], serde_json::json!([0, 0]));
    assert_eq!(v["witness"]["second"], serde_json::json!([1, 1]));
}

#[test]
fn quotient_of_the_sixteen_point_curve() {
    let dir = tempfile::tempdir().unwrap();
    let scc = write_output(dir.path(), "scc.json", &["fixture", "scc16-mod4"]);
    let q = write_output(
        dir.path(),
        "q.json",
        &["quotient", &scc, "--subgroup", "0,4,8,12"],
    );
    let out = digitop(&["--json", "classify", &q]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["points"], 4);
    assert_eq!(v["simple_closed_curve"], true);
    assert_eq!(code(&digitop(&["verify", &q])), 0);

    let bad = digitop(&["quotient", &scc, "--subgroup", "0,3"]);
    assert_eq!(code(&bad), 2);
}

#[test]
fn emitted_documents_reload_byte_for_byte() {
    let dir = tempfile::tempdir().unwrap();
    for name in [
        "d8-cube",
        "d8-split",
        "scc16-mod4",
        "cross4-c1",
        "cross4-c2",
        "unit-square-c2",
    ] {
        let path = write_output(dir.path(), &format!("{name}.json"), &["fixture", name]);
        let text = fs::read_to_string(&path).unwrap();
        let claimed: Value = serde_json::from_str(&text).unwrap();
        let expected = if claimed["claimed_level"].is_null() { 1 } else { 0 };
        assert_eq!(code(&digitop(&["verify", &path])), expected, "{name}");
    }
    let a = write_output(dir.path(), "a.json", &["scc", "8"]);
    let b = write_output(dir.path(), "b.json", &["quotient", &a, "--subgroup", "0"]);
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn constructors() {
    let dir = tempfile::tempdir().unwrap();
    let c = write_output(dir.path(), "c.json", &["cluster", "4", "2"]);
    let v: Value = serde_json::from_str(&fs::read_to_string(&c).unwrap()).unwrap();
    assert_eq!(v["claimed_level"], "NP2");
    assert_eq!(v["group"]["order"], 8);

    let z2 = write_output(dir.path(), "z2.json", &["scc", "16", "--z2"]);
    let v: Value = serde_json::from_str(&fs::read_to_string(&z2).unwrap()).unwrap();
    assert_eq!(v["image"]["adjacency"]["type"], "cu");
    assert_eq!(v["image"]["points"][0], serde_json::json!([2, 0]));
    assert_eq!(code(&digitop(&["scc", "6", "--z2"])), 2);
    assert_eq!(code(&digitop(&["scc", "2"])), 2);

    let p3 = dir.path().join("p3.json");
    fs::write(
        &p3,
        r#"{"dimension":1,"points":[[0],[1],[2]],"adjacency":{"type":"cu","u":1}}"#,
    )
    .unwrap();
    let out = digitop(&["embed", p3.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["dimension"], 2);
    assert_eq!(v["adjacency"]["u"], 2);
}

#[test]
fn cayley_graphs() {
    let dir = tempfile::tempdir().unwrap();
    let z6 = dir.path().join("z6.json");
    let table: Vec<Vec<usize>> = (0..6).map(|a| (0..6).map(|b| (a + b) % 6).collect()).collect();
    let doc = serde_json::json!({ "order": 6, "table": table });
    fs::write(&z6, doc.to_string()).unwrap();
    let z6 = z6.to_str().unwrap();
    assert_eq!(code(&digitop(&["cayley", z6, "--gens", "1,5"])), 0);
    assert_eq!(code(&digitop(&["cayley", z6, "--gens", "1"])), 2);
    assert_eq!(code(&digitop(&["cayley", z6, "--gens", "0,1,5"])), 2);

    // D8 with r, r^3, s is not closed under conjugation
    let d8 = write_output(dir.path(), "d8.json", &["fixture", "d8-split"]);
    let v: Value = serde_json::from_str(&fs::read_to_string(&d8).unwrap()).unwrap();
    let group = dir.path().join("d8-group.json");
    fs::write(&group, v["group"].to_string()).unwrap();
    let out = digitop(&["cayley", group.to_str().unwrap(), "--gens", "1,3,4"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("witness"));
}

#[test]
fn homomorphism_report() {
    let dir = tempfile::tempdir().unwrap();
    let map = dir.path().join("id.json");
    fs::write(&map, r#"{"map": [0, 1, 2, 3]}"#).unwrap();
    let out = digitop(&["--json", "hom", "cross4-c1", "cross4-c2", map.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["is_open"], false);
    assert_eq!(v["open_witness"], serde_json::json!([0, 1]));
    assert_eq!(v["first_isomorphism"]["is_dtg_isomorphism"], false);

    let back = digitop(&["hom", "cross4-c2", "cross4-c1", map.to_str().unwrap()]);
    assert_eq!(code(&back), 1);
}

#[test]
fn scans() {
    let out = digitop(&["--json", "enumerate", "np2", "--max-vertices", "4"]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["candidates"], 18);
    assert_eq!(v["exceptions"], 0);

    let out = digitop(&["--json", "enumerate", "z2", "--window", "1", "--records", "notable"]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["records"].as_array().unwrap().len(), 5);

    assert_eq!(code(&digitop(&["enumerate", "z2", "--window", "3"])), 2);
    // K4 carries three cyclic structures and one Klein four-group
    let out = digitop(&["enumerate", "structures", "unit-square-c2"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("4 group structures"), "{}", stdout(&out));
}

#[test]
fn dot_output() {
    let out = digitop(&["--dot", "fixture", "cross4-c2"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.starts_with("graph G {"));
    assert!(text.contains("0 -- 1"));
}

#[test]
fn input_errors() {
    assert_eq!(code(&digitop(&["frobnicate"])), 2);
    assert_eq!(code(&digitop(&["verify", "/nonexistent.json"])), 2);

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(
        &bad,
        r#"{"image": {"dimension": 1, "points": [[0],[1]], "adjacency": {"type":"cu","u":1}},
            "group": {"order": 3, "table": [[0,1],[1,0]]}, "claimed_level": null}"#,
    )
    .unwrap();
    let out = digitop(&["verify", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("group.order"), "{}", stderr(&out));

    let missing = dir.path().join("missing.json");
    fs::write(&missing, r#"{"image": {"dimension": 1, "adjacency": {"type":"cu","u":1}}}"#).unwrap();
    let out = digitop(&["verify", missing.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("points"), "{}", stderr(&out));
}
