use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn tps(args: &[&str], stdin: &[u8]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_tps"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn tps");
    child.stdin.take().unwrap().write_all(stdin).unwrap();
    child.wait_with_output().unwrap()
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name).display().to_string()
}

fn json_lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

fn scratch(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("tps-cli-{}-{name}", std::process::id()))
}

#[test]
fn pipeline_through_stdin() {
    let tmap = tps(&["gen", "random", "--n", "15", "--seed", "3"], b"");
    assert!(tmap.status.success());
    let enc = tps(&["encode"], &tmap.stdout);
    assert!(enc.status.success());
    assert!(enc.stdout.starts_with(b"TPS1"));
    let dec = tps(&["decode"], &enc.stdout);
    assert!(dec.status.success());
    let src = scratch("src.tmap");
    std::fs::write(&src, &tmap.stdout).unwrap();
    let ver = tps(&["verify", "--against", src.to_str().unwrap()], &dec.stdout);
    assert!(ver.status.success());
    assert_eq!(json_lines(&ver)[0]["isomorphic"], true);
    std::fs::remove_file(src).unwrap();
}

#[test]
fn files_and_reports() {
    let (map, code) = (scratch("k7.tmap"), scratch("k7.tps"));
    let (map_s, code_s) = (map.to_str().unwrap(), code.to_str().unwrap());
    assert!(tps(&["gen", "k7", "-o", map_s], b"").status.success());
    let enc = tps(&["encode", map_s, "-o", code_s], b"");
    let rep = &json_lines(&enc)[0];
    assert_eq!(rep["n"], 7);
    assert_eq!(rep["total_bits"].as_u64().unwrap(), 8 * std::fs::read(&code).unwrap().len() as u64);
    let ver = tps(&["verify", code_s, "--against", map_s], b"");
    assert_eq!(json_lines(&ver)[0]["isomorphic"], true);
    std::fs::remove_file(map).unwrap();
    std::fs::remove_file(code).unwrap();
}

#[test]
fn truncated_container_fails_in_codec() {
    let enc = tps(&["encode", &fixture("k7.tmap")], b"");
    let cut = &enc.stdout[..enc.stdout.len() - 3];
    let dec = tps(&["decode"], cut);
    assert_eq!(dec.status.code(), Some(1));
    let err = String::from_utf8_lossy(&dec.stderr);
    assert_eq!(err.trim_end(), "stage: codec, error: invalid word");
}

#[test]
fn bad_tmap_fails_in_map_stage() {
    let out = tps(&["encode"], b"tmap 1 2 6 triangulation\nv 0 0\n");
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("stage: map, error:"));
}

#[test]
fn unknown_command_is_a_usage_error() {
    assert_eq!(tps(&["frobnicate"], b"").status.code(), Some(2));
}

#[test]
fn analyze_k7_minimal_wood() {
    let out = tps(
        &[
            "analyze",
            &fixture("k7.tmap"),
            "--orientation",
            &fixture("k7_minimal.torient"),
            "--root",
            &fixture("k7_minimal.troot"),
        ],
        b"",
    );
    assert!(out.status.success());
    let r = &json_lines(&out)[0];
    assert_eq!(r["htc"], true);
    assert_eq!(r["minimal"], true);
    assert_eq!(r["gamma"], serde_json::json!([0, 0]));
}

#[test]
fn oracle_on_one_vertex_map() {
    let out = tps(&["oracle", &fixture("one_vertex.tmap")], b"");
    assert!(out.status.success());
    let lines = json_lines(&out);
    assert!(lines.iter().filter(|l| l.get("class").is_some()).all(|l| l["lattice_ok"] == true));
}

#[test]
fn roundtrip_many() {
    let out = tps(&["roundtrip", "--count", "8", "--n-max", "30", "--seed", "9"], b"");
    assert!(out.status.success());
    assert_eq!(json_lines(&out).last().unwrap()["failed"], 0);
}
