use std::path::Path;
use std::process::Command;

use npj_cli::file::{load_module, parse_module_file, ModuleFile};
use serde_json::Value;

const UNISERIAL: &str = r#"{
  "p": 3, "rank": 2, "dim": 3,
  "generators": [
    [[1,1,0],[0,1,1],[0,0,1]],
    [[1,0,1],[0,1,0],[0,0,1]]
  ],
  "name": "uniserial"
}"#;

fn npj() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_npj"));
    c.env_remove("NPJ_CACHE_DIR");
    c
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn json(out: &std::process::Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn example_file_matches_the_gallery_module() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "m.json", UNISERIAL);
    let loaded = load_module(&f).unwrap();
    assert_eq!(loaded.module, npj_core::gallery::uniserial_3x3());
    assert_eq!(loaded.name, "uniserial");
}

#[test]
fn load_serialize_load_is_identity() {
    let m = parse_module_file(UNISERIAL).unwrap().to_module().unwrap();
    let text = serde_json::to_string(&ModuleFile::from_module(&m, None)).unwrap();
    assert_eq!(parse_module_file(&text).unwrap().to_module().unwrap(), m);
}

#[test]
fn cc_on_the_uniserial_file() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "m.json", UNISERIAL);
    let out = npj().args(["cc", &f, "--n", "8"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let values: Vec<u64> = serde_json::from_value(v["result"]["values"].clone()).unwrap();
    assert_eq!(values.len(), 9);
    assert_eq!(&values[..3], &[1, 3, 9]);
    assert_eq!(values[5], 72);
    assert_eq!(v["result"]["identity_text"], "M^⊗5 ≅ 8·M^⊗2 ⊕ 19·P");
    assert_eq!(v["settings"]["n"], 8);
    assert_eq!(v["modules"][0]["name"], "uniserial");
}

#[test]
fn cyclic_exact_on_a_rank_one_file() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "j.json",
        r#"{"p":5,"rank":1,"dim":2,"generators":[[[1,0],[1,1]]]}"#,
    );
    let out = npj().args(["cyclic-exact", &f]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let r = &v["result"][0];
    assert_eq!(r["blocks"], serde_json::json!([2]));
    assert!((r["value"].as_f64().unwrap() - 1.6180339887).abs() < 1e-10);
}

#[test]
fn npj_on_the_three_class_example() {
    let out = npj().args(["npj", "gallery:m6-three-classes", "--n", "6"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    let verdict = &v["result"]["verdict"];
    assert_eq!(verdict["kind"], "exact");
    assert_eq!(verdict["value"], 3.0);
    assert_eq!(verdict["certificate"]["kind"], "closed_table");
}

#[test]
fn csv_and_json_carry_the_same_numbers() {
    let j = json(&npj().args(["cc", "gallery:jordan-5-2", "--n", "10"]).output().unwrap());
    let c = npj()
        .args(["cc", "gallery:jordan-5-2", "--n", "10", "--format", "csv"])
        .output()
        .unwrap();
    let mut rdr = csv::Reader::from_reader(&c.stdout[..]);
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 11);
    for (n, r) in rows.iter().enumerate() {
        assert_eq!(r[1].parse::<u64>().unwrap(), j["result"]["values"][n].as_u64().unwrap());
        if n > 0 {
            let u: f64 = r[4].parse().unwrap();
            let w = j["result"]["upper_bounds"][n - 1].as_f64().unwrap();
            assert!((u - w).abs() <= 1e-14 * w.abs(), "{u} vs {w}");
        }
    }
}

#[test]
fn text_format_uses_summand_notation() {
    let out = npj()
        .args(["cc", "gallery:uniserial-3x3", "--n", "6", "--format", "text"])
        .output()
        .unwrap();
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.contains("M^⊗5 ≅ 8·M^⊗2 ⊕ 19·P"), "{s}");
}

#[test]
fn input_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(
        dir.path(),
        "bad.json",
        r#"{"p":3,"rank":2,"dim":3,"generators":[[[1,0,0],[1,1,0],[0,0,1]],[[1,0,0],[0,1,0],[0,1,1]]]}"#,
    );
    let out = npj().args(["validate", &bad]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("(0,1)"));
    assert_eq!(npj().args(["frobnicate"]).output().unwrap().status.code(), Some(1));
    assert_eq!(npj().args(["cc", "gallery:nope"]).output().unwrap().status.code(), Some(1));
    assert_eq!(
        npj().args(["cc", "gallery:uniserial-3x3", "--wat"]).output().unwrap().status.code(),
        Some(1)
    );
    let missing = npj().args(["cc", "/nonexistent/m.json"]).output().unwrap();
    assert_eq!(missing.status.code(), Some(1));
}

#[test]
fn unreduced_entries_validate() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "m.json",
        r#"{"p":3,"rank":1,"dim":2,"generators":[[[4,3],[4,-2]]]}"#,
    );
    let out = npj().args(["validate", &f]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["valid"], true);
}

#[test]
fn reports_are_reproducible_and_cache_is_transparent() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let plain = npj().args(["cc", "gallery:m6-three-classes", "--n", "6"]).output().unwrap();
    let again = npj().args(["cc", "gallery:m6-three-classes", "--n", "6"]).output().unwrap();
    assert_eq!(plain.stdout, again.stdout);
    let first = npj()
        .args(["cc", "gallery:m6-three-classes", "--n", "4"])
        .arg("--cache-dir")
        .arg(&cache)
        .output()
        .unwrap();
    assert_eq!(first.status.code(), Some(0));
    let resumed = npj()
        .args(["cc", "gallery:m6-three-classes", "--n", "6"])
        .env("NPJ_CACHE_DIR", &cache)
        .env("RUST_LOG", "info")
        .output()
        .unwrap();
    assert!(String::from_utf8_lossy(&resumed.stderr).contains("resuming from cached step 4"));
    assert_eq!(resumed.stdout, plain.stdout);
    let entries: Vec<_> = std::fs::read_dir(&cache).unwrap().map(|e| e.unwrap().file_name()).collect();
    assert_eq!(entries.len(), 2, "{entries:?}");
}

#[test]
fn out_flag_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = npj()
        .args(["classify", "gallery:uniserial-3x3", "--out"])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(v["result"]["category"], "general");
    assert_eq!(v["tool"], "npj");
}

#[test]
fn decompose_and_table_commands() {
    let d = json(&npj().args(["decompose", "gallery:m6-three-classes"]).output().unwrap());
    assert_eq!(d["result"]["free_rank"], 0);
    let t = json(&npj().args(["omega-table", "gallery:m6-three-classes"]).output().unwrap());
    assert_eq!(t["result"]["closed"], true);
    assert_eq!(t["result"]["classes"].as_array().unwrap().len(), 3);
    assert_eq!(t["result"]["value"], 3.0);
}

#[test]
fn harness_over_random_modules() {
    let out = npj()
        .args(["harness", "--random", "4", "--p", "2", "--n", "3", "--seed", "5"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let v = json(&out);
    assert_eq!(v["result"]["modules"], 4);
    assert!(v["result"]["failures"].as_array().unwrap().is_empty());
}

#[test]
fn restriction_words() {
    let out = npj()
        .args(["cyclic-exact", "gallery:m5-restriction", "--restrict", "1:0,0:1", "--format", "csv"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let s = String::from_utf8(out.stdout).unwrap();
    assert_eq!(s.lines().count(), 3, "{s}");
    assert!(s.lines().nth(1).unwrap().starts_with("1:0,3,2 2 1,"));
}
