use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn cclab(args: &[&str], cache: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cclab")).args(args).env("CCLAB_CACHE_DIR", cache).output().expect("spawn cclab")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn main3_on_sp43_gives_one_passing_record_per_character() {
    let dir = tempfile::tempdir().unwrap();
    let out = cclab(&["verify", "main3", "Sp(4,3)"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], "cclab-report/1");
    let recs = v["items"][0]["records"].as_array().unwrap();
    assert_eq!(recs.len(), 34);
    assert!(recs.iter().all(|r| r["verdict"] == "pass"));
}

#[test]
fn delta_record() {
    let dir = tempfile::tempdir().unwrap();
    let out = cclab(&["delta", "--gamma", "0.99"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let recs = v["items"][0]["records"].as_array().unwrap();
    let r = recs.iter().find(|r| r["subject"] == "delta=0.0011").expect("certificate for 0.0011");
    assert_eq!(r["verdict"], "pass");
    let lhs = &r["reports"][0]["lhs"];
    assert_eq!(lhs["exact"]["num"], "11");
    assert_eq!(lhs["exact"]["den"], "10000");
}

#[test]
fn configuration_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(cclab(&["verify", "nonsense", "Sp(4,3)"], dir.path()).status.code(), Some(2));
    assert_eq!(cclab(&["table", "SO(5,2)"], dir.path()).status.code(), Some(2));
    assert_eq!(cclab(&["verify", "walk", "Sp(4,3)", "--tuple-budget", "0"], dir.path()).status.code(), Some(2));
    let cfg = dir.path().join("bad.cfg");
    fs::write(&cfg, "groups = Sp(4,3)\nsuites = main3, nope\n").unwrap();
    assert_eq!(cclab(&["run", cfg.to_str().unwrap()], dir.path()).status.code(), Some(2));
}

#[test]
fn empty_suite_list_is_an_empty_passing_bundle() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("empty.cfg");
    fs::write(&cfg, "# nothing to do\n").unwrap();
    let out = cclab(&["run", cfg.to_str().unwrap()], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["items"].as_array().unwrap().len(), 0);
}

#[test]
fn budget_overrun_is_reported_per_item() {
    let dir = tempfile::tempdir().unwrap();
    let out = cclab(&["verify", "centralizer", "Sp(4,3)", "SL(2,5)", "--enumeration-budget", "1000"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let items = v["items"].as_array().unwrap();
    assert!(items[0]["error"].as_str().unwrap().contains("budget"));
    assert!(items[1]["error"].is_null());
}

#[test]
fn reports_do_not_depend_on_worker_count() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(&cfg, "groups = Sp(4,3); SL(2,7); SO(5,3)\nsuites = centralizer, walk, product-one, delta\nwalk_t = 5\n").unwrap();
    let runs: Vec<Vec<u8>> = ["1", "3", "8"]
        .iter()
        .map(|w| {
            let out = cclab(&["run", cfg.to_str().unwrap(), "--workers", w], dir.path());
            assert_eq!(out.status.code(), Some(0));
            out.stdout
        })
        .collect();
    assert_eq!(runs[0], runs[1]);
    assert_eq!(runs[0], runs[2]);
}

#[test]
fn tampered_cache_is_rebuilt_with_a_warning() {
    let dir = tempfile::tempdir().unwrap();
    let first = cclab(&["table", "Sp(4,3)"], dir.path());
    assert_eq!(first.status.code(), Some(0));
    let entry = fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().path()).find(|p| p.extension().is_some_and(|x| x == "json")).unwrap();
    let text = fs::read_to_string(&entry).unwrap();
    let tampered = text.replacen("\"order\": 51840", "\"order\": 51841", 1);
    assert_ne!(text, tampered);
    fs::write(&entry, tampered).unwrap();
    let second = cclab(&["table", "Sp(4,3)"], dir.path());
    assert_eq!(second.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&second.stderr).contains("rejected"));
    assert_eq!(first.stdout, second.stdout);
    let third = cclab(&["table", "Sp(4,3)"], dir.path());
    assert!(third.stderr.is_empty());
    assert_eq!(first.stdout, third.stdout);
}

#[test]
fn csv_and_text_formats() {
    let dir = tempfile::tempdir().unwrap();
    let out = cclab(&["product-one", "SL(2,5)", "--classes", "3,3,3", "--format", "csv"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.starts_with("suite,group,subject,id,params,lhs,relation,rhs,verdict,note"));
    assert!(s.contains("product-one-oracle"));
    let out = cclab(&["walk", "SL(2,5)", "--class", "3", "--t", "4", "--format", "text"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("walk-linf"));
}
