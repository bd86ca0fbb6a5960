use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use fdif_core::storage::{read_sample, DatasetManifest, Labels};

fn fdif(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fdif")).args(args).output().unwrap()
}

fn code(args: &[&str]) -> Option<i32> {
    fdif(args).status.code()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn gen_small(out: &Path, extra: &[&str]) -> DatasetManifest {
    let mut args = vec!["gen-seg", "--out", path(out), "--grid", "16", "--objects", "3", "--num", "2", "--seed", "4"];
    args.extend_from_slice(extra);
    let o = fdif(&args);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    DatasetManifest::read(out).unwrap()
}

#[test]
fn list_shapes_has_a_row_per_class() {
    let o = fdif(&["list-shapes"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 109);
    assert!(rows[0].trim_start().starts_with("1 "));
    assert!(rows[108].trim_start().starts_with("109 "));
}

#[test]
fn describe_class_prints_the_recipe() {
    let o = fdif(&["describe-class", "4"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["id"], 4);
    assert_eq!(code(&["describe-class", "110"]), Some(2));
    assert_eq!(code(&["describe-class", "0"]), Some(2));
}

#[test]
fn usage_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("o");
    assert_eq!(code(&["validate", "--suite", "nope"]), Some(2));
    assert_eq!(code(&["gen-seg", "--out", path(&out), "--grid", "4"]), Some(2));
    assert_eq!(code(&["gen-seg", "--out", path(&out), "--objects", "5-2"]), Some(2));
    assert_eq!(code(&["gen-seg", "--out", path(&out), "--subset", "ext99"]), Some(2));
    assert_eq!(code(&["gen-seg", "--out", path(&out), "--subset", "ids:3,200"]), Some(2));
    let cfg = dir.path().join("bad.json");
    fs::write(&cfg, r#"{"no_such_key": 1}"#).unwrap();
    assert_eq!(code(&["gen-seg", "--out", path(&out), "--config", path(&cfg)]), Some(2));
}

#[test]
fn preview_rejects_bad_axis_and_writes_slices() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("d");
    let m = gen_small(&data, &[]);
    let sample = data.join(&m.samples[0].file);
    let png = dir.path().join("png");
    assert_eq!(code(&["preview", "--input", path(&sample), "--axis", "w", "--out", path(&png)]), Some(2));
    let o = fdif(&["preview", "--input", path(&sample), "--axis", "y", "--out", path(&png)]);
    assert!(o.status.success());
    let mut names: Vec<String> = fs::read_dir(&png)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    assert_eq!(names.len(), 6);
    assert!(names.iter().filter(|n| n.starts_with("labels_y")).count() == 3);
    let missing = dir.path().join("missing.fdif");
    assert_eq!(code(&["preview", "--input", path(&missing), "--out", path(&png)]), Some(1));
}

#[test]
fn repeated_runs_produce_identical_manifests() {
    let dir = tempfile::tempdir().unwrap();
    gen_small(&dir.path().join("a"), &["--threads", "1"]);
    gen_small(&dir.path().join("b"), &["--threads", "3"]);
    let a = fs::read(dir.path().join("a/manifest.json")).unwrap();
    let b = fs::read(dir.path().join("b/manifest.json")).unwrap();
    assert_eq!(a, b);
}

#[test]
fn config_file_values_are_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    fs::write(&cfg, r#"{"num": 3, "grid": [12, 14, 16], "mapper": false, "seed": 77}"#).unwrap();
    let out = dir.path().join("o");
    let o = fdif(&["gen-seg", "--out", path(&out), "--config", path(&cfg), "--objects", "2", "--seed", "5"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let m = DatasetManifest::read(&out).unwrap();
    assert_eq!(m.samples.len(), 3);
    assert_eq!(m.grid, [12, 14, 16]);
    assert_eq!(m.master_seed, 5);
    assert_eq!(m.config["mapper"], false);
    assert_eq!(m.config["objects"], 2);
    let v = read_sample(&out.join(&m.samples[0].file)).unwrap();
    assert_eq!(v.grid.dims(), [12, 14, 16]);
}

#[test]
fn mapper_and_displacement_switches_reach_the_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let m = gen_small(&dir.path().join("o"), &["--map", "off", "--disp", "off"]);
    assert_eq!(m.config["mapper"], false);
    assert_eq!(m.config["displacement"], false);
    let on = gen_small(&dir.path().join("p"), &[]);
    assert_eq!(m.variant_hash, on.variant_hash);
    assert_ne!(m.samples[0].checksum, on.samples[0].checksum);
}

#[test]
fn subsets_change_the_library_hash() {
    let dir = tempfile::tempdir().unwrap();
    let full = gen_small(&dir.path().join("a"), &[]);
    let ext = gen_small(&dir.path().join("b"), &["--subset", "ext10"]);
    assert_ne!(full.library_hash, ext.library_hash);
    assert_eq!(ext.config["subset"], "ext10");
}

#[test]
fn classification_count_follows_subset_size() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("o");
    let o = fdif(&["gen-cls", "--out", path(&out), "--per-class", "2", "--subset", "ids:1,5,9", "--grid", "16"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let m = DatasetManifest::read(&out).unwrap();
    assert_eq!(m.samples.len(), 6);
    let mut classes: Vec<u16> = m
        .samples
        .iter()
        .map(|e| match read_sample(&out.join(&e.file)).unwrap().labels {
            Labels::Class(c) => c,
            Labels::Dense(_) => panic!("dense labels in classification mode"),
        })
        .collect();
    classes.sort();
    assert_eq!(classes, vec![1, 1, 5, 5, 9, 9]);
}

#[test]
fn verify_reports_missing_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("o");
    let m = gen_small(&out, &[]);
    assert_eq!(code(&["verify", "--dir", path(&out)]), Some(0));
    fs::remove_file(out.join(&m.samples[1].file)).unwrap();
    assert_eq!(code(&["verify", "--dir", path(&out)]), Some(1));
}
