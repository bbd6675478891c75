use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn goldens() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../goldens")
}

fn run(args: &[&str], out_dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flagtwg"))
        .args(args)
        .env("FLAGTWG_OUT_DIR", out_dir)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn reproduce_matches_goldens() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("out");
    let o = run(&["reproduce", "--golden-dir", goldens().to_str().unwrap()], &out);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("goldens match"));
    assert!(out.join("classification.json").exists());
    assert!(out.join("hasse_s3.dot").exists());
}

#[test]
fn golden_mismatch_exits_3() {
    let tmp = tempfile::tempdir().unwrap();
    let copy = tmp.path().join("goldens");
    std::fs::create_dir(&copy).unwrap();
    for entry in std::fs::read_dir(goldens()).unwrap() {
        let path = entry.unwrap().path();
        std::fs::copy(&path, copy.join(path.file_name().unwrap())).unwrap();
    }
    let target = copy.join("hasse_s3.json");
    let text = std::fs::read_to_string(&target).unwrap();
    std::fs::write(&target, text.replacen("\"A\"", "\"C\"", 1)).unwrap();
    let o = run(&["reproduce", "--golden-dir", copy.to_str().unwrap()], &tmp.path().join("out"));
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("hasse_s3.json"), "{}", stderr(&o));
    assert_eq!(stderr(&o).lines().count(), 1);
}

#[test]
fn bless_writes_a_fresh_directory() {
    let tmp = tempfile::tempdir().unwrap();
    let fresh = tmp.path().join("fresh");
    let o = run(&["reproduce", "--golden-dir", fresh.to_str().unwrap(), "--bless"], &tmp.path().join("out"));
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["reproduce", "--golden-dir", fresh.to_str().unwrap()], &tmp.path().join("out"));
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn lagrangian_so2_fibre_has_two_spheres() {
    let tmp = tempfile::tempdir().unwrap();
    let o = run(&["twg", "--partition", "2,1,1", "--flag", "lag", "--group", "so2"], tmp.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let g: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let mut eulers: Vec<i64> = g["square"].as_array().unwrap().iter().map(|s| s["euler"].as_i64().unwrap()).collect();
    eulers.sort_unstable();
    assert_eq!(eulers, [-1, 1]);

    let file = tmp.path().join("fibre.json");
    std::fs::write(&file, stdout(&o)).unwrap();
    let o = run(&["classify", file.to_str().unwrap()], tmp.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("Hir(1;1,0)\t"), "{}", stdout(&o));
}

fn write_flag(dir: &Path, name: &str, cols: &[[i64; 3]]) -> PathBuf {
    let vectors: Vec<Vec<[String; 2]>> =
        cols.iter().map(|c| c.iter().map(|x| [x.to_string(), "0".to_string()]).collect()).collect();
    let doc = serde_json::json!({ "ambient": 3, "signature": [1, 2], "vectors": vectors });
    let path = dir.join(name);
    std::fs::write(&path, doc.to_string()).unwrap();
    path
}

#[test]
fn positions_of_flag_files() {
    let tmp = tempfile::tempdir().unwrap();
    let f = write_flag(tmp.path(), "f.json", &[[1, 0, 0], [0, 1, 0], [0, 0, 1]]);
    let g = write_flag(tmp.path(), "g.json", &[[2, 0, 0], [1, 1, 0], [0, 3, 1]]);
    let h = write_flag(tmp.path(), "h.json", &[[0, 0, 1], [0, 1, 0], [1, 0, 0]]);
    let same = run(&["position", f.to_str().unwrap(), g.to_str().unwrap()], tmp.path());
    assert_eq!(same.status.code(), Some(0), "{}", stderr(&same));
    assert_eq!(stdout(&same).trim(), "identity");
    let opposite = run(&["position", f.to_str().unwrap(), h.to_str().unwrap()], tmp.path());
    assert_eq!(opposite.status.code(), Some(0));
    assert_ne!(stdout(&opposite).trim(), "identity");
}

#[test]
fn hasse_and_ideals() {
    let tmp = tempfile::tempdir().unwrap();
    let o = run(&["hasse", "--family", "a", "--rank", "2", "--format", "json"], tmp.path());
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["elements"].as_array().unwrap().len(), 6);
    assert_eq!(doc["covers"].as_array().unwrap().len(), 8);
    let o = run(&["ideals", "--family", "c", "--rank", "2", "--eta", "2"], tmp.path());
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["balanced_ideals"].as_array().unwrap().len(), 1);
}

#[test]
fn usage_errors_exit_1() {
    let tmp = tempfile::tempdir().unwrap();
    for args in [&["frobnicate"][..], &["hasse", "--family", "z", "--rank", "2"], &["position", "/nonexistent.json", "/x.json"]] {
        let o = run(args, tmp.path());
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert_eq!(stderr(&o).lines().count(), 1, "{args:?}: {}", stderr(&o));
    }
    assert_eq!(run(&["--help"], tmp.path()).status.code(), Some(0));
    assert_eq!(run(&["--version"], tmp.path()).status.code(), Some(0));
}

#[test]
fn parity_violation_exits_2() {
    let tmp = tempfile::tempdir().unwrap();
    let o = run(&["twg", "--partition", "2,1", "--flag", "full", "--group", "pso2"], tmp.path());
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stderr(&o).lines().count(), 1);
}
