use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use acmac_core::{contains, RatePair, RegionHull};
use serde_json::Value;
use tempfile::TempDir;

fn acmac(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_acmac"))
        .args(args)
        .env_remove("ACMAC_THREADS")
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = acmac(args);
    assert!(
        out.status.success(),
        "acmac {args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn fails_with(args: &[&str], code: i32) -> String {
    let out = acmac(args);
    assert_eq!(out.status.code(), Some(code), "acmac {args:?}");
    String::from_utf8(out.stderr).unwrap()
}

struct Scratch(TempDir);

impl Scratch {
    fn new() -> Self {
        Self(tempfile::tempdir().unwrap())
    }

    fn path(&self, name: &str) -> String {
        self.0.path().join(name).to_string_lossy().into_owned()
    }

    fn example(&self, name: &str, extra: &[&str]) -> String {
        let file = self.path(&format!("{name}.json"));
        let mut args = vec!["example", name, "--out", &file];
        args.extend(extra);
        ok(&args);
        file
    }

    fn write(&self, name: &str, text: &str) -> String {
        let file = self.path(name);
        fs::write(&file, text).unwrap();
        file
    }
}

fn json(path: impl AsRef<Path>) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn hull_of(region_json: PathBuf) -> RegionHull {
    let doc = json(region_json);
    let pts = doc["vertices"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| RatePair::new(v[0].as_f64().unwrap(), v[1].as_f64().unwrap()))
        .collect();
    RegionHull::from_points(pts)
}

fn region(scratch: &Scratch, args: &[&str], out: &str) -> RegionHull {
    let dir = scratch.path(out);
    let mut a = args.to_vec();
    a.extend(["--out", &dir]);
    ok(&a);
    hull_of(Path::new(&dir).join("region.json"))
}

#[test]
fn validate_mod_channel() {
    let s = Scratch::new();
    let file = s.example("mod", &["--d-max", "0"]);
    let stdout = ok(&["validate", &file]);
    assert!(
        stdout.trim_end().ends_with("4 output symbols, D=1, OK"),
        "{stdout}"
    );
    assert!(stdout.contains("2 x1 symbols, 4 x2 symbols"));
}

#[test]
fn validate_rejects_bad_row_with_its_index() {
    let s = Scratch::new();
    let text = fs::read_to_string(s.example("binary-additive", &[])).unwrap();
    let mut doc: Value = serde_json::from_str(&text).unwrap();
    doc["transition"][1][0] = serde_json::json!([0.49, 0.49]);
    let bad = s.write("bad.json", &doc.to_string());
    let err = fails_with(&["validate", &bad], 2);
    assert!(err.contains("x1=1, x2=0"), "{err}");
}

#[test]
fn validate_reports_schema_errors() {
    let s = Scratch::new();
    let mut doc = json(s.example("mod", &[]));
    doc.as_object_mut().unwrap().remove("d_max");
    let bad = s.write("bad.json", &doc.to_string());
    let err = fails_with(&["validate", &bad], 2);
    assert!(err.contains("schema") && err.contains("d_max"), "{err}");
    fails_with(&["validate", &s.path("missing.json")], 2);
}

#[test]
fn inner_on_mod_channel_is_the_triangle() {
    let s = Scratch::new();
    let file = s.example("mod", &[]);
    let hull = region(&s, &["inner", &file], "inner");
    assert!((hull.support(1.0, 1.0).unwrap() - 2.0).abs() <= 1e-6);
    let csv = fs::read_to_string(s.path("inner/region.csv")).unwrap();
    let mut lines = csv.lines();
    assert!(lines.next().unwrap().starts_with("# manifest: "));
    assert_eq!(lines.next(), Some("vertex_index,r1,r2"));
    assert_eq!(lines.collect::<Vec<_>>(), ["0,0,0", "1,2,0", "2,0,2"]);
    let doc = json(s.path("inner/region.json"));
    assert_eq!(doc["label"], "inner bound");
    assert_eq!(doc["manifest"]["seed"], 0);
}

#[test]
fn accmac_inner_caps_r1_at_one() {
    let s = Scratch::new();
    let file = s.example("mod", &[]);
    let hull = region(&s, &["accmac-inner", &file], "acc");
    assert!((hull.support(1.0, 0.0).unwrap() - 1.0).abs() <= 1e-6);
}

#[test]
fn outer_with_zero_budget_contains_inner() {
    let s = Scratch::new();
    let file = s.example("binary-additive", &["--p", "0.11"]);
    let inner = region(&s, &["inner", &file], "inner");
    let outer = region(&s, &["outer", &file, "--budget", "0"], "outer");
    assert!(contains(&outer, &inner, 1e-9));
    let doc = json(s.path("outer/region.json"));
    assert_eq!(doc["label"], "outer-bound estimate");
    let manifest = json(s.path("outer/manifest.json"));
    assert_eq!(manifest["job"]["search"]["restarts"], 0);
    assert!(!manifest["trace"].as_array().unwrap().is_empty());
}

#[test]
fn outer_without_seeding_needs_a_budget() {
    let s = Scratch::new();
    let file = s.example("mod", &[]);
    let args = [
        "outer",
        &file,
        "--no-inner-seeding",
        "--budget",
        "0",
        "--samples",
        "0",
        "--no-face-seeds",
    ];
    fails_with(&args, 2);
}

#[test]
fn outer_size_cap_exits_3() {
    let s = Scratch::new();
    let file = s.example("mod", &["--d-max", "6"]);
    let err = fails_with(&["outer", &file, "--no-inner-seeding"], 3);
    assert!(err.contains("size cap"), "{err}");
}

#[test]
fn search_config_from_toml() {
    let s = Scratch::new();
    let file = s.example("mod", &[]);
    let cfg = s.write(
        "search.toml",
        "seed = 11\nrestarts = 1\nrandom_samples = 4\n",
    );
    let dir = s.path("run");
    ok(&[
        "inner",
        &file,
        "--config",
        &cfg,
        "--restarts",
        "2",
        "--out",
        &dir,
    ]);
    let search = &json(Path::new(&dir).join("manifest.json"))["job"]["search"];
    assert_eq!(search["seed"], 11);
    assert_eq!(search["restarts"], 2);
    assert_eq!(search["random_samples"], 4);
    let bad = s.write("bad.toml", "seeed = 1\n");
    fails_with(&["inner", &file, "--config", &bad], 2);
}

#[test]
fn gaussian_csv_inner_within_outer() {
    let s = Scratch::new();
    let dir = s.path("g");
    ok(&["gaussian", "0.5", "1", "1", "--out", &dir]);
    let csv = fs::read_to_string(Path::new(&dir).join("gaussian.csv")).unwrap();
    let mut lines = csv.lines();
    let manifest = lines.next().unwrap().strip_prefix("# manifest: ").unwrap();
    let manifest: Value = serde_json::from_str(manifest).unwrap();
    assert_eq!(manifest["units"], "bits");
    assert_eq!(manifest["tool"], "acmac");
    assert_eq!(lines.next(), Some("trace,param1,param2,r1,r2"));
    let (mut outer, mut inner) = (vec![RatePair::new(0.0, 0.0)], vec![RatePair::new(0.0, 0.0)]);
    for l in lines {
        let f: Vec<&str> = l.split(',').collect();
        let p = RatePair::new(f[3].parse().unwrap(), f[4].parse().unwrap());
        match f[0] {
            "outer" => outer.push(p),
            "inner" => inner.push(p),
            t => panic!("unknown trace {t}"),
        }
    }
    assert!(inner.len() > 2 && outer.len() > 2);
    assert!(contains(
        &RegionHull::from_points(outer),
        &RegionHull::from_points(inner),
        1e-6
    ));
    fails_with(&["gaussian", "-1", "1", "1"], 2);
}

#[test]
fn multiletter_reports_edge_gap() {
    let s = Scratch::new();
    let file = s.example("binary-additive", &["--p", "0.11"]);
    let dir = s.path("m");
    ok(&[
        "multiletter",
        &file,
        "--n",
        "4",
        "--iid-uniform",
        "--out",
        &dir,
    ]);
    let doc = json(Path::new(&dir).join("multiletter.json"));
    assert_eq!(doc["gap_bound"], 0.25);
    assert!(doc["gap"].as_f64().unwrap() <= 0.25);
    assert!(doc["q_n"]["a"].as_f64().unwrap() <= doc["r_n"]["a"].as_f64().unwrap());
    fails_with(&["multiletter", &file, "--n", "1", "--iid-uniform"], 2);
}

#[test]
fn multiletter_joint_law_from_file() {
    let s = Scratch::new();
    let file = s.example("binary-additive", &["--d-max", "0"]);
    // n = 1: uniform x1, x2 = 0
    let law = s.write("law.json", "[0.5, 0.0, 0.5, 0.0]");
    let stdout = ok(&["multiletter", &file, "--n", "1", "--joint", &law]);
    assert!(stdout.contains("\"a\": 1.0"), "{stdout}");
}

#[test]
fn simulate_is_repeatable() {
    let s = Scratch::new();
    let file = s.example("binary-additive", &[]);
    let args = [
        "simulate", &file, "--n", "128", "--r1", "0.4", "--r2", "0.4", "--trials", "200", "--seed",
        "7",
    ];
    let (a, b) = (s.path("a"), s.path("b"));
    let mut first = args.to_vec();
    first.extend(["--out", &a]);
    ok(&first);
    let mut second = args.to_vec();
    second.extend(["--out", &b, "--threads", "1"]);
    ok(&second);
    for f in ["report.json", "report.csv", "manifest.json"] {
        assert_eq!(
            fs::read(Path::new(&a).join(f)).unwrap(),
            fs::read(Path::new(&b).join(f)).unwrap(),
            "{f}"
        );
    }
    let report = json(Path::new(&a).join("report.json"));
    assert_eq!(report["trials"], 200);
    assert_eq!(report["manifest"]["seed"], 7);
}

#[test]
fn simulate_rejects_bad_flags() {
    let s = Scratch::new();
    let file = s.example("binary-additive", &[]);
    fails_with(
        &[
            "simulate", &file, "--n", "64", "--r1", "0.1", "--r2", "0.1", "--delay", "5",
        ],
        2,
    );
    fails_with(
        &[
            "simulate", &file, "--n", "64", "--r1", "0.1", "--r2", "0.1", "--delay", "soon",
        ],
        2,
    );
    fails_with(
        &[
            "simulate", &file, "--n", "64", "--r1", "-0.1", "--r2", "0.1",
        ],
        2,
    );
    let stdout = ok(&[
        "simulate", &file, "--n", "16", "--r1", "0.1", "--r2", "0.1", "--trials", "5", "--delay",
        "1",
    ]);
    assert!(stdout.contains("\"fixed\": 1"), "{stdout}");
}

#[test]
fn replay_rejects_foreign_manifest() {
    let s = Scratch::new();
    let dir = s.path("g");
    ok(&[
        "gaussian",
        "0.5",
        "1",
        "1",
        "--rho-steps",
        "3",
        "--p2-steps",
        "2",
        "--out",
        &dir,
    ]);
    let mut m = json(Path::new(&dir).join("manifest.json"));
    m["tool"] = "other".into();
    let bad = s.write("m.json", &m.to_string());
    fails_with(&["replay", &bad], 2);
}
