use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use vanishing::cli::{emit, parse_tower, parse_tower_str, run};
use vanishing::couples::page;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    fs::read_to_string(path).unwrap()
}

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vanishing"))
        .args(args)
        .output()
        .unwrap()
}

fn t1() -> String {
    data("t1.json").to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn page_goldens() {
    for r in [1, 2] {
        let o = bin(&["page", &t1(), "--r", &r.to_string()]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o), golden(&format!("t1_page_{r}.txt")));
        let o = bin(&["chart", &t1(), "--r", &r.to_string(), "--format", "csv"]);
        assert_eq!(stdout(&o), golden(&format!("t1_chart_{r}.csv")));
    }
}

#[test]
fn check_exit_codes_and_witnesses() {
    let o = bin(&["check", &t1(), "--cond", "2", "--m", "0", "--r", "2", "--b", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), golden("t1_check_holds.txt"));

    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let o = bin(&[
        "check",
        &t1(),
        "--cond",
        "2",
        "--m",
        "0",
        "--r",
        "1",
        "--b",
        "1",
        "--report",
        report.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("s=1 t=1 dim=1"));
    assert_eq!(stdout(&o), golden("t1_check_fails.txt"));
    assert_eq!(fs::read_to_string(report).unwrap(), golden("t1_check_fails.json"));
}

#[test]
fn input_errors_exit_two() {
    let bad = data("malformed.json");
    let o = bin(&["page", bad.to_str().unwrap(), "--r", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("d(a)"));
    assert_eq!(bin(&["page", "/nonexistent.json", "--r", "1"]).status.code(), Some(2));
    assert_eq!(bin(&["page", &t1(), "--r", "0"]).status.code(), Some(2));
    assert_eq!(
        bin(&["check", &t1(), "--cond", "5", "--m", "0", "--r", "1", "--b", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        bin(&["check", &t1(), "--cond", "1", "--m", "0.5", "--r", "1", "--b", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        bin(&["chart", &t1(), "--r", "1", "--format", "png"]).status.code(),
        Some(2)
    );
    assert_eq!(bin(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn conditions_with_w_files() {
    let sphere = data("sphere.json");
    let sphere = sphere.to_str().unwrap();
    let o = bin(&[
        "check",
        &t1(),
        "--cond",
        "3",
        "--m",
        "0",
        "--r",
        "2",
        "--b",
        "0",
        "--W",
        sphere,
    ]);
    assert_eq!(o.status.code(), Some(0));
    let o = bin(&[
        "check",
        &t1(),
        "--cond",
        "4",
        "--m",
        "0",
        "--r",
        "1",
        "--b",
        "1",
        "--W",
        sphere,
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("s=1 t=1 dim=1"));
    // default family
    let o = bin(&["check", &t1(), "--cond", "3", "--m", "-1/2", "--r", "2", "--b", "0"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn other_subcommands() {
    let o = bin(&["min-intercept", &t1(), "--m", "1", "--r", "1"]);
    assert_eq!(stdout(&o), "D_1: beta=1\nE_1: beta=1\n");
    let o = bin(&["ghost", &t1(), "--r", "2", "--b", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let o = bin(&["ghost", data("sphere.json").to_str().unwrap(), "--r", "1", "--b", "0"]);
    assert_eq!(o.status.code(), Some(1));
    let o = bin(&["lemma", &t1(), "--m", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("lemma-b-proof"));
    let o = bin(&["generic", "cofiber", data("sphere_to_t1.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let (i, j) = (data("include.json"), data("project.json"));
    let o = bin(&[
        "generic",
        "retract",
        i.to_str().unwrap(),
        j.to_str().unwrap(),
        "--m",
        "0",
        "--r",
        "1",
        "--b",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let o = bin(&[
        "generic",
        "retract",
        i.to_str().unwrap(),
        i.to_str().unwrap(),
        "--m",
        "0",
        "--r",
        "1",
        "--b",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let o = bin(&["chart", &t1(), "--r", "1", "--format", "svg", "--m", "1/2", "--b", "-1"]);
    assert!(stdout(&o).contains("<line"));
}

#[test]
fn fuzz_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    let args = |p: &Path| {
        vec![
            "fuzz".to_string(),
            "--seed".into(),
            "3".into(),
            "--count".into(),
            "6".into(),
            "--report".into(),
            p.to_string_lossy().into_owned(),
        ]
    };
    let first = Command::new(env!("CARGO_BIN_EXE_vanishing"))
        .args(args(&a))
        .output()
        .unwrap();
    let second = Command::new(env!("CARGO_BIN_EXE_vanishing"))
        .args(args(&b))
        .output()
        .unwrap();
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(fs::read(a).unwrap(), fs::read(b).unwrap());
}

#[test]
fn in_process_run_matches_binary() {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(["vanishing", "page", &t1(), "--r", "1"], &mut out, &mut err);
    assert_eq!(code, 0);
    assert_eq!(String::from_utf8(out).unwrap(), golden("t1_page_1.txt"));
}

#[test]
fn emitted_documents_round_trip() {
    for name in ["t1.json", "sum.json", "sphere.json"] {
        let t = parse_tower(&data(name)).unwrap();
        let again = parse_tower_str(&emit(&t).to_json()).unwrap().to_tower();
        for r in 1..=t.top() + 2 {
            assert_eq!(page(&t, r).unwrap().module, page(&again, r).unwrap().module);
        }
    }
    for seed in 0..10 {
        let t = vanishing::towers::random_tower(seed, &Default::default()).unwrap();
        let again = parse_tower_str(&emit(&t).to_json()).unwrap().to_tower();
        for r in 1..=t.top() + 2 {
            assert_eq!(
                page(&t, r).unwrap().module,
                page(&again, r).unwrap().module,
                "seed={seed} r={r}"
            );
        }
    }
}
