use std::path::Path;
use std::process::{Command, Output};

use focklab::carleson::DiscreteMeasure;

fn focklab(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_focklab"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(path: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) {
    std::fs::write(dir.join(name), text).unwrap();
}

#[test]
fn single_atom_is_carleson_with_unit_ratio() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "atom.txt", "# one atom\n0 0 1\n");
    let out = focklab(
        dir.path(),
        &[
            "carleson",
            "--measure",
            "atom.txt",
            "--m",
            "1",
            "--p",
            "2",
            "--r",
            "1",
            "--out",
            "atom",
        ],
    );
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("verdict: carleson"));
    let report = json(&dir.path().join("atom.json"));
    assert_eq!(report["verdict"], "carleson");
    assert_eq!(report["sup_ratio"], 1.0);
    assert!(dir.path().join("atom.txt").exists());
}

#[test]
fn lattice_and_exponential_files() {
    let dir = tempfile::tempdir().unwrap();
    write(
        dir.path(),
        "lattice.txt",
        &DiscreteMeasure::lattice(10.0, 1.0).unwrap().to_text(),
    );
    let out = focklab(
        dir.path(),
        &[
            "carleson",
            "--measure",
            "lattice.txt",
            "--m",
            "0",
            "--p",
            "2",
            "--out",
            "lattice",
        ],
    );
    assert_eq!(out.status.code(), Some(0));
    let report = json(&dir.path().join("lattice.json"));
    assert_eq!(report["verdict"], "carleson");
    assert_eq!(report["vanishing"], false);

    let atoms: Vec<String> = DiscreteMeasure::exponential_line(8)
        .atoms()
        .iter()
        .map(|a| {
            format!(
                "{{\"x\": {}, \"y\": {}, \"mass\": {:e}}}",
                a.position.re, a.position.im, a.mass
            )
        })
        .collect();
    write(
        dir.path(),
        "exp-atoms.json",
        &format!("{{\"atoms\": [\n{}\n]}}\n", atoms.join(",\n")),
    );
    let out = focklab(
        dir.path(),
        &[
            "carleson",
            "--measure",
            "exp-atoms.json",
            "--m",
            "1",
            "--p",
            "2",
            "--out",
            "exp",
        ],
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        json(&dir.path().join("exp.json"))["verdict"],
        "not-carleson-within-window"
    );
}

#[test]
fn usage_and_parse_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "atom.txt", "0 0 1\n");
    write(dir.path(), "bad.txt", "0 0 1\n\n1 1 -2\n");
    let inf = focklab(
        dir.path(),
        &[
            "carleson",
            "--measure",
            "atom.txt",
            "--m",
            "1",
            "--p",
            "inf",
        ],
    );
    assert_eq!(inf.status.code(), Some(2));
    let bad = focklab(
        dir.path(),
        &["carleson", "--measure", "bad.txt", "--m", "1", "--p", "2"],
    );
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("line 3"));
    assert_eq!(
        focklab(dir.path(), &["verify", "bogus"]).status.code(),
        Some(2)
    );
    assert_eq!(
        focklab(dir.path(), &["verify", "--suite", "bogus"])
            .status
            .code(),
        Some(2)
    );
    write(dir.path(), "typo.toml", "sed = 3\n");
    let typo = focklab(dir.path(), &["verify", "kernel", "--config", "typo.toml"]);
    assert_eq!(typo.status.code(), Some(2));
}

#[test]
fn kernel_suite_report_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let first = focklab(dir.path(), &["verify", "kernel", "--out", "a"]);
    assert_eq!(first.status.code(), Some(0));
    let second = focklab(dir.path(), &["verify", "--suite", "kernel", "--out", "b"]);
    assert_eq!(second.status.code(), Some(0));
    let a = std::fs::read(dir.path().join("a.json")).unwrap();
    assert_eq!(a, std::fs::read(dir.path().join("b.json")).unwrap());
    assert_eq!(
        std::fs::read(dir.path().join("a.txt")).unwrap(),
        std::fs::read(dir.path().join("b.txt")).unwrap()
    );
    let names: Vec<String> = json(&dir.path().join("a.json"))["records"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["name"].as_str().unwrap().to_string())
        .collect();
    assert!(names.contains(&"kernel.origin".to_string()));
    assert!(names.contains(&"kernel.order-zero".to_string()));
}

#[test]
fn failed_assertion_exits_one_and_names_the_record() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "strict.toml", "basis_tolerance = 1e-20\n");
    let out = focklab(
        dir.path(),
        &[
            "verify",
            "kernel",
            "--config",
            "strict.toml",
            "--out",
            "strict",
        ],
    );
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("failed: kernel.series-closed-form"));
    assert_eq!(json(&dir.path().join("strict.json"))["pass"], false);
}
