use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ainfty")).args(args).current_dir(crate_dir()).output().expect("binary runs")
}

struct Run {
    name: String,
    code: i32,
    args: Vec<String>,
}

fn runs() -> Vec<Run> {
    let text = std::fs::read_to_string(crate_dir().join("corpus/golden/runs.txt")).unwrap();
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let mut parts = l.splitn(3, '|');
            let name = parts.next().unwrap().to_string();
            let code = parts.next().unwrap().parse().unwrap();
            let args = parts.next().unwrap().split_whitespace().map(String::from).collect();
            Run { name, code, args }
        })
        .collect()
}

#[test]
fn golden_reports_match() {
    for r in runs() {
        let mut args: Vec<&str> = r.args.iter().map(String::as_str).collect();
        args.push("--json");
        let out = run(&args);
        assert_eq!(out.status.code(), Some(r.code), "{}: {}", r.name, String::from_utf8_lossy(&out.stderr));
        let golden = std::fs::read_to_string(crate_dir().join(format!("corpus/golden/{}.json", r.name))).unwrap();
        assert_eq!(String::from_utf8(out.stdout).unwrap(), golden, "{}", r.name);
    }
}

#[test]
fn golden_flag_writes_then_compares() {
    let dir = std::env::temp_dir().join(format!("ainfty-golden-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let g = dir.join("k.json");
    let _ = std::fs::remove_file(&g);
    let gs = g.to_str().unwrap();
    let first = run(&["check", "corpus/k-prime.json", "--golden", gs]);
    assert_eq!(first.status.code(), Some(0));
    assert!(g.exists());
    assert_eq!(run(&["check", "corpus/k-prime.json", "--golden", gs]).status.code(), Some(0));
    // a different report against the stored one
    let other = run(&["check", "corpus/k-prime.json", "--arity", "2", "--golden", gs]);
    assert_eq!(other.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&other.stderr).contains("golden mismatch"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn exit_codes() {
    let bad = run(&["check", "corpus/malformed.json"]);
    assert_eq!(bad.status.code(), Some(2));
    let err = String::from_utf8_lossy(&bad.stderr);
    assert!(err.contains("line 4"), "{err}");
    assert_eq!(run(&["check", "corpus/does-not-exist.json"]).status.code(), Some(2));
    assert_eq!(run(&["check", "corpus/k.json"]).status.code(), Some(2), "functors without --target");
    assert_eq!(run(&["nerve", "corpus/two-object-dg.json", "--cap", "10"]).status.code(), Some(3));
    assert_eq!(run(&["nerve", "corpus/k.json", "--field", "Q"]).status.code(), Some(3));
    assert_eq!(run(&["check", "corpus/k.json", "--field", "F4"]).status.code(), Some(2));
    let fail = run(&["check", "corpus/nonassociative.json"]);
    assert_eq!(fail.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&fail.stdout).contains("witness"));
}

#[test]
fn text_output_names_each_check() {
    let out = run(&["dk", "--zdelta", "1", "--field", "Q"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("degree 1: g00 - g01"), "{text}");
    assert!(text.contains("PASS normalized chains of the simplex"));
    let out = run(&["dk", "corpus/two-object-dg.json", "--cross", "1", "--from", "x", "--to", "y"]);
    assert!(String::from_utf8(out.stdout).unwrap().contains("solutions: 8"));
}

#[test]
fn reports_are_reproducible() {
    let a = run(&["dk", "--roundtrip", "--seed", "3", "--json"]);
    let b = run(&["dk", "--roundtrip", "--seed", "3", "--json"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(Path::new(&crate_dir().join("corpus/golden/runs.txt")).exists());
}
