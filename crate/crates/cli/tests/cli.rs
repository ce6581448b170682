use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn docmine(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_docmine"))
        .args(args)
        .output()
        .unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn mine_accounts_for_every_class() {
    let out = tempfile::tempdir().unwrap();
    let fx = fixtures();
    let r = docmine(&[
        "--config",
        p(&fx.join("docmine.toml")),
        "--out",
        p(out.path()),
        "mine",
        p(&fx.join("sklearn")),
    ]);
    assert_eq!(
        r.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&r.stderr)
    );
    let lib = out.path().join("sklearn");
    let classes = read_json(&lib.join("classes.json"));
    let names = |k: &str| -> Vec<String> {
        classes[k]
            .as_array()
            .unwrap()
            .iter()
            .map(|v| v.as_str().unwrap().to_string())
            .collect()
    };
    let (written, excluded, malformed) = (names("written"), names("excluded"), names("malformed"));
    assert_eq!(malformed, ["Truncated"]);
    assert!(excluded.contains(&"GradientBoostingClassifierCV".to_string()));
    for w in &written {
        assert!(lib.join(format!("{w}.json")).is_file());
        assert!(lib.join("plans").join(format!("{w}.json")).is_file());
        assert!(!excluded.contains(w) && !malformed.contains(w));
    }
    // every `class` statement in the fixture sources lands in exactly one bucket
    let mut all: Vec<String> = written
        .iter()
        .chain(&excluded)
        .chain(&malformed)
        .cloned()
        .collect();
    all.sort();
    let mut declared = Vec::new();
    for e in walkdir::WalkDir::new(fx.join("sklearn"))
        .into_iter()
        .filter_map(Result::ok)
    {
        if e.path().extension().is_some_and(|x| x == "py") {
            for line in std::fs::read_to_string(e.path()).unwrap().lines() {
                if let Some(rest) = line.strip_prefix("class ") {
                    declared.push(rest.split(['(', ':']).next().unwrap().trim().to_string());
                }
            }
        }
    }
    declared.sort();
    assert_eq!(all, declared);

    let diags = read_json(&lib.join("diagnostics.json"));
    let kinds: Vec<&str> = diags
        .as_array()
        .unwrap()
        .iter()
        .map(|d| d["kind"].as_str().unwrap())
        .collect();
    for k in [
        "parse_failure",
        "todo",
        "default_mismatch",
        "malformed_source",
        "non_representable_default",
    ] {
        assert!(kinds.contains(&k), "missing {k}");
    }
}

#[test]
fn mine_without_classes_exits_2() {
    let src = tempfile::tempdir().unwrap();
    std::fs::write(src.path().join("util.py"), "def f():\n    return 1\n").unwrap();
    let out = tempfile::tempdir().unwrap();
    let r = docmine(&["--out", p(out.path()), "mine", p(src.path())]);
    assert_eq!(r.status.code(), Some(2));
}

#[test]
fn config_errors_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.toml");
    std::fs::write(&cfg, "unknown_key = 1\n").unwrap();
    let r = docmine(&[
        "--config",
        p(&cfg),
        "--out",
        p(dir.path()),
        "mine",
        p(&fixtures().join("sklearn")),
    ]);
    assert_eq!(r.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&r.stderr).contains("unknown_key"));
    let r = docmine(&[
        "--config",
        p(&dir.path().join("missing.toml")),
        "mine",
        "x.py",
    ]);
    assert_eq!(r.status.code(), Some(1));
}

#[test]
fn refine_without_observations_keeps_raw_schema() {
    let fx = fixtures();
    let raw = tempfile::tempdir().unwrap();
    let refined = tempfile::tempdir().unwrap();
    let r = docmine(&[
        "--out",
        p(raw.path()),
        "mine",
        p(&fx.join("sklearn/linear_model/logistic.py")),
    ]);
    assert_eq!(r.status.code(), Some(0));
    let raw_dir = raw.path().join("library");
    let r = docmine(&[
        "--out",
        p(refined.path()),
        "--format",
        "json",
        "refine",
        p(&raw_dir),
    ]);
    assert_eq!(
        r.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&r.stderr)
    );
    let summary: Value = serde_json::from_slice(&r.stdout).unwrap();
    assert_eq!(
        summary["without_observations"],
        serde_json::json!(["LogisticRegression"])
    );
    let before = read_json(&raw_dir.join("LogisticRegression.json"));
    let after = read_json(&refined.path().join("LogisticRegression.json"));
    assert_eq!(
        before["hyperparams"]["allOf"][0]["properties"],
        after["hyperparams"]["allOf"][0]["properties"]
    );
}

#[test]
fn eval_reports_json_and_rejects_empty_curated() {
    let pair = fixtures().join("eval/unpaired");
    let r = docmine(&[
        "--format",
        "json",
        "eval",
        p(&pair.join("generated")),
        p(&pair.join("curated")),
    ]);
    assert_eq!(r.status.code(), Some(0));
    let report: Value = serde_json::from_slice(&r.stdout).unwrap();
    assert_eq!(report["unpaired_generated"], serde_json::json!(["Extra"]));
    assert_eq!(report["totals"]["defaults"]["precision"], 0.5);

    let table = docmine(&["eval", p(&pair.join("generated")), p(&pair.join("curated"))]);
    assert!(String::from_utf8_lossy(&table.stdout).contains("enum_values"));

    let empty = tempfile::tempdir().unwrap();
    let r = docmine(&["eval", p(&pair.join("generated")), p(empty.path())]);
    assert_eq!(r.status.code(), Some(1));
}

#[test]
fn plan_writes_only_plans() {
    let out = tempfile::tempdir().unwrap();
    let r = docmine(&[
        "--out",
        p(out.path()),
        "plan",
        p(&fixtures().join("sklearn/neural_network")),
    ]);
    assert_eq!(r.status.code(), Some(0));
    let lib = out.path().join("library");
    assert!(!lib.join("MLPClassifier.json").exists());
    let plan = read_json(&lib.join("plans/MLPClassifier.json"));
    assert_eq!(
        plan["class_path"],
        "neural_network.multilayer_perceptron.MLPClassifier"
    );
    assert_eq!(plan["dataset"]["task"], "classification");
    assert_eq!(plan["timeout"], 10.0);
}

#[test]
fn arbitrary_bytes_do_not_crash_mine() {
    let src = tempfile::tempdir().unwrap();
    std::fs::write(
        src.path().join("junk.py"),
        [0xff, 0xfe, b'c', b'l', b'a', b's', b's', b' ', 0x80, b':'],
    )
    .unwrap();
    std::fs::write(
        src.path().join("ok.py"),
        "class Ok:\n    \"\"\"Ok.\n\n    Parameters\n    ----------\n    a : int\n    \"\"\"\n",
    )
    .unwrap();
    let out = tempfile::tempdir().unwrap();
    let r = docmine(&["--out", p(out.path()), "mine", p(src.path())]);
    assert_eq!(r.status.code(), Some(0));
}
