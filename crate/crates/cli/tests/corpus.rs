//! Runs the binary over `corpus/` and compares reports with the stored goldens.
//! Set `GRADEDPROJ_BLESS=1` to rewrite the goldens.

use std::path::{Path, PathBuf};
use std::process::Command;

/// (input, command, expected exit code, stderr fragment for input errors)
const CASES: &[(&str, &str, i32, &str)] = &[
    ("p1", "check-relevance", 0, ""),
    ("p1", "potion-eq", 0, ""),
    ("p1", "magic2", 0, ""),
    ("p1", "magic4", 0, ""),
    ("p1", "atlas", 0, ""),
    ("p1", "functorial", 0, ""),
    ("p1", "closed-immersion", 0, ""),
    ("p1", "twist", 0, ""),
    ("p1", "negligible", 0, ""),
    ("p1_not_negligible", "negligible", 1, ""),
    ("weighted23", "check-relevance", 0, ""),
    ("weighted23", "magic2", 0, ""),
    ("weighted23", "twist", 0, ""),
    ("weighted23", "negligible", 2, ""),
    ("p1xp1", "check-relevance", 1, ""),
    ("p1xp1", "atlas", 0, ""),
    ("p1xp1", "product-check", 0, ""),
    ("parity", "check-relevance", 0, ""),
    ("crossing", "potion-eq", 0, ""),
    ("bad_inhomogeneous", "check-relevance", 3, "ring.ideal[1]"),
    ("dangling_member", "atlas", 3, "families[0].members[1]: unknown submonoid Z"),
];

fn corpus() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

fn run(input: &str, command: &str, report: &Path) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_gradedproj"))
        .arg(command)
        .arg("--input")
        .arg(corpus().join(format!("{input}.json")))
        .arg("--report")
        .arg(report)
        .arg("--quiet")
        .env_remove("GRADEDPROJ_SEED")
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stderr).into_owned())
}

#[test]
fn corpus_matches_goldens() {
    let bless = std::env::var_os("GRADEDPROJ_BLESS").is_some();
    let scratch = std::env::temp_dir().join(format!("gradedproj-corpus-{}", std::process::id()));
    std::fs::create_dir_all(&scratch).unwrap();
    let mut failures = Vec::new();
    for &(input, command, code, fragment) in CASES {
        let report = scratch.join(format!("{input}.{command}.json"));
        let _ = std::fs::remove_file(&report);
        let (got, stderr) = run(input, command, &report);
        if got != code {
            failures.push(format!("{input} {command}: exit {got}, expected {code}; {stderr}"));
            continue;
        }
        if code == 3 {
            if !stderr.contains(fragment) {
                failures.push(format!("{input} {command}: stderr {stderr:?} lacks {fragment:?}"));
            }
            continue;
        }
        let produced = std::fs::read_to_string(&report).expect("report written");
        let golden = corpus().join("golden").join(format!("{input}.{command}.json"));
        if bless {
            std::fs::create_dir_all(golden.parent().unwrap()).unwrap();
            std::fs::write(&golden, &produced).unwrap();
            continue;
        }
        match std::fs::read_to_string(&golden) {
            Ok(expected) if expected == produced => {}
            Ok(_) => failures.push(format!("{input} {command}: report differs from {}", golden.display())),
            Err(e) => failures.push(format!("{input} {command}: {}: {e}", golden.display())),
        }
    }
    let _ = std::fs::remove_dir_all(&scratch);
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn reports_are_reproducible_across_runs() {
    let scratch = std::env::temp_dir().join(format!("gradedproj-repro-{}", std::process::id()));
    std::fs::create_dir_all(&scratch).unwrap();
    let (a, b) = (scratch.join("a.json"), scratch.join("b.json"));
    run("p1xp1", "atlas", &a);
    run("p1xp1", "atlas", &b);
    let (a, b) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let _ = std::fs::remove_dir_all(&scratch);
    assert_eq!(a, b);
}

#[test]
fn seed_flag_is_recorded() {
    let scratch = std::env::temp_dir().join(format!("gradedproj-seed-{}", std::process::id()));
    std::fs::create_dir_all(&scratch).unwrap();
    let report = scratch.join("r.json");
    let out = Command::new(env!("CARGO_BIN_EXE_gradedproj"))
        .args(["magic2", "--quiet", "--seed", "7", "--input"])
        .arg(corpus().join("p1.json"))
        .arg("--report")
        .arg(&report)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    let _ = std::fs::remove_dir_all(&scratch);
    assert_eq!(value["seed"], 7);
}
