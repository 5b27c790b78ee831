//! Byte-for-byte comparison of every subcommand's output against the files
//! in `tests/golden`. Run with `UPDATE_GOLDEN=1` to rewrite them.

mod common;

use std::path::PathBuf;

use common::{run, CORPUS};

fn golden_path(name: &str, ext: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(format!("{name}.{ext}"))
}

#[test]
fn outputs_match_golden_files() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut mismatches = Vec::new();
    for case in CORPUS {
        let out = run(case.args);
        assert_eq!(
            out.code, case.code,
            "{}: exit code, stderr: {}",
            case.name, out.stderr
        );
        let path = golden_path(case.name, case.ext);
        if update {
            std::fs::write(&path, &out.stdout).unwrap();
            continue;
        }
        let expected =
            std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        if expected != out.stdout {
            mismatches.push(case.name);
        }
    }
    assert!(
        mismatches.is_empty(),
        "outputs differ from golden files: {mismatches:?}"
    );
}

#[test]
fn repeated_runs_are_byte_identical() {
    for case in CORPUS {
        let a = run(case.args);
        let b = run(case.args);
        assert_eq!(a, b, "{}", case.name);
    }
}

#[test]
fn every_golden_file_belongs_to_the_corpus() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    for entry in std::fs::read_dir(dir).unwrap() {
        let name = entry.unwrap().file_name().into_string().unwrap();
        assert!(
            CORPUS
                .iter()
                .any(|c| format!("{}.{}", c.name, c.ext) == name),
            "stray golden file {name}"
        );
    }
}
