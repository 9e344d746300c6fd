#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

/// One CLI invocation with its expected exit code. Stdout is compared
/// against `tests/golden/<name>`.
pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub code: i32,
}

const fn case(name: &'static str, args: &'static [&'static str], code: i32) -> Case {
    Case { name, args, code }
}

pub const CASES: &[Case] = &[
    case("factor_boundary_1.txt", &["factor", "tests/fixtures/boundary_1.json"], 0),
    case("factor_empty_to_point.txt", &["factor", "tests/fixtures/empty_to_point.json"], 0),
    case("factor_fold.txt", &["factor", "tests/fixtures/fold.json"], 0),
    case("factor_boundary_2.txt", &["factor", "tests/fixtures/boundary_2.json"], 0),
    case("factor_identity_1.txt", &["factor", "tests/fixtures/identity_1.json"], 0),
    case("factor_boundary_1.json", &["factor", "tests/fixtures/boundary_1.json", "--format", "json"], 0),
    case("factor_empty_to_point.json", &["factor", "tests/fixtures/empty_to_point.json", "--format", "json"], 0),
    case("factor_fold.json", &["factor", "tests/fixtures/fold.json", "--format", "json"], 0),
    case("factor_boundary_2.json", &["factor", "tests/fixtures/boundary_2.json", "--format", "json"], 0),
    case("factor_identity_1.json", &["factor", "tests/fixtures/identity_1.json", "--format", "json"], 0),
    case("check.txt", &["check"], 0),
    case("check_with_maps.json", &["check", "tests/fixtures/boundary_1.json", "--seed", "7", "--format", "json"], 0),
    case("dot_trivial_edge.dot", &["export-dot", "tests/fixtures/trivial_edge.json"], 0),
    case("dot_empty.dot", &["export-dot", "tests/fixtures/empty_complex.json"], 0),
    case("dot_k_boundary_1.dot", &["export-dot", "tests/golden/factor_boundary_1.json"], 0),
    case("normalize_improper.json", &["normalize", "tests/fixtures/improper.json", "--format", "json"], 0),
    case("compose_loop.txt", &["compose", "tests/fixtures/canonical_0.json", "tests/fixtures/loop_on_point.json"], 0),
    case("pushout_collapse.json", &["pushout", "tests/fixtures/canonical_1.json", "tests/fixtures/collapse_ends.json", "--format", "json"], 0),
    case("lift_edge.txt", &["lift", "tests/fixtures/canonical_1.json", "tests/fixtures/fillers_edge.json", "tests/fixtures/lift_top.json", "tests/fixtures/lift_bottom.json"], 0),
    case("lift_corrupted.json", &["lift", "tests/fixtures/canonical_1.json", "tests/fixtures/fillers_corrupted.json", "tests/fixtures/lift_top.json", "tests/fixtures/lift_bottom.json"], 4),
    case("factor_cap_1.txt", &["factor", "tests/fixtures/boundary_1.json", "--cap", "1"], 3),
    case("factor_malformed.txt", &["factor", "tests/fixtures/malformed.json"], 2),
    case("factor_missing_file.txt", &["factor", "tests/fixtures/no_such_file.json"], 2),
    case("check_cap_1.txt", &["check", "--cap", "1"], 3),
];

pub fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

pub struct Run {
    pub code: i32,
    pub stdout: Vec<u8>,
    pub stderr: String,
}

pub fn cellcx(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_cellcx")).args(args).current_dir(crate_dir()).output().expect("binary runs");
    Run { code: out.status.code().unwrap_or(-1), stdout: out.stdout, stderr: String::from_utf8_lossy(&out.stderr).into_owned() }
}

pub fn golden_path(name: &str) -> PathBuf {
    crate_dir().join("tests/golden").join(name)
}

/// Runs a case twice and compares with its golden file. Set
/// `CELLCX_BLESS=1` to rewrite the golden files instead.
pub fn check_case(c: &Case) -> Result<(), String> {
    let first = cellcx(c.args);
    let second = cellcx(c.args);
    if first.code != c.code {
        return Err(format!("{}: exit {} (expected {}); stderr: {}", c.name, first.code, c.code, first.stderr));
    }
    if first.stdout != second.stdout || first.stderr != second.stderr || second.code != first.code {
        return Err(format!("{}: rerun differs", c.name));
    }
    let path = golden_path(c.name);
    if std::env::var_os("CELLCX_BLESS").is_some() {
        std::fs::write(&path, &first.stdout).map_err(|e| e.to_string())?;
        return Ok(());
    }
    let want = std::fs::read(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    if want != first.stdout {
        return Err(format!("{}: output differs from golden file\n{}", c.name, String::from_utf8_lossy(&first.stdout)));
    }
    Ok(())
}

pub fn read(path: impl AsRef<Path>) -> String {
    std::fs::read_to_string(crate_dir().join(path)).expect("readable file")
}
