#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

pub const BIN: &str = env!("CARGO_BIN_EXE_changhee");

/// (golden file, arguments, expected exit status)
pub const GOLDEN_CASES: &[(&str, &[&str], i32)] = &[
    (
        "table_coeffs_3.json",
        &[
            "table",
            "coeffs",
            "--max",
            "3",
            "--method",
            "recurrence",
            "--format",
            "json",
        ],
        0,
    ),
    (
        "table_changhee_0.csv",
        &["table", "changhee", "--max", "0", "--format", "csv"],
        0,
    ),
    (
        "table_coeffs_12.json",
        &[
            "table",
            "coeffs",
            "--max",
            "12",
            "--method",
            "recurrence",
            "--format",
            "json",
        ],
        0,
    ),
    (
        "table_coeffs_12.json",
        &[
            "table", "coeffs", "--max", "12", "--method", "closed", "--format", "json",
        ],
        0,
    ),
    (
        "verify_thm22_1_1.json",
        &["verify", "thm22", "--n-max", "1", "--k-max", "1"],
        0,
    ),
    (
        "verify_all_0_0_4.json",
        &[
            "verify", "all", "--n-max", "0", "--k-max", "0", "--order", "4",
        ],
        0,
    ),
    (
        "verify_thm21_8_16.json",
        &["verify", "thm21", "--n-max", "8", "--order", "16"],
        0,
    ),
    (
        "expand_2F_1.json",
        &["expand", "2F", "--order", "1", "--format", "json"],
        0,
    ),
    ("expand_F_0.json", &["expand", "F", "--order", "0"], 0),
    (
        "expand_2F_2.json",
        &["expand", "2F", "--order", "2", "--format", "json"],
        0,
    ),
];

pub fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("golden")
        .join(name)
}

pub fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

/// Runs every golden case; with `UPDATE_GOLDEN=1` rewrites the files
/// instead of comparing. Returns one message per mismatch.
pub fn check_golden_cases() -> Vec<String> {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut problems = Vec::new();
    for (name, args, status) in GOLDEN_CASES {
        let out = run(args);
        if out.status.code() != Some(*status) {
            problems.push(format!(
                "{args:?}: exit {:?}, expected {status}",
                out.status.code()
            ));
        }
        let path = golden_path(name);
        if update {
            std::fs::write(&path, &out.stdout).expect("write golden");
            continue;
        }
        match std::fs::read(&path) {
            Ok(expected) if expected == out.stdout => {}
            Ok(_) => problems.push(format!("{args:?}: output differs from {name}")),
            Err(e) => problems.push(format!("{name}: {e}")),
        }
    }
    problems
}
