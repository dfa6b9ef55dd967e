mod common;

use changhee::Polynomial;
use common::{check_golden_cases, run};

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn golden_files() {
    let problems = check_golden_cases();
    assert!(problems.is_empty(), "{problems:#?}");
}

#[test]
fn output_is_repeatable() {
    for args in [
        &[
            "verify", "all", "--n-max", "3", "--k-max", "3", "--order", "6",
        ][..],
        &["table", "coeffs", "--max", "6", "--format", "latex"],
    ] {
        assert_eq!(run(args).stdout, run(args).stdout);
    }
}

#[test]
fn closed_and_recurrence_tables_are_byte_identical() {
    for format in ["csv", "json", "latex"] {
        let a = stdout(&[
            "table", "coeffs", "--max", "12", "--method", "closed", "--format", format,
        ]);
        let b = stdout(&[
            "table",
            "coeffs",
            "--max",
            "12",
            "--method",
            "recurrence",
            "--format",
            format,
        ]);
        assert_eq!(a, b, "{format}");
    }
}

#[test]
fn failing_suite_exits_nonzero() {
    let out = run(&[
        "verify",
        "thm22",
        "--n-max",
        "2",
        "--k-max",
        "2",
        "--variant",
        "printed",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    for check in report.as_array().unwrap() {
        if check["status"] == "fail" {
            assert!(check["witness"].is_object(), "{check}");
        }
    }
}

#[test]
fn usage_errors_exit_two_without_stdout() {
    for args in [
        &["table", "nope", "--max", "2"][..],
        &["table", "changhee", "--max", "2", "--format", "yaml"],
        &["table", "stirling2", "--max", "2", "--method", "closed"],
        &["verify", "all", "--n-max", "8", "--order", "9"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty());
        assert!(!out.stderr.is_empty());
    }
}

/// `\frac{p}{q}` -> `p/q`, `x^{d}` -> `x^d`.
fn latex_to_plain(s: &str) -> String {
    let mut out = String::new();
    let mut rest = s;
    while let Some(pos) = rest.find(['\\', '^']) {
        out.push_str(&rest[..pos]);
        if let Some(frac) = rest[pos..].strip_prefix("\\frac{") {
            let (num, tail) = frac.split_once("}{").unwrap();
            let (den, tail) = tail.split_once('}').unwrap();
            out.push_str(&format!("{num}/{den}"));
            rest = tail;
        } else {
            let exp = rest[pos..].strip_prefix("^{").unwrap();
            let (d, tail) = exp.split_once('}').unwrap();
            out.push_str(&format!("^{d}"));
            rest = tail;
        }
    }
    out.push_str(rest);
    out
}

fn parse_cells(cells: &[String]) -> Vec<Polynomial> {
    cells.iter().map(|c| c.parse().unwrap()).collect()
}

fn latex_array_rows(latex: &str) -> Vec<Vec<String>> {
    latex
        .lines()
        .skip(3)
        .filter(|l| !l.starts_with("\\end"))
        .map(|l| {
            l.trim_end_matches(" \\\\")
                .split(" & ")
                .skip(1)
                .map(latex_to_plain)
                .collect()
        })
        .collect()
}

#[test]
fn csv_json_latex_agree() {
    for family in ["coeffs", "stirling1", "stirling2"] {
        let max = 7;
        let m = max.to_string();
        let csv = stdout(&["table", family, "--max", &m, "--format", "csv"]);
        let json = stdout(&["table", family, "--max", &m, "--format", "json"]);
        let latex = stdout(&["table", family, "--max", &m, "--format", "latex"]);

        let from_csv: Vec<Vec<Polynomial>> = csv
            .lines()
            .map(|l| parse_cells(&l.split(',').map(str::to_string).collect::<Vec<_>>()))
            .collect();
        let from_json: Vec<Vec<Polynomial>> = serde_json::from_str::<Vec<Vec<String>>>(&json)
            .unwrap()
            .iter()
            .map(|r| parse_cells(r))
            .collect();
        let grid = latex_array_rows(&latex);
        let from_latex: Vec<Vec<Polynomial>> = (0..=max)
            .map(|n| {
                (0..=n)
                    .map(|k| {
                        // coefficient array is laid out with a_i(j) in row i, column j
                        let cell = if family == "coeffs" {
                            &grid[k][n]
                        } else {
                            &grid[n][k]
                        };
                        cell.parse().unwrap()
                    })
                    .collect()
            })
            .collect();
        assert_eq!(from_csv, from_json, "{family}");
        assert_eq!(from_csv, from_latex, "{family}");
    }

    for family in ["changhee", "euler"] {
        let csv = stdout(&["table", family, "--max", "9", "--format", "csv"]);
        let json = stdout(&["table", family, "--max", "9", "--format", "json"]);
        let latex = stdout(&["table", family, "--max", "9", "--format", "latex"]);
        let from_csv = parse_cells(&csv.lines().map(str::to_string).collect::<Vec<_>>());
        let from_json = parse_cells(&serde_json::from_str::<Vec<String>>(&json).unwrap());
        let from_latex = parse_cells(
            &latex
                .lines()
                .filter(|l| l.contains("&="))
                .map(|l| latex_to_plain(l.split("&= ").nth(1).unwrap().trim_end_matches(" \\\\")))
                .collect::<Vec<_>>(),
        );
        assert_eq!(from_csv.len(), 10);
        assert_eq!(from_csv, from_json, "{family}");
        assert_eq!(from_csv, from_latex, "{family}");
    }
}

#[test]
fn expansion_formats_agree() {
    let csv = stdout(&["expand", "F", "--order", "6", "--format", "csv"]);
    let json: serde_json::Value = serde_json::from_str(&stdout(&[
        "expand", "F", "--order", "6", "--format", "json",
    ]))
    .unwrap();
    assert_eq!(json["order"], 6);
    let from_json: Vec<String> = serde_json::from_value(json["coefficients"].clone()).unwrap();
    assert_eq!(csv.lines().collect::<Vec<_>>(), from_json);
}
