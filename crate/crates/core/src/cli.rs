//! Command-line front end: `table`, `verify` and `expand`.

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};

use crate::coeffs::CoeffTable;
use crate::poly::Polynomial;
use crate::sequences::{changhee_polys, euler_polys, stirling1, stirling2};
use crate::series::TruncatedSeries;
use crate::verify::{
    verify_changhee_expansion, verify_derivative_expansion, verify_derivative_shift,
    verify_gf_composition, verify_stirling, ExponentVariant, VerificationReport,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "changhee",
    version,
    about = "Exact Changhee/Euler polynomial tables and identity checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a sequence or triangle up to index `--max`.
    Table {
        family: Family,
        #[arg(long)]
        max: usize,
        /// Construction route for `coeffs`.
        #[arg(long)]
        method: Option<Method>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Run identity checks and print a JSON report; exits 1 if any check fails.
    Verify {
        suite: Suite,
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        #[arg(long, default_value_t = 8)]
        k_max: usize,
        #[arg(long, default_value_t = 16)]
        order: usize,
        /// Exponent variant compared against Ch_{k+N} (thm22 only).
        #[arg(long)]
        variant: Option<Variant>,
    },
    /// Print the coefficients of F(t,x) = (1+t)^x/(2+t) or of 2F.
    Expand {
        target: Target,
        #[arg(long)]
        order: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Changhee,
    Euler,
    Stirling1,
    Stirling2,
    Coeffs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Recurrence,
    Closed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Latex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    /// N-th derivative of F expanded over the coefficient table.
    Thm21,
    /// Ch_{k+N} rebuilt from the coefficient table.
    Thm22,
    Stirling,
    Shift,
    Composition,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Variant {
    Corrected,
    Printed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    #[value(name = "F")]
    F,
    #[value(name = "2F")]
    TwoF,
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(CliError::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_CHECK_FAILED
        }
    }
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Io(std::io::Error),
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::Io(e)
    }
}

impl From<crate::Error> for CliError {
    fn from(e: crate::Error) -> Self {
        Self::Usage(e.to_string())
    }
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::Table {
            family,
            max,
            method,
            format,
        } => {
            if method.is_some() && family != Family::Coeffs {
                return Err(CliError::Usage(
                    "--method only applies to the coeffs family".into(),
                ));
            }
            out.write_all(
                render_table(family, max, method.unwrap_or(Method::Recurrence), format).as_bytes(),
            )?;
            Ok(EXIT_OK)
        }
        Command::Verify {
            suite,
            n_max,
            k_max,
            order,
            variant,
        } => {
            if variant.is_some() && suite != Suite::Thm22 {
                return Err(CliError::Usage(
                    "--variant only applies to the thm22 suite".into(),
                ));
            }
            let runs = |s: Suite| suite == Suite::All || suite == s;
            if runs(Suite::Thm21) && order < n_max + 2 {
                return Err(CliError::Usage(format!(
                    "--order must be at least --n-max + 2 (got order={order}, n-max={n_max})"
                )));
            }
            if runs(Suite::Composition) && order < 2 {
                return Err(CliError::Usage(format!(
                    "--order must be at least 2, got {order}"
                )));
            }
            let variant = match variant {
                Some(Variant::Printed) => ExponentVariant::AsPrinted,
                _ => ExponentVariant::Corrected,
            };
            let mut report = VerificationReport::default();
            if runs(Suite::Thm21) {
                report.append(verify_derivative_expansion(n_max, order)?);
            }
            if runs(Suite::Thm22) {
                report.append(verify_changhee_expansion(k_max, n_max, variant));
            }
            if runs(Suite::Stirling) {
                report.append(verify_stirling(n_max));
            }
            if runs(Suite::Shift) {
                report.append(verify_derivative_shift(n_max, k_max));
            }
            if runs(Suite::Composition) {
                report.append(verify_gf_composition(order)?);
            }
            writeln!(out, "{}", report.to_json())?;
            err.write_all(report.summary().as_bytes())?;
            Ok(if report.all_passed() {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            })
        }
        Command::Expand {
            target,
            order,
            format,
        } => {
            let series = match target {
                Target::F => TruncatedSeries::changhee_f(order),
                Target::TwoF => TruncatedSeries::changhee_2f(order),
            };
            out.write_all(render_series(&series, target, format).as_bytes())?;
            Ok(EXIT_OK)
        }
    }
}

enum Cell {
    Int(num_bigint::BigInt),
    Poly(Polynomial),
}

impl Cell {
    fn plain(&self) -> String {
        match self {
            Cell::Int(n) => n.to_string(),
            Cell::Poly(p) => p.to_string(),
        }
    }

    fn latex(&self) -> String {
        match self {
            Cell::Int(n) => n.to_string(),
            Cell::Poly(p) => p.to_latex(),
        }
    }
}

fn render_table(family: Family, max: usize, method: Method, format: Format) -> String {
    let polys = |ps: Vec<Polynomial>| ps.into_iter().map(Cell::Poly).collect::<Vec<_>>();
    let triangle = |f: fn(usize, usize) -> num_bigint::BigInt| {
        (0..=max)
            .map(|n| (0..=n).map(|k| Cell::Int(f(n, k))).collect::<Vec<_>>())
            .collect::<Vec<_>>()
    };
    match family {
        Family::Changhee => render_sequence("Ch", &polys(changhee_polys(max)), format),
        Family::Euler => render_sequence("E", &polys(euler_polys(max)), format),
        Family::Stirling1 => render_triangle(&triangle(stirling1), format),
        Family::Stirling2 => render_triangle(&triangle(stirling2), format),
        Family::Coeffs => {
            let table = match method {
                Method::Recurrence => CoeffTable::recurrence(max),
                Method::Closed => CoeffTable::closed_form(max),
            };
            match format {
                Format::Latex => table.to_latex(),
                _ => {
                    let rows: Vec<Vec<Cell>> = table
                        .rows()
                        .iter()
                        .map(|r| r.iter().cloned().map(Cell::Poly).collect())
                        .collect();
                    render_triangle(&rows, format)
                }
            }
        }
    }
}

fn json_string_list(items: &[String]) -> String {
    serde_json::to_string(items).expect("strings serialize")
}

fn render_sequence(symbol: &str, cells: &[Cell], format: Format) -> String {
    match format {
        Format::Csv => cells.iter().map(|c| c.plain() + "\n").collect(),
        Format::Json => {
            let items: Vec<String> = cells.iter().map(Cell::plain).collect();
            serde_json::to_string_pretty(&items).expect("strings serialize") + "\n"
        }
        Format::Latex => {
            let lines: Vec<String> = cells
                .iter()
                .enumerate()
                .map(|(n, c)| format!("{symbol}_{{{n}}}(x) &= {}", c.latex()))
                .collect();
            format!(
                "\\begin{{align*}}\n{}\n\\end{{align*}}\n",
                lines.join(" \\\\\n")
            )
        }
    }
}

fn render_triangle(rows: &[Vec<Cell>], format: Format) -> String {
    match format {
        Format::Csv => rows
            .iter()
            .map(|r| r.iter().map(Cell::plain).collect::<Vec<_>>().join(",") + "\n")
            .collect(),
        Format::Json => {
            let lines: Vec<String> = rows
                .iter()
                .map(|r| {
                    format!(
                        "  {}",
                        json_string_list(&r.iter().map(Cell::plain).collect::<Vec<_>>())
                    )
                })
                .collect();
            format!("[\n{}\n]\n", lines.join(",\n"))
        }
        Format::Latex => {
            let width = rows.len();
            let mut out = format!("\\begin{{array}}{{c|{}}}\n", "c".repeat(width));
            let header: Vec<String> = (0..width).map(|k| k.to_string()).collect();
            out.push_str(&format!(" & {} \\\\\n\\hline\n", header.join(" & ")));
            for (n, r) in rows.iter().enumerate() {
                let cells: Vec<String> = (0..width)
                    .map(|k| r.get(k).map_or_else(|| "0".to_string(), Cell::latex))
                    .collect();
                out.push_str(&format!("{n} & {} \\\\\n", cells.join(" & ")));
            }
            out.push_str("\\end{array}\n");
            out
        }
    }
}

fn render_series(series: &TruncatedSeries, target: Target, format: Format) -> String {
    let symbol = match target {
        Target::F => "F",
        Target::TwoF => "2F",
    };
    match format {
        Format::Csv => series
            .coeffs()
            .iter()
            .map(|c| c.to_string() + "\n")
            .collect(),
        Format::Json => {
            #[derive(serde::Serialize)]
            struct Expansion {
                order: usize,
                coefficients: Vec<String>,
            }
            let value = Expansion {
                order: series.order(),
                coefficients: series.coeffs().iter().map(ToString::to_string).collect(),
            };
            serde_json::to_string_pretty(&value).expect("json serializes") + "\n"
        }
        Format::Latex => {
            let lines: Vec<String> = series
                .coeffs()
                .iter()
                .enumerate()
                .map(|(k, c)| format!("[t^{{{k}}}]\\,{symbol}(t,x) &= {}", c.to_latex()))
                .collect();
            format!(
                "\\begin{{align*}}\n{}\n\\end{{align*}}\n",
                lines.join(" \\\\\n")
            )
        }
    }
}
