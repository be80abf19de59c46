//! The `octo-cr` command line.
//!
//! ```text
//! octo-cr table   [--format json|csv|markdown] [--diff-paper] [--out PATH]
//! octo-cr systems [--format json|csv|markdown] [--diff-paper] [--out PATH]
//! octo-cr verify  [SUITE] [--seed N] [--samples N] [--format ...] [--out PATH] [--timings]
//! ```
//!
//! Exit codes: `0` when every check passes (or the diff has no undocumented
//! mismatch), `1` when a check fails, `2` on usage, configuration or I/O
//! errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::algebra::structure_table;
use crate::algebra::table::{StructureTable, TableMismatch};
use crate::report::SuiteReport;
use crate::suites::{self, Suite, SuiteConfig, REAL_SYSTEM_ERRATA};
use crate::systems::{ComplexSystem, RealSystem, SystemMismatch};
use crate::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "octo-cr", version, about = "Octonion algebra and Cauchy-Riemann verification")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write the output here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    /// Base seed for every random draw.
    #[arg(long, global = true, env = "OCTO_CR_SEED", default_value_t = 0)]
    pub seed: u64,

    /// Sample count for every check of the selected suites.
    #[arg(long, global = true, value_name = "N")]
    pub samples: Option<usize>,

    /// Compare generated data with the checked-in transcriptions.
    #[arg(long, global = true)]
    pub diff_paper: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Emit the derived 8×8 multiplication table.
    Table,
    /// Emit the real 8×8 and complex 4×4 systems for left monogenicity.
    Systems,
    /// Run a verification suite and emit its report.
    Verify {
        #[arg(value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        /// Add per-check wall-clock times to the report.
        #[arg(long)]
        timings: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Markdown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Algebra,
    Forms,
    Systems,
    Solutions,
    Integral,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Algebra => Suite::Algebra,
            SuiteArg::Forms => Suite::Forms,
            SuiteArg::Systems => Suite::Systems,
            SuiteArg::Solutions => Suite::Solutions,
            SuiteArg::Integral => Suite::Integral,
            SuiteArg::All => Suite::All,
        }
    }
}

/// Output text plus the exit code it implies.
struct Emitted {
    text: String,
    code: i32,
}

/// Parse `args` (including the program name), run, and return the exit code.
pub fn main_with_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(rendered.as_bytes())
            } else {
                stdout.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    run(&cli, stdout, stderr)
}

pub fn run(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let emitted = match &cli.command {
        Command::Table => table(cli),
        Command::Systems => systems(cli),
        Command::Verify { suite, timings } => verify(cli, (*suite).into(), *timings, stderr),
    };
    let emitted = match emitted {
        Ok(e) => e,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let written = match &cli.out {
        Some(path) => fs::write(path, &emitted.text).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => stdout.write_all(emitted.text.as_bytes()).map_err(|e| format!("cannot write to stdout: {e}")),
    };
    match written {
        Ok(()) => emitted.code,
        Err(msg) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn csv_text(rows: impl FnOnce(&mut csv::Writer<Vec<u8>>) -> csv::Result<()>) -> crate::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    rows(&mut w).map_err(|e| Error::Domain(e.to_string()))?;
    let bytes = w.into_inner().map_err(|e| Error::Domain(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Domain(e.to_string()))
}

fn json_text<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output serializes");
    s.push('\n');
    s
}

fn table(cli: &Cli) -> crate::Result<Emitted> {
    let derived = structure_table();
    if cli.diff_paper {
        let diff = derived.diff(&StructureTable::published()?);
        let code = if diff.is_empty() { EXIT_OK } else { EXIT_FAILED };
        return Ok(Emitted { text: table_diff(&diff, cli.format)?, code });
    }
    let text = match cli.format {
        Format::Json => {
            let mut s = derived.to_json("e_row * e_col = sign * e_index, derived from the quaternion-pair product");
            s.push('\n');
            s
        }
        Format::Csv => csv_text(|w| {
            w.write_record(["row", "col", "sign", "index", "product"])?;
            for e in derived.entries() {
                let label = derived.get(e.row as usize, e.col as usize).label();
                w.write_record([e.row.to_string(), e.col.to_string(), e.sign.to_string(), e.index.to_string(), label])?;
            }
            Ok(())
        })?,
        Format::Markdown => table_markdown(derived),
    };
    Ok(Emitted { text, code: EXIT_OK })
}

fn basis_label(i: usize) -> String {
    if i == 0 {
        "1".into()
    } else {
        format!("e{i}")
    }
}

fn table_markdown(t: &StructureTable) -> String {
    let mut out = String::from("| · |");
    for j in 0..8 {
        out.push_str(&format!(" {} |", basis_label(j)));
    }
    out.push_str("\n|---|");
    out.push_str(&"---|".repeat(8));
    out.push('\n');
    for i in 0..8 {
        out.push_str(&format!("| **{}** |", basis_label(i)));
        for j in 0..8 {
            out.push_str(&format!(" {} |", t.get(i, j).label()));
        }
        out.push('\n');
    }
    out
}

fn table_diff(diff: &[TableMismatch], format: Format) -> crate::Result<String> {
    #[derive(Serialize)]
    struct Out<'a> {
        mismatches: &'a [TableMismatch],
        count: usize,
    }
    Ok(match format {
        Format::Json => json_text(&Out { mismatches: diff, count: diff.len() }),
        Format::Csv => csv_text(|w| {
            w.write_record(["row", "col", "derived", "transcribed"])?;
            for m in diff {
                w.write_record([m.row.to_string(), m.col.to_string(), m.expected.label(), m.found.label()])?;
            }
            Ok(())
        })?,
        Format::Markdown => {
            if diff.is_empty() {
                "No mismatches between the derived table and the transcription.\n".into()
            } else {
                let mut s = String::from("| row | col | derived | transcribed |\n|---|---|---|---|\n");
                for m in diff {
                    s.push_str(&format!("| {} | {} | {} | {} |\n", m.row, m.col, m.expected.label(), m.found.label()));
                }
                s
            }
        }
    })
}

#[derive(Serialize)]
struct RealOut {
    equations: Vec<String>,
    /// Row `k` holds the coefficient of `∂ᵢfⱼ` at index `8i + j`.
    coefficients: Vec<Vec<i8>>,
    rendering: Vec<String>,
}

#[derive(Serialize)]
struct ComplexOut {
    equations: Vec<String>,
    rendering: Vec<String>,
}

#[derive(Serialize)]
struct SystemsOut {
    real: RealOut,
    complex: ComplexOut,
}

#[derive(Serialize)]
struct MismatchOut<'a> {
    system: &'static str,
    #[serde(flatten)]
    mismatch: &'a SystemMismatch,
    documented: bool,
}

fn signed(sign: i8, label: String) -> String {
    format!("{}{label}", if sign < 0 { '-' } else { '+' })
}

fn systems(cli: &Cli) -> crate::Result<Emitted> {
    let real = RealSystem::generate();
    let complex = ComplexSystem::generate()?;
    if cli.diff_paper {
        let real_diff = real.diff(&RealSystem::published()?);
        let complex_diff = complex.diff(&ComplexSystem::published()?);
        let mut all: Vec<MismatchOut> = real_diff
            .iter()
            .map(|m| MismatchOut {
                system: "real",
                mismatch: m,
                documented: REAL_SYSTEM_ERRATA.contains(&(m.equation, m.term.as_str())),
            })
            .collect();
        all.extend(complex_diff.iter().map(|m| MismatchOut { system: "complex", mismatch: m, documented: false }));
        let code = if all.iter().all(|m| m.documented) { EXIT_OK } else { EXIT_FAILED };
        return Ok(Emitted { text: systems_diff(&all, cli.format)?, code });
    }
    let out = SystemsOut {
        real: RealOut {
            equations: real
                .equations
                .iter()
                .map(|eq| eq.iter().map(|t| signed(t.sign, t.label())).collect::<Vec<_>>().join(" "))
                .collect(),
            coefficients: real.coefficient_matrix().iter().map(|r| r.to_vec()).collect(),
            rendering: real.render().lines().map(String::from).collect(),
        },
        complex: ComplexOut {
            equations: complex
                .equations
                .iter()
                .map(|eq| eq.iter().map(|t| signed(t.sign, t.label())).collect::<Vec<_>>().join(" "))
                .collect(),
            rendering: complex.render().lines().map(String::from).collect(),
        },
    };
    let text = match cli.format {
        Format::Json => json_text(&out),
        Format::Csv => csv_text(|w| {
            w.write_record(["system", "equation", "sign", "term"])?;
            for (k, eq) in real.equations.iter().enumerate() {
                for t in eq {
                    w.write_record(["real".to_string(), k.to_string(), t.sign.to_string(), t.label()])?;
                }
            }
            for (k, eq) in complex.equations.iter().enumerate() {
                for t in eq {
                    w.write_record(["complex".to_string(), (k + 1).to_string(), t.sign.to_string(), t.label()])?;
                }
            }
            Ok(())
        })?,
        Format::Markdown => format!(
            "## Real system\n\nEquation k is the e_k component of the left operator.\n\n```text\n{}```\n\n## Complex system\n\n```text\n{}```\n",
            real.render(),
            complex.render()
        ),
    };
    Ok(Emitted { text, code: EXIT_OK })
}

fn systems_diff(all: &[MismatchOut], format: Format) -> crate::Result<String> {
    #[derive(Serialize)]
    struct Out<'a> {
        mismatches: &'a [MismatchOut<'a>],
        count: usize,
        undocumented: usize,
    }
    let undocumented = all.iter().filter(|m| !m.documented).count();
    Ok(match format {
        Format::Json => json_text(&Out { mismatches: all, count: all.len(), undocumented }),
        Format::Csv => csv_text(|w| {
            w.write_record(["system", "equation", "term", "generated", "transcribed", "documented"])?;
            for m in all {
                w.write_record([
                    m.system.to_string(),
                    m.mismatch.equation.to_string(),
                    m.mismatch.term.clone(),
                    m.mismatch.generated.to_string(),
                    m.mismatch.transcribed.to_string(),
                    m.documented.to_string(),
                ])?;
            }
            Ok(())
        })?,
        Format::Markdown => {
            let mut s = format!("{} mismatches, {undocumented} undocumented.\n", all.len());
            if !all.is_empty() {
                s.push_str("\n| system | equation | term | generated | transcribed | documented |\n|---|---|---|---|---|---|\n");
                for m in all {
                    s.push_str(&format!(
                        "| {} | {} | {} | {} | {} | {} |\n",
                        m.system,
                        m.mismatch.equation,
                        m.mismatch.term,
                        m.mismatch.generated,
                        m.mismatch.transcribed,
                        m.documented
                    ));
                }
            }
            s
        }
    })
}

fn verify(cli: &Cli, suite: Suite, timings: bool, stderr: &mut dyn Write) -> crate::Result<Emitted> {
    let config = SuiteConfig { seed: cli.seed, samples: cli.samples, timings };
    log::info!("running suite {suite} with seed {} and {:?}", cli.seed, config.sample_counts());
    let report = suites::run(suite, &config)?;
    for r in report.records.iter().filter(|r| !r.passed) {
        let _ = writeln!(
            stderr,
            "FAIL {}/{}: residual {:?} vs tolerance {:e}{}",
            r.suite,
            r.name,
            r.max_residual,
            r.tolerance,
            r.error.as_deref().map(|e| format!(" ({e})")).unwrap_or_default()
        );
    }
    let _ = writeln!(stderr, "{suite}: {}/{} checks passed", report.summary.passed, report.summary.total);
    let code = if report.all_passed() { EXIT_OK } else { EXIT_FAILED };
    let text = match cli.format {
        Format::Json => report.to_json(),
        Format::Csv => report_csv(&report)?,
        Format::Markdown => report_markdown(&report),
    };
    Ok(Emitted { text, code })
}

fn report_csv(report: &SuiteReport) -> crate::Result<String> {
    let timed = report.records.iter().any(|r| r.runtime_ms.is_some());
    csv_text(|w| {
        let mut header = vec!["suite", "name", "max_residual", "tolerance", "expectation", "passed", "detail", "error"];
        if timed {
            header.push("runtime_ms");
        }
        w.write_record(&header)?;
        for r in &report.records {
            let expectation = serde_json::to_value(r.expectation).expect("enum serializes");
            let mut row = vec![
                r.suite.clone(),
                r.name.clone(),
                r.max_residual.map(|v| v.to_string()).unwrap_or_default(),
                r.tolerance.to_string(),
                expectation.as_str().unwrap_or_default().to_string(),
                r.passed.to_string(),
                r.detail.clone().unwrap_or_default(),
                r.error.clone().unwrap_or_default(),
            ];
            if timed {
                row.push(r.runtime_ms.map(|v| format!("{v:.3}")).unwrap_or_default());
            }
            w.write_record(&row)?;
        }
        Ok(())
    })
}

fn report_markdown(report: &SuiteReport) -> String {
    let mut s = format!(
        "# Suite `{}`\n\nseed {}, {} algebraic / {} integral samples: {} of {} checks passed.\n\n| suite | check | max residual | tolerance | result |\n|---|---|---|---|---|\n",
        report.suite, report.seed, report.samples.algebraic, report.samples.integral, report.summary.passed, report.summary.total
    );
    for r in &report.records {
        let residual = r.max_residual.map(|v| format!("{v:.3e}")).unwrap_or_else(|| "error".into());
        let cmp = match r.expectation {
            crate::report::Expectation::AtMost => "≤ ",
            crate::report::Expectation::Above => "> ",
            crate::report::Expectation::Report => "info ",
        };
        s.push_str(&format!(
            "| {} | {} | {residual} | {cmp}{:e} | {} |\n",
            r.suite,
            r.name,
            r.tolerance,
            if r.passed { "pass" } else { "FAIL" }
        ));
    }
    s
}
