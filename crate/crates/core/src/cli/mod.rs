// SPDX-License-Identifier: Apache-2.0

//! Command-line surface. [`run`] takes the argument list and returns the exit code
//! and the text for stdout and stderr, so the binary is only a printing shim.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 bad input, 3 the class group
//! exponent does not divide `k - 1` (or the discriminant admits no character at all).

pub mod tables;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::arith;
use crate::classgroup::FormClassGroup;
use crate::error::Error;
use crate::fieldsearch;
use crate::heckechar::HeckeChar;
use crate::newform::{calibrate_signs_in, coefficient_ap, q_expansion};
use crate::quadfield::QuadField;
use tables::{EmbeddedTable, TableRow};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_BAD_INPUT: i32 = 2;
pub const EXIT_EXPONENT: i32 = 3;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, msg: impl Into<String>) -> Self {
        let mut stderr = msg.into();
        stderr.push('\n');
        Self {
            code,
            stdout: String::new(),
            stderr,
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "cm-newforms",
    version,
    about = "CM newforms with rational coefficients"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TableName {
    Wt3,
    Wt4,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Class group of Q(sqrt(-D)): order, structure, exponent, reduced forms
    Classgroup {
        #[arg(long)]
        disc: u64,
    },
    /// q-expansion of the canonical CM newform of weight k for Q(sqrt(-D))
    Newform {
        #[arg(long)]
        disc: u64,
        #[arg(long)]
        weight: u32,
        /// One sign per even cyclic factor, e.g. "+-"
        #[arg(long, allow_hyphen_values = true, conflicts_with = "calibrate")]
        signs: Option<String>,
        #[arg(long, default_value_t = 100)]
        nmax: u64,
        /// Pick the signs that reproduce the embedded table row
        #[arg(long)]
        calibrate: bool,
        /// Print every a_n instead of the prime coefficients
        #[arg(long)]
        all: bool,
    },
    /// Check every row of an embedded table
    Verify {
        #[arg(long, value_enum)]
        table: TableName,
        /// Read rows from this file instead of the embedded copy
        #[arg(long)]
        table_file: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Fundamental discriminants whose class group exponent divides l
    Search {
        #[arg(long = "exponent-divides")]
        exponent_divides: u64,
        #[arg(long = "max-disc")]
        max_disc: u64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_BAD_INPUT,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome::ok(text)
            };
        }
    };
    match cli.command {
        Command::Classgroup { disc } => cmd_classgroup(disc),
        Command::Newform {
            disc,
            weight,
            signs,
            nmax,
            calibrate,
            all,
        } => cmd_newform(disc, weight, signs.as_deref(), nmax, calibrate, all),
        Command::Verify {
            table,
            table_file,
            jobs,
        } => cmd_verify(table, table_file, jobs),
        Command::Search {
            exponent_divides,
            max_disc,
            jobs,
        } => cmd_search(exponent_divides, max_disc, jobs),
    }
}

/// `C3`, `C2^4`, `C4 x C2`; empty for the trivial group.
pub fn structure_label(factors: &[u64]) -> String {
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < factors.len() {
        let j = factors[i..]
            .iter()
            .take_while(|&&n| n == factors[i])
            .count();
        parts.push(if j == 1 {
            format!("C{}", factors[i])
        } else {
            format!("C{}^{}", factors[i], j)
        });
        i += j;
    }
    parts.join(" x ")
}

fn cmd_classgroup(disc: u64) -> Outcome {
    let field = match QuadField::new(disc) {
        Ok(f) => f,
        Err(e) => return Outcome::fail(EXIT_BAD_INPUT, format!("error: {e}")),
    };
    let group = match FormClassGroup::build(field) {
        Ok(g) => g,
        Err(e) => return Outcome::fail(EXIT_BAD_INPUT, format!("error: {e}")),
    };
    let mut out = format!("h={}", group.class_number());
    let label = structure_label(&group.invariant_factors());
    if !label.is_empty() {
        out.push(' ');
        out.push_str(&label);
    }
    let _ = writeln!(out, "\nexponent={}", group.exponent());
    for f in group.reduced_forms() {
        let _ = writeln!(out, "{f}");
    }
    Outcome::ok(out)
}

fn parse_signs(s: &str) -> Option<Vec<i8>> {
    s.chars()
        .map(|c| match c {
            '+' => Some(1),
            '-' => Some(-1),
            _ => None,
        })
        .collect()
}

fn table_for_weight(weight: u32) -> Option<EmbeddedTable> {
    match weight {
        3 => Some(EmbeddedTable::weight3()),
        4 => Some(EmbeddedTable::weight4()),
        _ => None,
    }
}

fn cmd_newform(
    disc: u64,
    weight: u32,
    signs: Option<&str>,
    nmax: u64,
    calibrate: bool,
    all: bool,
) -> Outcome {
    if weight < 2 {
        return Outcome::fail(EXIT_BAD_INPUT, "error: weight must be at least 2");
    }
    if nmax == 0 {
        return Outcome::fail(EXIT_BAD_INPUT, "error: --nmax must be positive");
    }
    let l = weight - 1;
    let field = match QuadField::new(disc) {
        Ok(f) => f,
        Err(e) => return Outcome::fail(EXIT_EXPONENT, format!("error: {e}")),
    };
    let group = match FormClassGroup::build(field) {
        Ok(g) => Arc::new(g),
        Err(e) => return Outcome::fail(EXIT_BAD_INPUT, format!("error: {e}")),
    };
    if !(l as u64).is_multiple_of(group.exponent()) {
        return Outcome::fail(
            EXIT_EXPONENT,
            format!(
                "error: {}",
                Error::ExponentMismatch {
                    exponent: group.exponent(),
                    l
                }
            ),
        );
    }
    let psi = if calibrate {
        let Some(row) = table_for_weight(weight).and_then(|t| t.row(disc).cloned()) else {
            return Outcome::fail(
                EXIT_BAD_INPUT,
                format!("error: no table row for D={disc} in weight {weight}"),
            );
        };
        match calibrate_signs_in(group, l, &row.coefficients) {
            Ok(c) => c.character,
            Err(e) => return Outcome::fail(EXIT_MISMATCH, format!("error: {e}")),
        }
    } else {
        let signs = match signs.map(parse_signs) {
            None => Vec::new(),
            Some(Some(s)) => s,
            Some(None) => {
                return Outcome::fail(EXIT_BAD_INPUT, "error: --signs takes only '+' and '-'")
            }
        };
        match HeckeChar::canonical_in(group, l, &signs) {
            Ok(p) => p,
            Err(e) => return Outcome::fail(EXIT_BAD_INPUT, format!("error: {e}")),
        }
    };
    let nf = match q_expansion(&psi, nmax) {
        Ok(nf) => nf,
        Err(e) => return Outcome::fail(EXIT_BAD_INPUT, format!("error: {e}")),
    };
    let mut out = format!(
        "N={} k={} eps={} CM=-{}\n",
        nf.level, nf.weight, nf.nebentypus, disc
    );
    let indices: Vec<u64> = if all {
        (1..=nmax).collect()
    } else {
        arith::primes_up_to(nmax)
    };
    for n in indices {
        let _ = writeln!(out, "{n}\t{}", nf.a(n));
    }
    Outcome::ok(out)
}

struct RowReport {
    pass: bool,
    lines: Vec<String>,
}

fn verify_row(weight: u32, row: &TableRow) -> RowReport {
    let mut lines = Vec::new();
    let result = (|| -> crate::Result<RowReport> {
        let field = QuadField::new(row.delta)?;
        let group = Arc::new(FormClassGroup::build(field)?);
        let l = weight - 1;
        let psi = match calibrate_signs_in(group.clone(), l, &row.coefficients) {
            Ok(c) => c.character,
            // no sign vector fits: report against the all-plus character
            Err(Error::NoMatch) => HeckeChar::canonical_in(group, l, &[])?,
            Err(e) => return Err(e),
        };
        let mut pass = true;
        if psi.level() != row.level {
            pass = false;
            lines.push(format!(
                "  level={} expected level {} got {}",
                row.label,
                row.level,
                psi.level()
            ));
        }
        for &(p, expected) in &row.coefficients {
            let got = coefficient_ap(&psi, p)?;
            if got != expected {
                pass = false;
                lines.push(format!(
                    "  level={} p={} expected={} got={}",
                    row.label, p, expected, got
                ));
            }
        }
        Ok(RowReport {
            pass,
            lines: std::mem::take(&mut lines),
        })
    })();
    result.unwrap_or_else(|e| RowReport {
        pass: false,
        lines: vec![format!("  level={} error: {e}", row.label)],
    })
}

fn cmd_verify(table: TableName, file: Option<PathBuf>, jobs: usize) -> Outcome {
    let weight = match table {
        TableName::Wt3 => 3,
        TableName::Wt4 => 4,
    };
    let parsed = match file {
        Some(path) => match std::fs::read_to_string(&path) {
            Ok(text) => EmbeddedTable::parse(weight, &text),
            Err(e) => {
                return Outcome::fail(EXIT_BAD_INPUT, format!("error: {}: {e}", path.display()))
            }
        },
        None => Ok(table_for_weight(weight).expect("embedded table")),
    };
    let table = match parsed {
        Ok(t) => t,
        Err(e) => return Outcome::fail(EXIT_BAD_INPUT, format!("error: {e}")),
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool");
    let reports: Vec<RowReport> = pool.install(|| {
        table
            .rows
            .par_iter()
            .map(|r| verify_row(weight, r))
            .collect()
    });
    let mut out = String::new();
    let passed = reports.iter().filter(|r| r.pass).count();
    for (row, rep) in table.rows.iter().zip(&reports) {
        let _ = writeln!(
            out,
            "{}\t{}",
            row.label,
            if rep.pass { "PASS" } else { "FAIL" }
        );
        for line in &rep.lines {
            let _ = writeln!(out, "{line}");
        }
    }
    let total = table.rows.len();
    if passed == total {
        let _ = writeln!(out, "{passed}/{total} PASS");
        Outcome::ok(out)
    } else {
        let _ = writeln!(out, "{passed}/{total} PASS, {} FAIL", total - passed);
        Outcome {
            code: EXIT_MISMATCH,
            stdout: out,
            stderr: String::new(),
        }
    }
}

fn cmd_search(l: u64, bound: u64, jobs: usize) -> Outcome {
    if l == 0 {
        return Outcome::fail(EXIT_BAD_INPUT, "error: --exponent-divides must be positive");
    }
    let found = if jobs <= 1 {
        fieldsearch::search(l, bound)
    } else {
        fieldsearch::search_parallel(l, bound, jobs)
    };
    match found {
        Ok(list) => Outcome::ok(list.iter().map(|d| format!("{d}\n")).collect()),
        Err(e) => Outcome::fail(EXIT_BAD_INPUT, format!("error: {e}")),
    }
}
