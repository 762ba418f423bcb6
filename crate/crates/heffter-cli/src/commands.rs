//! Command implementations. Each returns the process exit code; hard
//! failures (I/O, parsing) surface as [`CliError`] and exit 1.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use heffter::dispatch::Verdict;
use heffter::search::{self, SearchConfig, SearchMode, SearchOutcome};
use heffter::{construct, coverage_table, StripOutcome};

use crate::format::{ArrayDocument, FormatError};

pub type ExitCode = u8;

pub const EXIT_OK: ExitCode = 0;
pub const EXIT_ERROR: ExitCode = 1;
pub const EXIT_NEGATIVE: ExitCode = 2;
pub const EXIT_UNDECIDED: ExitCode = 3;
pub const EXIT_OUT_OF_SCOPE: ExitCode = 4;

/// A failure that aborts the command with exit code 1.
#[derive(Debug)]
pub struct CliError(pub String);

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for CliError {}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        CliError(e.to_string())
    }
}

fn verdict_exit(verdict: Verdict) -> ExitCode {
    match verdict {
        Verdict::Exists => EXIT_OK,
        Verdict::DoesNotExist => EXIT_NEGATIVE,
        Verdict::Unknown => EXIT_UNDECIDED,
        Verdict::OutOfScope => EXIT_OUT_OF_SCOPE,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Grid,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum CoverageFormat {
    Table,
    Json,
}

pub fn cmd_generate(
    n: usize,
    k: usize,
    format: OutputFormat,
    out: Option<&Path>,
) -> Result<ExitCode, CliError> {
    match construct(n, k) {
        Ok(built) => {
            // unconditional gate: never write an array that fails verify
            let report = built.array.verify();
            if !report.is_valid() {
                return Err(CliError(format!(
                    "internal error: generated H({n};{k}) failed verification:\n{report}"
                )));
            }
            let doc = ArrayDocument::from_array(&built.array, Some(built.route.to_string()));
            let text = match format {
                OutputFormat::Grid => doc.to_grid(),
                OutputFormat::Json => doc.to_json(),
            };
            match out {
                Some(path) => fs::write(path, text)
                    .map_err(|e| CliError(format!("cannot write {}: {e}", path.display())))?,
                None => print!("{text}"),
            }
            Ok(EXIT_OK)
        }
        Err(status) => {
            println!("{}: {}", status.verdict, status.reason);
            Ok(verdict_exit(status.verdict))
        }
    }
}

pub fn cmd_verify(path: &PathBuf, shiftable: bool, strippable: bool) -> Result<ExitCode, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError(format!("cannot read {}: {e}", path.display())))?;
    let doc = ArrayDocument::parse_auto(&text)?;
    let array = doc.to_array()?;
    let report = array.verify();
    if !report.is_valid() {
        println!("invalid H({};{}):", array.n(), array.k());
        print!("{report}");
        return Ok(EXIT_NEGATIVE);
    }
    println!("valid H({};{})", array.n(), array.k());
    let mut failed = false;
    if shiftable {
        if array.is_shiftable() {
            println!("shiftable: every line balances positive and negative entries");
        } else {
            println!("not shiftable");
            failed = true;
        }
    }
    if strippable {
        match array.is_strippable() {
            Some(_) => println!("strippable: main diagonal is a primary transversal"),
            None => match array.find_primary_transversal(Some(1_000_000)) {
                StripOutcome::Found(t) => {
                    let cells: Vec<String> = t
                        .cells()
                        .iter()
                        .map(|&(r, c)| format!("({r},{c})"))
                        .collect();
                    println!("strippable via transversal {}", cells.join(" "));
                }
                StripOutcome::NotFound => {
                    println!("not strippable: no primary transversal exists");
                    failed = true;
                }
                StripOutcome::Inconclusive => {
                    println!("strippability undecided within the search budget");
                    failed = true;
                }
            },
        }
    }
    Ok(if failed { EXIT_NEGATIVE } else { EXIT_OK })
}

pub fn cmd_search(
    n: usize,
    k: usize,
    exhaust: bool,
    all: bool,
    budget: Option<u64>,
) -> Result<ExitCode, CliError> {
    let mode = if all {
        SearchMode::CountOnly
    } else if exhaust {
        SearchMode::ExhaustAll
    } else {
        SearchMode::FirstSolution
    };
    let mut config = SearchConfig::new(n, k, mode);
    config.node_budget = budget;
    let result = search::solve(&config);
    println!(
        "nodes explored: {}  solutions found: {}  elapsed: {:.3}s",
        result.nodes_explored,
        result.solutions_found,
        result.elapsed.as_secs_f64()
    );
    match result.outcome {
        SearchOutcome::Found(array) => {
            println!("Found");
            let doc = ArrayDocument::from_array(&array, Some("search".to_string()));
            print!("{}", doc.to_grid());
            Ok(EXIT_OK)
        }
        SearchOutcome::NoneExists => {
            println!("NoneExists");
            Ok(EXIT_NEGATIVE)
        }
        SearchOutcome::Inconclusive => {
            println!("Inconclusive");
            Ok(EXIT_UNDECIDED)
        }
    }
}

pub fn cmd_coverage(max_n: usize, format: CoverageFormat) -> Result<ExitCode, CliError> {
    if max_n < 3 {
        return Err(CliError("coverage needs --max-n of at least 3".to_string()));
    }
    let table = coverage_table(max_n);
    match format {
        CoverageFormat::Table => {
            let mut out = String::new();
            let _ = write!(out, "n\\k ");
            for k in 3..=max_n {
                let _ = write!(out, "{k:>3}");
            }
            let _ = writeln!(out);
            for n in 3..=max_n {
                let _ = write!(out, "{n:>3} ");
                for k in 3..=max_n {
                    let cell = match table.cell(n, k).verdict {
                        Verdict::Exists => 'E',
                        Verdict::DoesNotExist => '-',
                        Verdict::Unknown => '?',
                        Verdict::OutOfScope => '.',
                    };
                    let _ = write!(out, "{cell:>3}");
                }
                let _ = writeln!(out);
            }
            let counts = table.counts();
            let _ = writeln!(
                out,
                "exists: {}  does-not-exist: {}  unknown: {}  out-of-scope: {}",
                counts.exists, counts.does_not_exist, counts.unknown, counts.out_of_scope
            );
            print!("{out}");
        }
        CoverageFormat::Json => {
            let cells: Vec<serde_json::Value> = table
                .iter()
                .map(|(n, k, status)| {
                    serde_json::json!({
                        "n": n,
                        "k": k,
                        "verdict": status.verdict.to_string(),
                        "route": status.route.map(|r| r.to_string()),
                        "reason": status.reason,
                    })
                })
                .collect();
            let counts = table.counts();
            let doc = serde_json::json!({
                "max_n": max_n,
                "counts": {
                    "exists": counts.exists,
                    "does_not_exist": counts.does_not_exist,
                    "unknown": counts.unknown,
                    "out_of_scope": counts.out_of_scope,
                },
                "cells": cells,
            });
            println!("{doc}");
        }
    }
    Ok(EXIT_OK)
}
