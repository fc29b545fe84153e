//! Command-line surface. Exit codes: 0 pass, 1 verification mismatch,
//! 2 invalid input.

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::construction::validate_params;
use crate::field::{make_field, prime_power, MAX_FIELD_ORDER};
use crate::output::{render_text, to_csv, write_json_line, OutputRecord, TableRecord};
use crate::verify::{
    enumerate_params, reproduce_table, verify_construction, CaseFilter, OracleMode, RowStatus,
    Status, TableOptions,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "eaqmds",
    version,
    about = "Construct and verify EAQMDS codes from GRS codes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Verify a single construction (q, a, b).
    Verify {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        a: u64,
        #[arg(long)]
        b: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long, value_enum, default_value_t = OracleArg::Auto)]
        oracle: OracleArg,
    },
    /// Verify every valid construction with q up to a bound.
    Enumerate {
        #[arg(long)]
        max_q: u64,
        #[arg(long = "case", value_enum, default_value_t = CaseArg::Both)]
        case: CaseArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long, value_enum, default_value_t = OracleArg::Off)]
        oracle: OracleArg,
    },
    /// Reproduce a published parameter table (2 or 4).
    Table {
        #[arg(long)]
        id: u8,
        /// Also run rows with q > 19.
        #[arg(long)]
        include_slow: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long, value_enum, default_value_t = OracleArg::Auto)]
        oracle: OracleArg,
    },
    /// Print the field description for GF(p^(2e)).
    Field {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        e: u32,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OracleArg {
    Auto,
    On,
    Off,
}

impl From<OracleArg> for OracleMode {
    fn from(o: OracleArg) -> Self {
        match o {
            OracleArg::Auto => OracleMode::Auto,
            OracleArg::On => OracleMode::On,
            OracleArg::Off => OracleMode::Off,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CaseArg {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
    Both,
}

impl From<CaseArg> for CaseFilter {
    fn from(c: CaseArg) -> Self {
        match c {
            CaseArg::One => CaseFilter::Odd,
            CaseArg::Two => CaseFilter::Even,
            CaseArg::Both => CaseFilter::Both,
        }
    }
}

/// Runs a parsed command, writing results to `out` and diagnostics to `err`.
pub fn run<O: Write + ?Sized, E: Write + ?Sized>(cli: Cli, out: &mut O, err: &mut E) -> i32 {
    let result = match cli.command {
        Command::Verify {
            q,
            a,
            b,
            seed,
            format,
            oracle,
        } => cmd_verify(q, a, b, seed, format, oracle.into(), out, err),
        Command::Enumerate {
            max_q,
            case,
            seed,
            format,
            oracle,
        } => cmd_enumerate(max_q, case.into(), seed, format, oracle.into(), out, err),
        Command::Table {
            id,
            include_slow,
            seed,
            format,
            oracle,
        } => cmd_table(id, include_slow, seed, format, oracle.into(), out, err),
        Command::Field { p, e } => cmd_field(p, e, out, err),
    };
    result.unwrap_or_else(|e| {
        let _ = writeln!(err, "error: {e}");
        EXIT_MISMATCH
    })
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_verify<O: Write + ?Sized, E: Write + ?Sized>(
    q: u64,
    a: u64,
    b: u64,
    seed: u64,
    format: Format,
    oracle: OracleMode,
    out: &mut O,
    err: &mut E,
) -> std::io::Result<i32> {
    let params = match validate_params(q, a, b) {
        Ok(p) => p,
        Err(e) => {
            writeln!(err, "invalid parameters (q={q}, a={a}, b={b}): {e}")?;
            return Ok(EXIT_INVALID);
        }
    };
    let report = match verify_construction(&params, seed, oracle) {
        Ok(r) => r,
        Err(e) => {
            writeln!(err, "verification failed: {e}")?;
            return Ok(EXIT_MISMATCH);
        }
    };
    match format {
        Format::Text => write!(out, "{}", render_text(&report))?,
        Format::Json => write_json_line(out, &OutputRecord::from(&report))?,
        Format::Csv => write!(out, "{}", csv_text(&[OutputRecord::from(&report)])?)?,
    }
    Ok(if report.overall == Status::Pass {
        EXIT_PASS
    } else {
        EXIT_MISMATCH
    })
}

fn csv_text<T: serde::Serialize>(records: &[T]) -> std::io::Result<String> {
    to_csv(records).map_err(std::io::Error::other)
}

pub fn cmd_enumerate<O: Write + ?Sized, E: Write + ?Sized>(
    max_q: u64,
    filter: CaseFilter,
    seed: u64,
    format: Format,
    oracle: OracleMode,
    out: &mut O,
    err: &mut E,
) -> std::io::Result<i32> {
    if (max_q as u128).pow(2) > MAX_FIELD_ORDER as u128 {
        writeln!(
            err,
            "max-q {max_q} exceeds the field guard (q^2 <= {MAX_FIELD_ORDER})"
        )?;
        return Ok(EXIT_INVALID);
    }
    let params = enumerate_params(max_q, filter);
    let results: Vec<_> = params
        .par_iter()
        .map(|p| (p, verify_construction(p, seed, oracle)))
        .collect();

    let mut records = Vec::new();
    let mut failed = 0usize;
    for (p, result) in &results {
        match result {
            Ok(report) => {
                if report.overall != Status::Pass {
                    failed += 1;
                }
                records.push(report);
            }
            Err(e) => {
                failed += 1;
                writeln!(err, "q={} a={} b={}: {e}", p.q, p.a, p.b)?;
            }
        }
    }
    let summary = format!(
        "enumerate max_q={max_q}: {} triples, {} pass, {} fail",
        results.len(),
        results.len() - failed,
        failed
    );
    match format {
        Format::Text => {
            writeln!(
                out,
                "{:>4} {:>4} {:>4} {:>4} {:>5} {:>6} {:>6}  overall",
                "q", "a", "b", "case", "n", "d_max", "c_top"
            )?;
            for r in &records {
                let p = &r.params;
                writeln!(
                    out,
                    "{:>4} {:>4} {:>4} {:>4} {:>5} {:>6} {:>6}  {}",
                    p.q,
                    p.a,
                    p.b,
                    p.case,
                    p.n,
                    p.d_max,
                    r.c_at_top(),
                    r.overall
                )?;
            }
            writeln!(out, "{summary}")?;
        }
        Format::Json => {
            for r in &records {
                write_json_line(out, &OutputRecord::from(*r))?;
            }
            writeln!(err, "{summary}")?;
        }
        Format::Csv => {
            let flat: Vec<OutputRecord> = records.iter().map(|r| OutputRecord::from(*r)).collect();
            write!(out, "{}", csv_text(&flat)?)?;
            writeln!(err, "{summary}")?;
        }
    }
    Ok(if failed == 0 {
        EXIT_PASS
    } else {
        EXIT_MISMATCH
    })
}

pub fn cmd_table<O: Write + ?Sized, E: Write + ?Sized>(
    id: u8,
    include_slow: bool,
    seed: u64,
    format: Format,
    oracle: OracleMode,
    out: &mut O,
    err: &mut E,
) -> std::io::Result<i32> {
    let options = TableOptions {
        include_slow,
        seed,
        mode: oracle,
    };
    let outcomes = match reproduce_table(id, options) {
        Ok(o) => o,
        // unknown table id or unreadable fixtures
        Err(e) => {
            writeln!(err, "{e}")?;
            return Ok(EXIT_INVALID);
        }
    };
    let records: Vec<TableRecord> = outcomes.iter().map(TableRecord::from).collect();
    let count = |s: RowStatus| records.iter().filter(|r| r.status == s).count();
    let (matched, mismatched, skipped) = (
        count(RowStatus::Match),
        count(RowStatus::Mismatch),
        count(RowStatus::Skipped),
    );
    let summary = format!(
        "table {id}: {} rows, {matched} match, {mismatched} mismatch, {skipped} skipped",
        records.len()
    );
    match format {
        Format::Text => {
            writeln!(
                out,
                "{:>4} {:>4} {:>4}  {:<22} {:<22} status",
                "q", "a", "b", "expected n/c/d_max", "computed n/c/d_max"
            )?;
            for r in &records {
                let computed = match (r.computed_n, r.computed_c, r.computed_d_max) {
                    (Some(n), Some(c), Some(d)) => format!("{n}/{c}/{d}"),
                    _ => "-".to_string(),
                };
                let expected = format!("{}/{}/{}", r.expected_n, r.expected_c, r.expected_d_max);
                write!(
                    out,
                    "{:>4} {:>4} {:>4}  {:<22} {:<22} {}",
                    r.q, r.a, r.b, expected, computed, r.status
                )?;
                if let Some(e) = &r.error {
                    write!(out, " ({e})")?;
                }
                writeln!(out)?;
            }
            writeln!(out, "{summary}")?;
        }
        Format::Json => {
            for r in &records {
                write_json_line(out, r)?;
            }
            writeln!(err, "{summary}")?;
        }
        Format::Csv => {
            write!(out, "{}", csv_text(&records)?)?;
            writeln!(err, "{summary}")?;
        }
    }
    Ok(if mismatched == 0 {
        EXIT_PASS
    } else {
        EXIT_MISMATCH
    })
}

pub fn cmd_field<O: Write + ?Sized, E: Write + ?Sized>(
    p: u64,
    e: u32,
    out: &mut O,
    err: &mut E,
) -> std::io::Result<i32> {
    match make_field(p, e) {
        Ok(f) => {
            write!(out, "{}", f.debug_dump())?;
            Ok(EXIT_PASS)
        }
        Err(error) => {
            let hint = prime_power(p)
                .filter(|&(_, k)| k > 1)
                .map_or(String::new(), |(base, k)| {
                    format!(" (did you mean --p {base} --e {}?)", k as u64 * e as u64)
                });
            writeln!(err, "{error}{hint}")?;
            Ok(EXIT_INVALID)
        }
    }
}
