//! Flat, line-oriented records for JSON and CSV output.
//!
//! List-valued fields are packed into strings so that the JSON object and
//! the CSV row carry exactly the same scalar fields in the same order.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::construction::SupportSet;
use crate::verify::{RowStatus, Status, TableOutcome, VerificationReport};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub q: u64,
    pub a: u64,
    pub b: u64,
    pub case: u8,
    pub t: u64,
    pub m: u64,
    pub n: u64,
    pub d_max: u64,
    pub c_claimed: u64,
    pub seed: u64,
    pub rho_attempts: u64,
    /// Element indices, `;`-separated.
    pub rho: String,
    pub phi: String,
    /// `i:j` pairs, `;`-separated.
    pub support_predicted: String,
    pub support_measured: String,
    pub support_brute_force: String,
    pub c_top: u64,
    /// `d:c:k_q:saturates` entries, `;`-separated.
    pub c_by_d: String,
    /// Distances where the measured c differs from b + 1.
    pub c_discrepancy_at: String,
    /// `name=status` entries, `;`-separated.
    pub oracles: String,
    pub passed: u64,
    pub failed: u64,
    pub skipped: u64,
    pub overall: Status,
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items
        .into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(";")
}

fn support_field(s: &SupportSet) -> String {
    join(s.pairs.iter().map(|p| format!("{}:{}", p.i, p.j)))
}

impl From<&VerificationReport> for OutputRecord {
    fn from(r: &VerificationReport) -> Self {
        let p = &r.params;
        OutputRecord {
            q: p.q,
            a: p.a,
            b: p.b,
            case: p.case.number(),
            t: p.t,
            m: p.m,
            n: p.n,
            d_max: p.d_max,
            c_claimed: p.c_claimed,
            seed: r.seed,
            rho_attempts: r.rho_attempts,
            rho: join(&r.rho),
            phi: join(&r.phi),
            support_predicted: support_field(&r.support_predicted),
            support_measured: support_field(&r.support_measured),
            support_brute_force: support_field(&r.support_brute_force),
            c_top: r.c_at_top(),
            c_by_d: join(
                r.c_by_d
                    .iter()
                    .map(|e| format!("{}:{}:{}:{}", e.d, e.c_measured, e.k_q, e.saturates_bound)),
            ),
            c_discrepancy_at: join(r.c_discrepancies()),
            oracles: join(
                r.oracle_results
                    .iter()
                    .map(|o| format!("{}={}", o.name, o.status)),
            ),
            passed: r.count(Status::Pass) as u64,
            failed: r.count(Status::Fail) as u64,
            skipped: r.count(Status::Skipped) as u64,
            overall: r.overall,
        }
    }
}

/// One fixture row with what the pipeline computed for it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRecord {
    pub table_id: u8,
    pub q: u64,
    pub a: u64,
    pub b: u64,
    pub expected_n: u64,
    pub expected_c: u64,
    pub expected_d_max: u64,
    pub computed_n: Option<u64>,
    pub computed_c: Option<u64>,
    pub computed_d_max: Option<u64>,
    pub overall: Option<Status>,
    pub status: RowStatus,
    pub error: Option<String>,
}

impl From<&TableOutcome> for TableRecord {
    fn from(o: &TableOutcome) -> Self {
        let row = &o.row;
        let report = o.report.as_ref();
        TableRecord {
            table_id: row.table_id,
            q: row.q,
            a: row.a,
            b: row.b,
            expected_n: row.n,
            expected_c: row.c,
            expected_d_max: row.d_max,
            computed_n: report.map(|r| r.params.n),
            computed_c: report.map(|r| r.c_at_top()),
            computed_d_max: report.map(|r| r.params.d_max),
            overall: report.map(|r| r.overall),
            status: o.status,
            error: o.error.clone(),
        }
    }
}

pub fn write_json_line<W: Write + ?Sized, T: Serialize>(
    out: &mut W,
    record: &T,
) -> std::io::Result<()> {
    serde_json::to_writer(&mut *out, record)?;
    writeln!(out)
}

/// CSV rows (with a header) for a sequence of records.
pub fn to_csv<T: Serialize>(records: &[T]) -> Result<String, csv::Error> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for r in records {
        writer.serialize(r)?;
    }
    let bytes = writer.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

pub fn from_csv<T: for<'de> Deserialize<'de>>(text: &str) -> Result<Vec<T>, csv::Error> {
    csv::Reader::from_reader(text.as_bytes())
        .deserialize()
        .collect()
}

/// Multi-line human-readable summary of a report.
pub fn render_text(r: &VerificationReport) -> String {
    let p = &r.params;
    let mut s = format!(
        "construction q={} a={} b={} case={} t={} m={} n={} d_max={} c_claimed={}\n",
        p.q, p.a, p.b, p.case, p.t, p.m, p.n, p.d_max, p.c_claimed
    );
    s += &format!(
        "rho = [{}] (phi = [{}], seed {}, {} sample(s))\n",
        r.rho
            .iter()
            .map(u32::to_string)
            .collect::<Vec<_>>()
            .join(", "),
        r.phi
            .iter()
            .map(u32::to_string)
            .collect::<Vec<_>>()
            .join(", "),
        r.seed,
        r.rho_attempts
    );
    s += &format!("support predicted   {}\n", r.support_predicted);
    s += &format!("support closed form {}\n", r.support_measured);
    s += &format!("support brute force {}\n", r.support_brute_force);
    s += "   d   c  c_claimed  parameters                 saturates\n";
    for e in &r.c_by_d {
        let code = format!("{e}");
        s += &format!(
            "{:>4}{:>4}{:>11}  {:<26} {}\n",
            e.d,
            e.c_measured,
            e.c_claimed,
            code,
            if e.saturates_bound { "yes" } else { "no" }
        );
    }
    let gaps = r.c_discrepancies();
    if !gaps.is_empty() {
        s += &format!(
            "note: measured c differs from b+1 = {} at d in {:?}\n",
            p.c_claimed, gaps
        );
    }
    s += "oracles:\n";
    for o in &r.oracle_results {
        s += &format!("  {:<8}{:<30}{}\n", o.status.to_string(), o.name, o.detail);
    }
    s += &format!("overall: {}\n", r.overall);
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::validate_params;
    use crate::verify::{verify_construction, OracleMode};

    fn sample() -> OutputRecord {
        let p = validate_params(5, 6, 1).unwrap();
        OutputRecord::from(&verify_construction(&p, 0, OracleMode::Auto).unwrap())
    }

    #[test]
    fn flattened_fields() {
        let rec = sample();
        assert_eq!(rec.c_by_d, "2:1:7:true;3:1:5:true;4:2:4:true");
        assert_eq!(rec.support_predicted, "0:0;2:2");
        assert_eq!(rec.c_discrepancy_at, "2;3");
        assert_eq!(rec.overall, Status::Pass);
    }

    #[test]
    fn json_and_csv_round_trip() {
        let rec = sample();
        let mut buf = Vec::new();
        write_json_line(&mut buf, &rec).unwrap();
        let back: OutputRecord = serde_json::from_slice(&buf).unwrap();
        assert_eq!(back, rec);
        let csv = to_csv(std::slice::from_ref(&rec)).unwrap();
        let rows: Vec<OutputRecord> = from_csv(&csv).unwrap();
        assert_eq!(rows, vec![rec]);
    }
}
