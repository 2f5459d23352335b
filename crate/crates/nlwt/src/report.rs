//! Report serialization. JSON reports are an array of row objects; CSV
//! reports start with a `# schema_version=N` comment and carry the resolved
//! parameters as a compact JSON string in the last column.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use crate::bench::{BenchRow, REPORT_SCHEMA_VERSION};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReportFormat {
    Csv,
    #[default]
    Json,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            _ => Err(Error::Config(format!("unknown report format `{s}` (expected csv or json)"))),
        }
    }
}

impl fmt::Display for ReportFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReportFormat::Csv => "csv",
            ReportFormat::Json => "json",
        })
    }
}

pub const CSV_COLUMNS: [&str; 17] = [
    "schema_version",
    "kind",
    "record",
    "channel",
    "method",
    "snr_in_db",
    "realization",
    "seed",
    "snr_imp_db",
    "perfect",
    "mse",
    "prd_percent",
    "clean_power",
    "sigma",
    "runs",
    "runtime_ms",
    "params",
];

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn csv_fields(row: &BenchRow) -> Result<[String; 17]> {
    let params = match &row.params {
        Some(p) => serde_json::to_string(p)?,
        None => String::new(),
    };
    let kind = serde_json::to_value(row.kind)?;
    Ok([
        row.schema_version.to_string(),
        kind.as_str().unwrap_or_default().to_owned(),
        row.record.clone(),
        row.channel.clone(),
        row.method.to_string(),
        row.snr_in_db.to_string(),
        opt(row.realization),
        opt(row.seed),
        opt(row.snr_imp_db),
        row.perfect.to_string(),
        row.mse.to_string(),
        row.prd_percent.to_string(),
        row.clean_power.to_string(),
        row.sigma.to_string(),
        row.runs.to_string(),
        opt(row.runtime_ms),
        params,
    ])
}

pub fn write_report<W: Write>(mut out: W, rows: &[BenchRow], format: ReportFormat) -> Result<()> {
    let io_err = |e| Error::io("<report>", e);
    match format {
        ReportFormat::Json => {
            serde_json::to_writer_pretty(&mut out, rows)?;
            writeln!(out).map_err(io_err)?;
        }
        ReportFormat::Csv => {
            writeln!(out, "# schema_version={REPORT_SCHEMA_VERSION}").map_err(io_err)?;
            let mut w = csv::Writer::from_writer(&mut out);
            w.write_record(CSV_COLUMNS)?;
            for row in rows {
                w.write_record(csv_fields(row)?)?;
            }
            w.flush().map_err(io_err)?;
        }
    }
    Ok(())
}

pub fn report_to_string(rows: &[BenchRow], format: ReportFormat) -> Result<String> {
    let mut buf = Vec::new();
    write_report(&mut buf, rows, format)?;
    Ok(String::from_utf8(buf).expect("reports are UTF-8"))
}

pub fn parse_json_report(text: &str) -> Result<Vec<BenchRow>> {
    Ok(serde_json::from_str(text)?)
}
