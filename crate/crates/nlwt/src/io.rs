//! Plain-text record format.
//!
//! ```text
//! # schema_version=1
//! # fs=360
//! time,MLII,V5
//! 0.000,-0.145,-0.065
//! ```
//!
//! Lines starting with `#` are comments; `# fs=<hz>` sets the sample rate. The
//! first non-comment line names the channels. A leading `time` column is
//! accepted and dropped.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use nlwt_core::Signal;

use crate::error::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq)]
pub struct Channel {
    pub name: String,
    pub samples: Vec<f64>,
}

/// Equal-length channels (leads) sampled at a common rate.
#[derive(Debug, Clone, PartialEq)]
pub struct RecordFile {
    pub channels: Vec<Channel>,
    pub sample_rate_hz: f64,
    pub source: PathBuf,
}

impl RecordFile {
    pub fn new(channels: Vec<Channel>, sample_rate_hz: f64, source: impl Into<PathBuf>) -> Result<Self> {
        if channels.is_empty() {
            return Err(Error::Config("record has no channels".into()));
        }
        if !(sample_rate_hz.is_finite() && sample_rate_hz > 0.0) {
            return Err(Error::Config(format!("invalid sample rate {sample_rate_hz}")));
        }
        let len = channels[0].samples.len();
        if let Some(c) = channels.iter().find(|c| c.samples.len() != len) {
            return Err(nlwt_core::Error::LengthMismatch { left: len, right: c.samples.len() }.into());
        }
        Ok(Self { channels, sample_rate_hz, source: source.into() })
    }

    /// Samples per channel.
    pub fn len(&self) -> usize {
        self.channels[0].samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// File stem of the source path, used as the record name in reports.
    pub fn name(&self) -> String {
        self.source
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| self.source.display().to_string())
    }

    pub fn channel(&self, name: &str) -> Option<&Channel> {
        self.channels.iter().find(|c| c.name == name)
    }

    pub fn signal(&self, index: usize) -> Result<Signal> {
        let c = &self.channels[index];
        Ok(Signal::new(c.samples.clone(), self.sample_rate_hz)?.with_label(c.name.clone()))
    }
}

fn comment_value<'a>(line: &'a str, key: &str) -> Option<&'a str> {
    let body = line.trim_start().strip_prefix('#')?.trim();
    let (k, v) = body.split_once('=')?;
    (k.trim() == key).then(|| v.trim())
}

/// Parses record text. `fs_override` takes precedence over the `# fs=` line.
pub fn parse_csv(text: &str, source: impl Into<PathBuf>, fs_override: Option<f64>) -> Result<RecordFile> {
    let path = source.into();
    let mut fs_line = None;
    for (i, line) in text.lines().enumerate() {
        if let Some(v) = comment_value(line, "fs") {
            let hz = v.parse::<f64>().ok().filter(|x| x.is_finite() && *x > 0.0).ok_or_else(|| Error::Parse {
                path: path.clone(),
                line: i as u64 + 1,
                column: 1,
                message: format!("invalid sample rate `{v}`"),
            })?;
            fs_line = Some(hz);
        }
    }
    let sample_rate_hz = fs_override.or(fs_line).ok_or_else(|| Error::MissingSampleRate { path: path.clone() })?;

    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let header = reader.headers()?.clone();
    let skip = usize::from(header.get(0).is_some_and(|h| h.eq_ignore_ascii_case("time")));
    let names: Vec<String> = header.iter().skip(skip).map(str::to_owned).collect();
    if names.is_empty() || names.iter().any(String::is_empty) {
        return Err(Error::Parse { path, line: 1, column: 1, message: "header must name every channel".into() });
    }

    let mut columns = vec![Vec::new(); names.len()];
    for row in reader.records() {
        let row = row?;
        let line = row.position().map_or(0, |p| p.line());
        if row.len() != header.len() {
            return Err(Error::RaggedRows { path, line, expected: header.len(), found: row.len() });
        }
        for (col, field) in row.iter().enumerate().skip(skip) {
            let v = field.parse::<f64>().ok().filter(|v| v.is_finite()).ok_or_else(|| Error::Parse {
                path: path.clone(),
                line,
                column: col + 1,
                message: format!("invalid sample `{field}`"),
            })?;
            columns[col - skip].push(v);
        }
    }
    let channels = names.into_iter().zip(columns).map(|(name, samples)| Channel { name, samples }).collect();
    RecordFile::new(channels, sample_rate_hz, path)
}

pub fn read_csv(path: impl AsRef<Path>, fs_override: Option<f64>) -> Result<RecordFile> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_csv(&text, path, fs_override)
}

/// Writes the record with shortest round-trip float formatting.
pub fn write_csv_to<W: Write>(mut out: W, record: &RecordFile) -> Result<()> {
    let io_err = |e| Error::io(&record.source, e);
    writeln!(out, "# schema_version={SCHEMA_VERSION}").map_err(io_err)?;
    writeln!(out, "# fs={}", record.sample_rate_hz).map_err(io_err)?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(record.channels.iter().map(|c| c.name.as_str()))?;
    let mut row = Vec::with_capacity(record.channels.len());
    for i in 0..record.len() {
        row.clear();
        row.extend(record.channels.iter().map(|c| c.samples[i].to_string()));
        w.write_record(&row)?;
    }
    w.flush().map_err(io_err)?;
    Ok(())
}

pub fn write_csv(path: impl AsRef<Path>, record: &RecordFile) -> Result<()> {
    let path = path.as_ref();
    let file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    write_csv_to(std::io::BufWriter::new(file), record)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_record() {
        let r = parse_csv("# fs=360\nMLII\n0.1\n0.2\n", "x.csv", None).unwrap();
        assert_eq!(r.channels.len(), 1);
        assert_eq!(r.channels[0].name, "MLII");
        assert_eq!(r.channels[0].samples, vec![0.1, 0.2]);
        assert_eq!(r.sample_rate_hz, 360.0);
        assert_eq!(r.name(), "x");
    }

    #[test]
    fn time_column_dropped_and_override() {
        let r = parse_csv("time, a ,b\n0,1,2\n0.1,3,4\n", "r", Some(500.0)).unwrap();
        assert_eq!(r.channels.iter().map(|c| c.name.as_str()).collect::<Vec<_>>(), ["a", "b"]);
        assert_eq!(r.channels[1].samples, vec![2.0, 4.0]);
        assert_eq!(r.sample_rate_hz, 500.0);
    }

    #[test]
    fn errors_carry_position() {
        match parse_csv("# fs=360\na,b\n1,2\n3\n", "r", None) {
            Err(Error::RaggedRows { line: 4, expected: 2, found: 1, .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse_csv("# fs=360\na,b\n1,2\n3,x\n", "r", None) {
            Err(Error::Parse { line: 4, column: 2, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_csv("a\n1\n", "r", None), Err(Error::MissingSampleRate { .. })));
        assert!(matches!(parse_csv("# fs=-1\na\n1\n", "r", None), Err(Error::Parse { line: 1, .. })));
    }
}
