//! Flat-file formats: sample streams (CSV/JSONL), outcome records, labels,
//! calibration matrices and the TOML pipeline config.

mod config;

use std::io::{BufRead, Write};

use serde::Serialize;
use thiserror::Error;

use crate::features::Sample;
use crate::fis::Diagnostic;
use crate::pipeline::ValidationOutcome;

pub use config::{load_config, load_fis, ConfigFile, DetectorsFile};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("config: {0}")]
    Config(String),
    #[error("{path}: {}", .diagnostics.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    Fis { path: String, diagnostics: Vec<Diagnostic> },
}

impl IoError {
    fn parse(line: usize, message: impl Into<String>) -> Self {
        Self::Parse { line, message: message.into() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StreamFormat {
    Csv,
    Jsonl,
}

impl StreamFormat {
    /// `.jsonl`/`.json`/`.ndjson` are JSON lines; anything else is CSV.
    pub fn from_path(path: &std::path::Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some("jsonl" | "json" | "ndjson") => Self::Jsonl,
            _ => Self::Csv,
        }
    }
}

/// Streams samples from `timestamp,sensor_id,value` CSV (header optional)
/// or `{"timestamp":..,"sensor_id":..,"value":..}` lines. With no explicit
/// format the first non-blank character decides (`{` means JSONL).
pub struct SampleReader<R> {
    state: State<R>,
}

enum State<R> {
    Unsniffed(R, Option<StreamFormat>),
    Csv { reader: csv::Reader<R>, record: csv::StringRecord, skipped: usize },
    Jsonl { input: R, line: usize, buf: String },
    Done,
}

impl<R: BufRead> SampleReader<R> {
    pub fn new(input: R, format: Option<StreamFormat>) -> Self {
        Self { state: State::Unsniffed(input, format) }
    }

    /// Consumes leading blank lines and picks the format.
    fn start(mut input: R, format: Option<StreamFormat>) -> Result<State<R>, IoError> {
        let mut skipped = 0;
        let format = loop {
            let buf = input.fill_buf()?;
            if buf.is_empty() {
                break format.unwrap_or(StreamFormat::Csv);
            }
            match buf.iter().position(|b| !b.is_ascii_whitespace()) {
                Some(i) => {
                    let sniffed = if buf[i] == b'{' { StreamFormat::Jsonl } else { StreamFormat::Csv };
                    break format.unwrap_or(sniffed);
                }
                None => {
                    let n = buf.len();
                    skipped += buf.iter().filter(|&&b| b == b'\n').count();
                    input.consume(n);
                }
            }
        };
        Ok(match format {
            StreamFormat::Csv => {
                let reader = csv::ReaderBuilder::new()
                    .has_headers(false)
                    .flexible(true)
                    .trim(csv::Trim::All)
                    .from_reader(input);
                State::Csv { reader, record: csv::StringRecord::new(), skipped }
            }
            StreamFormat::Jsonl => State::Jsonl { input, line: skipped, buf: String::new() },
        })
    }
}

fn csv_sample(record: &csv::StringRecord, line: usize, first: bool) -> Result<Option<Sample>, IoError> {
    if record.len() != 3 {
        return Err(IoError::parse(line, format!("expected 3 fields (timestamp,sensor_id,value), got {}", record.len())));
    }
    if first && &record[0] == "timestamp" {
        return Ok(None);
    }
    let num = |s: &str, what: &str| {
        s.parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| IoError::parse(line, format!("{what} '{s}' is not a finite number")))
    };
    let timestamp = num(&record[0], "timestamp")?;
    let value = num(&record[2], "value")?;
    if record[1].is_empty() {
        return Err(IoError::parse(line, "empty sensor_id"));
    }
    Ok(Some(Sample::new(timestamp, &record[1], value)))
}

fn json_sample(text: &str, line: usize) -> Result<Sample, IoError> {
    let s: Sample = serde_json::from_str(text).map_err(|e| IoError::parse(line, e.to_string()))?;
    if !(s.timestamp.is_finite() && s.value.is_finite()) {
        return Err(IoError::parse(line, "timestamp and value must be finite"));
    }
    Ok(s)
}

impl<R: BufRead> Iterator for SampleReader<R> {
    type Item = Result<Sample, IoError>;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            match &mut self.state {
                State::Done => return None,
                State::Unsniffed(..) => {
                    let State::Unsniffed(input, format) = std::mem::replace(&mut self.state, State::Done) else {
                        unreachable!()
                    };
                    match Self::start(input, format) {
                        Ok(state) => self.state = state,
                        Err(e) => return Some(Err(e)),
                    }
                }
                State::Csv { reader, record, skipped } => {
                    let first = reader.position().record() == 0;
                    match reader.read_record(record) {
                        Ok(false) => return None,
                        Ok(true) => {
                            let line = *skipped + record.position().map_or(0, |p| p.line() as usize);
                            match csv_sample(record, line, first) {
                                Ok(Some(s)) => return Some(Ok(s)),
                                Ok(None) => continue,
                                Err(e) => return Some(Err(e)),
                            }
                        }
                        Err(e) => {
                            let line = *skipped + e.position().map_or(0, |p| p.line() as usize);
                            self.state = State::Done;
                            return Some(Err(IoError::parse(line, e.to_string())));
                        }
                    }
                }
                State::Jsonl { input, line, buf } => {
                    buf.clear();
                    match input.read_line(buf) {
                        Ok(0) => return None,
                        Ok(_) => {}
                        Err(e) => return Some(Err(e.into())),
                    }
                    *line += 1;
                    let text = buf.trim();
                    if !text.is_empty() {
                        return Some(json_sample(text, *line));
                    }
                }
            }
        }
    }
}

pub fn write_samples<W: Write>(mut w: W, samples: &[Sample], format: StreamFormat) -> std::io::Result<()> {
    match format {
        StreamFormat::Csv => {
            let mut out = csv::Writer::from_writer(&mut w);
            out.write_record(["timestamp", "sensor_id", "value"])?;
            for s in samples {
                out.write_record([s.timestamp.to_string().as_str(), &s.sensor_id, &s.value.to_string()])?;
            }
            out.flush()?;
        }
        StreamFormat::Jsonl => {
            for s in samples {
                write_json_line(&mut w, s)?;
            }
        }
    }
    w.flush()
}

pub fn write_json_line<W: Write, T: Serialize>(mut w: W, value: &T) -> std::io::Result<()> {
    serde_json::to_writer(&mut w, value)?;
    w.write_all(b"\n")
}

pub fn write_labels<W: Write>(mut w: W, labels: &[bool]) -> std::io::Result<()> {
    writeln!(w, "index,faulty")?;
    for (i, &l) in labels.iter().enumerate() {
        writeln!(w, "{i},{}", u8::from(l))?;
    }
    w.flush()
}

fn csv_records<R: BufRead>(input: R) -> impl Iterator<Item = Result<(usize, csv::StringRecord), IoError>> {
    csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(input)
        .into_records()
        .map(|r| {
            r.map(|rec| (rec.position().map_or(0, |p| p.line() as usize), rec)).map_err(|e| {
                let line = e.position().map_or(0, |p| p.line() as usize);
                IoError::parse(line, e.to_string())
            })
        })
}

/// `index,faulty` rows; indices must run 0, 1, 2, ... in order.
pub fn read_labels<R: BufRead>(input: R) -> Result<Vec<bool>, IoError> {
    let mut labels = Vec::new();
    for (i, rec) in csv_records(input).enumerate() {
        let (line, rec) = rec?;
        if i == 0 && rec.get(0) == Some("index") {
            continue;
        }
        if rec.len() != 2 {
            return Err(IoError::parse(line, "expected 'index,faulty'"));
        }
        let idx: usize = rec[0].parse().map_err(|_| IoError::parse(line, format!("bad index '{}'", &rec[0])))?;
        if idx != labels.len() {
            return Err(IoError::parse(line, format!("index {idx} out of sequence; expected {}", labels.len())));
        }
        let flag = match &rec[1] {
            "1" | "true" => true,
            "0" | "false" => false,
            other => return Err(IoError::parse(line, format!("faulty must be 0/1, got '{other}'"))),
        };
        labels.push(flag);
    }
    Ok(labels)
}

pub fn read_outcomes<R: BufRead>(input: R) -> Result<Vec<ValidationOutcome>, IoError> {
    let mut out = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(serde_json::from_str(&line).map_err(|e| IoError::parse(i + 1, e.to_string()))?);
    }
    Ok(out)
}

/// Numeric CSV, one row per time step. A non-numeric first row is a header.
pub fn read_matrix<R: BufRead>(input: R) -> Result<Vec<Vec<f64>>, IoError> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (i, rec) in csv_records(input).enumerate() {
        let (line, rec) = rec?;
        let parsed: Result<Vec<f64>, _> = rec.iter().map(str::parse::<f64>).collect();
        match parsed {
            Ok(row) if row.iter().all(|v| v.is_finite()) => {
                if let Some(first) = rows.first() {
                    if first.len() != row.len() {
                        return Err(IoError::parse(line, format!("expected {} columns, got {}", first.len(), row.len())));
                    }
                }
                rows.push(row);
            }
            _ if i == 0 => continue,
            _ => return Err(IoError::parse(line, "non-numeric value in calibration row")),
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_csv_and_jsonl() {
        let csv = "timestamp,sensor_id,value\n0,a,1.5\n\n1,b,2\n";
        let got: Vec<Sample> = SampleReader::new(csv.as_bytes(), None).collect::<Result<_, _>>().unwrap();
        assert_eq!(got, vec![Sample::new(0.0, "a", 1.5), Sample::new(1.0, "b", 2.0)]);
        let jsonl = "{\"timestamp\":0,\"sensor_id\":\"a\",\"value\":1.5}\n";
        let got: Vec<Sample> = SampleReader::new(jsonl.as_bytes(), None).collect::<Result<_, _>>().unwrap();
        assert_eq!(got, vec![Sample::new(0.0, "a", 1.5)]);
    }

    #[test]
    fn malformed_rows_cite_their_line() {
        let csv = "timestamp,sensor_id,value\n0,a,1\n1,a,oops\n";
        let err = SampleReader::new(csv.as_bytes(), None).collect::<Result<Vec<_>, _>>().unwrap_err();
        assert!(matches!(err, IoError::Parse { line: 3, .. }), "{err}");
        let err = SampleReader::new("0,a\n".as_bytes(), None).next().unwrap().unwrap_err();
        assert!(matches!(err, IoError::Parse { line: 1, .. }));
        let err = SampleReader::new("1,a,nan\n".as_bytes(), None).next().unwrap().unwrap_err();
        assert!(matches!(err, IoError::Parse { line: 1, .. }));
    }

    #[test]
    fn samples_round_trip_through_both_formats() {
        let samples = vec![Sample::new(0.0, "a", 0.1 + 0.2), Sample::new(0.5, "a", -3e-9)];
        for format in [StreamFormat::Csv, StreamFormat::Jsonl] {
            let mut buf = Vec::new();
            write_samples(&mut buf, &samples, format).unwrap();
            let back: Vec<Sample> = SampleReader::new(buf.as_slice(), None).collect::<Result<_, _>>().unwrap();
            assert_eq!(back, samples);
        }
    }

    #[test]
    fn labels_round_trip() {
        let labels = vec![false, true, true, false];
        let mut buf = Vec::new();
        write_labels(&mut buf, &labels).unwrap();
        assert_eq!(read_labels(buf.as_slice()).unwrap(), labels);
        assert!(read_labels("index,faulty\n1,0\n".as_bytes()).is_err());
    }

    #[test]
    fn matrix_skips_header() {
        let m = read_matrix("a,b\n1,2\n3,4\n".as_bytes()).unwrap();
        assert_eq!(m, vec![vec![1.0, 2.0], vec![3.0, 4.0]]);
        assert!(read_matrix("1,2\n3\n".as_bytes()).is_err());
    }
}
