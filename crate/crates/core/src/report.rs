//! Flat records for reports, written as JSON lines or CSV with a fixed
//! column order. Fractions are strings `p/q`.

use std::io::Write;
use std::str::FromStr;

use serde::Serialize;

use crate::rational::{format_big, format_frac};
use crate::testability::{CheckReport, TestReport};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    JsonLines,
    Csv,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Format> {
        match s {
            "jsonlines" | "jsonl" => Ok(Format::JsonLines),
            "csv" => Ok(Format::Csv),
            _ => Err(Error::Parse(format!("unknown format {s:?}, expected jsonlines or csv"))),
        }
    }
}

/// One output row. `kind` is `constant`, `inequality` or `note`.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Record {
    pub kind: String,
    pub name: String,
    pub instance: String,
    pub mode: String,
    pub lower: Option<String>,
    pub upper: Option<String>,
    pub lhs: Option<String>,
    pub relation: Option<String>,
    pub rhs: Option<String>,
    pub holds: Option<bool>,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub detail: String,
}

impl From<&TestReport> for Record {
    fn from(r: &TestReport) -> Record {
        Record {
            kind: "constant".into(),
            name: r.quantity.clone(),
            instance: r.instance.clone(),
            mode: r.mode.to_string(),
            lower: r.lower.as_ref().map(format_frac),
            upper: r.upper.as_ref().map(format_frac),
            seed: r.seed,
            samples: r.samples,
            ..Record::default()
        }
    }
}

/// One record per inequality, then one per note.
pub fn check_records(r: &CheckReport) -> Vec<Record> {
    let base = Record {
        name: r.check.clone(),
        instance: r.instance.clone(),
        mode: r.mode.to_string(),
        seed: r.seed,
        samples: r.samples,
        ..Record::default()
    };
    let mut out: Vec<Record> = r
        .inequalities
        .iter()
        .map(|i| Record {
            kind: "inequality".into(),
            lhs: Some(format_big(&i.lhs)),
            relation: Some(i.relation.to_string()),
            rhs: Some(format_big(&i.rhs)),
            holds: Some(i.holds),
            detail: i.label.clone(),
            ..base.clone()
        })
        .collect();
    out.extend(r.notes.iter().map(|(k, v)| Record { kind: "note".into(), detail: format!("{k}={v}"), ..base.clone() }));
    out
}

pub fn write_records<W: Write>(records: &[Record], format: Format, out: W) -> Result<()> {
    match format {
        Format::JsonLines => {
            let mut out = out;
            for r in records {
                serde_json::to_writer(&mut out, r).map_err(|e| Error::Io(e.into()))?;
                out.write_all(b"\n")?;
            }
            out.flush()?;
        }
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
            w.write_record(CSV_HEADER).map_err(csv_err)?;
            for r in records {
                w.serialize(r).map_err(csv_err)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

const CSV_HEADER: [&str; 13] = [
    "kind", "name", "instance", "mode", "lower", "upper", "lhs", "relation", "rhs", "holds", "seed", "samples",
    "detail",
];

fn csv_err(e: csv::Error) -> Error {
    Error::Io(std::io::Error::other(e.to_string()))
}

pub fn records_to_string(records: &[Record], format: Format) -> Result<String> {
    let mut buf = Vec::new();
    write_records(records, format, &mut buf)?;
    String::from_utf8(buf).map_err(|e| Error::Io(std::io::Error::other(e)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    #[test]
    fn empty_csv_has_header_and_empty_jsonl_is_empty() {
        assert_eq!(records_to_string(&[], Format::Csv).unwrap(), CSV_HEADER.join(",") + "\n");
        assert_eq!(records_to_string(&[], Format::JsonLines).unwrap(), "");
    }

    #[test]
    fn exact_record_renders_fraction() {
        let r = Record::from(&TestReport::exact("rho_r", "rep2 m=2", frac(1, 2)));
        let csv = records_to_string(std::slice::from_ref(&r), Format::Csv).unwrap();
        let rows: Vec<&str> = csv.lines().collect();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[1], "constant,rho_r,rep2 m=2,exact,1/2,1/2,,,,,,,");
        let json = records_to_string(&[r], Format::JsonLines).unwrap();
        assert!(json.starts_with("{\"kind\":\"constant\",\"name\":\"rho_r\""));
        assert!(json.contains("\"seed\":null"));
    }

    #[test]
    fn header_matches_fields() {
        let json = serde_json::to_value(Record::default()).unwrap();
        let keys: Vec<&String> = json.as_object().unwrap().keys().collect();
        let mut header: Vec<&str> = CSV_HEADER.to_vec();
        header.sort();
        let mut keys: Vec<&str> = keys.iter().map(|s| s.as_str()).collect();
        keys.sort();
        assert_eq!(keys, header);
    }
}
