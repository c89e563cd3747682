//! CSV and JSON-lines exchange formats for measures and samples.

use std::fmt::Display;
use std::io::{BufRead, Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::Partition;

use super::measure::MeasureOnYn;

/// `partition_json,weight`, partitions in reverse lexicographic order.
pub fn write_measure_csv<W: Display, O: Write>(m: &MeasureOnYn<W>, out: O) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["partition_json", "weight"])?;
    for (p, x) in m.iter().rev() {
        w.write_record([p.to_json(), x.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

/// Reads weights back as strings, keyed by partition.
pub fn read_measure_csv<I: Read>(input: I) -> Result<Vec<(Partition, String)>> {
    let mut r = csv::Reader::from_reader(input);
    let headers = r.headers()?.clone();
    if headers.iter().collect::<Vec<_>>() != ["partition_json", "weight"] {
        return Err(Error::Parse(format!("unexpected measure header {headers:?}")));
    }
    let mut out = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        let p: Partition = serde_json::from_str(&rec[0])?;
        out.push((p, rec[1].to_string()));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleRecord {
    pub trial: u64,
    pub seed: u64,
    pub partition: Partition,
}

pub fn write_samples_jsonl<O: Write>(samples: &[SampleRecord], mut out: O) -> Result<()> {
    for s in samples {
        serde_json::to_writer(&mut out, s)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

pub fn read_samples_jsonl<I: BufRead>(input: I) -> Result<Vec<SampleRecord>> {
    let mut out = Vec::new();
    for line in input.lines() {
        let line = line?;
        if !line.trim().is_empty() {
            out.push(serde_json::from_str(&line)?);
        }
    }
    Ok(out)
}
