//! Row types of the emitted files, their writers and readers.
//!
//! CSV files may start with `# key: value` comment lines; readers skip
//! comments, and [`read_comments`] recovers them.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use permqm::dynamics::TrajectoryTrace;
use permqm::exactnum::rational_to_f64;
use permqm::spectrum::EnergyHistogram;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::config::Format;
use crate::error::{CliError, CliResult};
use crate::experiment::Trial;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DominanceRow {
    pub trial: usize,
    pub n_vec: String,
    pub m_vec: String,
    pub orientation: String,
    pub prob_num: String,
    pub prob_den: String,
    pub prob_float: f64,
    pub baseline_float: f64,
    pub max_cycle: usize,
    /// `1/k`, or `none` for the identity.
    pub base_energy: String,
}

impl From<&Trial> for DominanceRow {
    fn from(t: &Trial) -> Self {
        let p = &t.dominance.probability;
        DominanceRow {
            trial: t.index,
            n_vec: t.n.to_string(),
            m_vec: t.m.to_string(),
            orientation: t.dominance.orientation.to_string(),
            prob_num: p.numer().to_string(),
            prob_den: p.denom().to_string(),
            prob_float: rational_to_f64(p),
            baseline_float: t.baseline,
            max_cycle: t.dominance.dominant.max_cycle_length(),
            base_energy: t.base.map_or_else(|| "none".to_string(), |b| b.to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceRow {
    pub t: u64,
    pub prob_num: String,
    pub prob_den: String,
    pub prob_float: f64,
}

pub fn trace_rows(trace: &TrajectoryTrace) -> Vec<TraceRow> {
    trace
        .times()
        .zip(&trace.probabilities)
        .map(|(t, p)| TraceRow {
            t,
            prob_num: p.numer().to_string(),
            prob_den: p.denom().to_string(),
            prob_float: rational_to_f64(p),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelRow {
    pub energy_num: String,
    pub energy_den: String,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseRow {
    pub base_num: u64,
    pub base_den: u64,
    pub count: u64,
}

pub fn level_rows(h: &EnergyHistogram) -> Vec<LevelRow> {
    h.levels()
        .iter()
        .map(|(e, n)| LevelRow {
            energy_num: e.numer().to_string(),
            energy_den: e.denom().to_string(),
            count: *n,
        })
        .collect()
}

/// Base energies ascending; identity samples are not listed.
pub fn base_rows(h: &EnergyHistogram) -> Vec<BaseRow> {
    h.base_energies()
        .map(|(b, n)| BaseRow {
            base_num: 1,
            base_den: b.max_cycle() as u64,
            count: n,
        })
        .collect()
}

/// Serializes `rows` as CSV (after `comments`) or as a JSON array.
pub fn write_rows<T: Serialize, W: Write>(
    out: W,
    rows: &[T],
    comments: &[(String, String)],
    format: Format,
) -> CliResult<()> {
    let mut out = BufWriter::new(out);
    let fail = |e: std::io::Error| CliError::Format(e.to_string());
    match format {
        Format::Csv => {
            for (k, v) in comments {
                writeln!(out, "# {k}: {v}").map_err(fail)?;
            }
            let mut w = csv::Writer::from_writer(&mut out);
            for r in rows {
                w.serialize(r)
                    .map_err(|e| CliError::Format(e.to_string()))?;
            }
            w.flush().map_err(fail)?;
        }
        Format::Json => {
            if comments.is_empty() {
                serde_json::to_writer_pretty(&mut out, rows)
            } else {
                let meta: serde_json::Map<String, serde_json::Value> = comments
                    .iter()
                    .map(|(k, v)| (k.clone(), serde_json::Value::String(v.clone())))
                    .collect();
                serde_json::to_writer_pretty(
                    &mut out,
                    &serde_json::json!({ "meta": meta, "rows": rows }),
                )
            }
            .map_err(|e| CliError::Format(e.to_string()))?;
            writeln!(out).map_err(fail)?;
        }
    }
    out.flush().map_err(fail)
}

pub fn write_rows_to<T: Serialize>(
    path: &Path,
    rows: &[T],
    comments: &[(String, String)],
    format: Format,
) -> CliResult<()> {
    let file = File::create(path).map_err(|e| CliError::io(path, e))?;
    write_rows(file, rows, comments, format).map_err(|e| match e {
        CliError::Format(msg) => CliError::io(path, std::io::Error::other(msg)),
        other => other,
    })
}

pub fn read_csv<T: DeserializeOwned, R: Read>(input: R) -> CliResult<Vec<T>> {
    csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(input)
        .deserialize()
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::Format(e.to_string()))
}

pub fn read_csv_file<T: DeserializeOwned>(path: &Path) -> CliResult<Vec<T>> {
    read_csv(File::open(path).map_err(|e| CliError::io(path, e))?)
}

/// Leading `# key: value` lines.
pub fn read_comments(path: &Path) -> CliResult<Vec<(String, String)>> {
    let file = File::open(path).map_err(|e| CliError::io(path, e))?;
    let mut out = Vec::new();
    for line in BufReader::new(file).lines() {
        let line = line.map_err(|e| CliError::io(path, e))?;
        let Some(rest) = line.strip_prefix('#') else {
            break;
        };
        if let Some((k, v)) = rest.split_once(':') {
            out.push((k.trim().to_string(), v.trim().to_string()));
        }
    }
    Ok(out)
}
