use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::run::PointResult;

/// CSV column order.
pub const CSV_HEADER: [&str; 10] = [
    "sweep_name",
    "sweep_value",
    "scheme_pair",
    "noma_sim",
    "oma_sim",
    "esg_sim",
    "esg_analytic",
    "ci_halfwidth",
    "trials",
    "seed",
];

/// One CSV row. Simulation columns are empty in analytic-only runs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EsgRow {
    pub sweep_name: String,
    pub sweep_value: f64,
    pub scheme_pair: String,
    pub noma_sim: Option<f64>,
    pub oma_sim: Option<f64>,
    pub esg_sim: Option<f64>,
    pub esg_analytic: Option<f64>,
    pub ci_halfwidth: Option<f64>,
    pub trials: usize,
    pub seed: u64,
}

/// Rows plus the full per-point detail behind them.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct EsgReport {
    pub rows: Vec<EsgRow>,
    pub points: Vec<PointResult>,
}

impl EsgReport {
    pub fn extend(&mut self, other: EsgReport) {
        self.rows.extend(other.rows);
        self.points.extend(other.points);
    }
}

/// Writes the header and `rows`.
pub fn write_csv<W: Write>(rows: &[EsgRow], out: W) -> std::result::Result<(), csv::Error> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

/// Writes a CSV file; errors carry the path.
pub fn emit_csv(rows: &[EsgRow], path: &Path) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|source| Error::Io {
            path: dir.to_path_buf(),
            source,
        })?;
    }
    let file = std::fs::File::create(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    write_csv(rows, std::io::BufWriter::new(file)).map_err(|source| Error::Csv {
        path: path.to_path_buf(),
        source,
    })
}

/// Parses CSV text produced by [`write_csv`]; the header must match exactly.
pub fn parse_csv<R: Read>(input: R) -> std::result::Result<Vec<EsgRow>, String> {
    let mut r = csv::ReaderBuilder::new().has_headers(true).from_reader(input);
    let header = r.headers().map_err(|e| e.to_string())?.clone();
    if header.iter().ne(CSV_HEADER) {
        return Err(format!("unexpected header {:?}", header.iter().collect::<Vec<_>>()));
    }
    r.deserialize()
        .map(|row| row.map_err(|e| e.to_string()))
        .collect()
}

/// Reads a CSV file written by [`emit_csv`].
pub fn read_csv(path: &Path) -> Result<Vec<EsgRow>> {
    let file = std::fs::File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_csv(std::io::BufReader::new(file))
        .map_err(|msg| Error::Config(format!("{}: {msg}", path.display())))
}
