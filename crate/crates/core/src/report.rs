//! CSV and JSON emission for campaign and baseline results.
//!
//! Every CDF file uses the same schema: header `p,sinr_dB`, then 999 rows
//! with p on the fixed 0.001 grid, so any two files compare row by row.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::fluid::{fluid_quantile_db, FluidParams};
use crate::montecarlo::{EmpiricalCdf, QuantileFn};

pub const CDF_CSV_HEADER: &str = "p,sinr_dB";

/// Quantile table on the fixed probability grid.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantileTable {
    pub rows: Vec<(f64, f64)>,
}

impl QuantileTable {
    pub fn from_empirical(cdf: &EmpiricalCdf) -> Self {
        let rows = (1..1000)
            .map(|k| {
                let p = k as f64 / 1000.0;
                (p, cdf.quantile_interp(p))
            })
            .collect();
        QuantileTable { rows }
    }

    pub fn from_fluid(params: &FluidParams, modified: bool) -> Result<Self> {
        let rows = (1..1000)
            .map(|k| {
                let p = k as f64 / 1000.0;
                fluid_quantile_db(p, params, modified).map(|q| (p, q))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(QuantileTable { rows })
    }
}

impl QuantileFn for QuantileTable {
    /// Linear interpolation between grid rows.
    fn quantile_db(&self, p: f64) -> f64 {
        let rows = &self.rows;
        if p <= rows[0].0 {
            return rows[0].1;
        }
        if p >= rows[rows.len() - 1].0 {
            return rows[rows.len() - 1].1;
        }
        let idx = rows.partition_point(|&(gp, _)| gp < p);
        let (p1, q1) = rows[idx - 1];
        let (p2, q2) = rows[idx];
        if p2 == p1 {
            return q1;
        }
        q1 + (p - p1) / (p2 - p1) * (q2 - q1)
    }
}

pub fn write_cdf_csv(path: &Path, table: &QuantileTable) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(w, "{CDF_CSV_HEADER}")?;
    for &(p, q) in &table.rows {
        writeln!(w, "{p:.3},{q:.6}")?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_cdf_csv(path: &Path) -> Result<QuantileTable> {
    let malformed = |reason: &str| Error::MalformedCsv {
        path: path.display().to_string(),
        reason: reason.to_string(),
    };
    let reader = BufReader::new(File::open(path)?);
    let mut lines = reader.lines();
    let header = lines
        .next()
        .ok_or_else(|| malformed("empty file"))??;
    if header.trim() != CDF_CSV_HEADER {
        return Err(malformed(&format!(
            "expected header `{CDF_CSV_HEADER}`, got `{header}`"
        )));
    }
    let mut rows = Vec::new();
    let mut prev_p = 0.0;
    for line in lines {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let mut parts = line.splitn(2, ',');
        let p: f64 = parts
            .next()
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| malformed(&format!("bad probability in `{line}`")))?;
        let q: f64 = parts
            .next()
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| malformed(&format!("bad quantile in `{line}`")))?;
        if !(p > 0.0 && p < 1.0) {
            return Err(malformed(&format!("probability {p} outside (0, 1)")));
        }
        if p <= prev_p {
            return Err(malformed("probability column must be increasing"));
        }
        if !q.is_finite() {
            return Err(malformed(&format!("non-finite quantile {q}")));
        }
        prev_p = p;
        rows.push((p, q));
    }
    if rows.is_empty() {
        return Err(malformed("no data rows"));
    }
    Ok(QuantileTable { rows })
}

/// Serializes a value as pretty JSON with a trailing newline.
pub fn write_json<T: serde::Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| Error::Numerics(format!("JSON serialization failed: {e}")))?;
    writeln!(w, "{text}")?;
    w.flush()?;
    Ok(())
}
