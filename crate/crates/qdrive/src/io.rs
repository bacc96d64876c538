//! CSV and JSON time-series files, and the sampled-drive input format.
//!
//! Series CSV header (exact):
//!
//! ```text
//! t,rho00_re,rho00_im,rho01_re,rho01_im,rho10_re,rho10_im,rho11_re,rho11_im,purity,c_l1,c_frobenius
//! ```
//!
//! Floats are written with 17 significant digits, so reading a file back
//! reproduces every value bit for bit. Lines end with `\n`.

use std::io::{Read, Write};
use std::path::Path;

use qdrive_core::{Complex, Mat2, SampledDrive, Sample, TimeSeries};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const SERIES_HEADER: [&str; 12] = [
    "t", "rho00_re", "rho00_im", "rho01_re", "rho01_im", "rho10_re", "rho10_im", "rho11_re", "rho11_im", "purity",
    "c_l1", "c_frobenius",
];

pub const DRIVE_HEADER: [&str; 9] =
    ["t", "h00_re", "h00_im", "h01_re", "h01_im", "h10_re", "h10_im", "h11_re", "h11_im"];

/// One row of a series file.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesRecord {
    pub t: f64,
    pub rho00_re: f64,
    pub rho00_im: f64,
    pub rho01_re: f64,
    pub rho01_im: f64,
    pub rho10_re: f64,
    pub rho10_im: f64,
    pub rho11_re: f64,
    pub rho11_im: f64,
    pub purity: f64,
    pub c_l1: f64,
    pub c_frobenius: f64,
}

impl SeriesRecord {
    pub fn from_sample(s: &Sample) -> Self {
        let m = s.rho.matrix();
        SeriesRecord {
            t: s.t,
            rho00_re: m.a00.re,
            rho00_im: m.a00.im,
            rho01_re: m.a01.re,
            rho01_im: m.a01.im,
            rho10_re: m.a10.re,
            rho10_im: m.a10.im,
            rho11_re: m.a11.re,
            rho11_im: m.a11.im,
            purity: s.purity,
            c_l1: s.c_l1,
            c_frobenius: s.c_frob,
        }
    }

    pub fn values(&self) -> [f64; 12] {
        [
            self.t,
            self.rho00_re,
            self.rho00_im,
            self.rho01_re,
            self.rho01_im,
            self.rho10_re,
            self.rho10_im,
            self.rho11_re,
            self.rho11_im,
            self.purity,
            self.c_l1,
            self.c_frobenius,
        ]
    }

    fn from_values(v: [f64; 12]) -> Self {
        SeriesRecord {
            t: v[0],
            rho00_re: v[1],
            rho00_im: v[2],
            rho01_re: v[3],
            rho01_im: v[4],
            rho10_re: v[5],
            rho10_im: v[6],
            rho11_re: v[7],
            rho11_im: v[8],
            purity: v[9],
            c_l1: v[10],
            c_frobenius: v[11],
        }
    }

    pub fn matrix(&self) -> Mat2 {
        Mat2::new(
            Complex::new(self.rho00_re, self.rho00_im),
            Complex::new(self.rho01_re, self.rho01_im),
            Complex::new(self.rho10_re, self.rho10_im),
            Complex::new(self.rho11_re, self.rho11_im),
        )
    }
}

pub fn records(series: &TimeSeries) -> Vec<SeriesRecord> {
    series.iter().map(SeriesRecord::from_sample).collect()
}

/// 17 significant digits.
pub fn format_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn csv_writer<W: Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(w)
}

pub fn write_series_csv<W: Write>(w: W, rows: &[SeriesRecord]) -> Result<(), CliError> {
    let mut out = csv_writer(w);
    out.write_record(SERIES_HEADER)?;
    for r in rows {
        out.write_record(r.values().iter().map(|x| format_f64(*x)))?;
    }
    out.flush().map_err(|e| CliError::io("<csv output>", e))?;
    Ok(())
}

/// Reads a file written by [`write_series_csv`]; the header must match exactly.
pub fn read_series_csv<R: Read>(r: R) -> Result<Vec<SeriesRecord>, CliError> {
    let mut rdr = csv::Reader::from_reader(r);
    let header = rdr.headers()?.clone();
    if header.iter().ne(SERIES_HEADER.iter().copied()) {
        return Err(CliError::config(format!(
            "series csv: expected header {}, got {}",
            SERIES_HEADER.join(","),
            header.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut rows = Vec::new();
    for (line, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let mut v = [0.0; 12];
        for (i, field) in rec.iter().enumerate() {
            v[i] = parse_field(field, SERIES_HEADER[i], line + 2)?;
        }
        rows.push(SeriesRecord::from_values(v));
    }
    Ok(rows)
}

fn parse_field(field: &str, column: &str, line: usize) -> Result<f64, CliError> {
    field
        .trim()
        .parse::<f64>()
        .map_err(|_| CliError::config(format!("line {line}, column {column}: not a number: {field:?}")))
}

/// Reads `(t, ρ)` pairs from any CSV carrying `t` and the eight `rho*` columns;
/// other columns are ignored.
pub fn read_states_csv<R: Read>(r: R) -> Result<Vec<(f64, Mat2)>, CliError> {
    let mut rdr = csv::Reader::from_reader(r);
    let header = rdr.headers()?.clone();
    let cols = column_indices(&header, &SERIES_HEADER[..9])?;
    let mut out = Vec::new();
    for (line, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let v = pick(&rec, &cols, &SERIES_HEADER[..9], line + 2)?;
        out.push((v[0], matrix_from(&v[1..9])));
    }
    Ok(out)
}

/// Reads a sampled drive from a CSV with header
/// `t,h00_re,h00_im,h01_re,h01_im,h10_re,h10_im,h11_re,h11_im`.
pub fn read_drive_csv(path: &Path) -> Result<SampledDrive, CliError> {
    let file = std::fs::File::open(path).map_err(|e| CliError::io(path, e))?;
    let mut rdr = csv::Reader::from_reader(file);
    let header = rdr.headers()?.clone();
    let cols = column_indices(&header, &DRIVE_HEADER)?;
    let mut samples = Vec::new();
    for (line, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let v = pick(&rec, &cols, &DRIVE_HEADER, line + 2)?;
        samples.push((v[0], matrix_from(&v[1..9])));
    }
    SampledDrive::new(samples).map_err(|e| CliError::config(format!("{}: {e}", path.display())))
}

fn column_indices(header: &csv::StringRecord, names: &[&str]) -> Result<Vec<usize>, CliError> {
    names
        .iter()
        .map(|name| {
            header
                .iter()
                .position(|h| h.trim() == *name)
                .ok_or_else(|| CliError::config(format!("csv: missing column {name}")))
        })
        .collect()
}

fn pick(rec: &csv::StringRecord, cols: &[usize], names: &[&str], line: usize) -> Result<Vec<f64>, CliError> {
    cols.iter()
        .zip(names)
        .map(|(&i, name)| {
            let field = rec.get(i).ok_or_else(|| CliError::config(format!("line {line}: missing column {name}")))?;
            parse_field(field, name, line)
        })
        .collect()
}

fn matrix_from(v: &[f64]) -> Mat2 {
    Mat2::new(
        Complex::new(v[0], v[1]),
        Complex::new(v[2], v[3]),
        Complex::new(v[4], v[5]),
        Complex::new(v[6], v[7]),
    )
}

pub fn write_series_json<W: Write>(mut w: W, rows: &[SeriesRecord]) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut w, rows)?;
    w.write_all(b"\n").map_err(|e| CliError::io("<json output>", e))?;
    Ok(())
}

pub fn read_series_json<R: Read>(r: R) -> Result<Vec<SeriesRecord>, CliError> {
    Ok(serde_json::from_reader(r)?)
}
