//! Report, table and plot-data writers.
//!
//! Numbers are written in shortest round-trip form so that reruns are
//! byte-identical.

use std::fs;
use std::path::{Path, PathBuf};

use rankone::sphere::FiberBasis;
use serde::Serialize;

use crate::error::CliError;

/// Shortest round-trip decimal; `NaN`, `inf`, `-inf` for non-finite values.
pub fn fmt_f64(v: f64) -> String {
    if v.is_finite() {
        ryu::Buffer::new().format_finite(v).to_string()
    } else if v.is_nan() {
        "NaN".into()
    } else if v > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.into())
    }
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Num(v) => fmt_f64(*v),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }
}

/// A CSV table with one header row.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: &str, header: &[&str]) -> Self {
        Self {
            name: name.into(),
            header: header.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn write(&self, path: &Path) -> Result<(), CliError> {
        let mut w = csv::Writer::from_path(path).map_err(|e| CliError::io(path, e))?;
        w.write_record(&self.header).map_err(|e| CliError::io(path, e))?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::render))
                .map_err(|e| CliError::io(path, e))?;
        }
        w.flush().map_err(|e| CliError::io(path, e))
    }
}

/// Everything a task produces.
#[derive(Debug, Clone, Default)]
pub struct Artifacts {
    pub tables: Vec<Table>,
    /// Two-column plot series.
    pub plots: Vec<Table>,
}

impl Artifacts {
    pub fn table(&mut self, t: Table) {
        self.tables.push(t);
    }

    pub fn plot(&mut self, name: &str, x: &str, y: &str, points: impl IntoIterator<Item = (f64, f64)>) {
        let mut t = Table::new(name, &[x, y]);
        for (a, b) in points {
            t.push(vec![a.into(), b.into()]);
        }
        self.plots.push(t);
    }
}

/// Writes `report.json`, `<table>.csv` and `plot_<name>.csv` into `dir`.
pub fn write_all<T: Serialize>(
    dir: &Path,
    report: &T,
    artifacts: &Artifacts,
    csv: bool,
    plots: bool,
) -> Result<Vec<PathBuf>, CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let mut written = Vec::new();
    let path = dir.join("report.json");
    let mut text = serde_json::to_string_pretty(report).map_err(|e| CliError::io(&path, e))?;
    text.push('\n');
    fs::write(&path, text).map_err(|e| CliError::io(&path, e))?;
    written.push(path);
    if csv {
        for t in &artifacts.tables {
            let path = dir.join(format!("{}.csv", t.name));
            t.write(&path)?;
            written.push(path);
        }
    }
    if plots {
        for t in &artifacts.plots {
            let path = dir.join(format!("plot_{}.csv", t.name));
            t.write(&path)?;
            written.push(path);
        }
    }
    Ok(written)
}

/// Reads a fiber-basis table.
///
/// Header row `weight,<l>:<k>,...`; each further row is one node with its
/// quadrature weight in the first column and the basis values after it.
pub fn read_fiber_table(path: &Path) -> Result<FiberBasis, CliError> {
    let mut r = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| CliError::io(path, e))?;
    let header = r.headers().map_err(|e| CliError::io(path, e))?.clone();
    if header.get(0).map(str::to_ascii_lowercase).as_deref() != Some("weight") {
        return Err(CliError::config("fiber_table", "first column must be `weight`"));
    }
    let modes = header
        .iter()
        .skip(1)
        .map(|h| {
            let (l, k) = h
                .split_once(':')
                .ok_or_else(|| CliError::config("fiber_table", format!("column {h:?} is not of the form l:k")))?;
            let parse = |s: &str| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| CliError::config("fiber_table", format!("column {h:?} is not of the form l:k")))
            };
            Ok((parse(l)?, parse(k)?))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let mut weights = Vec::new();
    let mut values = vec![Vec::new(); modes.len()];
    for (i, rec) in r.records().enumerate() {
        let rec = rec.map_err(|e| CliError::io(path, e))?;
        if rec.len() != modes.len() + 1 {
            return Err(CliError::config(
                "fiber_table",
                format!("row {} has {} columns", i + 1, rec.len()),
            ));
        }
        let nums = rec
            .iter()
            .map(|s| s.parse::<f64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| CliError::config("fiber_table", format!("row {}: {e}", i + 1)))?;
        weights.push(nums[0]);
        for (col, v) in values.iter_mut().zip(&nums[1..]) {
            col.push(*v);
        }
    }
    FiberBasis::from_table(weights, modes, values).map_err(|e| match e {
        rankone::Error::InvalidArgument { field, reason } => CliError::config(field, reason),
        other => CliError::config("fiber_table", other.to_string()),
    })
}

/// Reads a two-column numeric CSV with a header row.
pub fn read_pairs(path: &Path) -> Result<Vec<(f64, f64)>, CliError> {
    let mut r = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| CliError::io(path, e))?;
    let mut out = Vec::new();
    for (i, rec) in r.records().enumerate() {
        let rec = rec.map_err(|e| CliError::io(path, e))?;
        let get = |j: usize| -> Result<f64, CliError> {
            rec.get(j)
                .ok_or_else(|| CliError::config("input", format!("row {} needs two columns", i + 1)))?
                .parse::<f64>()
                .map_err(|e| CliError::config("input", format!("row {}: {e}", i + 1)))
        };
        out.push((get(0)?, get(1)?));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_format() {
        for v in [0.1, 1.0 / 3.0, 1e-300, -2.5e17, 0.0] {
            assert_eq!(fmt_f64(v).parse::<f64>().unwrap(), v);
        }
        assert_eq!(fmt_f64(f64::NAN), "NaN");
        assert_eq!(fmt_f64(f64::NEG_INFINITY), "-inf");
    }

    #[test]
    fn fiber_table_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("fiber.csv");
        std::fs::write(&path, "weight,0:1,1:1\n0.5,1,1\n0.5,1,-1\n").unwrap();
        let f = read_fiber_table(&path).unwrap();
        assert_eq!(f.modes(), &[(0, 1), (1, 1)]);
        std::fs::write(&path, "weight,0:1,1:1\n0.5,1,1\n0.5,1,0\n").unwrap();
        assert!(matches!(read_fiber_table(&path), Err(CliError::Config { .. })));
        std::fs::write(&path, "w,0:1\n1,1\n").unwrap();
        assert!(read_fiber_table(&path).is_err());
    }
}
