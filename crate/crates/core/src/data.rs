//! Benchmark datasets and CSV input/output.
//!
//! Datasets are plain CSV files (header row, comma separated, `.` decimal
//! separator) looked up in `$LONGMEM_DATA_DIR`, falling back to the `data/`
//! directory of this crate.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::{Error, Result, Series};

pub const DATA_DIR_ENV: &str = "LONGMEM_DATA_DIR";

/// Expected length of the Nile minima record (622–1284 AD).
pub const NILE_LEN: usize = 663;
pub const NILE_FIRST_YEAR: i64 = 622;

/// Pinned SHA-256 digests of the bundled files, hex encoded. `None` means the
/// file has not been committed yet and only its structure is validated.
pub const NILE_SHA256: Option<&str> = None;
pub const NHTEMP_SHA256: Option<&str> = None;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Column {
    pub name: String,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dataset {
    pub name: String,
    pub columns: Vec<Column>,
    pub source_note: String,
}

impl Dataset {
    pub fn len(&self) -> usize {
        self.columns.first().map_or(0, |c| c.values.len())
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn column(&self, name: &str) -> Result<&[f64]> {
        self.columns
            .iter()
            .find(|c| c.name == name)
            .map(|c| c.values.as_slice())
            .ok_or_else(|| Error::MissingColumn(name.to_string()))
    }

    /// The named column as a labelled series.
    pub fn series(&self, name: &str) -> Result<Series> {
        Ok(Series::new(self.column(name)?.to_vec())?.labelled(format!("{}.{name}", self.name)))
    }
}

/// Directory searched for bundled datasets.
pub fn data_dir() -> PathBuf {
    std::env::var_os(DATA_DIR_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("data"))
}

fn io_error(path: &Path, source: std::io::Error) -> Error {
    Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn csv_error(path: &Path, e: csv::Error) -> Error {
    let row = e.position().map_or(0, |p| p.line() as usize);
    match e.into_kind() {
        csv::ErrorKind::Io(source) => io_error(path, source),
        other => Error::Parse {
            row,
            reason: format!("{other:?}"),
        },
    }
}

fn reader(path: &Path) -> Result<csv::Reader<std::fs::File>> {
    let file = std::fs::File::open(path).map_err(|e| io_error(path, e))?;
    Ok(csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(file))
}

fn parse_cell(cell: &str, row: usize, column: &str) -> Result<f64> {
    if cell.is_empty() {
        return Err(Error::Parse {
            row,
            reason: format!("empty cell in column {column:?}"),
        });
    }
    let v: f64 = cell.parse().map_err(|_| Error::Parse {
        row,
        reason: format!("{cell:?} in column {column:?} is not a number"),
    })?;
    if !v.is_finite() {
        return Err(Error::Parse {
            row,
            reason: format!("non-finite value {cell:?} in column {column:?}"),
        });
    }
    Ok(v)
}

/// Reads one numeric column. Parse errors carry the 1-based data row
/// (the header is not counted).
pub fn load_csv(path: impl AsRef<Path>, column: &str) -> Result<Series> {
    let path = path.as_ref();
    let mut rdr = reader(path)?;
    let headers = rdr.headers().map_err(|e| csv_error(path, e))?.clone();
    let idx = headers
        .iter()
        .position(|h| h == column)
        .ok_or_else(|| Error::MissingColumn(column.to_string()))?;
    let mut values = Vec::new();
    for (i, record) in rdr.records().enumerate() {
        let record = record.map_err(|e| csv_error(path, e))?;
        let cell = record.get(idx).unwrap_or("");
        values.push(parse_cell(cell, i + 1, column)?);
    }
    if values.is_empty() {
        return Err(Error::Empty("CSV file has no data rows"));
    }
    Ok(Series::new(values)?.labelled(column))
}

/// Reads every column of a numeric CSV file.
pub fn load_dataset(path: impl AsRef<Path>, name: &str, source_note: &str) -> Result<Dataset> {
    let path = path.as_ref();
    let mut rdr = reader(path)?;
    let headers = rdr.headers().map_err(|e| csv_error(path, e))?.clone();
    let mut columns: Vec<Column> = headers
        .iter()
        .map(|h| Column {
            name: h.to_string(),
            values: Vec::new(),
        })
        .collect();
    for (i, record) in rdr.records().enumerate() {
        let record = record.map_err(|e| csv_error(path, e))?;
        for (col, cell) in columns.iter_mut().zip(record.iter()) {
            col.values.push(parse_cell(cell, i + 1, &col.name)?);
        }
    }
    Ok(Dataset {
        name: name.to_string(),
        columns,
        source_note: source_note.to_string(),
    })
}

/// Writes equal-length named columns as CSV with a header row.
pub fn write_csv(path: impl AsRef<Path>, columns: &[(&str, &[f64])]) -> Result<()> {
    let path = path.as_ref();
    let len = columns.first().map_or(0, |c| c.1.len());
    if let Some((name, _)) = columns.iter().find(|c| c.1.len() != len) {
        return Err(Error::Shape(format!("column {name:?} length differs from {len}")));
    }
    let mut w = csv::Writer::from_path(path).map_err(|e| csv_error(path, e))?;
    w.write_record(columns.iter().map(|c| c.0))
        .map_err(|e| csv_error(path, e))?;
    for i in 0..len {
        // shortest round-trip representation
        w.write_record(columns.iter().map(|c| format!("{:?}", c.1[i])))
            .map_err(|e| csv_error(path, e))?;
    }
    w.flush().map_err(|e| io_error(path, e))
}

/// Writes a single series under `column`.
pub fn write_series(path: impl AsRef<Path>, series: &[f64], column: &str) -> Result<()> {
    write_csv(path, &[(column, series)])
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn bundled(file: &str, name: &str, pinned: Option<&str>, note: &str) -> Result<Dataset> {
    let path = data_dir().join(file);
    let bytes = std::fs::read(&path).map_err(|e| Error::Resource {
        name: name.to_string(),
        reason: format!(
            "cannot read {}: {e}; expected sha256 {}",
            path.display(),
            pinned.unwrap_or("(not pinned)")
        ),
    })?;
    if let Some(expected) = pinned {
        let actual = sha256_hex(&bytes);
        if actual != expected {
            return Err(Error::Resource {
                name: name.to_string(),
                reason: format!("{} has sha256 {actual}, expected {expected}", path.display()),
            });
        }
    }
    load_dataset(&path, name, note).map_err(|e| Error::Resource {
        name: name.to_string(),
        reason: format!("{}: {e}", path.display()),
    })
}

/// Annual Nile minima at Roda, 622–1284 AD: columns `Year` and `NileMin`.
pub fn nile_data() -> Result<Dataset> {
    let ds = bundled(
        "nile.csv",
        "nile",
        NILE_SHA256,
        "Nile River annual minimum levels at the Roda gauge, 622-1284 AD (Hurst; 663 observations)",
    )?;
    let corrupt = |reason: String| Error::Resource {
        name: "nile".into(),
        reason,
    };
    let years = ds.column("Year").map_err(|e| corrupt(e.to_string()))?;
    ds.column("NileMin").map_err(|e| corrupt(e.to_string()))?;
    if ds.len() != NILE_LEN {
        return Err(corrupt(format!("expected {NILE_LEN} rows, found {}", ds.len())));
    }
    let consecutive = years
        .iter()
        .enumerate()
        .all(|(i, y)| *y == (NILE_FIRST_YEAR + i as i64) as f64);
    if !consecutive {
        return Err(corrupt(format!(
            "Year must run consecutively from {NILE_FIRST_YEAR}"
        )));
    }
    Ok(ds)
}

/// Northern Hemisphere monthly temperature anomalies: columns `Year`,
/// `Month` and `Anomaly`.
pub fn nhtemp_data() -> Result<Dataset> {
    let ds = bundled(
        "nhtemp.csv",
        "nhtemp",
        NHTEMP_SHA256,
        "Northern Hemisphere monthly land and sea temperature anomalies (Jones et al. record)",
    )?;
    for col in ["Year", "Month", "Anomaly"] {
        ds.column(col).map_err(|e| Error::Resource {
            name: "nhtemp".into(),
            reason: e.to_string(),
        })?;
    }
    Ok(ds)
}

/// Builtin dataset by name (`nile` or `nhtemp`) and its default series column.
pub fn builtin_series(name: &str) -> Result<Series> {
    match name {
        "nile" => nile_data()?.series("NileMin"),
        "nhtemp" => nhtemp_data()?.series("Anomaly"),
        other => Err(Error::Resource {
            name: other.to_string(),
            reason: "unknown dataset; expected nile or nhtemp".into(),
        }),
    }
}
