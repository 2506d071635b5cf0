//! Point clouds from CSV: a header row, one point per row, an optional
//! `weight` column and an optional atom column.

use gaugesets::model::{equal_frequency_bins, from_point_samples, Partition, RandomSetModel};

use crate::error::CliError;

pub const WEIGHT_COLUMN: &str = "weight";

#[derive(Debug, Clone, PartialEq)]
pub struct PointTable {
    /// names of the coordinate columns
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    pub weights: Option<Vec<f64>>,
    pub atoms: Option<Vec<String>>,
}

fn cell(v: &str, row: usize, col: &str) -> Result<f64, CliError> {
    match v.trim().parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(x),
        _ => Err(CliError::input(format!("row {row}, column {col}: '{v}' is not a finite number"))),
    }
}

/// Reads the table. With `bins`, the atom column is numeric and cut into
/// that many equal-frequency bins; otherwise its values are the labels.
pub fn read_points_csv(text: &str, atom_column: Option<&str>, bins: Option<usize>) -> Result<PointTable, CliError> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).trim(csv::Trim::All).from_reader(text.as_bytes());
    let headers = rdr.headers().map_err(|e| CliError::input(format!("csv header: {e}")))?.clone();
    let find = |name: &str| headers.iter().position(|h| h == name);
    let weight_idx = find(WEIGHT_COLUMN);
    let atom_idx = match atom_column {
        Some(name) => Some(find(name).ok_or_else(|| CliError::input(format!("no column named '{name}'")))?),
        None => None,
    };
    let coord_idx: Vec<usize> =
        (0..headers.len()).filter(|i| Some(*i) != weight_idx && Some(*i) != atom_idx).collect();
    if coord_idx.is_empty() {
        return Err(CliError::input("csv has no coordinate columns"));
    }
    let mut rows = Vec::new();
    let mut weights = weight_idx.map(|_| Vec::new());
    let mut raw_atoms = atom_idx.map(|_| Vec::new());
    for (r, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| CliError::input(format!("csv: {e}")))?;
        let row = r + 1;
        rows.push(coord_idx.iter().map(|&i| cell(&rec[i], row, &headers[i])).collect::<Result<Vec<_>, _>>()?);
        if let (Some(i), Some(w)) = (weight_idx, weights.as_mut()) {
            w.push(cell(&rec[i], row, WEIGHT_COLUMN)?);
        }
        if let (Some(i), Some(a)) = (atom_idx, raw_atoms.as_mut()) {
            a.push(rec[i].to_string());
        }
    }
    if rows.is_empty() {
        return Err(CliError::input("csv has no data rows"));
    }
    let atoms = match (raw_atoms, bins) {
        (Some(a), Some(b)) => {
            let col = atom_column.unwrap_or_default();
            let vals = a.iter().enumerate().map(|(r, v)| cell(v, r + 1, col)).collect::<Result<Vec<_>, _>>()?;
            Some(equal_frequency_bins(&vals, b)?)
        }
        (a, _) => a,
    };
    let columns = coord_idx.iter().map(|&i| headers[i].to_string()).collect();
    Ok(PointTable { columns, rows, weights, atoms })
}

impl PointTable {
    pub fn to_model(&self) -> Result<(RandomSetModel, Partition), CliError> {
        Ok(from_point_samples(&self.rows, self.weights.as_deref(), self.atoms.as_deref())?)
    }
}
