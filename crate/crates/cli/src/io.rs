//! Input readers: contingency-table directories, time-series CSVs, and
//! coefficient CSVs.

use std::path::Path;

use anyhow::{anyhow, bail, Context};

use trihelix::infometrics::{ContingencyTable, DimDescriptor};

/// Reads one contingency table per `<year>.csv` file in `dir`, sorted by
/// year.
///
/// Each file holds one row per cell: one column per dimension (nonnegative
/// integer category codes), final column `count` (nonnegative real), header
/// row required. Dimension names come from the header; alphabet sizes are
/// inferred from the largest code seen (at least 2). Missing cells are
/// zero.
pub fn read_contingency_dir(dir: &Path) -> anyhow::Result<Vec<(i32, ContingencyTable)>> {
    let mut files: Vec<(i32, std::path::PathBuf)> = Vec::new();
    let entries = std::fs::read_dir(dir)
        .with_context(|| format!("cannot read input directory {}", dir.display()))?;
    for entry in entries {
        let path = entry?.path();
        if path.extension().and_then(|e| e.to_str()) != Some("csv") {
            continue;
        }
        let stem = path
            .file_stem()
            .and_then(|s| s.to_str())
            .unwrap_or_default();
        let year: i32 = stem.parse().map_err(|_| {
            anyhow!(
                "cannot parse a year from {:?}: files must be named <year>.csv",
                path.file_name().unwrap_or_default()
            )
        })?;
        files.push((year, path));
    }
    if files.is_empty() {
        bail!("no <year>.csv files found in {}", dir.display());
    }
    files.sort_by_key(|(year, _)| *year);

    let mut tables = Vec::with_capacity(files.len());
    for (year, path) in files {
        let table = read_contingency_csv(&path)
            .with_context(|| format!("in {}", path.display()))?;
        tables.push((year, table));
    }
    Ok(tables)
}

/// Reads a single contingency CSV (see [`read_contingency_dir`]).
pub fn read_contingency_csv(path: &Path) -> anyhow::Result<ContingencyTable> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .with_context(|| format!("cannot open {}", path.display()))?;

    let headers = reader.headers()?.clone();
    if headers.len() < 2 {
        bail!("header must list at least one dimension and a final `count` column");
    }
    let n_dims = headers.len() - 1;
    if &headers[n_dims] != "count" {
        bail!(
            "last header column must be `count`, got {:?}",
            &headers[n_dims]
        );
    }
    let names: Vec<String> = headers.iter().take(n_dims).map(String::from).collect();

    let mut cells: Vec<(Vec<u16>, f64)> = Vec::new();
    let mut max_code = vec![0u16; n_dims];
    for (row_idx, record) in reader.records().enumerate() {
        let record = record?;
        if record.len() != headers.len() {
            bail!(
                "row {}: expected {} fields, got {}",
                row_idx + 2,
                headers.len(),
                record.len()
            );
        }
        let mut cell = Vec::with_capacity(n_dims);
        for dim in 0..n_dims {
            let code: u16 = record[dim].parse().map_err(|_| {
                anyhow!(
                    "row {}: invalid category code {:?} in column {:?}",
                    row_idx + 2,
                    &record[dim],
                    names[dim]
                )
            })?;
            max_code[dim] = max_code[dim].max(code);
            cell.push(code);
        }
        let count: f64 = record[n_dims].parse().map_err(|_| {
            anyhow!("row {}: invalid count {:?}", row_idx + 2, &record[n_dims])
        })?;
        cells.push((cell, count));
    }

    let dims: Vec<DimDescriptor> = names
        .into_iter()
        .zip(&max_code)
        .map(|(name, &m)| DimDescriptor::new(name, (m as usize + 1).max(2)))
        .collect();
    ContingencyTable::new(dims, cells).map_err(Into::into)
}

/// Reads a `t,value` time-series CSV.
pub fn read_series_csv(path: &Path) -> anyhow::Result<Vec<(f64, f64)>> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .with_context(|| format!("cannot open {}", path.display()))?;
    let headers = reader.headers()?.clone();
    if headers.len() != 2 || &headers[0] != "t" || &headers[1] != "value" {
        bail!("expected header `t,value`, got {:?}", headers);
    }
    let mut samples = Vec::new();
    for (row_idx, record) in reader.records().enumerate() {
        let record = record?;
        let t: f64 = record
            .get(0)
            .unwrap_or_default()
            .parse()
            .map_err(|_| anyhow!("row {}: invalid t", row_idx + 2))?;
        let value: f64 = record
            .get(1)
            .unwrap_or_default()
            .parse()
            .map_err(|_| anyhow!("row {}: invalid value", row_idx + 2))?;
        samples.push((t, value));
    }
    Ok(samples)
}

/// Reads a `k,b,d` coefficients CSV. A `k = 0` row carries the offset (its
/// `d` is ignored); harmonic rows must follow in increasing k.
pub fn read_coefficients_csv(path: &Path) -> anyhow::Result<(f64, Vec<(f64, f64)>)> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .with_context(|| format!("cannot open {}", path.display()))?;
    let headers = reader.headers()?.clone();
    if headers.len() != 3 || &headers[0] != "k" || &headers[1] != "b" || &headers[2] != "d" {
        bail!("expected header `k,b,d`, got {:?}", headers);
    }
    let mut offset = 0.0;
    let mut harmonics: Vec<(f64, f64)> = Vec::new();
    let mut expected_k = None;
    for (row_idx, record) in reader.records().enumerate() {
        let record = record?;
        let row = row_idx + 2;
        let k: usize = record
            .get(0)
            .unwrap_or_default()
            .parse()
            .map_err(|_| anyhow!("row {row}: invalid harmonic index"))?;
        let b: f64 = record
            .get(1)
            .unwrap_or_default()
            .parse()
            .map_err(|_| anyhow!("row {row}: invalid b"))?;
        let d: f64 = record
            .get(2)
            .unwrap_or_default()
            .parse()
            .map_err(|_| anyhow!("row {row}: invalid d"))?;
        match (k, expected_k) {
            (0, None) => {
                offset = b;
                expected_k = Some(1);
            }
            (1, None) => {
                harmonics.push((b, d));
                expected_k = Some(2);
            }
            (k, Some(e)) if k == e => {
                harmonics.push((b, d));
                expected_k = Some(e + 1);
            }
            _ => bail!("row {row}: harmonic indices must increase consecutively (got k = {k})"),
        }
    }
    if harmonics.is_empty() {
        bail!("coefficients file {} has no harmonic rows", path.display());
    }
    Ok((offset, harmonics))
}
