//! Wide panel CSV: a `t` column followed by one column per series.
//!
//! ```text
//! t,hotel_001,hotel_002
//! 0,12.5,40
//! 1,13,38.25
//! ```
//!
//! An optional `__target__` column holds an explicit target; otherwise the
//! target is the sum of all member columns.

use std::path::Path;

use crate::error::{Error, Result};
use crate::series::{
    aggregate_target, Family, Series, TimeGrid, CUMULATIVE_ID, PREDICTION_ID, TARGET_ID,
};

use super::{read_bytes, write_atomic};

/// Relative tolerance on consecutive time differences.
const GRID_RTOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct PanelData {
    pub family: Family,
    pub target: Series,
    /// True when the target came from a `__target__` column.
    pub explicit_target: bool,
}

struct Table {
    grid: TimeGrid,
    headers: Vec<String>,
    columns: Vec<Vec<f64>>,
}

fn parse_error(context: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Parse {
        context: context.into(),
        message: message.into(),
    }
}

fn read_table(bytes: &[u8], source: &str) -> Result<Table> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(bytes);
    let headers: Vec<String> = rdr
        .headers()
        .map_err(|e| parse_error(format!("{source}: header"), e.to_string()))?
        .iter()
        .map(str::to_string)
        .collect();
    match headers.first().map(String::as_str) {
        Some("t") => {}
        other => {
            return Err(parse_error(
                format!("{source}: header"),
                format!("first column must be `t`, found {other:?}"),
            ))
        }
    }

    let mut times = Vec::new();
    let mut columns: Vec<Vec<f64>> = vec![Vec::new(); headers.len() - 1];
    for (row, record) in rdr.records().enumerate() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            parse_error(format!("{source}: line {line}"), e.to_string())
        })?;
        let line = record.position().map_or(row as u64 + 2, |p| p.line());
        for (col, cell) in record.iter().enumerate() {
            let header = &headers[col];
            if cell.is_empty() || cell.eq_ignore_ascii_case("nan") {
                return Err(Error::MissingValue {
                    row: line as usize,
                    column: header.clone(),
                });
            }
            let v: f64 = cell.parse().map_err(|_| {
                parse_error(
                    format!("{source}: line {line}, column `{header}`"),
                    format!("`{cell}` is not a number"),
                )
            })?;
            if !v.is_finite() {
                return Err(parse_error(
                    format!("{source}: line {line}, column `{header}`"),
                    format!("`{cell}` is not finite"),
                ));
            }
            if col == 0 {
                times.push(v);
            } else {
                columns[col - 1].push(v);
            }
        }
    }
    if times.len() < 2 {
        return Err(parse_error(
            source.to_string(),
            format!("need at least 2 data rows, found {}", times.len()),
        ));
    }

    let step = times[1] - times[0];
    if step.is_nan() || step <= 0.0 {
        return Err(Error::IrregularGrid { row: 2 });
    }
    for (k, w) in times.windows(2).enumerate() {
        if ((w[1] - w[0]) - step).abs() > GRID_RTOL * step {
            // Data rows start on line 2.
            return Err(Error::IrregularGrid { row: k + 3 });
        }
    }
    let grid = TimeGrid::new(times[0], step, times.len())?;
    Ok(Table {
        grid,
        headers: headers[1..].to_vec(),
        columns,
    })
}

pub fn parse_panel_csv(bytes: &[u8], source: &str) -> Result<PanelData> {
    let table = read_table(bytes, source)?;
    let mut members = Vec::new();
    let mut explicit = None;
    for (id, values) in table.headers.into_iter().zip(table.columns) {
        if id == TARGET_ID {
            if explicit.is_some() {
                return Err(Error::DuplicateId(id));
            }
            explicit = Some(Series::new(TARGET_ID, values)?);
            continue;
        }
        if id == "t" {
            return Err(Error::DuplicateId(id));
        }
        if id.starts_with("__") || id.is_empty() {
            return Err(Error::ReservedId(id));
        }
        members.push(Series::new(id, values)?);
    }
    let family = Family::new(table.grid, members)?;
    let explicit_target = explicit.is_some();
    let target = match explicit {
        Some(t) => t,
        None => aggregate_target(&family)?,
    };
    Ok(PanelData {
        family,
        target,
        explicit_target,
    })
}

pub fn read_panel_csv(path: &Path) -> Result<PanelData> {
    parse_panel_csv(&read_bytes(path)?, &path.display().to_string())
}

/// Reads the `__prediction__` column of a prediction file.
pub fn parse_prediction_csv(bytes: &[u8], source: &str) -> Result<(TimeGrid, Series)> {
    let table = read_table(bytes, source)?;
    let idx = table
        .headers
        .iter()
        .position(|h| h == PREDICTION_ID)
        .ok_or_else(|| parse_error(source.to_string(), format!("no `{PREDICTION_ID}` column")))?;
    let values = table.columns.into_iter().nth(idx).unwrap_or_default();
    Ok((table.grid, Series::new(PREDICTION_ID, values)?))
}

pub fn read_prediction_csv(path: &Path) -> Result<(TimeGrid, Series)> {
    parse_prediction_csv(&read_bytes(path)?, &path.display().to_string())
}

/// Shortest decimal that parses back to the same `f64`.
pub fn format_value(v: f64) -> String {
    format!("{v}")
}

fn render(grid: &TimeGrid, columns: &[&Series]) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| parse_error("csv output", e.to_string());
    let mut header = vec!["t".to_string()];
    header.extend(columns.iter().map(|s| s.id().to_string()));
    w.write_record(&header).map_err(csv_err)?;
    for k in 0..grid.count() {
        let mut row = Vec::with_capacity(columns.len() + 1);
        row.push(format_value(grid.coordinate(k)));
        for s in columns {
            let v = s
                .values()
                .get(k)
                .ok_or_else(|| Error::shape(grid.count(), s.len()))?;
            row.push(format_value(*v));
        }
        w.write_record(&row).map_err(csv_err)?;
    }
    w.into_inner()
        .map_err(|e| parse_error("csv output", e.to_string()))
}

pub fn render_panel_csv(family: &Family, target: Option<&Series>) -> Result<Vec<u8>> {
    let mut cols: Vec<&Series> = family.members().iter().collect();
    let target = target.map(|t| t.clone().with_id(TARGET_ID));
    if let Some(t) = &target {
        cols.push(t);
    }
    render(family.grid(), &cols)
}

pub fn write_panel_csv(path: &Path, family: &Family, target: Option<&Series>) -> Result<()> {
    write_atomic(path, &render_panel_csv(family, target)?)
}

pub fn render_prediction_csv(
    grid: &TimeGrid,
    prediction: &Series,
    cumulative: Option<&Series>,
) -> Result<Vec<u8>> {
    let prediction = prediction.clone().with_id(PREDICTION_ID);
    let cumulative = cumulative.map(|c| c.clone().with_id(CUMULATIVE_ID));
    let mut cols = vec![&prediction];
    if let Some(c) = &cumulative {
        cols.push(c);
    }
    render(grid, &cols)
}

pub fn write_prediction_csv(
    path: &Path,
    grid: &TimeGrid,
    prediction: &Series,
    cumulative: Option<&Series>,
) -> Result<()> {
    write_atomic(path, &render_prediction_csv(grid, prediction, cumulative)?)
}
