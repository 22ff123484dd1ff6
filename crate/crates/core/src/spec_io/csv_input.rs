//! CSV ingestion for region tables and long-format time series.
//!
//! Input is RFC 4180 with a header row. Lines starting with `#` are treated as
//! comments, which lets data files carry provenance notes.

use std::collections::BTreeMap;

use crate::model::{RegionTable, TimeSeriesCube, TsPoint};
use crate::region::{link_region, RegionId, REGION_COUNT};
use crate::report::{Issue, IssueCode, Location, ValidationReport};

/// Header names recognized as the region column when none is given.
pub const REGION_COLUMN_NAMES: [&str; 3] = ["state", "region", "id"];

/// A successfully ingested value plus the warnings raised on the way.
#[derive(Debug, Clone, PartialEq)]
pub struct Ingested<T> {
    pub value: T,
    pub warnings: Vec<Issue>,
}

fn reader(text: &str) -> csv::Reader<&[u8]> {
    let text = text.strip_prefix('\u{feff}').unwrap_or(text);
    csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes())
}

fn record_line(record: &csv::StringRecord) -> u64 {
    record.position().map_or(0, |p| p.line())
}

fn csv_error(report: &mut ValidationReport, code: IssueCode, err: &csv::Error) {
    let line = err.position().map_or(0, |p| p.line());
    let message = match err.kind() {
        csv::ErrorKind::UnequalLengths { expected_len, len, .. } => {
            format!("row has {len} fields, header has {expected_len}")
        }
        csv::ErrorKind::Utf8 { .. } => "invalid UTF-8".to_owned(),
        _ => err.to_string(),
    };
    report.error(code, message, Location::line(line));
}

/// Parses a numeric cell. `Ok(None)` is an explicit missing value (blank, `NA`,
/// `NaN`, `.`); `Err(())` is text that is not a number.
fn parse_cell(cell: &str) -> Result<Option<f64>, ()> {
    match cell {
        "" | "." => return Ok(None),
        _ if cell.eq_ignore_ascii_case("na") || cell.eq_ignore_ascii_case("nan") => return Ok(None),
        _ => {}
    }
    match cell.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(Some(v)),
        _ => Err(()),
    }
}

fn find_region_column(headers: &csv::StringRecord, explicit: Option<&str>) -> Option<usize> {
    match explicit {
        Some(name) => headers
            .iter()
            .position(|h| h == name)
            .or_else(|| headers.iter().position(|h| h.eq_ignore_ascii_case(name))),
        None => headers
            .iter()
            .position(|h| REGION_COLUMN_NAMES.iter().any(|n| h.eq_ignore_ascii_case(n))),
    }
}

fn missing_regions(report: &mut ValidationReport, seen: &[bool]) {
    for region in RegionId::all().filter(|r| !seen[r.index()]) {
        report.error(
            IssueCode::MissingRegion,
            format!("{region} ({}) is absent", region.name()),
            Location::region(region),
        );
    }
}

/// Reads a wide table with one row per region.
///
/// `region_column` names the column holding region labels; when `None` the
/// first header equal to `state`, `region` or `id` (any case) is used. Labels
/// may be USPS codes, state names or FIPS codes. A column with no numeric cell
/// at all is treated as text and skipped; stray non-numeric cells in a numeric
/// column become missing values.
pub fn ingest_region_table(
    text: &str,
    region_column: Option<&str>,
    source_name: &str,
) -> Result<Ingested<RegionTable>, ValidationReport> {
    let mut report = ValidationReport::new();
    let mut rdr = reader(text);
    let headers = match rdr.headers() {
        Ok(h) => h.clone(),
        Err(e) => {
            csv_error(&mut report, IssueCode::UnparsableHeader, &e);
            return Err(report);
        }
    };
    if headers.is_empty() || (headers.len() == 1 && headers[0].is_empty()) {
        report.error(IssueCode::EmptyDocument, "no header row", Location::line(1));
        return Err(report);
    }

    let Some(region_idx) = find_region_column(&headers, region_column) else {
        let wanted = region_column.map_or_else(
            || format!("one of {}", REGION_COLUMN_NAMES.join(", ")),
            |n| format!("{n:?}"),
        );
        report.error(
            IssueCode::MissingRegionColumn,
            format!("no region column; expected {wanted}"),
            Location::field("header"),
        );
        return Err(report);
    };

    let data_cols: Vec<usize> = (0..headers.len()).filter(|&i| i != region_idx).collect();
    for (n, &i) in data_cols.iter().enumerate() {
        let name = &headers[i];
        if name.is_empty() {
            report.error(
                IssueCode::EmptyColumnName,
                format!("header field {} is empty", i + 1),
                Location::field("header"),
            );
        } else if data_cols[..n].iter().any(|&j| &headers[j] == name) {
            report.error(
                IssueCode::DuplicateColumn,
                format!("column {name:?} appears more than once"),
                Location::field(format!("header.{name}")),
            );
        }
    }
    if !report.is_ok() {
        return Err(report);
    }

    let mut values: Vec<Vec<Option<f64>>> = vec![vec![None; REGION_COUNT]; data_cols.len()];
    let mut numeric_count = vec![0usize; data_cols.len()];
    let mut bad_cells: Vec<Vec<(RegionId, String)>> = vec![Vec::new(); data_cols.len()];
    let mut seen = [false; REGION_COUNT];

    for result in rdr.records() {
        let record = match result {
            Ok(r) => r,
            Err(e) => {
                csv_error(&mut report, IssueCode::MalformedRow, &e);
                continue;
            }
        };
        let line = record_line(&record);
        let label = &record[region_idx];
        let region = match link_region(label) {
            Ok(r) => r,
            Err(e) => {
                report.error(IssueCode::UnknownRegion, e.to_string(), Location::line(line));
                continue;
            }
        };
        if seen[region.index()] {
            report.error(
                IssueCode::DuplicateRegion,
                format!("{region} appears more than once (again on line {line})"),
                Location::region(region),
            );
            continue;
        }
        seen[region.index()] = true;
        for (c, &i) in data_cols.iter().enumerate() {
            match parse_cell(&record[i]) {
                Ok(v) => {
                    numeric_count[c] += usize::from(v.is_some());
                    values[c][region.index()] = v;
                }
                Err(()) => bad_cells[c].push((region, record[i].to_owned())),
            }
        }
    }
    missing_regions(&mut report, &seen);
    if !report.is_ok() {
        return Err(report);
    }

    let mut columns = Vec::new();
    for (c, &i) in data_cols.iter().enumerate() {
        let name = headers[i].to_owned();
        if numeric_count[c] == 0 && !bad_cells[c].is_empty() {
            report.warn(
                IssueCode::TextColumnSkipped,
                format!("column {name:?} holds no numbers and was skipped"),
                Location::field(format!("header.{name}")),
            );
            continue;
        }
        for (region, cell) in &bad_cells[c] {
            report.warn(
                IssueCode::NonNumericCell,
                format!("{name}: {cell:?} is not a number, treated as missing"),
                Location::region(region),
            );
        }
        columns.push((name, std::mem::take(&mut values[c])));
    }

    let table = RegionTable::new(source_name, columns).expect("columns checked during ingestion");
    Ok(Ingested {
        value: table,
        warnings: report.warnings,
    })
}

/// Reads a long-format time series (`region, x, y`; header names are matched
/// case-insensitively and `state`/`id` are accepted for the region column).
///
/// Points are taken in file order and must have strictly increasing x within
/// each region; every region needs the same number of points (at least two).
pub fn ingest_time_series(text: &str, name: &str) -> Result<Ingested<TimeSeriesCube>, ValidationReport> {
    let mut report = ValidationReport::new();
    let mut rdr = reader(text);
    let headers = match rdr.headers() {
        Ok(h) => h.clone(),
        Err(e) => {
            csv_error(&mut report, IssueCode::UnparsableHeader, &e);
            return Err(report);
        }
    };
    let find = |n: &str| headers.iter().position(|h| h.eq_ignore_ascii_case(n));
    let region_idx = find_region_column(&headers, None);
    let (x_idx, y_idx) = (find("x"), find("y"));
    for (col, idx) in [("region", region_idx), ("x", x_idx), ("y", y_idx)] {
        if idx.is_none() {
            report.error(
                IssueCode::MissingTsColumn,
                format!("time series needs a {col:?} column"),
                Location::field(format!("header.{col}")),
            );
        }
    }
    let (Some(region_idx), Some(x_idx), Some(y_idx)) = (region_idx, x_idx, y_idx) else {
        return Err(report);
    };

    let mut series: Vec<Vec<TsPoint>> = vec![Vec::new(); REGION_COUNT];
    for result in rdr.records() {
        let record = match result {
            Ok(r) => r,
            Err(e) => {
                csv_error(&mut report, IssueCode::MalformedRow, &e);
                continue;
            }
        };
        let line = record_line(&record);
        let region = match link_region(&record[region_idx]) {
            Ok(r) => r,
            Err(e) => {
                report.error(IssueCode::UnknownRegion, e.to_string(), Location::line(line));
                continue;
            }
        };
        let (x, y) = (parse_cell(&record[x_idx]), parse_cell(&record[y_idx]));
        match (x, y) {
            (Ok(Some(x)), Ok(Some(y))) => series[region.index()].push(TsPoint { x, y }),
            _ => report.error(
                IssueCode::InvalidNumber,
                format!(
                    "x and y must be numbers, got {:?} and {:?}",
                    &record[x_idx], &record[y_idx]
                ),
                Location::line(line),
            ),
        }
    }

    let seen: Vec<bool> = series.iter().map(|s| !s.is_empty()).collect();
    missing_regions(&mut report, &seen);

    // The most common point count (larger on ties) defines the expected length.
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for s in series.iter().filter(|s| !s.is_empty()) {
        *counts.entry(s.len()).or_default() += 1;
    }
    let expected = counts
        .iter()
        .max_by_key(|&(len, n)| (*n, *len))
        .map_or(0, |(len, _)| *len);

    for region in RegionId::all() {
        let points = &series[region.index()];
        if points.is_empty() {
            continue;
        }
        if points.len() != expected {
            report.error(
                IssueCode::RaggedSeries,
                format!("{region} has {} points, other regions have {expected}", points.len()),
                Location::region(region),
            );
        }
        if let Some(i) = points.windows(2).position(|w| w[1].x <= w[0].x) {
            report.error(
                IssueCode::NonMonotoneX,
                format!(
                    "x must be strictly increasing; point {} has x = {} after {}",
                    i + 2,
                    points[i + 1].x,
                    points[i].x
                ),
                Location::region(region),
            );
        }
    }
    if report.is_ok() && expected < 2 {
        report.error(
            IssueCode::TooFewPoints,
            "time series need at least 2 points per region",
            Location::field("x"),
        );
    }
    if !report.is_ok() {
        return Err(report);
    }
    let cube = TimeSeriesCube::new(name, series).expect("series checked during ingestion");
    Ok(Ingested {
        value: cube,
        warnings: report.warnings,
    })
}
