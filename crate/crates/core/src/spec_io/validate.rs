//! Cross-checks a parsed spec against its bound data.
//!
//! A spec that validates without errors renders without errors: every check
//! the renderer depends on (column presence, finite data, page width) is made
//! here first.

use crate::glyph::box_sample;
use crate::layout::{glyph_column_width, PageSize, MIN_GLYPH_COLUMN_WIDTH};
use crate::model::{GlyphKind, PanelSpec, RegionTable, TimeSeriesCube, MIN_BOX_COLUMNS};
use crate::region::RegionId;
use crate::report::{IssueCode, Location, ValidationReport};
use crate::spec_io::check_column_shape;

/// Glyph-column cap for the interactive app profile.
pub const APP_COLUMN_LIMIT: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Profile {
    /// At most three glyph columns.
    #[default]
    App,
    /// Any number of glyph columns that fit on the page.
    Library,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ValidateOptions {
    pub profile: Profile,
    pub page: PageSize,
}

/// Validates under the app profile on the default page.
pub fn validate(spec: &PanelSpec, table: &RegionTable, cubes: &[TimeSeriesCube]) -> ValidationReport {
    validate_with(spec, table, cubes, &ValidateOptions::default())
}

pub fn validate_with(
    spec: &PanelSpec,
    table: &RegionTable,
    cubes: &[TimeSeriesCube],
    options: &ValidateOptions,
) -> ValidationReport {
    let mut report = ValidationReport::new();
    check_sort(spec, table, &mut report);

    let k = spec.columns.len();
    if options.profile == Profile::App && k > APP_COLUMN_LIMIT {
        report.error(
            IssueCode::ColumnLimit,
            format!("{k} glyph columns requested; the limit is {APP_COLUMN_LIMIT}"),
            Location::field("columns"),
        );
    }
    if let Some(w) = glyph_column_width(options.page.width, k) {
        if w < MIN_GLYPH_COLUMN_WIDTH {
            report.error(
                IssueCode::WidthExceeded,
                format!(
                    "{k} glyph columns would be {w:.2} in wide; each needs {MIN_GLYPH_COLUMN_WIDTH} in"
                ),
                Location::field("columns"),
            );
        }
    }

    for (i, column) in spec.columns.iter().enumerate() {
        let shape = check_column_shape(i, column);
        if !shape.is_empty() {
            report.errors.extend(shape);
            continue;
        }
        check_column(i, column, table, cubes, &mut report);
    }
    report
}

fn check_sort(spec: &PanelSpec, table: &RegionTable, report: &mut ValidationReport) {
    let name = &spec.sort.column;
    let Some(values) = table.column(name) else {
        report.error(
            IssueCode::UnknownSortColumn,
            format!("sort column {name:?} is not in the data"),
            Location::field("sort.column"),
        );
        return;
    };
    if values.iter().all(Option::is_none) {
        report.error(
            IssueCode::NonNumericSortColumn,
            format!("sort column {name:?} has no numeric values"),
            Location::field("sort.column"),
        );
        return;
    }
    for region in RegionId::all().filter(|r| values[r.index()].is_none()) {
        report.warn(
            IssueCode::MissingSortValue,
            format!("{region} has no {name} value and is placed last"),
            Location::region(region),
        );
    }
}

fn check_column(
    i: usize,
    column: &crate::model::GlyphColumnSpec,
    table: &RegionTable,
    cubes: &[TimeSeriesCube],
    report: &mut ValidationReport,
) {
    if column.kind == GlyphKind::Ts {
        let name = column.panel_data.as_deref().unwrap_or_default();
        if !cubes.iter().any(|c| c.name() == name) {
            report.error(
                IssueCode::UnknownPanelData,
                format!("no time series named {name:?}"),
                Location::column_field(i, "panel_data"),
            );
        }
        return;
    }

    let mut bindings: Vec<(&str, &str)> = Vec::new();
    if let Some(c) = &column.col1 {
        bindings.push(("col1", c));
    }
    if let Some(c) = &column.col2 {
        bindings.push(("col2", c));
    }
    if let Some(cols) = &column.box_columns {
        bindings.extend(cols.iter().map(|c| ("box_columns", c.as_str())));
    }
    let mut resolved = Vec::new();
    let mut unknown = false;
    for (field, name) in &bindings {
        match table.column(name) {
            Some(values) => resolved.push((*field, *name, values)),
            None => {
                unknown = true;
                report.error(
                    IssueCode::UnknownColumn,
                    format!("column {name:?} is not in the data"),
                    Location::column_field(i, field),
                );
            }
        }
    }
    if unknown {
        return;
    }

    if column.kind == GlyphKind::Boxplot {
        let cols: Vec<&[Option<f64>]> = resolved.iter().map(|(_, _, v)| *v).collect();
        let mut drawable = 0;
        for region in RegionId::all() {
            let n = box_sample(&cols, region).len();
            if n >= MIN_BOX_COLUMNS {
                drawable += 1;
            } else {
                report.warn(
                    IssueCode::InsufficientBoxSample,
                    format!("{region} has {n} values for columns[{i}]; a box needs {MIN_BOX_COLUMNS}"),
                    Location::region(region),
                );
            }
        }
        if drawable == 0 {
            report.error(
                IssueCode::NoFiniteValues,
                "no region has enough values to draw a box",
                Location::column_field(i, "box_columns"),
            );
        }
        return;
    }

    for (field, name, values) in &resolved {
        if values.iter().all(Option::is_none) {
            report.error(
                IssueCode::NoFiniteValues,
                format!("column {name:?} has no numeric values"),
                Location::column_field(i, field),
            );
        }
    }
    if !report.is_ok() {
        return;
    }

    for region in RegionId::all() {
        let missing: Vec<&str> = resolved
            .iter()
            .filter(|(_, _, v)| v[region.index()].is_none())
            .map(|(_, name, _)| *name)
            .collect();
        if !missing.is_empty() {
            report.warn(
                IssueCode::MissingValue,
                format!(
                    "{region} lacks {} for columns[{i}]; its mark is omitted",
                    missing.join(" and ")
                ),
                Location::region(region),
            );
        } else if column.kind == GlyphKind::Arrow {
            let (tail, head) = (resolved[0].2[region.index()], resolved[1].2[region.index()]);
            if tail == head {
                report.warn(
                    IssueCode::ZeroLengthArrow,
                    format!("{region} arrow in columns[{i}] has equal ends; drawn as a dot"),
                    Location::region(region),
                );
            }
        }
    }
}
