//! Domain types shared by parsing, layout, glyph, map and emitter code.
//!
//! Everything here is immutable once constructed; constructors enforce the
//! structural invariants so downstream code can index without re-checking.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::region::{RegionId, REGION_COUNT};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ModelError {
    #[error("column {column:?} has {len} values, expected {REGION_COUNT}")]
    WrongRowCount { column: String, len: usize },
    #[error("column name must be nonempty")]
    EmptyColumnName,
    #[error("duplicate column name {0:?}")]
    DuplicateColumn(String),
    #[error("column {column:?} holds a non-finite value for {region}")]
    NonFinite { column: String, region: RegionId },
    #[error("time series has {0} regions, expected {REGION_COUNT}")]
    WrongRegionCount(usize),
    #[error("time series needs at least 2 points per region, {region} has {len}")]
    TooFewPoints { region: RegionId, len: usize },
    #[error("region {region} has {len} points, expected {expected}")]
    Ragged {
        region: RegionId,
        len: usize,
        expected: usize,
    },
    #[error("x values for {region} are not strictly increasing at point {position}")]
    NonMonotone { region: RegionId, position: usize },
    #[error("non-finite coordinate for {region} at point {position}")]
    NonFinitePoint { region: RegionId, position: usize },
}

/// A 51-row numeric table; cells are finite or missing.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionTable {
    source_name: String,
    columns: Vec<TableColumn>,
}

#[derive(Debug, Clone, PartialEq)]
struct TableColumn {
    name: String,
    values: Vec<Option<f64>>,
}

impl RegionTable {
    /// Builds a table from named columns whose values are indexed by
    /// [`RegionId::index`].
    pub fn new(
        source_name: impl Into<String>,
        columns: Vec<(String, Vec<Option<f64>>)>,
    ) -> Result<Self, ModelError> {
        let mut seen = HashSet::new();
        let mut out = Vec::with_capacity(columns.len());
        for (name, values) in columns {
            if name.trim().is_empty() {
                return Err(ModelError::EmptyColumnName);
            }
            if !seen.insert(name.clone()) {
                return Err(ModelError::DuplicateColumn(name));
            }
            if values.len() != REGION_COUNT {
                return Err(ModelError::WrongRowCount {
                    column: name,
                    len: values.len(),
                });
            }
            if let Some(region) = RegionId::all().find(|r| matches!(values[r.index()], Some(v) if !v.is_finite())) {
                return Err(ModelError::NonFinite {
                    column: name,
                    region,
                });
            }
            out.push(TableColumn { name, values });
        }
        Ok(RegionTable {
            source_name: source_name.into(),
            columns: out,
        })
    }

    pub fn source_name(&self) -> &str {
        &self.source_name
    }

    pub fn column_names(&self) -> impl Iterator<Item = &str> {
        self.columns.iter().map(|c| c.name.as_str())
    }

    /// Values indexed by [`RegionId::index`].
    pub fn column(&self, name: &str) -> Option<&[Option<f64>]> {
        self.columns
            .iter()
            .find(|c| c.name == name)
            .map(|c| c.values.as_slice())
    }

    pub fn value(&self, region: RegionId, column: &str) -> Option<f64> {
        self.column(column).and_then(|v| v[region.index()])
    }
}

/// One point of a time series glyph.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TsPoint {
    pub x: f64,
    pub y: f64,
}

/// Per-region time series with a common length and strictly increasing x.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeriesCube {
    name: String,
    series: Vec<Vec<TsPoint>>,
}

impl TimeSeriesCube {
    /// `series` is indexed by [`RegionId::index`].
    pub fn new(name: impl Into<String>, series: Vec<Vec<TsPoint>>) -> Result<Self, ModelError> {
        if series.len() != REGION_COUNT {
            return Err(ModelError::WrongRegionCount(series.len()));
        }
        let expected = series[0].len();
        for region in RegionId::all() {
            let points = &series[region.index()];
            if points.len() < 2 {
                return Err(ModelError::TooFewPoints {
                    region,
                    len: points.len(),
                });
            }
            if points.len() != expected {
                return Err(ModelError::Ragged {
                    region,
                    len: points.len(),
                    expected,
                });
            }
            if let Some(position) = points.iter().position(|p| !p.x.is_finite() || !p.y.is_finite()) {
                return Err(ModelError::NonFinitePoint { region, position });
            }
            if let Some(i) = points.windows(2).position(|w| w[1].x <= w[0].x) {
                return Err(ModelError::NonMonotone {
                    region,
                    position: i + 1,
                });
            }
        }
        Ok(TimeSeriesCube {
            name: name.into(),
            series,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Point count shared by every region.
    pub fn len(&self) -> usize {
        self.series[0].len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn points(&self, region: RegionId) -> &[TsPoint] {
        &self.series[region.index()]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GlyphKind {
    Dot,
    Arrow,
    Ts,
    Scatdot,
    Boxplot,
}

impl GlyphKind {
    pub const ALL: [GlyphKind; 5] = [
        GlyphKind::Dot,
        GlyphKind::Arrow,
        GlyphKind::Ts,
        GlyphKind::Scatdot,
        GlyphKind::Boxplot,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            GlyphKind::Dot => "dot",
            GlyphKind::Arrow => "arrow",
            GlyphKind::Ts => "ts",
            GlyphKind::Scatdot => "scatdot",
            GlyphKind::Boxplot => "boxplot",
        }
    }

    pub fn parse(tag: &str) -> Option<GlyphKind> {
        GlyphKind::ALL.into_iter().find(|k| k.as_str() == tag)
    }

    pub fn allows_refval(self) -> bool {
        matches!(self, GlyphKind::Dot | GlyphKind::Arrow | GlyphKind::Boxplot)
    }

    pub fn allows_lab4(self) -> bool {
        matches!(self, GlyphKind::Ts | GlyphKind::Scatdot)
    }
}

impl fmt::Display for GlyphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Minimum number of sample columns feeding a boxplot glyph.
pub const MIN_BOX_COLUMNS: usize = 5;

/// One additional (glyph) column of the graphic.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GlyphColumnSpec {
    pub kind: GlyphKind,
    pub lab1: String,
    pub lab2: String,
    pub lab3: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lab4: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub col1: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub col2: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub refval: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub panel_data: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub box_columns: Option<Vec<String>>,
}

impl GlyphColumnSpec {
    /// A column of `kind` with empty labels and no data bindings.
    pub fn new(kind: GlyphKind) -> Self {
        GlyphColumnSpec {
            kind,
            lab1: String::new(),
            lab2: String::new(),
            lab3: String::new(),
            lab4: None,
            col1: None,
            col2: None,
            refval: None,
            panel_data: None,
            box_columns: None,
        }
    }

    /// Table columns this glyph reads, in binding order.
    pub fn data_columns(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        out.extend(self.col1.as_deref());
        out.extend(self.col2.as_deref());
        if let Some(cols) = &self.box_columns {
            out.extend(cols.iter().map(String::as_str));
        }
        out
    }

    /// Y-axis label when the kind carries one and it is nonempty.
    pub fn axis_label(&self) -> Option<&str> {
        self.lab4
            .as_deref()
            .filter(|s| self.kind.allows_lab4() && !s.is_empty())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ShadingMode {
    #[default]
    Map,
    Maptail,
    Mapcum,
    Mapmedian,
}

impl ShadingMode {
    pub const ALL: [ShadingMode; 4] = [
        ShadingMode::Map,
        ShadingMode::Maptail,
        ShadingMode::Mapcum,
        ShadingMode::Mapmedian,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ShadingMode::Map => "map",
            ShadingMode::Maptail => "maptail",
            ShadingMode::Mapcum => "mapcum",
            ShadingMode::Mapmedian => "mapmedian",
        }
    }

    pub fn parse(tag: &str) -> Option<ShadingMode> {
        ShadingMode::ALL.into_iter().find(|m| m.as_str() == tag)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SortDirection {
    #[default]
    Ascending,
    Descending,
}

impl SortDirection {
    pub fn as_str(self) -> &'static str {
        match self {
            SortDirection::Ascending => "ascending",
            SortDirection::Descending => "descending",
        }
    }

    pub fn parse(tag: &str) -> Option<SortDirection> {
        match tag {
            "ascending" => Some(SortDirection::Ascending),
            "descending" => Some(SortDirection::Descending),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SortSpec {
    pub column: String,
    pub direction: SortDirection,
}

/// Declarative description of a whole graphic.
///
/// The map and id columns are implicit; `columns` lists only the glyph columns
/// that follow them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PanelSpec {
    pub dataset: String,
    pub title1: String,
    pub title2: String,
    pub shading: ShadingMode,
    pub color_safe: bool,
    pub sort: SortSpec,
    pub columns: Vec<GlyphColumnSpec>,
}

impl PanelSpec {
    pub fn title_lines(&self) -> impl Iterator<Item = &str> {
        [self.title1.as_str(), self.title2.as_str()]
            .into_iter()
            .filter(|t| !t.is_empty())
    }
}

/// Sorted regions cut into perceptual groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupPartition {
    pub(crate) groups: Vec<Vec<(usize, RegionId)>>,
    pub(crate) median_index: usize,
}

/// Group sizes for 51 regions: five groups of five on each side of a median singleton.
pub const GROUP_SIZES: [usize; 11] = [5, 5, 5, 5, 5, 1, 5, 5, 5, 5, 5];
pub const MEDIAN_GROUP: usize = 5;

impl GroupPartition {
    /// Groups in display order; each entry is `(rank, region)` with 1-based rank.
    pub fn groups(&self) -> &[Vec<(usize, RegionId)>] {
        &self.groups
    }

    pub fn group(&self, index: usize) -> &[(usize, RegionId)] {
        &self.groups[index]
    }

    pub fn median_index(&self) -> usize {
        self.median_index
    }

    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    /// The full sorted order.
    pub fn order(&self) -> Vec<RegionId> {
        self.groups.iter().flatten().map(|&(_, r)| r).collect()
    }

    pub fn median_region(&self) -> RegionId {
        self.groups[self.median_index][0].1
    }

    /// 1-based rank of `region` in the sorted order.
    pub fn rank_of(&self, region: RegionId) -> usize {
        self.groups
            .iter()
            .flatten()
            .find(|&&(_, r)| r == region)
            .map(|&(rank, _)| rank)
            .expect("partition covers every region")
    }
}

/// Box-and-whisker summary of one sample.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoxStats {
    pub low_whisker: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub high_whisker: f64,
    pub outliers: Vec<f64>,
}

impl BoxStats {
    pub fn iqr(&self) -> f64 {
        self.q3 - self.q1
    }

    /// Smallest and largest plotted value, outliers included.
    pub fn extent(&self) -> (f64, f64) {
        self.outliers.iter().fold(
            (self.low_whisker, self.high_whisker),
            |(lo, hi), &v| (lo.min(v), hi.max(v)),
        )
    }
}
