//! Validation reports: machine-readable codes with a location per issue.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum IssueCode {
    // panel spec document
    MalformedDocument,
    UnknownKey,
    MissingField,
    InvalidType,
    UnknownGlyphKind,
    UnknownShading,
    UnknownDirection,
    FieldNotAllowed,
    FieldRequired,
    TooFewBoxColumns,
    // csv ingestion
    EmptyDocument,
    UnparsableHeader,
    MalformedRow,
    MissingRegionColumn,
    EmptyColumnName,
    DuplicateColumn,
    UnknownRegion,
    DuplicateRegion,
    MissingRegion,
    NonNumericCell,
    TextColumnSkipped,
    MissingTsColumn,
    InvalidNumber,
    RaggedSeries,
    NonMonotoneX,
    TooFewPoints,
    // cross checks
    UnknownSortColumn,
    NonNumericSortColumn,
    UnknownColumn,
    UnknownPanelData,
    NoFiniteValues,
    ColumnLimit,
    WidthExceeded,
    MissingValue,
    MissingSortValue,
    InsufficientBoxSample,
    ZeroLengthArrow,
    // service
    UnknownDataset,
    WrongDatasetKind,
    UnsupportedFormat,
    InvalidRequest,
}

impl IssueCode {
    pub fn as_str(self) -> String {
        serde_json::to_value(self)
            .ok()
            .and_then(|v| v.as_str().map(str::to_owned))
            .unwrap_or_default()
    }
}

impl fmt::Display for IssueCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.as_str())
    }
}

/// Where an issue applies: a field path (`sort.column`, `columns[2].col2`),
/// a region (`region:HI`), a csv line (`line:7`) or a document position.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Location(pub String);

impl Location {
    pub fn field(path: impl Into<String>) -> Self {
        Location(path.into())
    }

    pub fn column(index: usize) -> Self {
        Location(format!("columns[{index}]"))
    }

    pub fn column_field(index: usize, field: &str) -> Self {
        Location(format!("columns[{index}].{field}"))
    }

    pub fn region(code: impl fmt::Display) -> Self {
        Location(format!("region:{code}"))
    }

    pub fn line(line: u64) -> Self {
        Location(format!("line:{line}"))
    }

    pub fn document(line: usize, column: usize) -> Self {
        Location(format!("document:{line}:{column}"))
    }
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Issue {
    pub code: IssueCode,
    pub message: String,
    pub location: Location,
}

impl Issue {
    pub fn new(code: IssueCode, message: impl Into<String>, location: Location) -> Self {
        Issue {
            code,
            message: message.into(),
            location,
        }
    }
}

impl fmt::Display for Issue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}: {}", self.code, self.location, self.message)
    }
}

/// Errors block rendering; warnings do not.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub errors: Vec<Issue>,
    pub warnings: Vec<Issue>,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_errors(errors: Vec<Issue>) -> Self {
        ValidationReport {
            errors,
            warnings: Vec::new(),
        }
    }

    pub fn error(&mut self, code: IssueCode, message: impl Into<String>, location: Location) {
        self.errors.push(Issue::new(code, message, location));
    }

    pub fn warn(&mut self, code: IssueCode, message: impl Into<String>, location: Location) {
        self.warnings.push(Issue::new(code, message, location));
    }

    pub fn is_ok(&self) -> bool {
        self.errors.is_empty()
    }

    pub fn merge(&mut self, other: ValidationReport) {
        self.errors.extend(other.errors);
        self.warnings.extend(other.warnings);
    }

    pub fn has_error(&self, code: IssueCode) -> bool {
        self.errors.iter().any(|e| e.code == code)
    }

    /// One JSON object per line, `{code, message, location}`.
    pub fn error_lines(&self) -> impl Iterator<Item = String> + '_ {
        self.errors
            .iter()
            .map(|e| serde_json::to_string(e).expect("issues serialize"))
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} errors, {} warnings",
            self.errors.len(),
            self.warnings.len()
        )
    }
}
