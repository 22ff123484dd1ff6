//! JSON panel-spec documents.
//!
//! ```json
//! {"dataset": "temprates", "title1": "...", "title2": "", "shading": "maptail",
//!  "color_safe": false, "sort": {"column": "X1", "direction": "descending"},
//!  "columns": [{"kind": "dot", "lab1": "", "lab2": "", "lab3": "", "col1": "X1", "refval": 0}]}
//! ```
//!
//! Parsing collects every problem it can find instead of stopping at the first.

use serde_json::{Map, Value};

use crate::model::{
    GlyphColumnSpec, GlyphKind, PanelSpec, ShadingMode, SortDirection, SortSpec, MIN_BOX_COLUMNS,
};
use crate::report::{Issue, IssueCode, Location};

const TOP_KEYS: [&str; 7] = [
    "dataset",
    "title1",
    "title2",
    "shading",
    "color_safe",
    "sort",
    "columns",
];
const SORT_KEYS: [&str; 2] = ["column", "direction"];
const COLUMN_KEYS: [&str; 10] = [
    "kind",
    "lab1",
    "lab2",
    "lab3",
    "lab4",
    "col1",
    "col2",
    "refval",
    "panel_data",
    "box_columns",
];

/// Parses a panel-spec document, applying defaults for optional fields
/// (`shading = map`, `direction = ascending`, `color_safe = false`, empty titles).
pub fn parse_panel_spec(text: &str) -> Result<PanelSpec, Vec<Issue>> {
    let root: Value = serde_json::from_str(text).map_err(|e| {
        vec![Issue::new(
            IssueCode::MalformedDocument,
            format!("not a JSON document: {e}"),
            Location::document(e.line(), e.column()),
        )]
    })?;
    let mut p = Parser::default();
    let spec = p.document(&root);
    match spec {
        Some(spec) if p.issues.is_empty() => Ok(spec),
        _ => Err(p.issues),
    }
}

/// Serializes a spec to the document format accepted by [`parse_panel_spec`].
pub fn to_json(spec: &PanelSpec) -> String {
    serde_json::to_string_pretty(spec).expect("panel specs always serialize")
}

/// Kind-dependent field rules for one glyph column.
pub fn check_column_shape(index: usize, column: &GlyphColumnSpec) -> Vec<Issue> {
    use GlyphKind::*;
    let kind = column.kind;
    let mut issues = Vec::new();
    let present = |field: &str| match field {
        "col1" => column.col1.is_some(),
        "col2" => column.col2.is_some(),
        "lab4" => column.lab4.is_some(),
        "refval" => column.refval.is_some(),
        "panel_data" => column.panel_data.is_some(),
        "box_columns" => column.box_columns.is_some(),
        _ => unreachable!(),
    };
    let (required, forbidden): (&[&str], &[&str]) = match kind {
        Dot => (&["col1"], &["col2", "panel_data", "lab4", "box_columns"]),
        Arrow => (&["col1", "col2"], &["panel_data", "lab4", "box_columns"]),
        Ts => (&["panel_data"], &["col1", "col2", "box_columns", "refval"]),
        Scatdot => (&["col1", "col2"], &["panel_data", "box_columns", "refval"]),
        Boxplot => (&["box_columns"], &["col1", "col2", "panel_data", "lab4"]),
    };
    for field in required {
        if !present(field) {
            issues.push(Issue::new(
                IssueCode::FieldRequired,
                format!("{field} is required for {kind}"),
                Location::column_field(index, field),
            ));
        }
    }
    for field in forbidden {
        if present(field) {
            issues.push(Issue::new(
                IssueCode::FieldNotAllowed,
                format!("{field} not allowed for {kind}"),
                Location::column_field(index, field),
            ));
        }
    }
    if let Some(cols) = &column.box_columns {
        if kind == Boxplot && cols.len() < MIN_BOX_COLUMNS {
            issues.push(Issue::new(
                IssueCode::TooFewBoxColumns,
                format!(
                    "boxplot needs at least {MIN_BOX_COLUMNS} sample columns, got {}",
                    cols.len()
                ),
                Location::column_field(index, "box_columns"),
            ));
        }
    }
    issues
}

#[derive(Default)]
struct Parser {
    issues: Vec<Issue>,
}

impl Parser {
    fn push(&mut self, code: IssueCode, message: impl Into<String>, location: Location) {
        self.issues.push(Issue::new(code, message, location));
    }

    fn object<'v>(&mut self, value: &'v Value, path: &str) -> Option<&'v Map<String, Value>> {
        match value.as_object() {
            Some(obj) => Some(obj),
            None => {
                self.push(
                    IssueCode::InvalidType,
                    format!("{path} must be an object"),
                    Location::field(path),
                );
                None
            }
        }
    }

    fn unknown_keys(&mut self, obj: &Map<String, Value>, allowed: &[&str], prefix: &str) {
        for key in obj.keys().filter(|k| !allowed.contains(&k.as_str())) {
            self.push(
                IssueCode::UnknownKey,
                format!("unknown key {key:?}"),
                Location::field(format!("{prefix}{key}")),
            );
        }
    }

    /// `Ok(None)` when absent or null.
    fn opt_str(&mut self, obj: &Map<String, Value>, key: &str, path: &str) -> Result<Option<String>, ()> {
        match obj.get(key) {
            None | Some(Value::Null) => Ok(None),
            Some(Value::String(s)) => Ok(Some(s.clone())),
            Some(_) => {
                self.push(
                    IssueCode::InvalidType,
                    format!("{path} must be a string"),
                    Location::field(path),
                );
                Err(())
            }
        }
    }

    fn req_str(&mut self, obj: &Map<String, Value>, key: &str, path: &str) -> Result<String, ()> {
        match self.opt_str(obj, key, path)? {
            Some(s) => Ok(s),
            None => {
                self.push(
                    IssueCode::MissingField,
                    format!("{path} is required"),
                    Location::field(path),
                );
                Err(())
            }
        }
    }

    fn document(&mut self, root: &Value) -> Option<PanelSpec> {
        let obj = self.object(root, "document")?;
        self.unknown_keys(obj, &TOP_KEYS, "");

        let dataset = self.req_str(obj, "dataset", "dataset");
        let title1 = self.opt_str(obj, "title1", "title1").map(Option::unwrap_or_default);
        let title2 = self.opt_str(obj, "title2", "title2").map(Option::unwrap_or_default);

        let shading = match self.opt_str(obj, "shading", "shading") {
            Ok(None) => Ok(ShadingMode::default()),
            Ok(Some(tag)) => ShadingMode::parse(&tag).ok_or_else(|| {
                self.push(
                    IssueCode::UnknownShading,
                    format!("unknown shading {tag:?}; expected map, maptail, mapcum or mapmedian"),
                    Location::field("shading"),
                )
            }),
            Err(()) => Err(()),
        };

        let color_safe = match obj.get("color_safe") {
            None | Some(Value::Null) => Ok(false),
            Some(Value::Bool(b)) => Ok(*b),
            Some(_) => {
                self.push(
                    IssueCode::InvalidType,
                    "color_safe must be a boolean",
                    Location::field("color_safe"),
                );
                Err(())
            }
        };

        let sort = match obj.get("sort") {
            None | Some(Value::Null) => {
                self.push(
                    IssueCode::MissingField,
                    "sort is required",
                    Location::field("sort"),
                );
                None
            }
            Some(v) => self.sort(v),
        };

        let columns = match obj.get("columns") {
            None | Some(Value::Null) => Some(Vec::new()),
            Some(Value::Array(items)) => {
                let parsed: Vec<_> = items
                    .iter()
                    .enumerate()
                    .map(|(i, item)| self.column(i, item))
                    .collect();
                parsed.into_iter().collect::<Option<Vec<_>>>()
            }
            Some(_) => {
                self.push(
                    IssueCode::InvalidType,
                    "columns must be an array",
                    Location::field("columns"),
                );
                None
            }
        };

        Some(PanelSpec {
            dataset: dataset.ok()?,
            title1: title1.ok()?,
            title2: title2.ok()?,
            shading: shading.ok()?,
            color_safe: color_safe.ok()?,
            sort: sort?,
            columns: columns?,
        })
    }

    fn sort(&mut self, value: &Value) -> Option<SortSpec> {
        let obj = self.object(value, "sort")?;
        self.unknown_keys(obj, &SORT_KEYS, "sort.");
        let column = self.req_str(obj, "column", "sort.column");
        let direction = match self.opt_str(obj, "direction", "sort.direction") {
            Ok(None) => Some(SortDirection::default()),
            Ok(Some(tag)) => {
                let parsed = SortDirection::parse(&tag);
                if parsed.is_none() {
                    self.push(
                        IssueCode::UnknownDirection,
                        format!("unknown sort direction {tag:?}; expected ascending or descending"),
                        Location::field("sort.direction"),
                    );
                }
                parsed
            }
            Err(()) => None,
        };
        Some(SortSpec {
            column: column.ok()?,
            direction: direction?,
        })
    }

    fn column(&mut self, index: usize, value: &Value) -> Option<GlyphColumnSpec> {
        let base = format!("columns[{index}]");
        let obj = self.object(value, &base)?;
        self.unknown_keys(obj, &COLUMN_KEYS, &format!("{base}."));
        let path = |f: &str| format!("{base}.{f}");

        let kind = match self.req_str(obj, "kind", &path("kind")) {
            Ok(tag) => {
                let kind = GlyphKind::parse(&tag);
                if kind.is_none() {
                    self.push(
                        IssueCode::UnknownGlyphKind,
                        format!("unknown glyph kind {tag:?}; expected dot, arrow, ts, scatdot or boxplot"),
                        Location::column_field(index, "kind"),
                    );
                }
                kind
            }
            Err(()) => None,
        };
        let lab1 = self.req_str(obj, "lab1", &path("lab1"));
        let lab2 = self.req_str(obj, "lab2", &path("lab2"));
        let lab3 = self.req_str(obj, "lab3", &path("lab3"));
        let lab4 = self.opt_str(obj, "lab4", &path("lab4"));
        let col1 = self.opt_str(obj, "col1", &path("col1"));
        let col2 = self.opt_str(obj, "col2", &path("col2"));
        let panel_data = self.opt_str(obj, "panel_data", &path("panel_data"));

        let refval = match obj.get("refval") {
            None | Some(Value::Null) => Ok(None),
            Some(Value::Number(n)) => n.as_f64().filter(|v| v.is_finite()).map(Some).ok_or_else(|| {
                self.push(
                    IssueCode::InvalidType,
                    "refval must be a finite number",
                    Location::column_field(index, "refval"),
                )
            }),
            Some(_) => {
                self.push(
                    IssueCode::InvalidType,
                    "refval must be a number",
                    Location::column_field(index, "refval"),
                );
                Err(())
            }
        };

        let box_columns = match obj.get("box_columns") {
            None | Some(Value::Null) => Ok(None),
            Some(Value::Array(items)) => {
                let names: Option<Vec<String>> =
                    items.iter().map(|v| v.as_str().map(str::to_owned)).collect();
                names.map(Some).ok_or_else(|| {
                    self.push(
                        IssueCode::InvalidType,
                        "box_columns must be an array of column names",
                        Location::column_field(index, "box_columns"),
                    )
                })
            }
            Some(_) => {
                self.push(
                    IssueCode::InvalidType,
                    "box_columns must be an array of column names",
                    Location::column_field(index, "box_columns"),
                );
                Err(())
            }
        };

        let column = GlyphColumnSpec {
            kind: kind?,
            lab1: lab1.ok()?,
            lab2: lab2.ok()?,
            lab3: lab3.ok()?,
            lab4: lab4.ok()?,
            col1: col1.ok()?,
            col2: col2.ok()?,
            refval: refval.ok()?,
            panel_data: panel_data.ok()?,
            box_columns: box_columns.ok()?,
        };
        let shape = check_column_shape(index, &column);
        if shape.is_empty() {
            Some(column)
        } else {
            self.issues.extend(shape);
            None
        }
    }
}
