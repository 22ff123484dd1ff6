//! Panel-spec documents, CSV data files and the validation that ties them together.

mod csv_input;
mod panel_spec;
mod validate;

pub use csv_input::{ingest_region_table, ingest_time_series, Ingested, REGION_COLUMN_NAMES};
pub use panel_spec::{check_column_shape, parse_panel_spec, to_json};
pub use validate::{validate, validate_with, Profile, ValidateOptions, APP_COLUMN_LIMIT};

pub use crate::region::link_region;
