//! Uploaded datasets: CSV files plus `index.json` in one data directory.
//!
//! Every mutation writes to a temporary file and renames it into place, so a
//! failed upload leaves both the index and the directory as they were.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::sync::{Mutex, RwLock};

use chrono::{DateTime, SecondsFormat, Utc};
use micromap_core::spec_io::{ingest_region_table, ingest_time_series};
use micromap_core::{Issue, IssueCode, Location, RegionTable, TimeSeriesCube, ValidationReport};
use serde::{Deserialize, Serialize};

const INDEX_FILE: &str = "index.json";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DatasetKind {
    Table,
    Timeseries,
}

impl DatasetKind {
    pub fn parse(tag: &str) -> Option<DatasetKind> {
        match tag {
            "table" => Some(DatasetKind::Table),
            "timeseries" => Some(DatasetKind::Timeseries),
            _ => None,
        }
    }

    fn as_str(self) -> &'static str {
        match self {
            DatasetKind::Table => "table",
            DatasetKind::Timeseries => "timeseries",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatasetEntry {
    pub id: String,
    pub name: String,
    pub column_names: Vec<String>,
    pub kind: DatasetKind,
    pub uploaded_at: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub region_column: Option<String>,
}

#[derive(Debug)]
pub enum RegistryError {
    Invalid(ValidationReport),
    Io(io::Error),
}

impl From<io::Error> for RegistryError {
    fn from(e: io::Error) -> Self {
        RegistryError::Io(e)
    }
}

/// A new upload, before validation.
#[derive(Debug, Clone)]
pub struct Upload {
    pub name: String,
    pub kind: DatasetKind,
    pub region_column: Option<String>,
    pub csv: String,
}

#[derive(Debug)]
pub struct Registry {
    dir: PathBuf,
    entries: RwLock<Vec<DatasetEntry>>,
    writer: Mutex<()>,
}

fn write_atomic(path: &Path, bytes: &[u8]) -> io::Result<()> {
    let tmp = path.with_extension(format!("tmp-{}", uuid::Uuid::new_v4().simple()));
    fs::write(&tmp, bytes)?;
    fs::rename(&tmp, path).inspect_err(|_| {
        let _ = fs::remove_file(&tmp);
    })
}

fn single(code: IssueCode, message: impl Into<String>, location: &str) -> ValidationReport {
    ValidationReport::from_errors(vec![Issue::new(code, message, Location::field(location))])
}

/// First name not already taken: `name`, then `name-2`, `name-3`, ...
fn unique_name(name: &str, entries: &[DatasetEntry]) -> String {
    let taken = |n: &str| entries.iter().any(|e| e.name == n);
    if !taken(name) {
        return name.to_owned();
    }
    (2..)
        .map(|i| format!("{name}-{i}"))
        .find(|n| !taken(n))
        .expect("unbounded suffixes")
}

fn header_names(csv: &str) -> Vec<String> {
    csv.lines()
        .map(|l| l.trim_start_matches('\u{feff}'))
        .find(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|l| l.split(',').map(|h| h.trim().trim_matches('"').to_owned()).collect())
        .unwrap_or_default()
}

impl Registry {
    /// Opens `dir`, creating it if needed and loading an existing index.
    pub fn open(dir: impl Into<PathBuf>) -> io::Result<Registry> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        let index = dir.join(INDEX_FILE);
        let entries = match fs::read(&index) {
            Ok(bytes) => serde_json::from_slice(&bytes)
                .map_err(|e| io::Error::new(io::ErrorKind::InvalidData, format!("{}: {e}", index.display())))?,
            Err(e) if e.kind() == io::ErrorKind::NotFound => Vec::new(),
            Err(e) => return Err(e),
        };
        Ok(Registry {
            dir,
            entries: RwLock::new(entries),
            writer: Mutex::new(()),
        })
    }

    /// Snapshot sorted by name.
    pub fn list(&self) -> Vec<DatasetEntry> {
        let mut entries = self.entries.read().expect("registry lock").clone();
        entries.sort_by(|a, b| a.name.cmp(&b.name).then(a.id.cmp(&b.id)));
        entries
    }

    /// Looks a dataset up by id, falling back to its name.
    pub fn find(&self, key: &str) -> Option<DatasetEntry> {
        let entries = self.entries.read().expect("registry lock");
        entries
            .iter()
            .find(|e| e.id == key)
            .or_else(|| entries.iter().find(|e| e.name == key))
            .cloned()
    }

    fn csv_path(&self, id: &str) -> PathBuf {
        self.dir.join(format!("{id}.csv"))
    }

    /// Validates and stores an upload.
    pub fn add(&self, upload: Upload, now: DateTime<Utc>) -> Result<DatasetEntry, RegistryError> {
        let name = upload.name.trim();
        if name.is_empty() {
            return Err(RegistryError::Invalid(single(
                IssueCode::InvalidRequest,
                "dataset name must be nonempty",
                "name",
            )));
        }
        let column_names = match upload.kind {
            DatasetKind::Table => {
                let table = ingest_region_table(&upload.csv, upload.region_column.as_deref(), name)
                    .map_err(RegistryError::Invalid)?;
                table.value.column_names().map(str::to_owned).collect()
            }
            DatasetKind::Timeseries => {
                ingest_time_series(&upload.csv, name).map_err(RegistryError::Invalid)?;
                header_names(&upload.csv)
            }
        };

        let _guard = self.writer.lock().expect("registry writer");
        let mut entries = self.entries.read().expect("registry lock").clone();
        let entry = DatasetEntry {
            id: uuid::Uuid::new_v4().simple().to_string(),
            name: unique_name(name, &entries),
            column_names,
            kind: upload.kind,
            uploaded_at: now.to_rfc3339_opts(SecondsFormat::Secs, true),
            region_column: upload.region_column,
        };
        let csv_path = self.csv_path(&entry.id);
        write_atomic(&csv_path, upload.csv.as_bytes())?;
        entries.push(entry.clone());
        let index = serde_json::to_vec_pretty(&entries).expect("entries serialize");
        if let Err(e) = write_atomic(&self.dir.join(INDEX_FILE), &index) {
            let _ = fs::remove_file(&csv_path);
            return Err(e.into());
        }
        *self.entries.write().expect("registry lock") = entries;
        Ok(entry)
    }

    fn load_text(&self, entry: &DatasetEntry) -> io::Result<String> {
        fs::read_to_string(self.csv_path(&entry.id))
    }

    fn resolve(&self, key: &str, kind: DatasetKind, location: &str) -> Result<DatasetEntry, RegistryError> {
        let entry = self.find(key).ok_or_else(|| {
            RegistryError::Invalid(single(
                IssueCode::UnknownDataset,
                format!("no dataset with id or name {key:?}"),
                location,
            ))
        })?;
        if entry.kind != kind {
            return Err(RegistryError::Invalid(single(
                IssueCode::WrongDatasetKind,
                format!("dataset {key:?} is a {}, expected a {}", entry.kind.as_str(), kind.as_str()),
                location,
            )));
        }
        Ok(entry)
    }

    /// The region table a spec's `dataset` names.
    pub fn table(&self, key: &str) -> Result<RegionTable, RegistryError> {
        let entry = self.resolve(key, DatasetKind::Table, "dataset")?;
        let text = self.load_text(&entry)?;
        ingest_region_table(&text, entry.region_column.as_deref(), &entry.name)
            .map(|t| t.value)
            .map_err(RegistryError::Invalid)
    }

    /// A time series bound under the name the panel spec uses for it.
    pub fn series(&self, key: &str, location: &str) -> Result<TimeSeriesCube, RegistryError> {
        let entry = self.resolve(key, DatasetKind::Timeseries, location)?;
        let text = self.load_text(&entry)?;
        ingest_time_series(&text, key)
            .map(|c| c.value)
            .map_err(RegistryError::Invalid)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn entry(name: &str) -> DatasetEntry {
        DatasetEntry {
            id: name.into(),
            name: name.into(),
            column_names: vec![],
            kind: DatasetKind::Table,
            uploaded_at: String::new(),
            region_column: None,
        }
    }

    #[test]
    fn names_get_numeric_suffixes() {
        let entries = vec![entry("temprates"), entry("temprates-2")];
        assert_eq!(unique_name("temprates", &entries), "temprates-3");
        assert_eq!(unique_name("other", &entries), "other");
    }

    #[test]
    fn header_skips_comments() {
        assert_eq!(header_names("# note\nstate,x,\"y\"\nAK,1,2\n"), ["state", "x", "y"]);
    }
}
