//! HTTP API for the micromap builder UI.
//!
//! | method | path            | body                                   | success                     |
//! |--------|-----------------|----------------------------------------|-----------------------------|
//! | GET    | `/api/datasets` |                                        | 200, entries sorted by name |
//! | POST   | `/api/datasets` | multipart `file`, `kind`, `name`?, `region_column`? | 201, the new entry |
//! | POST   | `/api/render`   | panel spec JSON                        | 200 `image/svg+xml`         |
//! | POST   | `/api/export`   | `{spec, format, dpi?, filename}`       | 200 attachment              |
//!
//! Failures are 422 with a validation report `{errors, warnings}`; uploads
//! over 10 MB are 413.

pub mod registry;

use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{DefaultBodyLimit, Multipart, State};
use axum::http::{header, HeaderValue, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use micromap_core::raster::{export, ExportFormat, DEFAULT_DPI, MAX_DPI};
use micromap_core::render::{render, RenderError};
use micromap_core::spec_io::parse_panel_spec;
use micromap_core::{Issue, IssueCode, Location, PanelSpec, ValidationReport};
use serde::Deserialize;
use tower_http::cors::{AllowOrigin, CorsLayer};
use tower_http::services::ServeDir;

pub use registry::{DatasetEntry, DatasetKind, Registry, RegistryError, Upload};

pub const UPLOAD_LIMIT: usize = 10 * 1024 * 1024;
pub const DEFAULT_ADDR: &str = "127.0.0.1:8787";
pub const DEFAULT_DATA_DIR: &str = "./data";

/// Settings read from `MMST_ADDR`, `MMST_DATA_DIR`, `MMST_STATIC_DIR` and
/// `MMST_CORS_ORIGIN`.
#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub addr: SocketAddr,
    pub data_dir: PathBuf,
    pub static_dir: Option<PathBuf>,
    /// `None` allows any origin.
    pub cors_origin: Option<String>,
}

impl Config {
    pub fn from_env() -> Result<Config, String> {
        Config::from_lookup(|k| std::env::var(k).ok())
    }

    pub fn from_lookup(get: impl Fn(&str) -> Option<String>) -> Result<Config, String> {
        let addr = get("MMST_ADDR").unwrap_or_else(|| DEFAULT_ADDR.to_owned());
        let addr = addr
            .parse()
            .map_err(|e| format!("MMST_ADDR {addr:?} is not a socket address: {e}"))?;
        Ok(Config {
            addr,
            data_dir: get("MMST_DATA_DIR").unwrap_or_else(|| DEFAULT_DATA_DIR.to_owned()).into(),
            static_dir: get("MMST_STATIC_DIR").filter(|s| !s.is_empty()).map(PathBuf::from),
            cors_origin: get("MMST_CORS_ORIGIN").filter(|s| !s.is_empty()),
        })
    }
}

#[derive(Debug, Clone)]
pub struct AppState {
    pub registry: Arc<Registry>,
}

/// A failed request: status plus the report sent as its body.
#[derive(Debug)]
pub struct ApiError {
    pub status: StatusCode,
    pub report: ValidationReport,
}

impl ApiError {
    fn invalid(report: ValidationReport) -> Self {
        ApiError {
            status: StatusCode::UNPROCESSABLE_ENTITY,
            report,
        }
    }

    fn single(status: StatusCode, code: IssueCode, message: impl Into<String>, location: &str) -> Self {
        ApiError {
            status,
            report: ValidationReport::from_errors(vec![Issue::new(code, message, Location::field(location))]),
        }
    }

    fn internal(message: impl Into<String>) -> Self {
        ApiError::single(
            StatusCode::INTERNAL_SERVER_ERROR,
            IssueCode::InvalidRequest,
            message,
            "server",
        )
    }
}

impl From<RegistryError> for ApiError {
    fn from(e: RegistryError) -> Self {
        match e {
            RegistryError::Invalid(report) => ApiError::invalid(report),
            RegistryError::Io(e) => ApiError::internal(format!("storage error: {e}")),
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(self.report)).into_response()
    }
}

fn cors(origin: Option<&str>) -> CorsLayer {
    let layer = CorsLayer::new()
        .allow_methods(tower_http::cors::Any)
        .allow_headers(tower_http::cors::Any)
        .expose_headers([header::CONTENT_DISPOSITION]);
    match origin.and_then(|o| HeaderValue::from_str(o).ok()) {
        Some(o) => layer.allow_origin(AllowOrigin::exact(o)),
        None => layer.allow_origin(tower_http::cors::Any),
    }
}

/// The service, with the UI served from `static_dir` when given.
pub fn app(state: AppState, config: &Config) -> Router {
    let api = Router::new()
        .route("/api/datasets", get(list_datasets))
        .route(
            "/api/datasets",
            post(upload_dataset).layer(DefaultBodyLimit::max(UPLOAD_LIMIT)),
        )
        .route("/api/render", post(render_svg))
        .route("/api/export", post(export_file))
        .with_state(state)
        .layer(cors(config.cors_origin.as_deref()));
    match &config.static_dir {
        Some(dir) => api.fallback_service(ServeDir::new(dir)),
        None => api,
    }
}

/// Binds `config.addr` and serves until the process ends.
pub async fn serve(config: Config) -> std::io::Result<()> {
    let registry = Registry::open(&config.data_dir)?;
    let router = app(
        AppState {
            registry: Arc::new(registry),
        },
        &config,
    );
    let listener = tokio::net::TcpListener::bind(config.addr).await?;
    axum::serve(listener, router).await
}

async fn list_datasets(State(state): State<AppState>) -> Json<Vec<DatasetEntry>> {
    Json(state.registry.list())
}

fn multipart_error(e: axum::extract::multipart::MultipartError) -> ApiError {
    let status = e.status();
    if status == StatusCode::PAYLOAD_TOO_LARGE {
        ApiError::single(
            status,
            IssueCode::InvalidRequest,
            format!("upload exceeds {} MB", UPLOAD_LIMIT / (1024 * 1024)),
            "file",
        )
    } else {
        ApiError::single(status, IssueCode::InvalidRequest, e.body_text(), "body")
    }
}

fn file_stem(file_name: &str) -> &str {
    let base = file_name.rsplit(['/', '\\']).next().unwrap_or(file_name);
    base.rsplit_once('.').map_or(base, |(stem, _)| stem)
}

async fn upload_dataset(
    State(state): State<AppState>,
    mut multipart: Multipart,
) -> Result<(StatusCode, Json<DatasetEntry>), ApiError> {
    let mut file: Option<(Option<String>, Bytes)> = None;
    let mut kind = None;
    let mut name = None;
    let mut region_column = None;
    while let Some(field) = multipart.next_field().await.map_err(multipart_error)? {
        let field_name = field.name().unwrap_or_default().to_owned();
        match field_name.as_str() {
            "file" => {
                let file_name = field.file_name().map(str::to_owned);
                let bytes = field.bytes().await.map_err(multipart_error)?;
                file = Some((file_name, bytes));
            }
            "kind" => kind = Some(field.text().await.map_err(multipart_error)?),
            "name" => name = Some(field.text().await.map_err(multipart_error)?),
            "region_column" => region_column = Some(field.text().await.map_err(multipart_error)?),
            _ => {}
        }
    }
    let bad = |message: String, location: &str| {
        ApiError::single(StatusCode::UNPROCESSABLE_ENTITY, IssueCode::InvalidRequest, message, location)
    };
    let (file_name, bytes) = file.ok_or_else(|| bad("multipart field \"file\" is required".into(), "file"))?;
    let kind_tag = kind.unwrap_or_else(|| "table".to_owned());
    let kind = DatasetKind::parse(kind_tag.trim())
        .ok_or_else(|| bad(format!("kind {kind_tag:?} is not table or timeseries"), "kind"))?;
    let csv = String::from_utf8(bytes.to_vec()).map_err(|_| bad("file is not UTF-8".into(), "file"))?;
    let name = name
        .filter(|n| !n.trim().is_empty())
        .or_else(|| file_name.as_deref().map(|f| file_stem(f).to_owned()))
        .unwrap_or_else(|| "dataset".to_owned());
    let upload = Upload {
        name,
        kind,
        region_column: region_column.filter(|c| !c.trim().is_empty()),
        csv,
    };
    let registry = state.registry.clone();
    let entry = tokio::task::spawn_blocking(move || registry.add(upload, chrono::Utc::now()))
        .await
        .map_err(|e| ApiError::internal(e.to_string()))??;
    Ok((StatusCode::CREATED, Json(entry)))
}

fn parse_spec(text: &str) -> Result<PanelSpec, ApiError> {
    parse_panel_spec(text).map_err(|issues| ApiError::invalid(ValidationReport::from_errors(issues)))
}

/// Loads the panel spec's data and renders it under the app profile.
fn render_spec(registry: &Registry, spec: &PanelSpec) -> Result<String, ApiError> {
    let mut report = ValidationReport::new();
    let table = match registry.table(&spec.dataset) {
        Ok(t) => Some(t),
        Err(RegistryError::Invalid(r)) => {
            report.merge(r);
            None
        }
        Err(e) => return Err(e.into()),
    };
    let mut cubes = Vec::new();
    let mut bound: Vec<&str> = Vec::new();
    for (i, column) in spec.columns.iter().enumerate() {
        let Some(key) = column.panel_data.as_deref() else {
            continue;
        };
        if bound.contains(&key) {
            continue;
        }
        bound.push(key);
        match registry.series(key, &format!("columns[{i}].panel_data")) {
            Ok(c) => cubes.push(c),
            Err(RegistryError::Invalid(r)) => report.merge(r),
            Err(e) => return Err(e.into()),
        }
    }
    let table = match table {
        Some(t) if report.is_ok() => t,
        _ => return Err(ApiError::invalid(report)),
    };
    match render(spec, &table, &cubes) {
        Ok(r) => Ok(r.svg),
        Err(RenderError::Invalid(r)) => Err(ApiError::invalid(r)),
        Err(RenderError::Layout(e)) => Err(ApiError::single(
            StatusCode::UNPROCESSABLE_ENTITY,
            IssueCode::WidthExceeded,
            e.to_string(),
            "columns",
        )),
    }
}

async fn render_svg(State(state): State<AppState>, body: String) -> Result<Response, ApiError> {
    let spec = parse_spec(&body)?;
    let registry = state.registry.clone();
    let svg = tokio::task::spawn_blocking(move || render_spec(&registry, &spec))
        .await
        .map_err(|e| ApiError::internal(e.to_string()))??;
    Ok(([(header::CONTENT_TYPE, "image/svg+xml")], svg).into_response())
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ExportRequest {
    spec: serde_json::Value,
    format: String,
    dpi: Option<u32>,
    filename: String,
}

/// Strips directory parts and characters unsafe in a header, and appends the
/// extension unless already present.
fn attachment_name(filename: &str, format: ExportFormat) -> Option<String> {
    let base = filename.rsplit(['/', '\\']).next().unwrap_or_default();
    let clean: String = base
        .chars()
        .filter(|c| !c.is_control() && !matches!(c, '"' | ';'))
        .collect();
    let clean = clean.trim();
    if clean.is_empty() || clean.chars().all(|c| c == '.') {
        return None;
    }
    let ext = format.extension();
    let suffix = format!(".{ext}");
    if clean.to_ascii_lowercase().ends_with(&suffix) {
        Some(clean.to_owned())
    } else {
        Some(format!("{clean}{suffix}"))
    }
}

async fn export_file(State(state): State<AppState>, body: Bytes) -> Result<Response, ApiError> {
    let bad = |code, message: String, location: &str| {
        ApiError::single(StatusCode::UNPROCESSABLE_ENTITY, code, message, location)
    };
    let request: ExportRequest = serde_json::from_slice(&body)
        .map_err(|e| bad(IssueCode::InvalidRequest, format!("invalid export request: {e}"), "body"))?;
    let format = ExportFormat::parse(&request.format).ok_or_else(|| {
        bad(
            IssueCode::UnsupportedFormat,
            format!("format {:?} is not supported; use svg or png", request.format),
            "format",
        )
    })?;
    let dpi = request.dpi.unwrap_or(DEFAULT_DPI);
    if !(1..=MAX_DPI).contains(&dpi) {
        return Err(bad(
            IssueCode::InvalidRequest,
            format!("dpi must be between 1 and {MAX_DPI}"),
            "dpi",
        ));
    }
    let filename = attachment_name(&request.filename, format)
        .ok_or_else(|| bad(IssueCode::InvalidRequest, "filename must be nonempty".into(), "filename"))?;
    let spec = parse_spec(&request.spec.to_string())?;
    let registry = state.registry.clone();
    let bytes = tokio::task::spawn_blocking(move || {
        let svg = render_spec(&registry, &spec)?;
        export(&svg, format, dpi).map_err(|e| {
            ApiError::single(StatusCode::UNPROCESSABLE_ENTITY, IssueCode::InvalidRequest, e.to_string(), "dpi")
        })
    })
    .await
    .map_err(|e| ApiError::internal(e.to_string()))??;
    let disposition = format!("attachment; filename=\"{filename}\"");
    let disposition = HeaderValue::from_str(&disposition)
        .map_err(|_| bad(IssueCode::InvalidRequest, "filename is not a valid header value".into(), "filename"))?;
    Ok((
        [
            (header::CONTENT_TYPE, HeaderValue::from_static(format.mime_type())),
            (header::CONTENT_DISPOSITION, disposition),
        ],
        bytes,
    )
        .into_response())
}
