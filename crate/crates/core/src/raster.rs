//! PNG output through resvg.

use std::sync::{Arc, OnceLock};

use resvg::{tiny_skia, usvg};
use serde::{Deserialize, Serialize};

use crate::svg::PX_PER_INCH;

pub const DEFAULT_DPI: u32 = 96;
pub const MAX_DPI: u32 = 1200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExportFormat {
    Svg,
    Png,
}

impl ExportFormat {
    pub fn parse(tag: &str) -> Option<ExportFormat> {
        match tag.to_ascii_lowercase().as_str() {
            "svg" => Some(ExportFormat::Svg),
            "png" => Some(ExportFormat::Png),
            _ => None,
        }
    }

    pub fn extension(self) -> &'static str {
        match self {
            ExportFormat::Svg => "svg",
            ExportFormat::Png => "png",
        }
    }

    pub fn mime_type(self) -> &'static str {
        match self {
            ExportFormat::Svg => "image/svg+xml",
            ExportFormat::Png => "image/png",
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RasterError {
    #[error("unsupported output format {0:?}")]
    UnsupportedFormat(String),
    #[error("dpi must be between 1 and {MAX_DPI}, got {0}")]
    InvalidDpi(u32),
    #[error("cannot read svg: {0}")]
    Parse(String),
    #[error("cannot allocate a {0}x{1} image")]
    Allocation(u32, u32),
    #[error("png encoding failed: {0}")]
    Encode(String),
}

fn fonts() -> Arc<usvg::fontdb::Database> {
    static FONTS: OnceLock<Arc<usvg::fontdb::Database>> = OnceLock::new();
    FONTS
        .get_or_init(|| {
            let mut db = usvg::fontdb::Database::new();
            db.load_system_fonts();
            Arc::new(db)
        })
        .clone()
}

/// Output pixel size for a page of `width` x `height` CSS pixels at `dpi`.
pub fn raster_size(width: f64, height: f64, dpi: u32) -> (u32, u32) {
    let k = dpi as f64 / PX_PER_INCH;
    ((width * k).round() as u32, (height * k).round() as u32)
}

/// Renders `svg` onto a white page and encodes it as `format` (only `png`).
pub fn rasterize(svg: &str, dpi: u32, format: &str) -> Result<Vec<u8>, RasterError> {
    if ExportFormat::parse(format) != Some(ExportFormat::Png) {
        return Err(RasterError::UnsupportedFormat(format.to_owned()));
    }
    if dpi == 0 || dpi > MAX_DPI {
        return Err(RasterError::InvalidDpi(dpi));
    }
    let options = usvg::Options {
        fontdb: fonts(),
        ..usvg::Options::default()
    };
    let tree = usvg::Tree::from_str(svg, &options).map_err(|e| RasterError::Parse(e.to_string()))?;
    let size = tree.size();
    let (w, h) = raster_size(size.width() as f64, size.height() as f64, dpi);
    let mut pixmap = tiny_skia::Pixmap::new(w, h).ok_or(RasterError::Allocation(w, h))?;
    pixmap.fill(tiny_skia::Color::WHITE);
    let transform = tiny_skia::Transform::from_scale(
        w as f32 / size.width(),
        h as f32 / size.height(),
    );
    resvg::render(&tree, transform, &mut pixmap.as_mut());
    pixmap.encode_png().map_err(|e| RasterError::Encode(e.to_string()))
}

/// SVG bytes as-is, or a PNG at `dpi`.
pub fn export(svg: &str, format: ExportFormat, dpi: u32) -> Result<Vec<u8>, RasterError> {
    match format {
        ExportFormat::Svg => Ok(svg.as_bytes().to_vec()),
        ExportFormat::Png => rasterize(svg, dpi, "png"),
    }
}
