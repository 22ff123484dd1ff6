//! Linked micromaps for the 50 US states and DC.
//!
//! A [`PanelSpec`](model::PanelSpec) names a data table, a sort column and up to a
//! handful of glyph columns. [`render::render`] validates it against the data,
//! sorts and groups the regions, and emits a deterministic SVG document which
//! [`raster::rasterize`] can turn into PNG.

pub mod demo;
pub mod glyph;
pub mod layout;
pub mod map;
pub mod model;
pub mod palette;
pub mod raster;
pub mod region;
pub mod render;
pub mod report;
pub mod spec_io;
pub mod svg;

pub use model::{
    BoxStats, GlyphColumnSpec, GlyphKind, GroupPartition, PanelSpec, RegionTable, ShadingMode,
    SortDirection, SortSpec, TimeSeriesCube, TsPoint,
};
pub use palette::{ColorRole, Palette, Rgb};
pub use region::{link_region, RegionId, REGION_COUNT};
pub use report::{Issue, IssueCode, Location, ValidationReport};
