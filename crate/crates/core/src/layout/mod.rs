//! Sorting, perceptual grouping, page geometry, shared scales and ticks.

mod groups;
mod page;
mod scale;
mod sort;
mod ticks;

pub use groups::perceptual_groups;
pub use page::{
    glyph_column_width, layout_page, ColumnRole, PageLayout, PageSize, Rect, FOOTER_BAND_HEIGHT,
    HEADER_BAND_HEIGHT, ID_COLUMN_WIDTH, MAP_COLUMN_WIDTH, MEDIAN_ROW_RATIO, MIN_GLYPH_COLUMN_WIDTH,
    ROW_GAP, TITLE_LINE_HEIGHT,
};
pub use scale::{column_scale, LinearScale, DOMAIN_PAD};
pub use sort::sort_regions;
pub use ticks::{format_tick, nice_ticks, tick_decimals};

use crate::region::RegionId;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LayoutError {
    #[error("expected an order of 51 regions, got {0}")]
    WrongOrderLength(usize),
    #[error("region {0} appears twice in the order")]
    RepeatedRegion(RegionId),
    #[error("no finite values to scale")]
    NoFiniteValues,
    #[error("empty scale domain [{0}, {1}]")]
    EmptyDomain(f64, f64),
    #[error("{columns} glyph columns need {:.2} in but only {available:.2} in is available", *columns as f64 * MIN_GLYPH_COLUMN_WIDTH)]
    WidthExceeded { columns: usize, available: f64 },
    #[error("page height {0} in leaves no room for the panel grid")]
    PageTooShort(f64),
}
