use crate::layout::LayoutError;
use crate::model::{PanelSpec, GROUP_SIZES, MEDIAN_GROUP};

pub const MAP_COLUMN_WIDTH: f64 = 1.5;
pub const ID_COLUMN_WIDTH: f64 = 0.9;
pub const MIN_GLYPH_COLUMN_WIDTH: f64 = 1.2;
pub const TITLE_LINE_HEIGHT: f64 = 0.35;
pub const HEADER_BAND_HEIGHT: f64 = 0.55;
pub const FOOTER_BAND_HEIGHT: f64 = 0.25;
/// Median row height relative to a standard row.
pub const MEDIAN_ROW_RATIO: f64 = 0.4;
/// Vertical gap between consecutive group rows.
pub const ROW_GAP: f64 = 0.05;

/// Page size in inches.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PageSize {
    pub width: f64,
    pub height: f64,
}

impl PageSize {
    pub const LETTER_PORTRAIT: PageSize = PageSize {
        width: 7.5,
        height: 10.0,
    };
}

impl Default for PageSize {
    fn default() -> Self {
        PageSize::LETTER_PORTRAIT
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Rect {
    pub x: f64,
    pub y: f64,
    pub width: f64,
    pub height: f64,
}

impl Rect {
    pub fn new(x: f64, y: f64, width: f64, height: f64) -> Self {
        Rect { x, y, width, height }
    }

    pub fn right(&self) -> f64 {
        self.x + self.width
    }

    pub fn bottom(&self) -> f64 {
        self.y + self.height
    }

    pub fn center_x(&self) -> f64 {
        self.x + self.width / 2.0
    }

    pub fn scaled(&self, factor: f64) -> Rect {
        Rect::new(self.x * factor, self.y * factor, self.width * factor, self.height * factor)
    }

    /// Shrinks by the given insets; never produces negative sizes.
    pub fn inset(&self, left: f64, top: f64, right: f64, bottom: f64) -> Rect {
        Rect::new(
            self.x + left,
            self.y + top,
            (self.width - left - right).max(0.0),
            (self.height - top - bottom).max(0.0),
        )
    }

    /// Interiors intersect (shared edges do not count).
    pub fn overlaps(&self, other: &Rect) -> bool {
        const EPS: f64 = 1e-9;
        self.x < other.right() - EPS
            && other.x < self.right() - EPS
            && self.y < other.bottom() - EPS
            && other.y < self.bottom() - EPS
    }

    pub fn contains_point(&self, x: f64, y: f64) -> bool {
        const EPS: f64 = 1e-6;
        x >= self.x - EPS && x <= self.right() + EPS && y >= self.y - EPS && y <= self.bottom() + EPS
    }

    pub fn contains_rect(&self, r: &Rect) -> bool {
        self.contains_point(r.x, r.y) && self.contains_point(r.right(), r.bottom())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColumnRole {
    Map,
    Id,
    /// Index into `PanelSpec::columns`.
    Glyph(usize),
}

/// Resolved page geometry, in inches.
#[derive(Debug, Clone, PartialEq)]
pub struct PageLayout {
    pub page_width: f64,
    pub page_height: f64,
    pub title_band: Rect,
    pub column_header_band: Rect,
    pub footer_band: Rect,
    pub columns: Vec<ColumnRole>,
    pub column_widths: Vec<f64>,
    /// `grid[row][column]`; 11 rows, median row at index 5.
    pub grid: Vec<Vec<Rect>>,
}

impl PageLayout {
    pub fn rows(&self) -> usize {
        self.grid.len()
    }

    /// Horizontal extent of a column across the whole page.
    pub fn column_span(&self, column: usize) -> (f64, f64) {
        let r = &self.grid[0][column];
        (r.x, r.right())
    }
}

/// Width each of `glyph_columns` columns gets on a page `page_width` wide.
pub fn glyph_column_width(page_width: f64, glyph_columns: usize) -> Option<f64> {
    (glyph_columns > 0)
        .then(|| (page_width - MAP_COLUMN_WIDTH - ID_COLUMN_WIDTH) / glyph_columns as f64)
}

/// Lays out the map, id and glyph columns over 11 group rows.
pub fn layout_page(spec: &PanelSpec, page: PageSize) -> Result<PageLayout, LayoutError> {
    let k = spec.columns.len();
    let glyph_width = match glyph_column_width(page.width, k) {
        Some(w) if w < MIN_GLYPH_COLUMN_WIDTH => {
            return Err(LayoutError::WidthExceeded {
                columns: k,
                available: page.width - MAP_COLUMN_WIDTH - ID_COLUMN_WIDTH,
            })
        }
        Some(w) => w,
        None => 0.0,
    };

    let mut columns = vec![ColumnRole::Map, ColumnRole::Id];
    columns.extend((0..k).map(ColumnRole::Glyph));
    let mut column_widths = vec![MAP_COLUMN_WIDTH, ID_COLUMN_WIDTH];
    column_widths.extend(std::iter::repeat(glyph_width).take(k));

    let used: f64 = column_widths.iter().sum();
    let left = ((page.width - used) / 2.0).max(0.0);

    let title_h = TITLE_LINE_HEIGHT * spec.title_lines().count() as f64;
    let title_band = Rect::new(0.0, 0.0, page.width, title_h);
    let column_header_band = Rect::new(left, title_h, used, HEADER_BAND_HEIGHT);
    let grid_top = column_header_band.bottom();
    let grid_h = page.height - grid_top - FOOTER_BAND_HEIGHT;

    let rows = GROUP_SIZES.len();
    let gaps = (rows - 1) as f64 * ROW_GAP;
    let weight = (rows - 1) as f64 + MEDIAN_ROW_RATIO;
    let std_h = (grid_h - gaps) / weight;
    if std_h <= 0.0 {
        return Err(LayoutError::PageTooShort(page.height));
    }

    let mut grid = Vec::with_capacity(rows);
    let mut y = grid_top;
    for row in 0..rows {
        let h = if row == MEDIAN_GROUP { std_h * MEDIAN_ROW_RATIO } else { std_h };
        let mut x = left;
        let cells = column_widths
            .iter()
            .map(|&w| {
                let r = Rect::new(x, y, w, h);
                x += w;
                r
            })
            .collect();
        grid.push(cells);
        y += h + ROW_GAP;
    }
    let footer_band = Rect::new(left, page.height - FOOTER_BAND_HEIGHT, used, FOOTER_BAND_HEIGHT);

    Ok(PageLayout {
        page_width: page.width,
        page_height: page.height,
        title_band,
        column_header_band,
        footer_band,
        columns,
        column_widths,
        grid,
    })
}
