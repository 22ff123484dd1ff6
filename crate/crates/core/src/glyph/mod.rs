//! Drawable geometry for glyph, map and id panels.
//!
//! Builders emit primitives in pixel coordinates with symbolic colors; the SVG
//! emitter resolves roles against a palette.

mod panels;
mod stats;

pub use panels::{
    build_arrow_panel, build_box_panel, build_dot_panel, build_scatdot_panel, build_ts_panel,
    fit_text_size, panel_frame, plot_area, AXIS_LABEL_MARGIN, PANEL_PAD, REF_DASH,
};
pub use stats::{box_sample, five_number_summary, StatsError};

use crate::layout::Rect;
use crate::model::{GroupPartition, MEDIAN_GROUP};
use crate::palette::ColorRole;
use crate::region::RegionId;

/// Fixed-width text approximation, in em per character.
pub const CHAR_WIDTH_EM: f64 = 0.6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TextAnchor {
    Start,
    Middle,
    End,
}

impl TextAnchor {
    pub fn as_str(self) -> &'static str {
        match self {
            TextAnchor::Start => "start",
            TextAnchor::Middle => "middle",
            TextAnchor::End => "end",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Shape {
    Line { x1: f64, y1: f64, x2: f64, y2: f64 },
    Circle { cx: f64, cy: f64, r: f64 },
    Polyline(Vec<(f64, f64)>),
    Rect(Rect),
    Polygon(Vec<(f64, f64)>),
    /// `rotate` turns the text a quarter turn counterclockwise about `(x, y)`.
    Text {
        x: f64,
        y: f64,
        text: String,
        anchor: TextAnchor,
        size: f64,
        rotate: bool,
    },
}

impl Shape {
    /// Axis-aligned bounds `(min_x, min_y, max_x, max_y)`; text is approximated.
    pub fn bounds(&self) -> (f64, f64, f64, f64) {
        match self {
            Shape::Line { x1, y1, x2, y2 } => (x1.min(*x2), y1.min(*y2), x1.max(*x2), y1.max(*y2)),
            Shape::Circle { cx, cy, r } => (cx - r, cy - r, cx + r, cy + r),
            Shape::Rect(r) => (r.x, r.y, r.right(), r.bottom()),
            Shape::Polyline(points) | Shape::Polygon(points) => points.iter().fold(
                (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY),
                |(a, b, c, d), &(x, y)| (a.min(x), b.min(y), c.max(x), d.max(y)),
            ),
            Shape::Text {
                x,
                y,
                text,
                anchor,
                size,
                rotate,
            } => {
                let len = text_width(text, *size);
                let (before, after) = match anchor {
                    TextAnchor::Start => (0.0, len),
                    TextAnchor::Middle => (len / 2.0, len / 2.0),
                    TextAnchor::End => (len, 0.0),
                };
                let (ascent, descent) = (0.8 * size, 0.2 * size);
                if *rotate {
                    (x - ascent, y - after, x + descent, y + before)
                } else {
                    (x - before, y - ascent, x + after, y + descent)
                }
            }
        }
    }
}

/// Approximate advance of `text` at font size `size`.
pub fn text_width(text: &str, size: f64) -> f64 {
    text.chars().count() as f64 * CHAR_WIDTH_EM * size
}

#[derive(Debug, Clone, PartialEq)]
pub struct Primitive {
    pub shape: Shape,
    pub fill: Option<ColorRole>,
    pub stroke: Option<ColorRole>,
    pub stroke_width: f64,
    /// On and off lengths.
    pub dash: Option<(f64, f64)>,
    /// Region this mark encodes, used for linking.
    pub region: Option<RegionId>,
    pub class: Option<&'static str>,
}

impl Primitive {
    pub fn new(shape: Shape) -> Self {
        Primitive {
            shape,
            fill: None,
            stroke: None,
            stroke_width: 0.0,
            dash: None,
            region: None,
            class: None,
        }
    }

    pub fn fill(mut self, role: ColorRole) -> Self {
        self.fill = Some(role);
        self
    }

    pub fn stroke(mut self, role: ColorRole, width: f64) -> Self {
        self.stroke = Some(role);
        self.stroke_width = width;
        self
    }

    pub fn dash(mut self, on: f64, off: f64) -> Self {
        self.dash = Some((on, off));
        self
    }

    pub fn region(mut self, region: RegionId) -> Self {
        self.region = Some(region);
        self
    }

    pub fn class(mut self, class: &'static str) -> Self {
        self.class = Some(class);
        self
    }

    /// The color a reader links to the region: fill if any, else stroke.
    pub fn link_color(&self) -> Option<ColorRole> {
        self.fill.or(self.stroke)
    }
}

/// Primitives owned by one panel rectangle (pixels).
#[derive(Debug, Clone, PartialEq)]
pub struct GlyphPanelGeometry {
    pub rect: Rect,
    pub primitives: Vec<Primitive>,
}

impl GlyphPanelGeometry {
    pub fn new(rect: Rect) -> Self {
        GlyphPanelGeometry {
            rect,
            primitives: Vec::new(),
        }
    }

    pub fn push(&mut self, p: Primitive) {
        self.primitives.push(p);
    }

    /// Indices of primitives whose bounds leave the panel rectangle.
    pub fn clip_violations(&self) -> Vec<usize> {
        let eps = 1e-6;
        let r = &self.rect;
        self.primitives
            .iter()
            .enumerate()
            .filter(|(_, p)| {
                let (x0, y0, x1, y1) = p.shape.bounds();
                x0 < r.x - eps || y0 < r.y - eps || x1 > r.right() + eps || y1 > r.bottom() + eps
            })
            .map(|(i, _)| i)
            .collect()
    }

    pub fn is_clipped(&self) -> bool {
        self.clip_violations().is_empty()
    }

    /// Region-tagged primitives in emission order.
    pub fn marks(&self) -> impl Iterator<Item = (RegionId, &Primitive)> {
        self.primitives
            .iter()
            .filter_map(|p| p.region.map(|r| (r, p)))
    }
}

/// One perceptual group as drawn in a panel row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupRow<'a> {
    pub index: usize,
    /// `(rank, region)` in display order.
    pub members: &'a [(usize, RegionId)],
}

impl<'a> GroupRow<'a> {
    pub fn of(partition: &'a GroupPartition, index: usize) -> Self {
        GroupRow {
            index,
            members: partition.group(index),
        }
    }

    pub fn is_median(&self) -> bool {
        self.index == MEDIAN_GROUP
    }

    /// Color role of the member at `slot`.
    pub fn role(&self, slot: usize) -> ColorRole {
        slot_role(self.index, slot)
    }

    /// Members with their slot position.
    pub fn slots(&self) -> impl Iterator<Item = (usize, RegionId)> + 'a {
        self.members.iter().enumerate().map(|(slot, &(_, r))| (slot, r))
    }
}

/// Slot colors within ordinary groups; the median group uses the median color.
pub fn slot_role(group_index: usize, slot: usize) -> ColorRole {
    if group_index == MEDIAN_GROUP {
        ColorRole::Median
    } else {
        ColorRole::Slot(slot as u8)
    }
}

/// Vertical center of row `i` of `n` equal rows in `rect`.
pub fn row_center(rect: &Rect, i: usize, n: usize) -> f64 {
    rect.y + (i as f64 + 0.5) * rect.height / n as f64
}
