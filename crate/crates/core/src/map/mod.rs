//! Micromap panels: shaded state outlines and the id-label column.

mod shading;

pub use shading::{shaded_sets, ShadingClass};

use crate::glyph::{row_center, GlyphPanelGeometry, GroupRow, Primitive, Shape, TextAnchor};
use crate::layout::Rect;
use crate::palette::ColorRole;
use crate::region::{RegionId, REGION_COUNT};

/// Pre-projected outline of one region in a unitless y-down frame.
#[derive(Debug)]
pub struct StateShape {
    pub code: &'static str,
    /// Where a label or marker for the region sits.
    pub anchor: (f64, f64),
    pub rings: &'static [&'static [(f64, f64)]],
}

include!(concat!(env!("OUT_DIR"), "/state_shapes.rs"));

const MAP_INSET: f64 = 2.0;
const BORDER_WIDTH: f64 = 0.3;
const ID_PAD: f64 = 3.0;
const MAX_ID_SQUARE: f64 = 8.0;
const MAX_ID_TEXT_SIZE: f64 = 8.0;

/// Outlines of all 51 regions, indexed by [`RegionId::index`].
pub fn state_geometry() -> &'static [StateShape; REGION_COUNT] {
    &STATE_SHAPES
}

pub fn shape(region: RegionId) -> &'static StateShape {
    &STATE_SHAPES[region.index()]
}

/// Bounds of the whole geometry frame.
pub fn geometry_bounds() -> (f64, f64, f64, f64) {
    STATE_SHAPES
        .iter()
        .flat_map(|s| s.rings.iter().flat_map(|r| r.iter()))
        .fold(
            (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY),
            |(a, b, c, d), &(x, y)| (a.min(x), b.min(y), c.max(x), d.max(y)),
        )
}

/// One filled polygon per ring, scaled uniformly and centered in `rect`.
pub fn build_map_panel(classes: &[ShadingClass; REGION_COUNT], rect: &Rect) -> GlyphPanelGeometry {
    let (x0, y0, x1, y1) = geometry_bounds();
    let inner = rect.inset(MAP_INSET, MAP_INSET, MAP_INSET, MAP_INSET);
    let k = (inner.width / (x1 - x0)).min(inner.height / (y1 - y0));
    let ox = inner.x + (inner.width - (x1 - x0) * k) / 2.0;
    let oy = inner.y + (inner.height - (y1 - y0) * k) / 2.0;

    let mut g = GlyphPanelGeometry::new(*rect);
    for region in RegionId::all() {
        let role = classes[region.index()].role();
        for ring in shape(region).rings {
            let points = ring
                .iter()
                .map(|&(x, y)| (ox + (x - x0) * k, oy + (y - y0) * k))
                .collect();
            g.push(
                Primitive::new(Shape::Polygon(points))
                    .fill(role)
                    .stroke(ColorRole::Ink, BORDER_WIDTH)
                    .region(region),
            );
        }
    }
    g
}

/// Font size for id labels: the longest display name fits the column at this size.
pub fn id_text_size(rect: &Rect, square: f64) -> f64 {
    let longest = RegionId::all()
        .map(|r| r.display_name().chars().count())
        .max()
        .unwrap_or(1);
    let room = rect.width - square - 3.0 * ID_PAD;
    (room / (crate::glyph::CHAR_WIDTH_EM * longest as f64)).min(MAX_ID_TEXT_SIZE)
}

/// A color square and display name per group member, in rank order.
pub fn build_id_panel(group: GroupRow<'_>, rect: &Rect, standard_row_height: f64) -> GlyphPanelGeometry {
    let mut g = GlyphPanelGeometry::new(*rect);
    let n = group.members.len();
    let square = (standard_row_height * 0.6).min(MAX_ID_SQUARE);
    let size = id_text_size(rect, square).min(rect.height / n as f64 * 0.9);
    for (slot, region) in group.slots() {
        let y = row_center(rect, slot, n);
        g.push(
            Primitive::new(Shape::Rect(Rect::new(rect.x + ID_PAD, y - square / 2.0, square, square)))
                .fill(group.role(slot))
                .region(region),
        );
        g.push(
            Primitive::new(Shape::Text {
                x: rect.x + 2.0 * ID_PAD + square,
                y: y + 0.3 * size,
                text: region.display_name().to_owned(),
                anchor: TextAnchor::Start,
                size,
                rotate: false,
            })
            .fill(ColorRole::Ink)
            .class("label"),
        );
    }
    g
}
