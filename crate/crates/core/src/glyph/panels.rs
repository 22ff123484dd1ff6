use crate::glyph::{
    row_center, text_width, GlyphPanelGeometry, GroupRow, Primitive, Shape, TextAnchor,
    CHAR_WIDTH_EM,
};
use crate::layout::{LinearScale, Rect};
use crate::model::{BoxStats, GlyphKind, TimeSeriesCube};
use crate::palette::ColorRole;

/// Inset between a glyph panel's edge and its plotting area, in pixels.
pub const PANEL_PAD: f64 = 4.0;
/// Extra left margin for the rotated y-axis label of ts and scatdot panels.
pub const AXIS_LABEL_MARGIN: f64 = 10.0;
/// Reference line dash pattern (on, off).
pub const REF_DASH: (f64, f64) = (4.0, 3.0);

const MAX_MARK_RADIUS: f64 = 3.5;
const BACKGROUND_POINT_RADIUS: f64 = 1.8;
const OUTLIER_RADIUS: f64 = 2.0;
const ARROWHEAD_LENGTH: f64 = 5.0;
const MAX_AXIS_LABEL_SIZE: f64 = 7.0;
const MARK_STROKE: f64 = 1.5;

/// Where data marks may be placed inside a panel of `kind`.
pub fn plot_area(rect: &Rect, kind: GlyphKind) -> Rect {
    let left = match kind {
        GlyphKind::Ts | GlyphKind::Scatdot => PANEL_PAD + AXIS_LABEL_MARGIN,
        _ => PANEL_PAD,
    };
    rect.inset(left, PANEL_PAD, PANEL_PAD, PANEL_PAD)
}

/// Panel background and vertical grid lines at `ticks`.
pub fn panel_frame(rect: &Rect, x_scale: &LinearScale, ticks: &[f64]) -> Vec<Primitive> {
    let mut out = vec![Primitive::new(Shape::Rect(*rect))
        .fill(ColorRole::Base)
        .class("background")];
    for &t in ticks {
        let x = x_scale.map(t);
        out.push(
            Primitive::new(Shape::Line {
                x1: x,
                y1: rect.y,
                x2: x,
                y2: rect.bottom(),
            })
            .stroke(ColorRole::Tail, 0.5)
            .class("grid"),
        );
    }
    out
}

fn mark_radius(rect: &Rect, rows: usize) -> f64 {
    (rect.height / rows.max(1) as f64 * 0.3).min(MAX_MARK_RADIUS)
}

fn push_ref_line(g: &mut GlyphPanelGeometry, scale: &LinearScale, refval: Option<f64>) {
    let Some(v) = refval.filter(|v| scale.contains(*v)) else {
        return;
    };
    let x = scale.map(v);
    g.push(
        Primitive::new(Shape::Line {
            x1: x,
            y1: g.rect.y,
            x2: x,
            y2: g.rect.bottom(),
        })
        .stroke(ColorRole::Ref, 1.0)
        .dash(REF_DASH.0, REF_DASH.1)
        .class("ref"),
    );
}

fn push_axis_label(g: &mut GlyphPanelGeometry, label: Option<&str>) {
    let Some(text) = label.filter(|t| !t.is_empty()) else {
        return;
    };
    let fit = (g.rect.height - 2.0) / (CHAR_WIDTH_EM * text.chars().count() as f64);
    let size = fit.min(MAX_AXIS_LABEL_SIZE);
    g.push(
        Primitive::new(Shape::Text {
            x: g.rect.x + 0.8 * size + 1.0,
            y: g.rect.y + g.rect.height / 2.0,
            text: text.to_owned(),
            anchor: TextAnchor::Middle,
            size,
            rotate: true,
        })
        .fill(ColorRole::Ink)
        .class("axis-label"),
    );
}

/// One filled circle per region at its value; regions without a value are skipped.
pub fn build_dot_panel(
    group: GroupRow<'_>,
    rect: &Rect,
    scale: &LinearScale,
    values: &[Option<f64>],
    refval: Option<f64>,
) -> GlyphPanelGeometry {
    let mut g = GlyphPanelGeometry::new(*rect);
    push_ref_line(&mut g, scale, refval);
    let n = group.members.len();
    let r = mark_radius(rect, n);
    for (slot, region) in group.slots() {
        let Some(v) = values[region.index()] else {
            continue;
        };
        g.push(
            Primitive::new(Shape::Circle {
                cx: scale.map(v),
                cy: row_center(rect, slot, n),
                r,
            })
            .fill(group.role(slot))
            .region(region),
        );
    }
    g
}

/// A line from tail to head with an arrowhead at the head; equal ends draw a circle.
pub fn build_arrow_panel(
    group: GroupRow<'_>,
    rect: &Rect,
    scale: &LinearScale,
    tails: &[Option<f64>],
    heads: &[Option<f64>],
    refval: Option<f64>,
) -> GlyphPanelGeometry {
    let mut g = GlyphPanelGeometry::new(*rect);
    push_ref_line(&mut g, scale, refval);
    let n = group.members.len();
    let half = mark_radius(rect, n);
    for (slot, region) in group.slots() {
        let (Some(tail), Some(head)) = (tails[region.index()], heads[region.index()]) else {
            continue;
        };
        let role = group.role(slot);
        let y = row_center(rect, slot, n);
        let (x0, x1) = (scale.map(tail), scale.map(head));
        if tail == head {
            g.push(
                Primitive::new(Shape::Circle { cx: x1, cy: y, r: half })
                    .fill(role)
                    .region(region),
            );
            continue;
        }
        let dir = (x1 - x0).signum();
        let base = x1 - dir * ARROWHEAD_LENGTH.min((x1 - x0).abs());
        g.push(
            Primitive::new(Shape::Line {
                x1: x0,
                y1: y,
                x2: base,
                y2: y,
            })
            .stroke(role, MARK_STROKE)
            .region(region),
        );
        g.push(
            Primitive::new(Shape::Polygon(vec![(x1, y), (base, y - half), (base, y + half)]))
                .fill(role)
                .region(region),
        );
    }
    g
}

/// One polyline per region over the panel's plotting area.
///
/// `y_scale` supplies the shared domain; its range is replaced by this panel's
/// vertical extent.
pub fn build_ts_panel(
    group: GroupRow<'_>,
    rect: &Rect,
    cube: &TimeSeriesCube,
    x_scale: &LinearScale,
    y_scale: &LinearScale,
    axis_label: Option<&str>,
) -> GlyphPanelGeometry {
    let mut g = GlyphPanelGeometry::new(*rect);
    let plot = plot_area(rect, GlyphKind::Ts);
    let y_scale = y_scale.with_range((plot.bottom(), plot.y));
    push_axis_label(&mut g, axis_label);
    for (slot, region) in group.slots() {
        let points = cube
            .points(region)
            .iter()
            .map(|p| (x_scale.map(p.x), y_scale.map(p.y)))
            .collect();
        g.push(
            Primitive::new(Shape::Polyline(points))
                .stroke(group.role(slot), MARK_STROKE)
                .region(region),
        );
    }
    g
}

/// Every region with both values as a background point, then the group's
/// regions overdrawn in their slot colors.
pub fn build_scatdot_panel(
    group: GroupRow<'_>,
    rect: &Rect,
    xs: &[Option<f64>],
    ys: &[Option<f64>],
    x_scale: &LinearScale,
    y_scale: &LinearScale,
    axis_label: Option<&str>,
) -> GlyphPanelGeometry {
    let mut g = GlyphPanelGeometry::new(*rect);
    let plot = plot_area(rect, GlyphKind::Scatdot);
    let y_scale = y_scale.with_range((plot.bottom(), plot.y));
    push_axis_label(&mut g, axis_label);
    let point = |i: usize| match (xs[i], ys[i]) {
        (Some(x), Some(y)) => Some((x_scale.map(x), y_scale.map(y))),
        _ => None,
    };
    for (cx, cy) in (0..xs.len()).filter_map(point) {
        g.push(
            Primitive::new(Shape::Circle {
                cx,
                cy,
                r: BACKGROUND_POINT_RADIUS,
            })
            .fill(ColorRole::Base)
            .stroke(ColorRole::Tail, 0.6)
            .class("background-point"),
        );
    }
    for (slot, region) in group.slots() {
        if let Some((cx, cy)) = point(region.index()) {
            g.push(
                Primitive::new(Shape::Circle {
                    cx,
                    cy,
                    r: MAX_MARK_RADIUS - 0.5,
                })
                .fill(group.role(slot))
                .region(region),
            );
        }
    }
    g
}

/// Horizontal box per region: q1 to q3 box, median tick, whiskers and open
/// outlier circles. Regions with no stats are skipped.
pub fn build_box_panel(
    group: GroupRow<'_>,
    rect: &Rect,
    stats: &[Option<BoxStats>],
    scale: &LinearScale,
    refval: Option<f64>,
) -> GlyphPanelGeometry {
    let mut g = GlyphPanelGeometry::new(*rect);
    push_ref_line(&mut g, scale, refval);
    let n = group.members.len();
    let half = mark_radius(rect, n);
    for (slot, region) in group.slots() {
        let Some(s) = &stats[region.index()] else {
            continue;
        };
        let role = group.role(slot);
        let y = row_center(rect, slot, n);
        let whisker = |a: f64, b: f64| {
            Primitive::new(Shape::Line {
                x1: scale.map(a),
                y1: y,
                x2: scale.map(b),
                y2: y,
            })
            .stroke(role, 1.0)
            .region(region)
        };
        g.push(whisker(s.low_whisker, s.q1));
        g.push(whisker(s.q3, s.high_whisker));
        let (x0, x1) = (scale.map(s.q1), scale.map(s.q3));
        g.push(
            Primitive::new(Shape::Rect(Rect::new(x0, y - half, x1 - x0, 2.0 * half)))
                .fill(role)
                .region(region),
        );
        let xm = scale.map(s.median);
        g.push(
            Primitive::new(Shape::Line {
                x1: xm,
                y1: y - half,
                x2: xm,
                y2: y + half,
            })
            .stroke(ColorRole::Base, MARK_STROKE)
            .class("median-tick"),
        );
        for &o in &s.outliers {
            g.push(
                Primitive::new(Shape::Circle {
                    cx: scale.map(o),
                    cy: y,
                    r: OUTLIER_RADIUS.min(half),
                })
                .stroke(role, 1.0)
                .region(region)
                .class("outlier"),
            );
        }
    }
    g
}

/// Font size at which `text` fits `width` pixels, capped at `max`.
pub fn fit_text_size(text: &str, width: f64, max: f64) -> f64 {
    let natural = text_width(text, 1.0);
    if natural == 0.0 {
        max
    } else {
        (width / natural).min(max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::glyph::five_number_summary;
    use crate::layout::column_scale;
    use crate::model::{TsPoint, MEDIAN_GROUP};
    use crate::region::{RegionId, REGION_COUNT};

    fn members(n: usize) -> Vec<(usize, RegionId)> {
        (0..n).map(|i| (i + 1, RegionId::from_index(i).unwrap())).collect()
    }

    fn rect() -> Rect {
        Rect::new(100.0, 50.0, 160.0, 75.0)
    }

    fn scale(values: &[f64], refval: Option<f64>) -> LinearScale {
        let plot = plot_area(&rect(), GlyphKind::Dot);
        column_scale(values.iter().copied(), refval, (plot.x, plot.right())).unwrap()
    }

    fn circles(g: &GlyphPanelGeometry) -> Vec<(f64, f64)> {
        g.primitives
            .iter()
            .filter_map(|p| match p.shape {
                Shape::Circle { cx, cy, .. } => Some((cx, cy)),
                _ => None,
            })
            .collect()
    }

    #[test]
    fn dot_with_refval() {
        let m = members(5);
        let values: Vec<_> = (0..REGION_COUNT).map(|i| Some(i as f64 - 2.0)).collect();
        let s = scale(&[-2.0, 2.0], Some(0.0));
        let g = build_dot_panel(GroupRow { index: 0, members: &m }, &rect(), &s, &values, Some(0.0));
        let refs: Vec<_> = g.primitives.iter().filter(|p| p.class == Some("ref")).collect();
        assert_eq!(refs.len(), 1);
        assert_eq!(refs[0].dash, Some(REF_DASH));
        assert_eq!(refs[0].shape, Shape::Line { x1: s.map(0.0), y1: 50.0, x2: s.map(0.0), y2: 125.0 });
        assert_eq!(circles(&g).len(), 5);
        assert!(g.is_clipped());
    }

    #[test]
    fn equal_values_share_x() {
        let m = members(5);
        let values = vec![Some(3.0); REGION_COUNT];
        let s = scale(&[3.0], None);
        let g = build_dot_panel(GroupRow { index: 2, members: &m }, &rect(), &s, &values, None);
        let xs: Vec<_> = circles(&g).iter().map(|c| c.0).collect();
        assert_eq!(xs.len(), 5);
        assert!(xs.iter().all(|&x| x == xs[0]));
    }

    #[test]
    fn missing_dot_is_skipped() {
        let m = members(5);
        let mut values = vec![Some(1.0); REGION_COUNT];
        values[2] = None;
        let s = scale(&[1.0], None);
        let g = build_dot_panel(GroupRow { index: 0, members: &m }, &rect(), &s, &values, None);
        assert_eq!(circles(&g).len(), 4);
    }

    #[test]
    fn arrow_direction_and_fallback() {
        let m = members(2);
        let tails = vec![Some(5.0), Some(1.0)];
        let heads = vec![Some(5.0), Some(9.0)];
        let s = scale(&[1.0, 9.0], None);
        let g = build_arrow_panel(GroupRow { index: 0, members: &m }, &rect(), &s, &tails, &heads, None);
        assert_eq!(circles(&g).len(), 1);
        let tip = g.primitives.iter().find_map(|p| match &p.shape {
            Shape::Polygon(pts) => Some(pts[0].0),
            _ => None,
        });
        assert_eq!(tip, Some(s.map(9.0)));
        assert!(g.is_clipped());
    }

    #[test]
    fn ts_constant_series_is_flat() {
        let m = members(5);
        let series = (0..REGION_COUNT)
            .map(|_| (0..9).map(|t| TsPoint { x: t as f64, y: 4.0 }).collect())
            .collect();
        let cube = TimeSeriesCube::new("c", series).unwrap();
        let plot = plot_area(&rect(), GlyphKind::Ts);
        let xs = column_scale([0.0, 8.0], None, (plot.x, plot.right())).unwrap();
        let ys = column_scale([4.0], None, (0.0, 1.0)).unwrap();
        let g = build_ts_panel(GroupRow { index: 0, members: &m }, &rect(), &cube, &xs, &ys, Some("% Change"));
        let lines: Vec<_> = g
            .primitives
            .iter()
            .filter_map(|p| match &p.shape {
                Shape::Polyline(pts) => Some(pts),
                _ => None,
            })
            .collect();
        assert_eq!(lines.len(), 5);
        assert!(lines.iter().all(|pts| pts.len() == 9 && pts.iter().all(|p| p.1 == pts[0].1)));
        assert!(g.primitives.iter().any(|p| matches!(&p.shape, Shape::Text { rotate: true, text, .. } if text == "% Change")));
        assert!(g.is_clipped());
    }

    #[test]
    fn scatdot_highlights_subset_of_background() {
        let median = [(26, RegionId::from_index(9).unwrap())];
        let xs: Vec<_> = (0..REGION_COUNT).map(|i| Some(i as f64)).collect();
        let ys: Vec<_> = (0..REGION_COUNT).map(|i| Some((i * i) as f64)).collect();
        let plot = plot_area(&rect(), GlyphKind::Scatdot);
        let sx = column_scale(xs.iter().flatten().copied(), None, (plot.x, plot.right())).unwrap();
        let sy = column_scale(ys.iter().flatten().copied(), None, (0.0, 1.0)).unwrap();
        let g = build_scatdot_panel(
            GroupRow { index: MEDIAN_GROUP, members: &median },
            &rect(),
            &xs,
            &ys,
            &sx,
            &sy,
            Some("MSA"),
        );
        let bg: Vec<_> = g.primitives.iter().filter(|p| p.class == Some("background-point")).collect();
        let hi: Vec<_> = g.marks().collect();
        assert_eq!(bg.len(), 51);
        assert_eq!(hi.len(), 1);
        assert_eq!(hi[0].1.fill, Some(ColorRole::Median));
        let bg_centers: Vec<_> = bg.iter().map(|p| p.shape.bounds()).collect();
        let (x0, y0, x1, y1) = hi[0].1.shape.bounds();
        let center = ((x0 + x1) / 2.0, (y0 + y1) / 2.0);
        assert!(bg_centers
            .iter()
            .any(|b| ((b.0 + b.2) / 2.0 - center.0).abs() < 1e-9 && ((b.1 + b.3) / 2.0 - center.1).abs() < 1e-9));
        assert!(g.is_clipped());
    }

    #[test]
    fn box_outliers_and_refval() {
        let m = members(2);
        let stats = vec![
            Some(five_number_summary(&[1.0, 2.0, 3.0, 4.0, 5.0]).unwrap()),
            Some(five_number_summary(&[1.0, 2.0, 3.0, 4.0, 100.0]).unwrap()),
        ];
        let s = scale(&[1.0, 100.0], Some(50.0));
        let g = build_box_panel(GroupRow { index: 0, members: &m }, &rect(), &stats, &s, Some(50.0));
        let outliers: Vec<_> = g.primitives.iter().filter(|p| p.class == Some("outlier")).collect();
        assert_eq!(outliers.len(), 1);
        assert_eq!(outliers[0].region, RegionId::from_index(1));
        assert_eq!(g.primitives.iter().filter(|p| p.class == Some("ref")).count(), 1);
        assert!(g.is_clipped());
    }

    #[test]
    fn text_fit() {
        assert_eq!(fit_text_size("", 10.0, 8.0), 8.0);
        assert!((fit_text_size("abcde", 15.0, 8.0) - 5.0).abs() < 1e-12);
    }
}
