//! Deterministic SVG output.
//!
//! Numbers are printed with two decimals and elements are written in a fixed
//! order (titles, column headers, panels row by row, footer), so equal inputs
//! give equal bytes.

use std::fmt::Write as _;

use crate::glyph::{fit_text_size, text_width, GlyphPanelGeometry, Primitive, Shape, TextAnchor};
use crate::layout::{ColumnRole, PageLayout, Rect};
use crate::model::{GlyphKind, PanelSpec};
use crate::palette::Palette;

pub const PX_PER_INCH: f64 = 96.0;
pub const FONT_FAMILY: &str = "DejaVu Sans, Helvetica, Arial, sans-serif";

const TITLE_SIZE: f64 = 13.0;
const LABEL_SIZE: f64 = 8.0;
const SUBLABEL_SIZE: f64 = 7.0;
const TICK_SIZE: f64 = 6.0;
const TEXT_MARGIN: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PanelKind {
    Map,
    Id,
    Glyph(GlyphKind),
}

impl PanelKind {
    pub fn as_str(self) -> &'static str {
        match self {
            PanelKind::Map => "map",
            PanelKind::Id => "id",
            PanelKind::Glyph(k) => k.as_str(),
        }
    }
}

/// A panel's geometry at its place in the grid.
#[derive(Debug, Clone, PartialEq)]
pub struct PlacedPanel {
    pub row: usize,
    pub column: usize,
    pub kind: PanelKind,
    pub geometry: GlyphPanelGeometry,
}

/// Tick labels for one layout column: pixel x and printed value.
#[derive(Debug, Clone, PartialEq)]
pub struct ColumnAxis {
    pub column: usize,
    pub ticks: Vec<(f64, String)>,
}

/// Fixed two-decimal number; never prints `-0.00`.
pub fn num(v: f64) -> String {
    let s = format!("{v:.2}");
    if s == "-0.00" {
        "0.00".to_owned()
    } else {
        s
    }
}

pub fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

fn points(pts: &[(f64, f64)]) -> String {
    pts.iter()
        .map(|&(x, y)| format!("{},{}", num(x), num(y)))
        .collect::<Vec<_>>()
        .join(" ")
}

fn write_primitive(out: &mut String, p: &Primitive, palette: &Palette) {
    let mut attrs = String::new();
    let mut classes: Vec<String> = Vec::new();
    if let Some(c) = p.class {
        classes.push(c.to_owned());
    }
    if let Some(r) = p.region {
        classes.push(format!("mark {r}"));
    }
    if !classes.is_empty() {
        let _ = write!(attrs, " class=\"{}\"", classes.join(" "));
    }
    let filled = !matches!(p.shape, Shape::Line { .. } | Shape::Polyline(_));
    match p.fill {
        Some(role) => {
            let _ = write!(attrs, " fill=\"{}\"", palette.resolve(role).hex());
        }
        None if filled => attrs.push_str(" fill=\"none\""),
        None => {}
    }
    if let Some(role) = p.stroke {
        let _ = write!(
            attrs,
            " stroke=\"{}\" stroke-width=\"{}\"",
            palette.resolve(role).hex(),
            num(p.stroke_width)
        );
        if matches!(p.shape, Shape::Polyline(_)) {
            attrs.push_str(" fill=\"none\" stroke-linejoin=\"round\"");
        }
    }
    if let Some((on, off)) = p.dash {
        let _ = write!(attrs, " stroke-dasharray=\"{} {}\"", num(on), num(off));
    }

    let _ = match &p.shape {
        Shape::Line { x1, y1, x2, y2 } => writeln!(
            out,
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"{attrs}/>",
            num(*x1),
            num(*y1),
            num(*x2),
            num(*y2)
        ),
        Shape::Circle { cx, cy, r } => writeln!(
            out,
            "<circle cx=\"{}\" cy=\"{}\" r=\"{}\"{attrs}/>",
            num(*cx),
            num(*cy),
            num(*r)
        ),
        Shape::Polyline(pts) => writeln!(out, "<polyline points=\"{}\"{attrs}/>", points(pts)),
        Shape::Polygon(pts) => writeln!(out, "<polygon points=\"{}\"{attrs}/>", points(pts)),
        Shape::Rect(r) => writeln!(
            out,
            "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\"{attrs}/>",
            num(r.x),
            num(r.y),
            num(r.width),
            num(r.height)
        ),
        Shape::Text {
            x,
            y,
            text,
            anchor,
            size,
            rotate,
        } => {
            let transform = if *rotate {
                format!(" transform=\"rotate(-90 {} {})\"", num(*x), num(*y))
            } else {
                String::new()
            };
            writeln!(
                out,
                "<text x=\"{}\" y=\"{}\" font-size=\"{}\" text-anchor=\"{}\"{transform}{attrs}>{}</text>",
                num(*x),
                num(*y),
                num(*size),
                anchor.as_str(),
                escape(text)
            )
        }
    };
}

fn text(out: &mut String, class: &str, x: f64, y: f64, size: f64, anchor: TextAnchor, body: &str, palette: &Palette) {
    let _ = writeln!(
        out,
        "<text class=\"{class}\" x=\"{}\" y=\"{}\" font-size=\"{}\" text-anchor=\"{}\" fill=\"{}\">{}</text>",
        num(x),
        num(y),
        num(size),
        anchor.as_str(),
        palette.median_color.hex(),
        escape(body)
    );
}

/// Assembles the page. Layout geometry is in inches; panel geometry is already in pixels.
pub fn render_svg(
    layout: &PageLayout,
    panels: &[PlacedPanel],
    axes: &[ColumnAxis],
    palette: &Palette,
    spec: &PanelSpec,
) -> String {
    let (w, h) = (layout.page_width * PX_PER_INCH, layout.page_height * PX_PER_INCH);
    let px = |r: &Rect| r.scaled(PX_PER_INCH);
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\" font-family=\"{FONT_FAMILY}\">",
        num(w),
        num(h),
        num(w),
        num(h)
    );

    out.push_str("<g class=\"titles\">\n");
    let band = px(&layout.title_band);
    let line_h = if spec.title_lines().count() > 0 {
        band.height / spec.title_lines().count() as f64
    } else {
        0.0
    };
    for (i, title) in spec.title_lines().enumerate() {
        let size = fit_text_size(title, w - 2.0 * TEXT_MARGIN, TITLE_SIZE);
        let baseline = band.y + line_h * i as f64 + line_h / 2.0 + 0.35 * size;
        text(&mut out, "title", w / 2.0, baseline, size, TextAnchor::Middle, title, palette);
    }
    out.push_str("</g>\n");

    out.push_str("<g class=\"header\">\n");
    let header = px(&layout.column_header_band);
    let footer = px(&layout.footer_band);
    for (c, role) in layout.columns.iter().enumerate() {
        let ColumnRole::Glyph(i) = *role else {
            continue;
        };
        let column = &spec.columns[i];
        let (x0, x1) = layout.column_span(c);
        let (x0, x1) = (x0 * PX_PER_INCH, x1 * PX_PER_INCH);
        let cx = (x0 + x1) / 2.0;
        let room = x1 - x0 - 2.0 * TEXT_MARGIN;
        if !column.lab1.is_empty() {
            let size = fit_text_size(&column.lab1, room, LABEL_SIZE);
            text(&mut out, "lab1", cx, header.y + 11.0, size, TextAnchor::Middle, &column.lab1, palette);
        }
        if !column.lab2.is_empty() {
            let size = fit_text_size(&column.lab2, room, SUBLABEL_SIZE);
            text(&mut out, "lab2", cx, header.y + 22.0, size, TextAnchor::Middle, &column.lab2, palette);
        }
        if let Some(axis) = axes.iter().find(|a| a.column == c) {
            for (x, label) in &axis.ticks {
                let half = text_width(label, TICK_SIZE) / 2.0;
                let x = x.clamp(x0 + half, (x1 - half).max(x0 + half));
                text(&mut out, "tick", x, header.bottom() - 4.0, TICK_SIZE, TextAnchor::Middle, label, palette);
            }
        }
        if !column.lab3.is_empty() {
            let size = fit_text_size(&column.lab3, room, LABEL_SIZE);
            text(&mut out, "lab3", cx, footer.y + 12.0, size, TextAnchor::Middle, &column.lab3, palette);
        }
    }
    out.push_str("</g>\n");

    for panel in panels {
        let r = &panel.geometry.rect;
        let _ = writeln!(
            out,
            "<g class=\"panel {} row{}\" data-row=\"{}\" data-column=\"{}\" data-rect=\"{} {} {} {}\">",
            panel.kind.as_str(),
            panel.row,
            panel.row,
            panel.column,
            num(r.x),
            num(r.y),
            num(r.width),
            num(r.height)
        );
        for p in &panel.geometry.primitives {
            write_primitive(&mut out, p, palette);
        }
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    out
}
