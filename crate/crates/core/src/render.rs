//! The full pipeline: validate, sort, group, scale, build panels, emit SVG.

use crate::glyph::{
    box_sample, build_arrow_panel, build_box_panel, build_dot_panel, build_scatdot_panel,
    build_ts_panel, five_number_summary, panel_frame, plot_area, GlyphPanelGeometry, GroupRow,
};
use crate::layout::{
    column_scale, format_tick, layout_page, nice_ticks, perceptual_groups, sort_regions,
    tick_decimals, ColumnRole, LayoutError, LinearScale, PageLayout, Rect,
};
use crate::map::{build_id_panel, build_map_panel, shaded_sets};
use crate::model::{
    BoxStats, GlyphColumnSpec, GlyphKind, GroupPartition, PanelSpec, RegionTable, TimeSeriesCube,
    MIN_BOX_COLUMNS,
};
use crate::palette::Palette;
use crate::region::RegionId;
use crate::report::{Issue, ValidationReport};
use crate::spec_io::{validate_with, ValidateOptions};
use crate::svg::{render_svg, ColumnAxis, PanelKind, PlacedPanel, PX_PER_INCH};

/// Pixels per tick label slot when choosing how many ticks an axis gets.
const TICK_SPACING: f64 = 30.0;
const MAX_TICKS: usize = 6;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RenderError {
    #[error("validation failed: {0}")]
    Invalid(ValidationReport),
    #[error(transparent)]
    Layout(#[from] LayoutError),
}

/// Everything needed to emit the document.
#[derive(Debug, Clone, PartialEq)]
pub struct Figure {
    pub layout: PageLayout,
    pub partition: GroupPartition,
    /// Row-major: every column of row 0, then row 1, and so on.
    pub panels: Vec<PlacedPanel>,
    pub axes: Vec<ColumnAxis>,
    pub warnings: Vec<Issue>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Rendered {
    pub svg: String,
    pub warnings: Vec<Issue>,
}

/// Renders under the app profile on the default page.
pub fn render(
    spec: &PanelSpec,
    table: &RegionTable,
    cubes: &[TimeSeriesCube],
) -> Result<Rendered, RenderError> {
    render_with(spec, table, cubes, &ValidateOptions::default())
}

pub fn render_with(
    spec: &PanelSpec,
    table: &RegionTable,
    cubes: &[TimeSeriesCube],
    options: &ValidateOptions,
) -> Result<Rendered, RenderError> {
    let figure = build_figure(spec, table, cubes, options)?;
    let palette = Palette::for_spec(spec.color_safe);
    let svg = render_svg(&figure.layout, &figure.panels, &figure.axes, palette, spec);
    Ok(Rendered {
        svg,
        warnings: figure.warnings,
    })
}

/// Per-column scales and data, computed once and shared by all 11 rows.
enum ColumnPlan<'a> {
    Dot {
        scale: LinearScale,
        values: &'a [Option<f64>],
    },
    Arrow {
        scale: LinearScale,
        tails: &'a [Option<f64>],
        heads: &'a [Option<f64>],
    },
    Ts {
        x: LinearScale,
        y: LinearScale,
        cube: &'a TimeSeriesCube,
    },
    Scatdot {
        x: LinearScale,
        y: LinearScale,
        xs: &'a [Option<f64>],
        ys: &'a [Option<f64>],
    },
    Boxplot {
        scale: LinearScale,
        stats: Vec<Option<BoxStats>>,
    },
}

impl ColumnPlan<'_> {
    fn x_scale(&self) -> &LinearScale {
        match self {
            ColumnPlan::Dot { scale, .. }
            | ColumnPlan::Arrow { scale, .. }
            | ColumnPlan::Boxplot { scale, .. } => scale,
            ColumnPlan::Ts { x, .. } | ColumnPlan::Scatdot { x, .. } => x,
        }
    }
}

fn values<'a>(table: &'a RegionTable, name: Option<&String>) -> &'a [Option<f64>] {
    name.and_then(|n| table.column(n))
        .expect("validated column binding")
}

fn plan_column<'a>(
    column: &GlyphColumnSpec,
    table: &'a RegionTable,
    cubes: &'a [TimeSeriesCube],
    x_range: (f64, f64),
) -> Result<ColumnPlan<'a>, LayoutError> {
    let flat = |v: &[Option<f64>]| v.iter().flatten().copied().collect::<Vec<_>>();
    Ok(match column.kind {
        GlyphKind::Dot => {
            let values = values(table, column.col1.as_ref());
            let scale = column_scale(flat(values), column.refval, x_range)?;
            ColumnPlan::Dot { scale, values }
        }
        GlyphKind::Arrow => {
            let tails = values(table, column.col1.as_ref());
            let heads = values(table, column.col2.as_ref());
            let mut all = flat(tails);
            all.extend(flat(heads));
            let scale = column_scale(all, column.refval, x_range)?;
            ColumnPlan::Arrow { scale, tails, heads }
        }
        GlyphKind::Ts => {
            let name = column.panel_data.as_deref().unwrap_or_default();
            let cube = cubes
                .iter()
                .find(|c| c.name() == name)
                .expect("validated panel_data binding");
            let points = || RegionId::all().flat_map(|r| cube.points(r).iter());
            let x = column_scale(points().map(|p| p.x), None, x_range)?;
            let y = column_scale(points().map(|p| p.y), None, (0.0, 1.0))?;
            ColumnPlan::Ts { x, y, cube }
        }
        GlyphKind::Scatdot => {
            let xs = values(table, column.col1.as_ref());
            let ys = values(table, column.col2.as_ref());
            let pairs: Vec<(f64, f64)> = xs
                .iter()
                .zip(ys)
                .filter_map(|(x, y)| Some(((*x)?, (*y)?)))
                .collect();
            let x = column_scale(pairs.iter().map(|p| p.0), None, x_range)?;
            let y = column_scale(pairs.iter().map(|p| p.1), None, (0.0, 1.0))?;
            ColumnPlan::Scatdot { x, y, xs, ys }
        }
        GlyphKind::Boxplot => {
            let names = column.box_columns.as_deref().unwrap_or_default();
            let cols: Vec<&[Option<f64>]> = names
                .iter()
                .map(|n| table.column(n).expect("validated box column"))
                .collect();
            let stats: Vec<Option<BoxStats>> = RegionId::all()
                .map(|r| {
                    let sample = box_sample(&cols, r);
                    (sample.len() >= MIN_BOX_COLUMNS)
                        .then(|| five_number_summary(&sample).ok())
                        .flatten()
                })
                .collect();
            let extent = stats.iter().flatten().flat_map(|s| {
                let (lo, hi) = s.extent();
                [lo, hi]
            });
            let scale = column_scale(extent, column.refval, x_range)?;
            ColumnPlan::Boxplot { scale, stats }
        }
    })
}

fn axis_ticks(scale: &LinearScale, width: f64) -> (Vec<f64>, Vec<(f64, String)>) {
    let max = ((width / TICK_SPACING).floor() as usize).clamp(2, MAX_TICKS);
    let ticks = nice_ticks(scale, max);
    let decimals = tick_decimals(&ticks);
    let labels = ticks
        .iter()
        .map(|&t| (scale.map(t), format_tick(t, decimals)))
        .collect();
    (ticks, labels)
}

fn glyph_panel(
    plan: &ColumnPlan<'_>,
    column: &GlyphColumnSpec,
    group: GroupRow<'_>,
    rect: &Rect,
    ticks: &[f64],
) -> GlyphPanelGeometry {
    let mut g = GlyphPanelGeometry::new(*rect);
    g.primitives = panel_frame(rect, plan.x_scale(), ticks);
    let body = match plan {
        ColumnPlan::Dot { scale, values } => build_dot_panel(group, rect, scale, values, column.refval),
        ColumnPlan::Arrow { scale, tails, heads } => {
            build_arrow_panel(group, rect, scale, tails, heads, column.refval)
        }
        ColumnPlan::Ts { x, y, cube } => build_ts_panel(group, rect, cube, x, y, column.axis_label()),
        ColumnPlan::Scatdot { x, y, xs, ys } => {
            build_scatdot_panel(group, rect, xs, ys, x, y, column.axis_label())
        }
        ColumnPlan::Boxplot { scale, stats } => build_box_panel(group, rect, stats, scale, column.refval),
    };
    g.primitives.extend(body.primitives);
    g
}

/// Validates, then lays out and builds every panel.
pub fn build_figure(
    spec: &PanelSpec,
    table: &RegionTable,
    cubes: &[TimeSeriesCube],
    options: &ValidateOptions,
) -> Result<Figure, RenderError> {
    let report = validate_with(spec, table, cubes, options);
    if !report.is_ok() {
        return Err(RenderError::Invalid(report));
    }
    let layout = layout_page(spec, options.page)?;
    let partition = perceptual_groups(&sort_regions(table, &spec.sort))?;
    let cell = |row: usize, col: usize| layout.grid[row][col].scaled(PX_PER_INCH);

    let mut plans = Vec::with_capacity(spec.columns.len());
    let mut axes = Vec::new();
    let mut tick_sets = Vec::new();
    for (c, role) in layout.columns.iter().enumerate() {
        let ColumnRole::Glyph(i) = *role else {
            continue;
        };
        let column = &spec.columns[i];
        let plot = plot_area(&cell(0, c), column.kind);
        let plan = plan_column(column, table, cubes, (plot.x, plot.right()))?;
        let (ticks, labels) = axis_ticks(plan.x_scale(), plot.width);
        axes.push(ColumnAxis { column: c, ticks: labels });
        tick_sets.push(ticks);
        plans.push(plan);
    }

    let standard_row = cell(0, 0).height;
    let mut panels = Vec::with_capacity(layout.rows() * layout.columns.len());
    for row in 0..layout.rows() {
        let group = GroupRow::of(&partition, row);
        for (c, role) in layout.columns.iter().enumerate() {
            let rect = cell(row, c);
            let (kind, geometry) = match *role {
                ColumnRole::Map => (
                    PanelKind::Map,
                    build_map_panel(&shaded_sets(spec.shading, row, &partition), &rect),
                ),
                ColumnRole::Id => (PanelKind::Id, build_id_panel(group, &rect, standard_row)),
                ColumnRole::Glyph(i) => {
                    let column = &spec.columns[i];
                    (
                        PanelKind::Glyph(column.kind),
                        glyph_panel(&plans[i], column, group, &rect, &tick_sets[i]),
                    )
                }
            };
            panels.push(PlacedPanel {
                row,
                column: c,
                kind,
                geometry,
            });
        }
    }

    Ok(Figure {
        layout,
        partition,
        panels,
        axes,
        warnings: report.warnings,
    })
}
