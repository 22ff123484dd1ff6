#![allow(dead_code)]

use micromap_core::{
    GlyphColumnSpec, GlyphKind, PanelSpec, RegionId, RegionTable, ShadingMode, SortDirection,
    SortSpec, TimeSeriesCube, TsPoint, REGION_COUNT,
};
use proptest::prelude::*;

pub const VALUE_COLUMNS: [&str; 6] = ["a", "b", "c", "d", "e", "f"];
pub const SERIES: &str = "series";

/// A numeric cell: usually present, sometimes missing.
pub fn cell() -> impl Strategy<Value = Option<f64>> {
    prop_oneof![
        9 => (-1.0e4..1.0e4f64).prop_map(Some),
        1 => Just(None),
    ]
}

/// A 51-value column with at least one present value.
pub fn column() -> impl Strategy<Value = Vec<Option<f64>>> {
    (prop::collection::vec(cell(), REGION_COUNT), -1.0e4..1.0e4f64).prop_map(|(mut v, anchor)| {
        if v.iter().all(Option::is_none) {
            v[0] = Some(anchor);
        }
        v
    })
}

pub fn table() -> impl Strategy<Value = RegionTable> {
    prop::collection::vec(column(), VALUE_COLUMNS.len()).prop_map(|cols| {
        RegionTable::new(
            "random",
            VALUE_COLUMNS
                .iter()
                .zip(cols)
                .map(|(n, v)| (n.to_string(), v))
                .collect(),
        )
        .unwrap()
    })
}

pub fn cube() -> impl Strategy<Value = TimeSeriesCube> {
    (2usize..8).prop_flat_map(|len| {
        prop::collection::vec(prop::collection::vec(-100.0..100.0f64, len), REGION_COUNT).prop_map(
            move |ys| {
                let series = ys
                    .into_iter()
                    .map(|y| {
                        y.into_iter()
                            .enumerate()
                            .map(|(i, y)| TsPoint { x: 2000.0 + i as f64, y })
                            .collect()
                    })
                    .collect();
                TimeSeriesCube::new(SERIES, series).unwrap()
            },
        )
    })
}

fn name() -> impl Strategy<Value = String> {
    prop::sample::select(VALUE_COLUMNS.to_vec()).prop_map(str::to_owned)
}

fn label() -> impl Strategy<Value = String> {
    "[A-Za-z &%.]{0,24}"
}

/// A glyph column bound to the columns of [`table`] and to [`SERIES`].
pub fn glyph_column() -> impl Strategy<Value = GlyphColumnSpec> {
    (
        prop::sample::select(GlyphKind::ALL.to_vec()),
        label(),
        label(),
        label(),
        prop::option::of(label()),
        name(),
        name(),
        prop::option::of(-1.0e4..1.0e4f64),
    )
        .prop_map(|(kind, lab1, lab2, lab3, lab4, c1, c2, refval)| {
            let mut col = GlyphColumnSpec::new(kind);
            col.lab1 = lab1;
            col.lab2 = lab2;
            col.lab3 = lab3;
            if kind.allows_lab4() {
                col.lab4 = lab4;
            }
            if kind.allows_refval() {
                col.refval = refval;
            }
            match kind {
                GlyphKind::Dot => col.col1 = Some(c1),
                GlyphKind::Arrow | GlyphKind::Scatdot => {
                    col.col1 = Some(c1);
                    col.col2 = Some(c2);
                }
                GlyphKind::Ts => col.panel_data = Some(SERIES.to_owned()),
                GlyphKind::Boxplot => {
                    col.box_columns = Some(VALUE_COLUMNS[..5].iter().map(|s| s.to_string()).collect())
                }
            }
            col
        })
}

pub fn spec_with(columns: impl Strategy<Value = Vec<GlyphColumnSpec>>) -> impl Strategy<Value = PanelSpec> {
    (
        label(),
        label(),
        prop::sample::select(ShadingMode::ALL.to_vec()),
        any::<bool>(),
        name(),
        any::<bool>(),
        columns,
    )
        .prop_map(|(title1, title2, shading, color_safe, sort, asc, columns)| PanelSpec {
            dataset: "random".into(),
            title1,
            title2,
            shading,
            color_safe,
            sort: SortSpec {
                column: sort,
                direction: if asc { SortDirection::Ascending } else { SortDirection::Descending },
            },
            columns,
        })
}

pub fn spec() -> impl Strategy<Value = PanelSpec> {
    spec_with(prop::collection::vec(glyph_column(), 0..=3))
}

pub fn region(code: &str) -> RegionId {
    RegionId::from_code(code).unwrap()
}
