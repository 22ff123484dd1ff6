mod common;

use std::collections::BTreeSet;

use common::{cube, glyph_column, spec, spec_with, table};
use micromap_core::glyph::Shape;
use micromap_core::layout::{
    column_scale, layout_page, nice_ticks, perceptual_groups, sort_regions, ColumnRole, LayoutError,
    LinearScale, PageSize, ID_COLUMN_WIDTH, MAP_COLUMN_WIDTH, MEDIAN_ROW_RATIO, MIN_GLYPH_COLUMN_WIDTH,
};
use micromap_core::map::{shaded_sets, ShadingClass};
use micromap_core::model::{GROUP_SIZES, MEDIAN_GROUP};
use micromap_core::render::build_figure;
use micromap_core::spec_io::{
    ingest_region_table, ingest_time_series, parse_panel_spec, to_json, validate_with, Profile,
    ValidateOptions,
};
use micromap_core::svg::PanelKind;
use micromap_core::{
    link_region, GlyphKind, RegionId, RegionTable, ShadingMode, SortDirection, SortSpec, REGION_COUNT,
};
use proptest::prelude::*;

fn permutation() -> impl Strategy<Value = Vec<RegionId>> {
    Just(RegionId::all().collect::<Vec<_>>()).prop_shuffle()
}

/// Selection sort: repeatedly take the best remaining region.
fn oracle_sort(values: &[Option<f64>], direction: SortDirection) -> Vec<RegionId> {
    let mut remaining: Vec<RegionId> = RegionId::all().collect();
    let mut out = Vec::new();
    while !remaining.is_empty() {
        let mut best = 0;
        for i in 1..remaining.len() {
            let (a, b) = (values[remaining[i].index()], values[remaining[best].index()]);
            let beats = match (a, b) {
                (Some(_), None) => true,
                (None, Some(_)) => false,
                (None, None) => remaining[i].code() < remaining[best].code(),
                (Some(x), Some(y)) if x == y => remaining[i].code() < remaining[best].code(),
                (Some(x), Some(y)) => match direction {
                    SortDirection::Ascending => x < y,
                    SortDirection::Descending => x > y,
                },
            };
            if beats {
                best = i;
            }
        }
        out.push(remaining.remove(best));
    }
    out
}

fn tie_prone_column() -> impl Strategy<Value = Vec<Option<f64>>> {
    prop::collection::vec(
        prop_oneof![4 => (0..6i32).prop_map(|v| Some(v as f64 / 2.0)), 1 => Just(None)],
        REGION_COUNT,
    )
}

fn direction() -> impl Strategy<Value = SortDirection> {
    prop_oneof![Just(SortDirection::Ascending), Just(SortDirection::Descending)]
}

proptest! {
    #[test]
    fn sort_matches_selection_oracle(values in tie_prone_column(), direction in direction()) {
        let table = RegionTable::new("t", vec![("v".into(), values.clone())]).unwrap();
        let order = sort_regions(&table, &SortSpec { column: "v".into(), direction });
        prop_assert_eq!(order, oracle_sort(&values, direction));
    }

    #[test]
    fn sort_is_a_permutation(table in table(), direction in direction()) {
        let order = sort_regions(&table, &SortSpec { column: "a".into(), direction });
        let set: BTreeSet<_> = order.iter().copied().collect();
        prop_assert_eq!(order.len(), REGION_COUNT);
        prop_assert_eq!(set.len(), REGION_COUNT);
    }

    #[test]
    fn reversing_direction_reverses_distinct_values(perm in permutation()) {
        let mut values = vec![None; REGION_COUNT];
        for (i, r) in perm.iter().enumerate() {
            values[r.index()] = Some(i as f64 * 1.5 - 20.0);
        }
        let table = RegionTable::new("t", vec![("v".into(), values)]).unwrap();
        let asc = sort_regions(&table, &SortSpec { column: "v".into(), direction: SortDirection::Ascending });
        let mut desc = sort_regions(&table, &SortSpec { column: "v".into(), direction: SortDirection::Descending });
        desc.reverse();
        prop_assert_eq!(&asc, &desc);
        prop_assert_eq!(asc, perm);
    }

    #[test]
    fn groups_partition_the_order(order in permutation()) {
        let p = perceptual_groups(&order).unwrap();
        let sizes: Vec<_> = p.groups().iter().map(Vec::len).collect();
        prop_assert_eq!(sizes, GROUP_SIZES.to_vec());
        prop_assert_eq!(p.order(), order.clone());
        prop_assert_eq!(p.median_region(), order[25]);
        prop_assert_eq!(p.median_index(), MEDIAN_GROUP);
    }

    #[test]
    fn grouping_rejects_bad_orders(order in permutation(), cut in 0usize..REGION_COUNT) {
        let mut short = order.clone();
        short.remove(cut);
        prop_assert_eq!(perceptual_groups(&short), Err(LayoutError::WrongOrderLength(50)));
        let mut repeated = order.clone();
        let other = (cut + 1) % REGION_COUNT;
        repeated[cut] = order[other];
        prop_assert!(matches!(perceptual_groups(&repeated), Err(LayoutError::RepeatedRegion(_))));
    }

    #[test]
    fn shading_partitions_and_counts(order in permutation()) {
        let p = perceptual_groups(&order).unwrap();
        for mode in ShadingMode::ALL {
            for g in 0..11 {
                let classes = shaded_sets(mode, g, &p);
                let count = |f: &dyn Fn(ShadingClass) -> bool| classes.iter().filter(|c| f(**c)).count();
                let highlighted = count(&|c| matches!(c, ShadingClass::Slot(_) | ShadingClass::Median));
                let tail = count(&|c| c == ShadingClass::Tail);
                let above = count(&|c| c == ShadingClass::BandAbove);
                let below = count(&|c| c == ShadingClass::BandBelow);
                let base = count(&|c| c == ShadingClass::Base);
                prop_assert_eq!(highlighted + tail + above + below + base, REGION_COUNT);
                prop_assert_eq!(highlighted, GROUP_SIZES[g]);
                for (slot, &(_, r)) in p.group(g).iter().enumerate() {
                    let want = if g == MEDIAN_GROUP { ShadingClass::Median } else { ShadingClass::Slot(slot as u8) };
                    prop_assert_eq!(classes[r.index()], want);
                }

                let expected_tail = match mode {
                    ShadingMode::Maptail if g < MEDIAN_GROUP => 5 * g,
                    ShadingMode::Maptail if g > MEDIAN_GROUP => 5 * (10 - g),
                    ShadingMode::Mapcum if g <= MEDIAN_GROUP => 5 * g,
                    ShadingMode::Mapcum => 5 * (g - 1),
                    _ => 0,
                };
                prop_assert_eq!(tail, expected_tail, "{:?} group {}", mode, g);
                // tail members are exactly the regions of the accumulated groups
                for (rank, r) in order.iter().enumerate() {
                    let rg = (0..11).find(|&i| p.group(i).iter().any(|&(_, x)| x == *r)).unwrap();
                    let in_tail = match mode {
                        ShadingMode::Maptail if g < MEDIAN_GROUP => rg < g,
                        ShadingMode::Maptail if g > MEDIAN_GROUP => rg > g,
                        ShadingMode::Mapcum => rg < g && rg != MEDIAN_GROUP,
                        _ => false,
                    };
                    prop_assert_eq!(classes[r.index()] == ShadingClass::Tail, in_tail, "rank {}", rank);
                }

                if mode == ShadingMode::Mapmedian {
                    prop_assert_eq!(above, 25 - if g < MEDIAN_GROUP { 5 } else { 0 });
                    prop_assert_eq!(below, 25 - if g > MEDIAN_GROUP { 5 } else { 0 });
                    prop_assert_eq!(base, if g == MEDIAN_GROUP { 0 } else { 1 });
                } else {
                    prop_assert_eq!(above + below, 0);
                }
            }
        }
    }

    #[test]
    fn maptail_grows_toward_the_median(order in permutation()) {
        let p = perceptual_groups(&order).unwrap();
        let marked = |g: usize| -> BTreeSet<RegionId> {
            let c = shaded_sets(ShadingMode::Maptail, g, &p);
            RegionId::all().filter(|r| c[r.index()] != ShadingClass::Base).collect()
        };
        for g in 0..MEDIAN_GROUP - 1 {
            prop_assert!(marked(g).is_subset(&marked(g + 1)));
        }
        for g in MEDIAN_GROUP + 1..10 {
            prop_assert!(marked(g + 1).is_subset(&marked(g)));
        }
    }

    #[test]
    fn mapcum_marks_a_prefix(order in permutation()) {
        let p = perceptual_groups(&order).unwrap();
        for g in 0..11 {
            let c = shaded_sets(ShadingMode::Mapcum, g, &p);
            let end = GROUP_SIZES[..=g].iter().sum::<usize>();
            for (rank, r) in order.iter().enumerate() {
                let marked = c[r.index()] != ShadingClass::Base;
                let median_skipped = rank == 25 && g > MEDIAN_GROUP;
                prop_assert_eq!(marked, rank < end && !median_skipped);
            }
        }
    }

    #[test]
    fn scale_is_monotone(
        values in prop::collection::vec(-1.0e6..1.0e6f64, 1..60),
        refval in prop::option::of(-1.0e6..1.0e6f64),
        a in -1.0e6..1.0e6f64,
        b in -1.0e6..1.0e6f64,
    ) {
        let s = column_scale(values.iter().copied(), refval, (10.0, 200.0)).unwrap();
        for v in values.iter().chain(refval.iter()) {
            prop_assert!(s.contains(*v));
            let px = s.map(*v);
            prop_assert!((10.0..=200.0).contains(&px));
        }
        if a < b {
            prop_assert!(s.map(a) < s.map(b));
        }
    }

    #[test]
    fn ticks_match_brute_force(lo in -1.0e5..1.0e5f64, span in 1.0e-3..1.0e5f64, max_ticks in 2usize..9) {
        let scale = LinearScale::new((lo, lo + span), (0.0, 100.0)).unwrap();
        let ticks = nice_ticks(&scale, max_ticks);
        prop_assert!(ticks.len() >= 2 && ticks.len() <= max_ticks, "{:?}", ticks);
        for t in &ticks {
            prop_assert!(scale.contains(*t), "{} outside [{}, {}]", t, lo, lo + span);
        }
        let step = ticks[1] - ticks[0];
        for w in ticks.windows(2) {
            prop_assert!(((w[1] - w[0]) - step).abs() <= 1e-9 * step.max(1.0));
        }

        let candidates = nice_steps()
            .map(|s| (s, multiples_in(s, lo, lo + span)))
            .filter(|(_, n)| *n >= 2);
        let fitting = candidates.clone().filter(|(_, n)| *n <= max_ticks).max_by(|a, b| {
            a.1.cmp(&b.1).then(a.0.total_cmp(&b.0))
        });
        match fitting {
            Some((best, n)) => {
                prop_assert_eq!(ticks.len(), n);
                prop_assert!((step - best).abs() <= 1e-9 * best, "step {} want {}", step, best);
                prop_assert!(((ticks[0] / best).round() * best - ticks[0]).abs() <= 1e-9 * best.max(ticks[0].abs()));
            }
            None => {
                let fewest = candidates.map(|(_, n)| n).min().unwrap();
                prop_assert_eq!(ticks.len(), max_ticks);
                let full = multiples_in(step, lo, lo + span);
                prop_assert_eq!(full, fewest);
            }
        }
    }

    #[test]
    fn layout_invariants(
        spec in spec_with(prop::collection::vec(glyph_column(), 0..=6)),
        width in 4.5..12.0f64,
        height in 6.0..14.0f64,
    ) {
        let k = spec.columns.len();
        let result = layout_page(&spec, PageSize { width, height });
        let available = width - MAP_COLUMN_WIDTH - ID_COLUMN_WIDTH;
        if k > 0 && available / (k as f64) < MIN_GLYPH_COLUMN_WIDTH {
            prop_assert!(
                matches!(result, Err(LayoutError::WidthExceeded { .. })),
                "{} columns at width {} gave {:?}", k, width, result.map(|l| l.column_widths)
            );
            return Ok(());
        }
        let layout = result.unwrap();
        prop_assert_eq!(layout.rows(), 11);
        prop_assert_eq!(layout.columns.len(), 2 + k);
        prop_assert_eq!(layout.columns[0], ColumnRole::Map);
        prop_assert_eq!(layout.columns[1], ColumnRole::Id);
        prop_assert!((layout.column_widths[0] - MAP_COLUMN_WIDTH).abs() < 1e-9);
        prop_assert!((layout.column_widths[1] - ID_COLUMN_WIDTH).abs() < 1e-9);
        for w in &layout.column_widths[2..] {
            prop_assert!((w - available / k as f64).abs() < 1e-9);
        }
        let page = micromap_core::layout::Rect::new(0.0, 0.0, width, height);
        let standard = layout.grid[0][0].height;
        for (r, row) in layout.grid.iter().enumerate() {
            prop_assert_eq!(row.len(), 2 + k);
            for (c, rect) in row.iter().enumerate() {
                prop_assert!((rect.width - layout.column_widths[c]).abs() < 1e-9);
                prop_assert!((rect.height - row[0].height).abs() < 1e-9);
                prop_assert!((rect.x - layout.grid[0][c].x).abs() < 1e-9);
                prop_assert!(page.contains_rect(rect));
                prop_assert!(!rect.overlaps(&layout.title_band));
                prop_assert!(!rect.overlaps(&layout.column_header_band));
                prop_assert!(!rect.overlaps(&layout.footer_band));
            }
            if r == MEDIAN_GROUP {
                prop_assert!((row[0].height - MEDIAN_ROW_RATIO * standard).abs() < 1e-9);
            } else {
                prop_assert!((row[0].height - standard).abs() < 1e-9);
            }
        }
        let all: Vec<_> = layout.grid.iter().flatten().collect();
        for (i, a) in all.iter().enumerate() {
            for b in &all[i + 1..] {
                prop_assert!(!a.overlaps(b), "{:?} overlaps {:?}", a, b);
            }
        }
    }

    #[test]
    fn spec_round_trips(spec in spec()) {
        let text = to_json(&spec);
        let back = parse_panel_spec(&text).unwrap();
        prop_assert_eq!(&back, &spec);
        prop_assert_eq!(to_json(&back), text);
    }

    #[test]
    fn validation_is_deterministic_and_located(spec in spec(), table in table(), cube in cube()) {
        let cubes = [cube];
        let options = ValidateOptions { profile: Profile::Library, ..Default::default() };
        let first = validate_with(&spec, &table, &cubes, &options);
        prop_assert_eq!(&first, &validate_with(&spec, &table, &cubes, &options));
        for issue in first.errors.iter().chain(&first.warnings) {
            prop_assert!(!issue.location.0.is_empty());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_figures_stay_inside_their_panels(spec in spec(), table in table(), cube in cube()) {
        let cubes = [cube];
        let options = ValidateOptions { profile: Profile::Library, ..Default::default() };
        let figure = build_figure(&spec, &table, &cubes, &options).unwrap();
        prop_assert_eq!(figure.panels.len(), 11 * (2 + spec.columns.len()));
        for panel in &figure.panels {
            prop_assert!(
                panel.geometry.is_clipped(),
                "{:?} row {} column {}: {:?}",
                panel.kind, panel.row, panel.column,
                panel.geometry.clip_violations().iter().map(|&i| &panel.geometry.primitives[i]).collect::<Vec<_>>()
            );
            if panel.kind == PanelKind::Glyph(GlyphKind::Scatdot) {
                let points: Vec<(String, String)> = panel.geometry.primitives.iter()
                    .filter(|p| p.class == Some("background-point"))
                    .filter_map(|p| match p.shape { Shape::Circle { cx, cy, .. } => Some((format!("{cx:.6}"), format!("{cy:.6}"))), _ => None })
                    .collect();
                for (_, mark) in panel.geometry.marks() {
                    if let Shape::Circle { cx, cy, .. } = mark.shape {
                        let key = (format!("{cx:.6}"), format!("{cy:.6}"));
                        prop_assert!(points.contains(&key));
                    }
                }
            }
        }
    }

    #[test]
    fn figures_are_deterministic(spec in spec(), table in table(), cube in cube()) {
        let cubes = [cube];
        let options = ValidateOptions { profile: Profile::Library, ..Default::default() };
        let a = build_figure(&spec, &table, &cubes, &options).unwrap();
        let b = build_figure(&spec, &table, &cubes, &options).unwrap();
        prop_assert_eq!(a, b);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn spec_parser_never_panics(text in ".{0,200}") {
        let _ = parse_panel_spec(&text);
    }

    #[test]
    fn spec_parser_never_panics_on_json(value in json()) {
        let _ = parse_panel_spec(&value.to_string());
    }

    #[test]
    fn csv_ingestion_never_panics(text in "([a-zA-Z0-9 ,.\"#\\-\n]{0,12}\n?){0,30}") {
        let _ = ingest_region_table(&text, None, "fuzz");
        let _ = ingest_region_table(&text, Some("a"), "fuzz");
        let _ = ingest_time_series(&text, "fuzz");
    }

    #[test]
    fn linking_never_panics(label in ".{0,40}") {
        if let Ok(r) = link_region(&label) {
            prop_assert!(RegionId::all().any(|x| x == r));
        }
    }
}

fn json() -> impl Strategy<Value = serde_json::Value> {
    use serde_json::Value;
    let leaf = prop_oneof![
        Just(Value::Null),
        any::<bool>().prop_map(Value::Bool),
        (-1.0e3..1.0e3f64).prop_map(|f| serde_json::json!(f)),
        prop::sample::select(vec![
            "dot", "arrow", "ts", "scatdot", "boxplot", "maptail", "mapcum", "descending", "X1", "",
        ])
        .prop_map(|s| Value::String(s.to_owned())),
    ];
    leaf.prop_recursive(4, 48, 8, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 0..6).prop_map(Value::Array),
            prop::collection::btree_map(
                prop::sample::select(vec![
                    "dataset", "title1", "title2", "shading", "color_safe", "sort", "columns", "column",
                    "direction", "kind", "lab1", "lab2", "lab3", "lab4", "col1", "col2", "refval",
                    "panel_data", "box_columns", "extra",
                ])
                .prop_map(str::to_owned),
                inner,
                0..8,
            )
            .prop_map(|m| Value::Object(m.into_iter().collect())),
        ]
    })
}

/// Every {1, 2, 2.5, 5} x 10^k step over a range far wider than any test domain needs.
fn nice_steps() -> impl Iterator<Item = f64> + Clone {
    (-8..=8).flat_map(|k| [1.0, 2.0, 2.5, 5.0].map(|m| m * 10f64.powi(k)))
}

/// Number of integer multiples of `step` inside `[lo, hi]`, counted one by one.
fn multiples_in(step: f64, lo: f64, hi: f64) -> usize {
    let start = (lo / step).floor() as i64 - 1;
    let end = (hi / step).ceil() as i64 + 1;
    if end - start > 10_000 {
        return usize::MAX;
    }
    (start..=end)
        .filter(|&n| {
            let t = n as f64 * step;
            t >= lo && t <= hi
        })
        .count()
}

#[test]
fn tick_examples() {
    let ticks = |lo, hi, max| nice_ticks(&LinearScale::new((lo, hi), (0.0, 1.0)).unwrap(), max);
    assert_eq!(ticks(0.0, 100.0, 5), [0.0, 25.0, 50.0, 75.0, 100.0]);
    assert_eq!(ticks(0.0, 1.0, 3), [0.0, 0.5, 1.0]);
    assert_eq!(ticks(-31.75, 6.75, 5), [-30.0, -20.0, -10.0, 0.0]);
}
