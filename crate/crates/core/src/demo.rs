//! The two bundled examples: QCEW employment change and OEWS police wages.
//!
//! QCEW values are fully synthetic. OEWS carries published 2023 values for the
//! 18 states in the partial source table; every other cell is synthetic. Both
//! generators use a fixed seed so the files are identical on every run.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::model::{
    GlyphColumnSpec, GlyphKind, PanelSpec, RegionTable, ShadingMode, SortDirection, SortSpec,
    TimeSeriesCube,
};
use crate::region::{RegionId, REGION_COUNT};
use crate::report::ValidationReport;
use crate::spec_io::{ingest_region_table, ingest_time_series};

pub const QCEW_DATASET: &str = "temprates";
pub const QCEW_SERIES: &str = "TSd";
pub const OEWS_DATASET: &str = "PolData";
pub const DEMO_NAMES: [&str; 2] = ["qcew", "oews"];

const SEED: u64 = 20231;

/// A spec with its data files as CSV text.
#[derive(Debug, Clone, PartialEq)]
pub struct Demo {
    pub name: &'static str,
    pub spec: PanelSpec,
    pub table_csv: String,
    /// `(cube name, csv text)`
    pub series_csv: Option<(String, String)>,
}

impl Demo {
    /// Parses the bundled CSV text back into model types.
    pub fn load(&self) -> Result<(RegionTable, Vec<TimeSeriesCube>), ValidationReport> {
        let table = ingest_region_table(&self.table_csv, None, &self.spec.dataset)?.value;
        let mut cubes = Vec::new();
        if let Some((name, text)) = &self.series_csv {
            cubes.push(ingest_time_series(text, name)?.value);
        }
        Ok((table, cubes))
    }
}

pub fn by_name(name: &str) -> Option<Demo> {
    match name {
        "qcew" => Some(qcew()),
        "oews" => Some(oews()),
        _ => None,
    }
}

fn csv_text(comment: &str, header: &[&str], rows: Vec<Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("write to memory");
    for row in rows {
        w.write_record(&row).expect("write to memory");
    }
    let body = String::from_utf8(w.into_inner().expect("flush to memory")).expect("utf-8");
    format!("# {comment}\n{body}")
}

fn column(lab: [&str; 3], kind: GlyphKind) -> GlyphColumnSpec {
    GlyphColumnSpec {
        lab1: lab[0].into(),
        lab2: lab[1].into(),
        lab3: lab[2].into(),
        ..GlyphColumnSpec::new(kind)
    }
}

/// Quarter-by-quarter (center, half-width) of the synthetic one-year % change.
const QCEW_QUARTERS: [(f64, f64); 9] = [
    (0.5, 4.5),
    (-42.0, 14.0),
    (-24.0, 12.0),
    (-23.0, 11.0),
    (-18.0, 10.0),
    (48.0, 25.0),
    (21.0, 12.0),
    (19.0, 10.0),
    (18.0, 12.0),
];

/// Leisure & Hospitality over-the-year employment change, 2020 Q1 to 2022 Q1.
pub fn qcew() -> Demo {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut table_rows = Vec::with_capacity(REGION_COUNT);
    let mut ts_rows = Vec::with_capacity(REGION_COUNT * QCEW_QUARTERS.len());
    for region in RegionId::all() {
        let values: Vec<f64> = QCEW_QUARTERS
            .iter()
            .map(|&(c, h)| (rng.gen_range(c - h..c + h) * 10.0).round() / 10.0)
            .collect();
        let mut row = vec![region.code().to_owned()];
        row.extend(values.iter().map(|v| format!("{v:.1}")));
        table_rows.push(row);
        for (t, v) in values.iter().enumerate() {
            ts_rows.push(vec![
                region.code().to_owned(),
                format!("{:.2}", 2020.0 + 0.25 * t as f64),
                format!("{v:.1}"),
            ]);
        }
    }
    let header: Vec<String> = std::iter::once("state".to_owned())
        .chain((1..=9).map(|i| format!("X{i}")))
        .collect();
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    let table_csv = csv_text(
        "synthetic QCEW-style data: Leisure & Hospitality % change in one-year employment, X1 = 2020 Q1 .. X9 = 2022 Q1",
        &header,
        table_rows,
    );
    let ts_csv = csv_text(
        "synthetic QCEW-style time series: x = year.quarter, y = % change in one-year employment",
        &["state", "x", "y"],
        ts_rows,
    );

    let spec = PanelSpec {
        dataset: QCEW_DATASET.into(),
        title1: "Effects of COVID: QCEW % Change in One-Year Employment".into(),
        title2: "Leisure & Hospitality 2020 Q1 to 2022 Q1".into(),
        shading: ShadingMode::Maptail,
        color_safe: false,
        sort: SortSpec {
            column: "X1".into(),
            direction: SortDirection::Descending,
        },
        columns: vec![
            GlyphColumnSpec {
                lab4: Some("% Change".into()),
                panel_data: Some(QCEW_SERIES.into()),
                ..column(["Over-the-Year Change", "2020 to 2022", "Year.Quarter"], GlyphKind::Ts)
            },
            GlyphColumnSpec {
                col1: Some("X1".into()),
                refval: Some(0.0),
                ..column(["Over-the-Year Change", "2020 Q1", "% Change"], GlyphKind::Dot)
            },
            GlyphColumnSpec {
                col1: Some("X1".into()),
                col2: Some("X9".into()),
                ..column(
                    ["Over-the-year Change", "2020 to 2022", "Percentage Point Change"],
                    GlyphKind::Arrow,
                )
            },
        ],
    };
    Demo {
        name: "qcew",
        spec,
        table_csv,
        series_csv: Some((QCEW_SERIES.into(), ts_csv)),
    }
}

/// Published 2023 values: state, TOT_EMP, LOC_QUO, H_MEAN, A_MEAN, H_MEDIAN.
const OEWS_PUBLISHED: [(&str, f64, f64, f64, f64, f64); 18] = [
    ("AK", 1280.0, 0.96, 45.51, 94660.0, 43.3),
    ("AL", 12770.0, 1.46, 25.13, 52270.0, 24.53),
    ("AR", 5270.0, 0.97, 22.54, 46880.0, 21.3),
    ("AZ", 12580.0, 0.94, 36.73, 76390.0, 36.76),
    ("CA", 68010.0, 0.89, 53.74, 111770.0, 54.55),
    ("CO", 9950.0, 0.83, 41.75, 86840.0, 42.5),
    ("CT", 6660.0, 0.94, 39.04, 81190.0, 41.03),
    ("DC", 5010.0, 1.68, 39.82, 82820.0, 38.48),
    ("DE", 1730.0, 0.87, 39.51, 82180.0, 39.62),
    ("FL", 48030.0, 1.18, 37.73, 78480.0, 32.81),
    ("GA", 23370.0, 1.15, 27.02, 56200.0, 25.83),
    ("HI", 2380.0, 0.91, 43.2, 89850.0, 42.42),
    ("IA", 4920.0, 0.75, 33.91, 70530.0, 33.3),
    ("ID", 2980.0, 0.85, 31.81, 66170.0, 30.34),
    ("IL", 30550.0, 1.19, 42.13, 87630.0, 47.32),
    ("IN", 12430.0, 0.93, 32.5, 67590.0, 31.89),
    ("KS", 5840.0, 0.97, 27.38, 56950.0, 25.56),
    ("KY", 7180.0, 0.86, 24.78, 51540.0, 24.27),
];

const WORK_HOURS_PER_YEAR: f64 = 2080.0;

fn round_to(v: f64, decimals: i32) -> f64 {
    let k = 10f64.powi(decimals);
    (v * k).round() / k
}

/// Employment-weighted mean hourly wage, to the cent.
pub fn national_mean_wage(table: &RegionTable) -> Option<f64> {
    let (mut num, mut den) = (0.0, 0.0);
    for region in RegionId::all() {
        if let (Some(emp), Some(wage)) = (table.value(region, "TOT_EMP"), table.value(region, "StMean")) {
            num += emp * wage;
            den += emp;
        }
    }
    (den > 0.0).then(|| round_to(num / den, 2))
}

/// Police and sheriff patrol officer wages in metropolitan and rural areas.
pub fn oews() -> Demo {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    let header = [
        "state", "TOT_EMP", "LQ", "StMean", "A_MEAN", "H_MEDIAN", "Mmin", "Mmax", "Mmean", "Bmin",
        "Bmax", "Bmean",
    ];
    let mut rows = Vec::with_capacity(REGION_COUNT);
    let mut weighted = (0.0, 0.0);
    for region in RegionId::all() {
        // draw the synthetic fields for every region so published rows do not shift the stream
        let synthetic = (
            rng.gen_range(1280.0..68010.0f64).round(),
            round_to(rng.gen_range(0.75..1.68), 2),
            round_to(rng.gen_range(22.54..53.74), 2),
            rng.gen_range(0.9..1.1f64),
        );
        let (emp, lq, mean, median) = match OEWS_PUBLISHED.iter().find(|p| p.0 == region.code()) {
            Some(&(_, emp, lq, mean, _, median)) => (emp, lq, mean, median),
            None => {
                let (emp, lq, mean, k) = synthetic;
                (emp, lq, mean, round_to((mean * k).clamp(21.3, 54.55), 2))
            }
        };
        let annual = OEWS_PUBLISHED
            .iter()
            .find(|p| p.0 == region.code())
            .map_or((mean * WORK_HOURS_PER_YEAR / 10.0).floor() * 10.0, |p| p.4);

        let mmean = round_to(mean * rng.gen_range(1.0..1.08), 2);
        let bmean = round_to(mean * rng.gen_range(0.8..0.97), 2);
        let mmin = round_to(mmean * rng.gen_range(0.65..0.85), 2);
        let mmax = round_to(mmean * rng.gen_range(1.15..1.4), 2);
        let bmin = round_to(bmean * rng.gen_range(0.65..0.85), 2);
        let bmax = round_to(bmean * rng.gen_range(1.1..1.35), 2);
        weighted.0 += emp * mean;
        weighted.1 += emp;

        let mut row = vec![
            region.code().to_owned(),
            format!("{emp:.0}"),
            format!("{lq:.2}"),
            format!("{mean:.2}"),
            format!("{annual:.0}"),
        ];
        row.extend([median, mmin, mmax, mmean, bmin, bmax, bmean].map(|v| format!("{v:.2}")));
        rows.push(row);
    }
    let table_csv = csv_text(
        "synthetic OEWS-style data for Police & Sheriff Patrol Officers; TOT_EMP, LQ, StMean, A_MEAN and H_MEDIAN are published 2023 values for AK through KY, all other cells are synthetic",
        &header,
        rows,
    );
    let refval = round_to(weighted.0 / weighted.1, 2);

    let spec = PanelSpec {
        dataset: OEWS_DATASET.into(),
        title1: "Police & Sheriff Patrol Officers".into(),
        title2: "Occupational Employment & Wage Statistics 2023".into(),
        shading: ShadingMode::Maptail,
        color_safe: true,
        sort: SortSpec {
            column: "StMean".into(),
            direction: SortDirection::Descending,
        },
        columns: vec![
            GlyphColumnSpec {
                col1: Some("Mmin".into()),
                col2: Some("Mmax".into()),
                refval: Some(refval),
                ..column(["Hourly Wage", "Range-MSA", "Dollars"], GlyphKind::Arrow)
            },
            GlyphColumnSpec {
                col1: Some("Bmin".into()),
                col2: Some("Bmax".into()),
                refval: Some(refval),
                ..column(["Hourly Wage", "Range-BOS", "Dollars"], GlyphKind::Arrow)
            },
            GlyphColumnSpec {
                col1: Some("Bmean".into()),
                col2: Some("Mmean".into()),
                lab4: Some("MSA".into()),
                ..column(["Hourly Wage", "MSA vs. BOS", "BOS"], GlyphKind::Scatdot)
            },
        ],
    };
    Demo {
        name: "oews",
        spec,
        table_csv,
        series_csv: None,
    }
}
