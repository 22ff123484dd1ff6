//! Converts `assets/us_states.geojson` into a static geometry table.
//!
//! Every feature must carry a `usps` property. Outer rings are kept as-is; DC, RI
//! and DE additionally receive an enlarged circular marker placed offshore so they
//! stay visible at micromap scale (DC is drawn by its marker only).

use std::collections::BTreeMap;
use std::env;
use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

const ASSET: &str = "assets/us_states.geojson";
const MARKER_RADIUS: f64 = 9.0;
const MARKER_SIDES: usize = 16;

/// (code, marker center, keep the real outline)
const MARKERS: [(&str, (f64, f64), bool); 3] = [
    ("DC", (880.0, 292.0), false),
    ("DE", (886.0, 258.0), true),
    ("RI", (935.0, 205.0), true),
];

type Ring = Vec<(f64, f64)>;

fn main() {
    println!("cargo:rerun-if-changed={ASSET}");
    println!("cargo:rerun-if-changed=build.rs");

    let text = fs::read_to_string(ASSET).expect("read geometry asset");
    let doc: serde_json::Value = serde_json::from_str(&text).expect("geometry asset is JSON");
    let features = doc["features"].as_array().expect("FeatureCollection.features");

    let mut shapes: BTreeMap<String, Vec<Ring>> = BTreeMap::new();
    for feature in features {
        let code = feature["properties"]["usps"]
            .as_str()
            .expect("feature without usps property")
            .to_owned();
        let geometry = &feature["geometry"];
        let polygons: Vec<&serde_json::Value> = match geometry["type"].as_str() {
            Some("Polygon") => vec![&geometry["coordinates"]],
            Some("MultiPolygon") => geometry["coordinates"]
                .as_array()
                .expect("MultiPolygon coordinates")
                .iter()
                .collect(),
            other => panic!("unsupported geometry type {other:?} for {code}"),
        };
        let rings = polygons
            .into_iter()
            .map(|polygon| {
                polygon[0]
                    .as_array()
                    .expect("outer ring")
                    .iter()
                    .map(|c| (c[0].as_f64().unwrap(), c[1].as_f64().unwrap()))
                    .collect::<Ring>()
            })
            .collect();
        assert!(shapes.insert(code.clone(), rings).is_none(), "duplicate feature {code}");
    }
    assert_eq!(shapes.len(), 51, "geometry asset must cover 50 states + DC");

    let mut out = String::new();
    writeln!(out, "// @generated by build.rs from {ASSET}").unwrap();
    writeln!(out, "pub(crate) static STATE_SHAPES: [StateShape; 51] = [").unwrap();
    for (code, mut rings) in shapes {
        let marker = MARKERS.iter().find(|(c, _, _)| *c == code);
        let anchor = match marker {
            Some(&(_, center, keep)) => {
                if !keep {
                    rings.clear();
                }
                rings.push(circle(center));
                center
            }
            None => centroid(&rings[0]),
        };
        writeln!(
            out,
            "    StateShape {{ code: {code:?}, anchor: ({:.1}, {:.1}), rings: &[",
            anchor.0, anchor.1
        )
        .unwrap();
        for ring in &rings {
            out.push_str("        &[");
            for (x, y) in ring {
                write!(out, "({x:.1}, {y:.1}),").unwrap();
            }
            out.push_str("],\n");
        }
        writeln!(out, "    ] }},").unwrap();
    }
    writeln!(out, "];").unwrap();

    let dest = PathBuf::from(env::var("OUT_DIR").unwrap()).join("state_shapes.rs");
    fs::write(dest, out).expect("write generated geometry");
}

fn circle((cx, cy): (f64, f64)) -> Ring {
    let mut ring: Ring = (0..MARKER_SIDES)
        .map(|i| {
            let t = i as f64 * std::f64::consts::TAU / MARKER_SIDES as f64;
            (cx + MARKER_RADIUS * t.cos(), cy + MARKER_RADIUS * t.sin())
        })
        .collect();
    ring.push(ring[0]);
    ring
}

/// Area centroid of a closed ring (shoelace).
fn centroid(ring: &[(f64, f64)]) -> (f64, f64) {
    let (mut a, mut cx, mut cy) = (0.0, 0.0, 0.0);
    for w in ring.windows(2) {
        let ((x0, y0), (x1, y1)) = (w[0], w[1]);
        let cross = x0 * y1 - x1 * y0;
        a += cross;
        cx += (x0 + x1) * cross;
        cy += (y0 + y1) * cross;
    }
    a *= 0.5;
    (cx / (6.0 * a), cy / (6.0 * a))
}
