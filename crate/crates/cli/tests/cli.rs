use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use micromap_cli::{run, EXIT_INVALID, EXIT_IO, EXIT_OK};
use serde_json::Value;
use tempfile::TempDir;

struct Outcome {
    code: i32,
    stdout: String,
    stderr: String,
}

fn mmst(args: &[&str]) -> Outcome {
    let mut stdout = Vec::new();
    let mut stderr = Vec::new();
    let argv = std::iter::once("mmst").chain(args.iter().copied());
    let code = run(argv, &mut stdout, &mut stderr);
    Outcome {
        code,
        stdout: String::from_utf8(stdout).unwrap(),
        stderr: String::from_utf8(stderr).unwrap(),
    }
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn demo(name: &str) -> (TempDir, PathBuf) {
    let dir = TempDir::new().unwrap();
    let out = mmst(&["demo", name, "--out", s(dir.path())]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    let path = dir.path().to_path_buf();
    (dir, path)
}

fn edit_spec(dir: &Path, name: &str, f: impl FnOnce(&mut Value)) -> PathBuf {
    let mut spec: Value =
        serde_json::from_str(&fs::read_to_string(dir.join(format!("{name}.spec.json"))).unwrap()).unwrap();
    f(&mut spec);
    let path = dir.join("edited.spec.json");
    fs::write(&path, serde_json::to_string_pretty(&spec).unwrap()).unwrap();
    path
}

fn json_lines(stderr: &str) -> Vec<Value> {
    stderr
        .lines()
        .filter(|l| l.starts_with('{'))
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

fn codes(stderr: &str) -> Vec<String> {
    json_lines(stderr)
        .iter()
        .map(|v| v["code"].as_str().unwrap().to_owned())
        .collect()
}

#[test]
fn qcew_demo_writes_spec_data_series_and_svg() {
    let (_guard, dir) = demo("qcew");
    let mut files: Vec<_> = fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    files.sort();
    assert_eq!(files, ["qcew.csv", "qcew.spec.json", "qcew.svg", "qcew_ts.csv"]);
    let svg = fs::read_to_string(dir.join("qcew.svg")).unwrap();
    assert!(svg.starts_with("<?xml"));
    assert!(svg.contains("Effects of COVID"));
    assert!(fs::read_to_string(dir.join("qcew.csv")).unwrap().starts_with("# synthetic"));
}

#[test]
fn oews_demo_spec_has_arrow_arrow_scatdot() {
    let (_guard, dir) = demo("oews");
    assert!(!dir.join("oews_ts.csv").exists());
    let spec: Value = serde_json::from_str(&fs::read_to_string(dir.join("oews.spec.json")).unwrap()).unwrap();
    let cols = spec["columns"].as_array().unwrap();
    let shape: Vec<_> = cols
        .iter()
        .map(|c| (c["kind"].as_str().unwrap(), c["col1"].as_str().unwrap(), c["col2"].as_str().unwrap()))
        .collect();
    assert_eq!(
        shape,
        [("arrow", "Mmin", "Mmax"), ("arrow", "Bmin", "Bmax"), ("scatdot", "Bmean", "Mmean")]
    );
    assert_eq!(cols[2]["lab4"], "MSA");
    assert_eq!(spec["sort"]["column"], "StMean");
    assert_eq!(spec["sort"]["direction"], "descending");
}

#[test]
fn demo_outputs_validate_clean() {
    for name in ["qcew", "oews"] {
        let (_guard, dir) = demo(name);
        let spec = dir.join(format!("{name}.spec.json"));
        let data = dir.join(format!("{name}.csv"));
        let ts = dir.join(format!("{name}_ts.csv"));
        let mut args = vec!["validate", "--spec", s(&spec), "--data", s(&data)];
        if ts.exists() {
            args.extend(["--ts", s(&ts)]);
        }
        let out = mmst(&args);
        assert_eq!(out.code, EXIT_OK, "{name}: {}", out.stderr);
        assert_eq!(out.stdout.trim(), "0 errors, 0 warnings");
    }
}

#[test]
fn unknown_demo_is_a_usage_error() {
    let dir = TempDir::new().unwrap();
    let out = mmst(&["demo", "foo", "--out", s(dir.path())]);
    assert_eq!(out.code, EXIT_IO);
    assert!(out.stderr.contains("unknown demo"));
}

#[test]
fn render_qcew_writes_svg() {
    let (_guard, dir) = demo("qcew");
    let out_path = dir.join("again.svg");
    let out = mmst(&[
        "render",
        "--spec",
        s(&dir.join("qcew.spec.json")),
        "--data",
        s(&dir.join("qcew.csv")),
        "--ts",
        s(&dir.join("qcew_ts.csv")),
        "--out",
        s(&out_path),
    ]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert_eq!(fs::read(&out_path).unwrap(), fs::read(dir.join("qcew.svg")).unwrap());
}

#[test]
fn named_series_binding() {
    let (_guard, dir) = demo("qcew");
    let ts = format!("TSd={}", s(&dir.join("qcew_ts.csv")));
    let out = mmst(&[
        "validate",
        "--spec",
        s(&dir.join("qcew.spec.json")),
        "--data",
        s(&dir.join("qcew.csv")),
        "--ts",
        &ts,
    ]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);

    let wrong = format!("other={}", s(&dir.join("qcew_ts.csv")));
    let out = mmst(&[
        "validate",
        "--spec",
        s(&dir.join("qcew.spec.json")),
        "--data",
        s(&dir.join("qcew.csv")),
        "--ts",
        &wrong,
    ]);
    assert_eq!(out.code, EXIT_INVALID);
    assert_eq!(codes(&out.stderr), ["UNKNOWN_PANEL_DATA"]);
}

#[test]
fn unknown_column_exits_one_with_json_report() {
    let (_guard, dir) = demo("oews");
    let spec = edit_spec(&dir, "oews", |v| v["columns"][0]["col1"] = "Nope".into());
    let out_path = dir.join("out.svg");
    let out = mmst(&[
        "render",
        "--spec",
        s(&spec),
        "--data",
        s(&dir.join("oews.csv")),
        "--out",
        s(&out_path),
    ]);
    assert_eq!(out.code, EXIT_INVALID);
    assert!(!out_path.exists());
    let lines = json_lines(&out.stderr);
    assert_eq!(lines.len(), 1);
    assert_eq!(lines[0]["code"], "UNKNOWN_COLUMN");
    assert_eq!(lines[0]["location"], "columns[0].col1");
    assert!(lines[0]["message"].as_str().unwrap().contains("Nope"));
}

#[test]
fn unwritable_output_exits_two() {
    let (_guard, dir) = demo("oews");
    let out = mmst(&[
        "render",
        "--spec",
        s(&dir.join("oews.spec.json")),
        "--data",
        s(&dir.join("oews.csv")),
        "--out",
        s(&dir.join("no/such/dir/out.svg")),
    ]);
    assert_eq!(out.code, EXIT_IO);
    assert!(out.stderr.starts_with("error: cannot write"));
}

#[test]
fn missing_input_file_exits_two() {
    let (_guard, dir) = demo("oews");
    let out = mmst(&[
        "validate",
        "--spec",
        s(&dir.join("oews.spec.json")),
        "--data",
        s(&dir.join("absent.csv")),
    ]);
    assert_eq!(out.code, EXIT_IO);
}

#[test]
fn validate_reports_each_error_on_its_own_line() {
    let (_guard, dir) = demo("oews");
    let spec = edit_spec(&dir, "oews", |v| {
        v["sort"]["column"] = "Missing".into();
        v["columns"][2]["col2"] = "Absent".into();
    });
    let out = mmst(&["validate", "--spec", s(&spec), "--data", s(&dir.join("oews.csv"))]);
    assert_eq!(out.code, EXIT_INVALID);
    assert!(out.stdout.starts_with("2 errors"));
    let mut found = codes(&out.stderr);
    found.sort();
    assert_eq!(found, ["UNKNOWN_COLUMN", "UNKNOWN_SORT_COLUMN"]);
}

#[test]
fn missing_data_flag_is_a_usage_error() {
    let (_guard, dir) = demo("oews");
    let out = mmst(&["validate", "--spec", s(&dir.join("oews.spec.json"))]);
    assert_eq!(out.code, EXIT_IO);
    assert!(out.stderr.contains("--data"));
}

#[test]
fn missing_state_row_is_reported() {
    let (_guard, dir) = demo("oews");
    let csv = fs::read_to_string(dir.join("oews.csv")).unwrap();
    let trimmed: String = csv
        .lines()
        .filter(|l| !l.starts_with("DC,"))
        .map(|l| format!("{l}\n"))
        .collect();
    assert_eq!(trimmed.lines().count() + 1, csv.lines().count());
    let data = dir.join("short.csv");
    fs::write(&data, trimmed).unwrap();
    let out = mmst(&["validate", "--spec", s(&dir.join("oews.spec.json")), "--data", s(&data)]);
    assert_eq!(out.code, EXIT_INVALID);
    let lines = json_lines(&out.stderr);
    assert_eq!(lines.len(), 1);
    assert_eq!(lines[0]["code"], "MISSING_REGION");
    assert_eq!(lines[0]["location"], "region:DC");
}

#[test]
fn four_columns_exceed_app_profile_only() {
    let (_guard, dir) = demo("oews");
    let spec = edit_spec(&dir, "oews", |v| {
        let extra = v["columns"][0].clone();
        v["columns"].as_array_mut().unwrap().push(extra);
    });
    let data = dir.join("oews.csv");
    let out = mmst(&["validate", "--spec", s(&spec), "--data", s(&data)]);
    assert_eq!(out.code, EXIT_INVALID);
    assert_eq!(codes(&out.stderr), ["COLUMN_LIMIT"]);

    let out = mmst(&["validate", "--spec", s(&spec), "--data", s(&data), "--profile", "library"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
}

#[test]
fn renders_are_byte_identical() {
    let (_guard, dir) = demo("oews");
    let spec = dir.join("oews.spec.json");
    let data = dir.join("oews.csv");
    let render = |out: &str, extra: &[&str]| {
        let path = dir.join(out);
        let mut args = vec!["render", "--spec", s(&spec), "--data", s(&data), "--out", s(&path)];
        args.extend_from_slice(extra);
        let o = mmst(&args);
        assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
        fs::read(&path).unwrap()
    };
    assert_eq!(render("a.svg", &[]), render("b.svg", &[]));
    let png = render("a.png", &["--dpi", "96"]);
    assert_eq!(&png[..8], b"\x89PNG\r\n\x1a\n");
    assert_eq!(png, render("b.png", &["--dpi", "96"]));
    assert_eq!(render("c.out", &["--format", "png"]), png);
}

#[test]
fn dpi_out_of_range_is_rejected() {
    let (_guard, dir) = demo("oews");
    for dpi in ["0", "1201"] {
        let out = mmst(&[
            "render",
            "--spec",
            s(&dir.join("oews.spec.json")),
            "--data",
            s(&dir.join("oews.csv")),
            "--out",
            s(&dir.join("x.png")),
            "--dpi",
            dpi,
        ]);
        assert_eq!(out.code, EXIT_IO, "dpi {dpi}");
    }
}

#[test]
fn help_exits_zero() {
    let out = mmst(&["--help"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("render"));
}

#[test]
fn binary_exit_codes() {
    let exe = env!("CARGO_BIN_EXE_mmst");
    let dir = TempDir::new().unwrap();
    let ok = Command::new(exe)
        .args(["demo", "oews", "--out", s(dir.path())])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    let spec = edit_spec(dir.path(), "oews", |v| v["sort"]["column"] = "Nope".into());
    let bad = Command::new(exe)
        .args(["validate", "--spec", s(&spec), "--data", s(&dir.path().join("oews.csv"))])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_INVALID));
    assert_eq!(codes(&String::from_utf8(bad.stderr).unwrap()), ["UNKNOWN_SORT_COLUMN"]);
    let usage = Command::new(exe).arg("demo").output().unwrap();
    assert_eq!(usage.status.code(), Some(EXIT_IO));
}
