//! `mmst`: render, validate and demo commands.
//!
//! Exit codes: 0 success, 1 validation errors (one JSON object per line on
//! stderr), 2 usage or I/O errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use micromap_core::demo;
use micromap_core::raster::{export, ExportFormat, DEFAULT_DPI, MAX_DPI};
use micromap_core::render::{render_with, RenderError};
use micromap_core::spec_io::{
    ingest_region_table, ingest_time_series, parse_panel_spec, to_json, validate_with, Profile,
    ValidateOptions,
};
use micromap_core::{Issue, PanelSpec, RegionTable, TimeSeriesCube, ValidationReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_IO: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "mmst", version, about = "Linked micromaps for US states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Render a panel spec against its data.
    Render(RenderArgs),
    /// Check a panel spec against its data without rendering.
    Validate(InputArgs),
    /// Write a bundled example: spec, data and rendered SVG.
    Demo(DemoArgs),
}

#[derive(Debug, Args)]
struct InputArgs {
    /// Panel spec JSON.
    #[arg(long)]
    spec: PathBuf,
    /// Region table CSV.
    #[arg(long)]
    data: PathBuf,
    /// Time-series CSV, optionally named: `TSd=path.csv`.
    #[arg(long = "ts", value_name = "[NAME=]PATH")]
    ts: Vec<String>,
    /// Header of the region column (default: state, region or id).
    #[arg(long)]
    region_column: Option<String>,
    #[arg(long, value_enum, default_value_t = ProfileArg::App)]
    profile: ProfileArg,
}

#[derive(Debug, Args)]
struct RenderArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long)]
    out: PathBuf,
    /// Raster resolution for png output.
    #[arg(long, default_value_t = DEFAULT_DPI, value_parser = clap::value_parser!(u32).range(1..=MAX_DPI as i64))]
    dpi: u32,
    /// Output format; defaults to the --out extension, else svg.
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
}

#[derive(Debug, Args)]
struct DemoArgs {
    /// qcew or oews
    name: String,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ProfileArg {
    App,
    Library,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Svg,
    Png,
}

/// A failure that ends the command with an exit code.
enum Failure {
    Invalid(ValidationReport),
    Io(String),
}

impl From<ValidationReport> for Failure {
    fn from(r: ValidationReport) -> Self {
        Failure::Invalid(r)
    }
}

struct Inputs {
    spec: PanelSpec,
    table: RegionTable,
    cubes: Vec<TimeSeriesCube>,
    warnings: Vec<Issue>,
    options: ValidateOptions,
}

/// Runs `mmst` with `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_IO } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(stderr, "{rendered}")
            } else {
                write!(stdout, "{rendered}")
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Render(args) => cmd_render(args, stdout, stderr),
        Command::Validate(args) => cmd_validate(args, stdout, stderr),
        Command::Demo(args) => cmd_demo(args, stdout),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(Failure::Invalid(report)) => {
            print_report(&report, stderr);
            EXIT_INVALID
        }
        Err(Failure::Io(message)) => {
            let _ = writeln!(stderr, "error: {message}");
            EXIT_IO
        }
    }
}

fn print_report(report: &ValidationReport, stderr: &mut dyn Write) {
    for line in report.error_lines() {
        let _ = writeln!(stderr, "{line}");
    }
    print_warnings(&report.warnings, stderr);
}

fn print_warnings(warnings: &[Issue], stderr: &mut dyn Write) {
    for w in warnings {
        let _ = writeln!(stderr, "warning: {w}");
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    fs::write(path, bytes).map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display())))
}

fn stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default()
}

/// Names for `--ts` values. Unnamed files take their file stem, except that a
/// single unnamed file binds to the panel spec's only `panel_data` name.
fn bind_series<'a>(values: &'a [String], spec: &PanelSpec) -> Vec<(String, &'a Path)> {
    let mut bound: Vec<(Option<String>, &Path)> = values
        .iter()
        .map(|v| match v.split_once('=') {
            Some((name, path)) if !name.is_empty() && !name.contains(['/', '\\']) => {
                (Some(name.to_owned()), Path::new(path))
            }
            _ => (None, Path::new(v.as_str())),
        })
        .collect();
    let mut wanted: Vec<&str> = spec
        .columns
        .iter()
        .filter_map(|c| c.panel_data.as_deref())
        .collect();
    wanted.sort_unstable();
    wanted.dedup();
    let unnamed = bound.iter().filter(|(n, _)| n.is_none()).count();
    if wanted.len() == 1 && unnamed == 1 {
        if let Some(entry) = bound.iter_mut().find(|(n, _)| n.is_none()) {
            entry.0 = Some(wanted[0].to_owned());
        }
    }
    bound
        .into_iter()
        .map(|(n, p)| (n.unwrap_or_else(|| stem(p)), p))
        .collect()
}

fn load(args: &InputArgs) -> Result<Inputs, Failure> {
    let spec_text = read(&args.spec)?;
    let data_text = read(&args.data)?;
    let spec = parse_panel_spec(&spec_text).map_err(ValidationReport::from_errors)?;

    let mut report = ValidationReport::new();
    let mut warnings = Vec::new();
    let table = match ingest_region_table(&data_text, args.region_column.as_deref(), &stem(&args.data)) {
        Ok(t) => {
            warnings.extend(t.warnings);
            Some(t.value)
        }
        Err(r) => {
            report.merge(r);
            None
        }
    };
    let mut cubes = Vec::new();
    for (name, path) in bind_series(&args.ts, &spec) {
        let text = read(path)?;
        match ingest_time_series(&text, &name) {
            Ok(c) => {
                warnings.extend(c.warnings);
                cubes.push(c.value);
            }
            Err(r) => report.merge(r),
        }
    }
    let Some(table) = table.filter(|_| report.is_ok()) else {
        report.warnings.splice(0..0, warnings);
        return Err(Failure::Invalid(report));
    };
    let profile = match args.profile {
        ProfileArg::App => Profile::App,
        ProfileArg::Library => Profile::Library,
    };
    Ok(Inputs {
        spec,
        table,
        cubes,
        warnings,
        options: ValidateOptions {
            profile,
            ..Default::default()
        },
    })
}

fn cmd_render(args: RenderArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), Failure> {
    let format = match args.format {
        Some(FormatArg::Svg) => ExportFormat::Svg,
        Some(FormatArg::Png) => ExportFormat::Png,
        None => args
            .out
            .extension()
            .and_then(|e| ExportFormat::parse(&e.to_string_lossy()))
            .unwrap_or(ExportFormat::Svg),
    };
    let inputs = load(&args.input)?;
    print_warnings(&inputs.warnings, stderr);
    let rendered = match render_with(&inputs.spec, &inputs.table, &inputs.cubes, &inputs.options) {
        Ok(r) => r,
        Err(RenderError::Invalid(report)) => return Err(Failure::Invalid(report)),
        Err(RenderError::Layout(e)) => return Err(Failure::Io(e.to_string())),
    };
    print_warnings(&rendered.warnings, stderr);
    let bytes = export(&rendered.svg, format, args.dpi).map_err(|e| Failure::Io(e.to_string()))?;
    write(&args.out, &bytes)?;
    let _ = writeln!(stdout, "wrote {}", args.out.display());
    Ok(())
}

fn cmd_validate(args: InputArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), Failure> {
    let inputs = match load(&args) {
        Ok(i) => i,
        Err(Failure::Invalid(report)) => {
            let _ = writeln!(stdout, "{report}");
            return Err(Failure::Invalid(report));
        }
        Err(e) => return Err(e),
    };
    let mut report = validate_with(&inputs.spec, &inputs.table, &inputs.cubes, &inputs.options);
    report.warnings.splice(0..0, inputs.warnings);
    let _ = writeln!(stdout, "{report}");
    if report.is_ok() {
        print_warnings(&report.warnings, stderr);
        Ok(())
    } else {
        Err(Failure::Invalid(report))
    }
}

fn cmd_demo(args: DemoArgs, stdout: &mut dyn Write) -> Result<(), Failure> {
    let Some(demo) = demo::by_name(&args.name) else {
        return Err(Failure::Io(format!(
            "unknown demo {:?}; choose one of {}",
            args.name,
            demo::DEMO_NAMES.join(", ")
        )));
    };
    let (table, cubes) = demo.load()?;
    let rendered = micromap_core::render::render(&demo.spec, &table, &cubes).map_err(|e| match e {
        RenderError::Invalid(r) => Failure::Invalid(r),
        RenderError::Layout(e) => Failure::Io(e.to_string()),
    })?;
    fs::create_dir_all(&args.out)
        .map_err(|e| Failure::Io(format!("cannot create {}: {e}", args.out.display())))?;

    let mut files: Vec<(String, Vec<u8>)> = vec![
        (format!("{}.spec.json", demo.name), (to_json(&demo.spec) + "\n").into_bytes()),
        (format!("{}.csv", demo.name), demo.table_csv.clone().into_bytes()),
    ];
    if let Some((_, text)) = &demo.series_csv {
        files.push((format!("{}_ts.csv", demo.name), text.clone().into_bytes()));
    }
    files.push((format!("{}.svg", demo.name), rendered.svg.into_bytes()));
    for (name, bytes) in files {
        let path = args.out.join(name);
        write(&path, &bytes)?;
        let _ = writeln!(stdout, "wrote {}", path.display());
    }
    Ok(())
}
