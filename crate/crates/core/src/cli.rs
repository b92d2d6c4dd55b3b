//! `eulerian-kit` command-line front end.
//!
//! Exit codes: 0 when every selected check holds, 1 when one fails, 2 on
//! input errors (unreadable or malformed input, unknown generator, a
//! requested check whose precondition the input does not meet).

use std::ffi::OsString;
use std::io::{IsTerminal, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::checks::SearchMode;
use crate::complex::SimplicialComplex;
use crate::generators::GeneratorSpec;
use crate::io::{self, FacetFormat, FormatError};
use crate::report::{render_text, Check, InputDoc, ReportDocument, Selection, SCHEMA_VERSION};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_INPUT: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "eulerian-kit",
    version,
    about = "Invariants and Eulerian-manifold checks for simplicial complexes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print dimension, f- and h-vectors, Euler characteristic, purity and flagness.
    Info(InfoArgs),
    /// Run checks: eulerian, ds, formula, proof, flag, or all (the default).
    Check(CheckArgs),
    /// Write the facets of a generated complex.
    Gen(GenArgs),
    /// Check every facet file in a directory.
    Batch(BatchArgs),
}

#[derive(Debug, Args)]
pub struct SourceArgs {
    /// Build the input from a generator expression, e.g. `suspension(torus7)`.
    #[arg(long = "gen", value_name = "SPEC")]
    pub generator: Option<String>,

    /// Input facet format; defaults to json for `.json` files, plain otherwise.
    #[arg(long, value_name = "plain|json")]
    pub format: Option<FacetFormat>,
}

#[derive(Debug, Args)]
pub struct InfoArgs {
    /// Facet file.
    pub input: Option<PathBuf>,

    #[command(flatten)]
    pub source: SourceArgs,

    /// Emit the JSON report.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// `[INPUT] [CHECK]...`; with `--gen` every argument is a check name.
    #[arg(value_name = "ARGS")]
    pub args: Vec<String>,

    #[command(flatten)]
    pub source: SourceArgs,

    /// Select every theorem check (eulerian, ds, formula, proof).
    #[arg(long)]
    pub all: bool,

    /// Collect every failing face instead of stopping at the first.
    #[arg(long)]
    pub exhaustive: bool,

    /// Emit the JSON report.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    /// Generator expression `name[:p][(arg,arg)]`.
    pub spec: String,

    /// Output path; stdout when omitted.
    #[arg(short = 'o', value_name = "PATH")]
    pub output: Option<PathBuf>,

    /// Output format; defaults to json for `.json` paths, plain otherwise.
    #[arg(long, value_name = "plain|json")]
    pub format: Option<FacetFormat>,
}

#[derive(Debug, Args)]
pub struct BatchArgs {
    /// Directory of facet files. Subdirectories are not searched.
    pub dir: PathBuf,

    /// Checks to run (default: all).
    #[arg(value_name = "CHECK")]
    pub checks: Vec<String>,

    #[arg(long)]
    pub all: bool,

    #[arg(long)]
    pub exhaustive: bool,

    /// Print the summary as JSON.
    #[arg(long)]
    pub json: bool,

    /// Where per-file reports go (default: DIR/reports).
    #[arg(short = 'o', value_name = "DIR")]
    pub output: Option<PathBuf>,

    /// Facet format for every file; detected per file when omitted.
    #[arg(long, value_name = "plain|json")]
    pub format: Option<FacetFormat>,
}

/// A user-facing error with its exit code.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

fn format_error(path: &Path, e: FormatError) -> String {
    match e {
        FormatError::Io { .. } => e.to_string(),
        other => format!("{}:{other}", path.display()),
    }
}

fn load(input: Option<&Path>, source: &SourceArgs) -> Result<(SimplicialComplex, InputDoc), Failure> {
    match (input, &source.generator) {
        (Some(_), Some(_)) => Err(Failure::input("give either an input file or --gen, not both")),
        (None, None) => Err(Failure::input("missing input: give a facet file or --gen SPEC")),
        (None, Some(spec)) => {
            let parsed: GeneratorSpec = spec.parse().map_err(|e| Failure::input(format!("{e}")))?;
            let k = parsed.build().map_err(|e| Failure::input(e.to_string()))?;
            Ok((
                k,
                InputDoc::Generator {
                    spec: parsed.to_string(),
                },
            ))
        }
        (Some(path), None) => {
            let k = io::read_path(path, source.format).map_err(|e| Failure::input(format_error(path, e)))?;
            Ok((
                k,
                InputDoc::File {
                    path: path.display().to_string(),
                },
            ))
        }
    }
}

fn use_color(stream_is_terminal: bool) -> bool {
    stream_is_terminal && std::env::var_os("NO_COLOR").is_none_or(|v| v.is_empty())
}

fn emit(out: &mut dyn Write, doc: &ReportDocument, json: bool, color: bool) -> std::io::Result<()> {
    if json {
        writeln!(out, "{}", doc.to_json())
    } else {
        write!(out, "{}", render_text(doc, color))
    }
}

fn mode(exhaustive: bool) -> SearchMode {
    if exhaustive {
        SearchMode::Exhaustive
    } else {
        SearchMode::FirstFailure
    }
}

fn selection(names: &[String], all: bool) -> Result<Selection, Failure> {
    let mut s = Selection::parse(names).map_err(Failure::input)?;
    if all {
        s.add_all();
    }
    Ok(s)
}

fn cmd_info(args: &InfoArgs, out: &mut dyn Write, color: bool) -> Result<u8, Failure> {
    let (k, input) = load(args.input.as_deref(), &args.source)?;
    let doc = ReportDocument::info(&k, input);
    emit(out, &doc, args.json, color).map_err(|e| Failure::input(e.to_string()))?;
    Ok(EXIT_OK)
}

fn cmd_check(args: &CheckArgs, out: &mut dyn Write, color: bool) -> Result<u8, Failure> {
    let (input, names): (Option<PathBuf>, &[String]) = if args.source.generator.is_some() {
        (None, &args.args)
    } else {
        match args.args.split_first() {
            Some((first, rest)) if first.parse::<Check>().is_err() && first != "all" => {
                (Some(PathBuf::from(first)), rest)
            }
            _ => return Err(Failure::input("missing input: give a facet file or --gen SPEC")),
        }
    };
    let selection = selection(names, args.all)?;
    let (k, input) = load(input.as_deref(), &args.source)?;
    let doc = ReportDocument::check(&k, input, &selection, mode(args.exhaustive));
    emit(out, &doc, args.json, color).map_err(|e| Failure::input(e.to_string()))?;
    Ok(doc.exit_code())
}

fn cmd_gen(args: &GenArgs, out: &mut dyn Write) -> Result<u8, Failure> {
    let spec: GeneratorSpec = args.spec.parse().map_err(|e| Failure::input(format!("{e}")))?;
    let k = spec.build().map_err(|e| Failure::input(e.to_string()))?;
    let format = args
        .format
        .or_else(|| args.output.as_deref().map(FacetFormat::from_path))
        .unwrap_or_default();
    let text = io::render(&k, format);
    match &args.output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display())))?,
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| Failure::input(e.to_string()))?,
    }
    Ok(EXIT_OK)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BatchStatus {
    Pass,
    Fail,
    Error,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatchRow {
    pub file: String,
    pub status: BatchStatus,
    pub failed_checks: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub report: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatchSummary {
    pub schema_version: u32,
    pub files: Vec<BatchRow>,
    pub passed: String,
    pub failed: String,
    pub errors: String,
}

impl BatchSummary {
    fn count(&self, status: BatchStatus) -> usize {
        self.files.iter().filter(|r| r.status == status).count()
    }

    /// 0 when every file passes (or there are none), 2 when every file is an
    /// error, 1 otherwise.
    pub fn exit_code(&self) -> u8 {
        let errors = self.count(BatchStatus::Error);
        if !self.files.is_empty() && errors == self.files.len() {
            EXIT_INPUT
        } else if errors > 0 || self.count(BatchStatus::Fail) > 0 {
            EXIT_FAILED
        } else {
            EXIT_OK
        }
    }
}

fn batch_row(
    path: &Path,
    selection: &Selection,
    mode: SearchMode,
    format: Option<FacetFormat>,
    report_dir: &Path,
) -> BatchRow {
    let file = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default();
    let error_row = |message: String| BatchRow {
        file: file.clone(),
        status: BatchStatus::Error,
        failed_checks: Vec::new(),
        error: Some(message),
        report: None,
    };
    let k = match io::read_path(path, format) {
        Ok(k) => k,
        Err(e) => return error_row(format_error(path, e)),
    };
    let doc = ReportDocument::check(
        &k,
        InputDoc::File {
            path: path.display().to_string(),
        },
        selection,
        mode,
    );
    let report_path = report_dir.join(format!("{file}.report.json"));
    if let Err(e) = std::fs::write(&report_path, doc.to_json() + "\n") {
        return error_row(format!("cannot write {}: {e}", report_path.display()));
    }
    let (status, error) = match doc.exit_code() {
        EXIT_OK => (BatchStatus::Pass, None),
        EXIT_FAILED => (BatchStatus::Fail, None),
        _ => {
            let reasons: Vec<String> = doc
                .checks
                .iter()
                .filter_map(|(name, e)| e.reason.as_ref().map(|r| format!("{name}: {r}")))
                .collect();
            (BatchStatus::Error, Some(reasons.join("; ")))
        }
    };
    BatchRow {
        file,
        status,
        failed_checks: doc.failed_checks().into_iter().map(str::to_owned).collect(),
        error,
        report: Some(report_path.display().to_string()),
    }
}

/// Checks every regular file in `dir`, in parallel, and returns rows sorted
/// by file name.
pub fn run_batch(
    dir: &Path,
    selection: &Selection,
    mode: SearchMode,
    format: Option<FacetFormat>,
    report_dir: &Path,
) -> std::io::Result<BatchSummary> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.is_file())
        .collect();
    paths.sort_by(|a, b| a.file_name().cmp(&b.file_name()));
    if !paths.is_empty() {
        std::fs::create_dir_all(report_dir)?;
    }
    let files: Vec<BatchRow> = paths
        .par_iter()
        .map(|p| batch_row(p, selection, mode, format, report_dir))
        .collect();
    let mut summary = BatchSummary {
        schema_version: SCHEMA_VERSION,
        files,
        passed: String::new(),
        failed: String::new(),
        errors: String::new(),
    };
    summary.passed = summary.count(BatchStatus::Pass).to_string();
    summary.failed = summary.count(BatchStatus::Fail).to_string();
    summary.errors = summary.count(BatchStatus::Error).to_string();
    Ok(summary)
}

fn render_summary(summary: &BatchSummary, color: bool) -> String {
    let paint = |code: &str, s: &str| {
        if color {
            format!("\x1b[{code}m{s}\x1b[0m")
        } else {
            s.to_owned()
        }
    };
    let width = summary
        .files
        .iter()
        .map(|r| r.file.chars().count())
        .max()
        .unwrap_or(0)
        .max("file".len());
    let mut out = format!("{:<width$}  {:<6}  detail\n", "file", "status");
    for row in &summary.files {
        let (status, detail) = match row.status {
            BatchStatus::Pass => (paint("32", "PASS  "), String::new()),
            BatchStatus::Fail => (
                paint("31", "FAIL  "),
                format!("failed: {}", row.failed_checks.join(", ")),
            ),
            BatchStatus::Error => (paint("33", "ERROR "), row.error.clone().unwrap_or_default()),
        };
        out.push_str(format!("{:<width$}  {status}  {detail}", row.file).trim_end());
        out.push('\n');
    }
    out.push_str(&format!(
        "\n{} files: {} passed, {} failed, {} with errors\n",
        summary.files.len(),
        summary.passed,
        summary.failed,
        summary.errors
    ));
    out
}

fn cmd_batch(args: &BatchArgs, out: &mut dyn Write, color: bool) -> Result<u8, Failure> {
    let selection = selection(&args.checks, args.all)?;
    let report_dir = args.output.clone().unwrap_or_else(|| args.dir.join("reports"));
    let summary = run_batch(
        &args.dir,
        &selection,
        mode(args.exhaustive),
        args.format,
        &report_dir,
    )
    .map_err(|e| Failure::input(format!("cannot read {}: {e}", args.dir.display())))?;
    let text = if args.json {
        serde_json::to_string_pretty(&summary).expect("summary serializes") + "\n"
    } else {
        render_summary(&summary, color)
    };
    out.write_all(text.as_bytes())
        .map_err(|e| Failure::input(e.to_string()))?;
    Ok(summary.exit_code())
}

/// Runs a parsed command, writing reports to `out` and diagnostics to `err`.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write, color: bool) -> u8 {
    let result = match &cli.command {
        Command::Info(a) => cmd_info(a, out, color),
        Command::Check(a) => cmd_check(a, out, color),
        Command::Gen(a) => cmd_gen(a, out),
        Command::Batch(a) => cmd_batch(a, out, color),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_from<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli, out, err, false),
        Err(e) => {
            let _ = write!(err, "{e}");
            if e.use_stderr() {
                EXIT_INPUT
            } else {
                EXIT_OK
            }
        }
    }
}

pub fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let color = use_color(stdout.is_terminal());
    let code = run(&cli, &mut stdout.lock(), &mut std::io::stderr(), color);
    ExitCode::from(code)
}
