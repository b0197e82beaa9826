use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use semicrossed::report::{self, ActionSpec, SpecError, DEFAULT_DEGREE};

#[derive(Parser)]
#[command(name = "semicrossed", version, about = "Analyse semicrossed products of finite ℤ²-dynamical systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(clap::Args)]
struct Output {
    /// Output format
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Classify an action and analyse its semicrossed product
    Analyze {
        spec: PathBuf,
        /// Total-degree cap (overrides the spec file; default 8)
        #[arg(long)]
        degree: Option<usize>,
        /// Include the full sorted key list of the generated pattern
        #[arg(long)]
        keys: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Compare the codimension invariants of two actions
    Compare {
        spec_a: PathBuf,
        spec_b: PathBuf,
        #[arg(long)]
        degree: Option<usize>,
        #[command(flatten)]
        output: Output,
    },
    /// Tabulate every commuting pair up to relabeling on 1..=K points
    Sweep {
        #[arg(long)]
        max_k: usize,
        #[arg(long, default_value_t = DEFAULT_DEGREE)]
        degree: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Decompose a perpendicular action into a product of cycles
    Decompose {
        spec: PathBuf,
        #[command(flatten)]
        output: Output,
    },
}

fn load(path: &Path) -> Result<(ActionSpec, semicrossed::Z2Action), SpecError> {
    let spec = ActionSpec::load(path)?;
    let action = spec.action()?;
    Ok((spec, action))
}

fn emit(output: &Output, body: &str) -> Result<(), String> {
    match &output.out {
        Some(path) => std::fs::write(path, body).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => std::io::stdout().write_all(body.as_bytes()).map_err(|e| e.to_string()),
    }
}

fn run(cli: Cli) -> Result<u8, (u8, String)> {
    let input_err = |e: SpecError| (e.exit_code() as u8, e.to_string());
    let io_err = |e: String| (1, e);
    match cli.command {
        Command::Analyze { spec, degree, keys, output } => {
            let (spec, action) = load(&spec).map_err(input_err)?;
            let r = report::analyze(&action, spec.degree_or(degree), keys);
            let body = match output.format {
                Format::Json => report::to_json(&r),
                Format::Text => report::render_report_text(&r),
            };
            emit(&output, &body).map_err(io_err)?;
            Ok(0)
        }
        Command::Compare { spec_a, spec_b, degree, output } => {
            let (sa, a) = load(&spec_a).map_err(input_err)?;
            let (_, b) = load(&spec_b).map_err(input_err)?;
            let r = report::compare(&a, &b, sa.degree_or(degree));
            let body = match output.format {
                Format::Json => report::to_json(&r),
                Format::Text => report::render_compare_text(&r),
            };
            emit(&output, &body).map_err(io_err)?;
            Ok(0)
        }
        Command::Sweep { max_k, degree, output } => {
            let rows = report::sweep(max_k, degree).map_err(input_err)?;
            let body = match output.format {
                Format::Json => report::sweep_jsonl(&rows),
                Format::Text => report::sweep_csv(&rows),
            };
            emit(&output, &body).map_err(io_err)?;
            Ok(0)
        }
        Command::Decompose { spec, output } => {
            let (spec, action) = load(&spec).map_err(input_err)?;
            let r = report::decompose(&action, spec.degree_or(None));
            let body = match output.format {
                Format::Json => report::to_json(&r),
                Format::Text => report::render_decompose_text(&r),
            };
            emit(&output, &body).map_err(io_err)?;
            Ok(if r.perpendicular { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err((code, message)) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}
