use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use killing_core::characters::CharTable;
use killing_core::killing::DEFAULT_MATRIX_CAP;
use killing_core::survey::{self, Format, Options, Report};
use killing_core::{build_named_group, DEFAULT_ELEMENT_CAP};

/// Killing forms of conjugacy-class calculi on finite groups.
#[derive(Parser)]
#[command(name = "killing", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Args)]
struct Flags {
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Md, global = true)]
    format: OutputFormat,
    /// Maximum number of group elements to enumerate.
    #[arg(long, default_value_t = DEFAULT_ELEMENT_CAP, global = true)]
    cap: usize,
    /// Maximum Killing matrix dimension.
    #[arg(long, default_value_t = DEFAULT_MATRIX_CAP, global = true)]
    matrix_cap: usize,
    /// Character table JSON to use instead of computing one.
    #[arg(long, global = true)]
    char_table: Option<PathBuf>,
    /// Worker threads for per-class work (0 = all cores).
    #[arg(long, default_value_t = 0, global = true)]
    jobs: usize,
    /// Seed for the random primes used in rank certification.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
    Md,
}

#[derive(Subcommand)]
enum Command {
    /// Per-class table: size, χ, reality, irreducibility, λmax, signature.
    Survey { group: String },
    /// Split each Killing eigenspace of a class into irreducibles.
    Decompose { group: String, class: String },
    /// Quadratic Casimir element of a class calculus.
    Casimir { group: String, class: String },
    /// (class, eigenvalue, multiplicity) for every class.
    Spectrogram { group: String },
}

fn run(cli: Cli) -> Result<(Report, Format)> {
    let f = &cli.flags;
    let group_spec = match &cli.command {
        Command::Survey { group }
        | Command::Decompose { group, .. }
        | Command::Casimir { group, .. }
        | Command::Spectrogram { group } => group,
    };
    let group = build_named_group(group_spec, f.cap).with_context(|| format!("building {group_spec}"))?;
    let char_table = match &f.char_table {
        Some(path) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            Some(CharTable::from_json(&text, &group)?)
        }
        None => None,
    };
    let opts = Options {
        matrix_cap: f.matrix_cap,
        jobs: f.jobs,
        seed: f.seed,
        char_table,
        ..Options::default()
    };
    let report = match &cli.command {
        Command::Survey { .. } => survey::cmd_survey(&group, &opts)?,
        Command::Decompose { class, .. } => survey::cmd_decompose(&group, class, &opts)?,
        Command::Casimir { class, .. } => survey::cmd_casimir(&group, class, &opts)?,
        Command::Spectrogram { .. } => survey::cmd_spectrogram(&group, &opts)?,
    };
    let format = match f.format {
        OutputFormat::Csv => Format::Csv,
        OutputFormat::Json => Format::Json,
        OutputFormat::Md => Format::Markdown,
    };
    Ok((report, format))
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok((report, format)) => {
            print!("{}", report.render(format));
            if report.failures.is_empty() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
