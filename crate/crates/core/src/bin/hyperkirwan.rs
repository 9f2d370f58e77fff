use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use hyperkirwan::cli::{run, Command, Format, Report, RunConfig};
use hyperkirwan::hyperpolygon::EdgeLengths;
use hyperkirwan::{Error, ErrorKind};

/// Exact verification of Kirwan-map abelianization and hyperpolygon
/// cohomology rings.
///
/// Exit status: 0 pass, 1 check failed, 2 usage, 3 non-generic lengths,
/// 4 budget exhausted, 5 i/o error, 6 internal error. Default budgets come
/// from HYPERKIRWAN_MAX_BASIS and HYPERKIRWAN_MAX_DEGREE.
#[derive(Parser)]
#[command(name = "hyperkirwan", version)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Short-subset table of a length vector.
    Shorts(Flags),
    /// Ring presentations and generators.
    Present(Flags),
    /// Annihilator, presentation and formality checks.
    Verify(Flags),
    /// Membership certificates for every nonempty short subset.
    Certify(Flags),
    /// Betti numbers and basis count.
    Betti(Flags),
    /// Localization checks on a fixture.
    LocalizeDemo(Flags),
    /// Every stage.
    Report(Flags),
}

#[derive(clap::Args)]
struct Flags {
    /// Edge lengths, comma separated integers or fractions p/q.
    #[arg(long)]
    xi: Option<String>,
    /// Built-in fixture (projective-line, product, segre) or JSON path.
    #[arg(long)]
    fixture: Option<String>,
    #[arg(long)]
    max_degree: Option<u32>,
    #[arg(long)]
    max_basis: Option<usize>,
    /// json or text.
    #[arg(long, default_value = "json")]
    format: String,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn config(command: Command, f: Flags) -> Result<RunConfig, Error> {
    let mut c = RunConfig::new(command);
    c.format = f.format.parse::<Format>()?;
    c.xi = f.xi.as_deref().map(str::parse::<EdgeLengths>).transpose()?;
    c.fixture = f.fixture;
    if let Some(d) = f.max_degree {
        c.budget.max_degree = d;
    }
    if let Some(b) = f.max_basis {
        c.budget.max_basis = b;
    }
    c.out = f.out;
    Ok(c)
}

fn main() -> ExitCode {
    let (command, flags) = match Cli::parse().command {
        Sub::Shorts(f) => (Command::Shorts, f),
        Sub::Present(f) => (Command::Present, f),
        Sub::Verify(f) => (Command::Verify, f),
        Sub::Certify(f) => (Command::Certify, f),
        Sub::Betti(f) => (Command::Betti, f),
        Sub::LocalizeDemo(f) => (Command::LocalizeDemo, f),
        Sub::Report(f) => (Command::Report, f),
    };
    let config = match config(command, flags) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("hyperkirwan: {e}");
            return ExitCode::from(e.kind().exit_code() as u8);
        }
    };
    let report: Report = run(&config);
    let text = config.render(&report);
    match &config.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("hyperkirwan: cannot write {}: {e}", path.display());
                return ExitCode::from(ErrorKind::Io.exit_code() as u8);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(report.exit_code() as u8)
}
