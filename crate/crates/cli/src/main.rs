use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use afferm::commands::{self, Format, Outcome};
use afferm::error::CliError;
use afferm::formats::write_file;
use afferm::report::parse_tolerance;
use afferm::verify::{self, DEFAULT_SEED};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "afferm", version, about = "Affine fermionic forms: verification and exploration")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Input JSON file.
    #[arg(long, global = true)]
    input: Option<PathBuf>,

    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,

    /// Override a named tolerance, e.g. `--tol collapse=1e-12`. Repeatable.
    #[arg(long = "tol", global = true, value_name = "NAME=VALUE", value_parser = parse_tolerance)]
    tol: Vec<(String, f64)>,

    /// Kernel export format; `csv` applies to `slater` only.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,

    /// Directory receiving `report.json` and any kernel files.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run every invariant suite.
    Verify,
    /// n-point functions and density kernels of an affine Slater determinant.
    Slater,
    /// Dimension of the antisymmetric multi-affine forms of one degree.
    Conjecture {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        m: usize,
        /// Defaults to `d`.
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Signature of the Kashiwara form of a Lagrangian triple.
    Kashiwara,
    /// Intermediate values of the collapse of one triple.
    CollapseDemo,
}

fn require_input(input: Option<&Path>) -> Result<&Path, CliError> {
    input.ok_or_else(|| CliError::Usage("--input PATH is required for this command".into()))
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let format = match cli.format {
        FormatArg::Json => Format::Json,
        FormatArg::Csv => Format::Csv,
    };
    if format == Format::Csv && !matches!(cli.command, Command::Slater) {
        return Err(CliError::Usage("--format csv is only available for `slater`".into()));
    }
    let input = cli.input.as_deref();
    match &cli.command {
        Command::Verify => {
            let tol = verify::tolerances(&cli.tol)?;
            Ok(Outcome { report: verify::run(cli.seed, &tol)?, files: Vec::new() })
        }
        Command::Slater => commands::slater(require_input(input)?, &cli.tol, format, cli.seed),
        Command::Conjecture { d, m, degree } => commands::conjecture(*d, *m, degree.unwrap_or(*d), &cli.tol),
        Command::Kashiwara => commands::kashiwara(require_input(input)?, &cli.tol),
        Command::CollapseDemo => commands::collapse_demo(input, cli.seed, &cli.tol),
    }
}

fn emit(outcome: &Outcome, out: Option<&Path>) -> Result<(), CliError> {
    let json = outcome.report.to_json();
    print!("{json}");
    if let Some(dir) = out {
        std::fs::create_dir_all(dir).map_err(|source| CliError::Io { path: dir.to_owned(), source })?;
        write_file(&dir.join("report.json"), &json)?;
        for (name, contents) in &outcome.files {
            write_file(&dir.join(name), contents)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = run(&cli).and_then(|outcome| {
        emit(&outcome, cli.out.as_deref())?;
        Ok(outcome.report.exit_code())
    });
    eprintln!("wall time: {:.3} s", start.elapsed().as_secs_f64());
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
