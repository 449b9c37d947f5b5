use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use gradedproj_cli::commands::RunOptions;
use gradedproj_cli::{exit_code, run, Command, InputError, EXIT_INPUT_ERROR};

/// Multi-graded Proj: relevance, potions, charts, twists.
#[derive(Parser, Debug)]
#[command(name = "gradedproj", version)]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    /// Problem description (JSON).
    #[arg(long)]
    input: PathBuf,
    /// Write the machine-readable report here.
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long, env = "GRADEDPROJ_SEED")]
    seed: Option<u64>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    degree_bound: Option<u32>,
    /// Suppress the human-readable summary.
    #[arg(long)]
    quiet: bool,
    /// Include wall-clock timings in the report (breaks byte-for-byte reproducibility).
    #[arg(long)]
    timings: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT_ERROR as u8)
        }
    }
}

fn execute(cli: &Cli) -> Result<i32, InputError> {
    let input = std::fs::read_to_string(&cli.input)
        .map_err(|e| InputError::Io(format!("{}: {e}", cli.input.display())))?;
    let opts = RunOptions {
        seed: cli.seed,
        samples: cli.samples,
        degree_bound: cli.degree_bound,
        timings: cli.timings,
    };
    let outcome = run(cli.command, &input, opts)?;
    if !cli.quiet {
        for line in &outcome.lines {
            println!("{line}");
        }
    }
    if let Some(path) = &cli.report {
        std::fs::write(path, outcome.report.to_json())
            .map_err(|e| InputError::Io(format!("{}: {e}", path.display())))?;
    }
    Ok(exit_code(outcome.verdict))
}
