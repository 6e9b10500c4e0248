use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use vertix_runner::error::ConfigError;
use vertix_runner::scenario::Scenario;
use vertix_runner::{run, RunOptions};

/// Environment variable naming the directory for reports when `--report`
/// is not given.
const REPORT_DIR_VAR: &str = "VERTIX_REPORT_DIR";

#[derive(Parser)]
#[command(name = "vertix", version, about = "Run identity suites on a scenario file")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the suites of a scenario.
    Run(RunArgs),
}

#[derive(clap::Args)]
struct RunArgs {
    file: PathBuf,
    /// Suite to run; repeat for several. Defaults to the scenario's list.
    #[arg(long = "suite")]
    suites: Vec<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// Maximum polynomial degree of random inputs.
    #[arg(long)]
    degree: Option<u32>,
    /// Cases per randomized identity.
    #[arg(long)]
    cases: Option<usize>,
    /// Report file. Without it the report goes to stdout, and also into
    /// the directory named by VERTIX_REPORT_DIR if set.
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Records,
}

fn execute(args: &RunArgs) -> Result<i32, ConfigError> {
    let scenario = Scenario::load(&args.file)?;
    let opts = RunOptions { suites: args.suites.clone(), seed: args.seed, degree: args.degree, cases: args.cases };
    let report = run(&scenario, &opts)?;
    let (body, ext) = match args.format {
        Format::Text => (report.to_text(), "txt"),
        Format::Records => (report.to_records(true), "jsonl"),
    };
    let target = args
        .report
        .clone()
        .or_else(|| std::env::var_os(REPORT_DIR_VAR).map(|dir| PathBuf::from(dir).join(format!("{}.{ext}", scenario.name))));
    print!("{body}");
    if let Some(path) = target {
        if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
            std::fs::create_dir_all(parent).map_err(|e| ConfigError::Report(path.display().to_string(), e.to_string()))?;
        }
        std::fs::write(&path, &body).map_err(|e| ConfigError::Report(path.display().to_string(), e.to_string()))?;
    }
    Ok(report.exit_code())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let Command::Run(args) = cli.command;
    match execute(&args) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("vertix: {e}");
            ExitCode::from(2)
        }
    }
}
