use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use rankone_cli::config::{RunConfig, Task};
use rankone_cli::error::CliError;

#[derive(Debug, Parser)]
#[command(name = "rankone", version, about = "Spectral analysis on rank-one symmetric spaces")]
struct Args {
    task: Task,
    /// JSON run configuration.
    #[arg(long)]
    config: PathBuf,
    /// Output directory; overrides `io.output_dir`.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Overrides `params.seed`.
    #[arg(long)]
    seed: Option<u64>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.diagnostic());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(args: Args) -> Result<(), CliError> {
    let mut config = RunConfig::load(&args.config)?;
    if config.task != args.task {
        return Err(CliError::config(
            "task",
            format!(
                "command line asks for {} but the config is for {}",
                args.task, config.task
            ),
        ));
    }
    if let Some(seed) = args.seed {
        config.params.seed = Some(seed);
    }
    if let Some(out) = args.out {
        config.io.output_dir = Some(out);
    }
    let out_dir = config
        .io
        .output_dir
        .clone()
        .unwrap_or_else(|| PathBuf::from(format!("out/{}", config.task)));
    let (report, files) = rankone_cli::run(config, &out_dir)?;
    println!("{} passed={} files={}", report.task, report.passed, files.len());
    Ok(())
}
