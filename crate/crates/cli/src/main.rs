use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use qentropy_cli::{catalog_text, parse_config, run, validate, Overrides};

/// Thread count for parallel sections; the only environment setting read.
const THREADS_VAR: &str = "QENTROPY_THREADS";

#[derive(Parser)]
#[command(name = "qentropy", version, about = "Entropy change and non-Markovianity scenarios")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario and write its tables and report.json.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Output directory; overrides `output.dir` of the config.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Replaces the `seed` parameter of seeded scenarios.
        #[arg(long)]
        seed: Option<u64>,
        /// Replaces the `tolerance` parameter.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Check a config without running it.
    Validate {
        #[arg(long)]
        config: PathBuf,
    },
    /// List scenario kinds and their parameters.
    List,
}

fn configure_threads() -> Result<()> {
    if let Ok(value) = std::env::var(THREADS_VAR) {
        let n: usize = value
            .parse()
            .with_context(|| format!("{THREADS_VAR} must be a positive integer, got `{value}`"))?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn read(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| match cli.command {
        Command::List => {
            print!("{}", catalog_text());
            Ok(true)
        }
        Command::Validate { config } => {
            let diags = validate(&read(&config)?);
            for d in &diags {
                eprintln!("{d}");
            }
            if diags.is_empty() {
                println!("{}: ok", config.display());
            }
            Ok(diags.is_empty())
        }
        Command::Run { config, out, seed, tol } => {
            let text = read(&config)?;
            let cfg = parse_config(&text, &Overrides { seed, tolerance: tol })?;
            let dir = out
                .or(cfg.output_dir)
                .unwrap_or_else(|| PathBuf::from("out").join(cfg.scenario.kind().tag()));
            let report = run(&cfg.scenario, &dir)?;
            print!("{}", report.summary());
            Ok(report.passed)
        }
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
