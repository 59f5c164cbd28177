use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use toda_lab::{run, validate, ExperimentConfig, LabError, Preset};

/// Run Toda lattice experiments from JSON configs.
#[derive(Debug, Parser)]
#[command(name = "toda-lab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run an experiment and write its CSV tables and metadata.
    Run {
        config: PathBuf,
        /// Output directory; overrides `output_dir` in the config.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the named operators and gap sets.
    ListPresets,
    /// Check a config without running it.
    Validate { config: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = std::env::var("TODA_LAB_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        // Fails only if the pool already exists.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match execute(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn execute(command: Command) -> Result<ExitCode, LabError> {
    match command {
        Command::ListPresets => {
            println!("name,definition");
            for p in Preset::ALL {
                println!("{},\"{}\"", p.name(), p.definition());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Validate { config } => {
            let cfg = ExperimentConfig::load(&config)?;
            let problems = validate(&cfg);
            if problems.is_empty() {
                println!("{}: ok", config.display());
                Ok(ExitCode::SUCCESS)
            } else {
                for p in &problems {
                    eprintln!("{}: {p}", config.display());
                }
                Ok(ExitCode::from(1))
            }
        }
        Command::Run { config, out } => {
            let cfg = ExperimentConfig::load(&config)?;
            let report = run(&cfg)?;
            let dir = out
                .or_else(|| cfg.output_dir.clone())
                .unwrap_or_else(|| PathBuf::from("."));
            for path in report.write(&dir, &cfg)? {
                println!("wrote {}", path.display());
            }
            for c in &report.checks {
                let status = if c.passed { "PASS" } else { "FAIL" };
                println!(
                    "{status} {}: {:e} {} {:e}",
                    c.name,
                    c.value,
                    c.relation.symbol(),
                    c.bound
                );
            }
            Ok(if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            })
        }
    }
}
