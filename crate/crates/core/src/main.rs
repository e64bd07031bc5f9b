use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use solfdtd::config::{parse_config, SimulationConfig};
use solfdtd::experiment::{execute, Command};
use solfdtd::Error;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Sub {
    Run,
    Sweep,
    Convergence,
    Field,
}

/// Bright-soliton propagation with the explicit G-FDTD scheme.
#[derive(Debug, Parser)]
#[command(name = "solfdtd", version)]
struct Cli {
    #[arg(value_enum)]
    command: Sub,
    /// Configuration file; built-in defaults when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory (overrides run.output_dir).
    #[arg(long)]
    out: Option<PathBuf>,
}

fn load(cli: &Cli) -> Result<SimulationConfig, Error> {
    let mut config = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
                path: path.clone(),
                source,
            })?;
            parse_config(&text)?
        }
        None => SimulationConfig::default(),
    };
    if let Some(out) = &cli.out {
        config.run.output_dir = out.clone();
    }
    Ok(config)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command = match cli.command {
        Sub::Run => Command::Run,
        Sub::Sweep => Command::Sweep,
        Sub::Convergence => Command::Convergence,
        Sub::Field => Command::Field,
    };
    match load(&cli).and_then(|c| execute(&c, command)) {
        Ok(report) => {
            print!("{report}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
