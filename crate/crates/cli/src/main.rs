use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use nmqed::sweep::ExecMode;
use nmqed_cli::config::{Format, RunConfig};
use nmqed_cli::error::{CliError, CliResult};
use nmqed_cli::presets::{preset, PRESETS};
use nmqed_cli::runner::{execute, RunOptions};

#[derive(Parser, Debug)]
#[command(name = "nmqed", version, about = "Retarded collective emission: presets, runs and sweeps")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output directory (overrides the config's output_dir).
    #[arg(long, global = true, env = "NMQED_OUT")]
    out: Option<PathBuf>,

    /// Table format.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Worker threads for sweeps; 0 = all cores, 1 = sequential.
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,

    /// Integration step.
    #[arg(long, global = true)]
    dt: Option<f64>,

    /// Run length.
    #[arg(long = "t-max", global = true)]
    t_max: Option<f64>,

    /// Late fit window `a,b` in units of the retardation time.
    #[arg(long = "fit-window", global = true, value_parser = parse_window)]
    fit_window: Option<[f64; 2]>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a built-in preset.
    Preset {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(PRESETS))]
        name: String,
        /// Print the preset as a TOML config and exit.
        #[arg(long)]
        print_config: bool,
    },
    /// Run a single-point config.
    Run { config: PathBuf },
    /// Run a config with a [sweep] section.
    Sweep { config: PathBuf },
}

fn parse_window(s: &str) -> Result<[f64; 2], String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(format!("expected a,b, got '{s}'"));
    }
    let a: f64 = parts[0].trim().parse().map_err(|e| format!("{e}"))?;
    let b: f64 = parts[1].trim().parse().map_err(|e| format!("{e}"))?;
    Ok([a, b])
}

const DEFAULT_OUT: &str = "nmqed-out";

fn apply_flags(cli: &Cli, cfg: &mut RunConfig) {
    if let Some(f) = cli.format {
        cfg.format = f;
    }
    if cli.dt.is_some() {
        cfg.dt = cli.dt;
    }
    if cli.t_max.is_some() {
        cfg.t_max = cli.t_max;
    }
    if cli.fit_window.is_some() {
        cfg.late_window = cli.fit_window;
    }
}

fn run(cli: &Cli) -> CliResult<()> {
    let (mut cfg, command) = match &cli.command {
        Command::Preset { name, print_config } => {
            let cfg = preset(name)?;
            if *print_config {
                let mut cfg = cfg;
                apply_flags(cli, &mut cfg);
                print!("{}", cfg.to_toml());
                return Ok(());
            }
            (cfg, format!("preset {name}"))
        }
        Command::Run { config } => {
            let cfg = RunConfig::load(config)?;
            if cfg.sweep.as_ref().is_some_and(|s| !s.is_empty()) {
                return Err(CliError::config("config has a [sweep] section; use the sweep subcommand"));
            }
            (cfg, format!("run {}", config.display()))
        }
        Command::Sweep { config } => {
            let cfg = RunConfig::load(config)?;
            if !cfg.sweep.as_ref().is_some_and(|s| !s.is_empty()) {
                return Err(CliError::config("sweep needs a non-empty [sweep] section"));
            }
            (cfg, format!("sweep {}", config.display()))
        }
    };
    apply_flags(cli, &mut cfg);
    cfg.validate()?;
    let out_dir = cli.out.clone().or_else(|| cfg.output_dir.clone()).unwrap_or_else(|| PathBuf::from(DEFAULT_OUT));
    let opts = RunOptions { out_dir, mode: ExecMode::from_jobs(cli.jobs), command };
    let report = execute(&cfg, &opts)?;
    println!("wrote {} files and {}", report.files.len(), report.manifest.display());
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("nmqed: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
