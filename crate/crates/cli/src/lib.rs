//! Command-line front end for `tiltchow`.
//!
//! Exit codes: 0 success, 1 a check or verification failed, 2 bad input or usage.

pub mod classes;
pub mod commands;
pub mod config;
pub mod error;
pub mod expr;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};

use crate::commands::{ChargeArgs, Outcome, WallArgs};
use crate::config::GeometryConfig;
use crate::error::{CliError, CliResult};
use crate::report::Format;

#[derive(Debug, Parser)]
#[command(name = "tiltchow", version, about = "Exact tilt-stability and central-charge computations on numerical Chow rings")]
pub struct Cli {
    /// JSON geometry description.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Built-in geometry: contraction:L3,D3,m | weierstrass:KS2,t | blowup:H3.
    #[arg(long, global = true, value_name = "SPEC")]
    pub builtin: Option<String>,
    #[arg(long, global = true, value_enum, default_value = "human")]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Test the divisor counterexample criterion.
    Check {
        /// Divisor expression; defaults to the geometry's divisor.
        #[arg(long, allow_hyphen_values = true)]
        divisor: Option<String>,
    },
    /// Enumerate candidate numerical walls for a class.
    Walls {
        #[arg(long, default_value = "O_D", allow_hyphen_values = true)]
        class: String,
        #[arg(long, default_value = "-5", allow_hyphen_values = true)]
        beta_min: String,
        #[arg(long, default_value = "5", allow_hyphen_values = true)]
        beta_max: String,
        #[arg(long, default_value = "10", allow_hyphen_values = true)]
        alpha_sq_max: String,
        #[arg(long, default_value_t = 3)]
        max_rank: u32,
        #[arg(long, default_value_t = 10)]
        max_ch1: i64,
    },
    /// Evaluate the central charge of a class.
    Charge {
        #[arg(long, allow_hyphen_values = true)]
        class: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        alpha_sq: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        beta: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        s: String,
        /// Compare three times the lifted charge with the base charge of the transported class.
        #[arg(long)]
        blowup: bool,
    },
    /// Tabulate the counterexample margin across a family.
    Sweep {
        /// contraction:L3,D3 or weierstrass:KS2
        family: String,
        /// Comma-separated values, or an integer range a..b.
        #[arg(long, allow_hyphen_values = true)]
        grid: String,
    },
    /// Check an intersection ring for consistency.
    Validate,
}

fn load_config(cli: &Cli) -> CliResult<GeometryConfig> {
    let mut config = match &cli.config {
        Some(path) => config::read_config(path)?,
        None => GeometryConfig::default(),
    };
    if let Some(b) = &cli.builtin {
        if config.builtin.is_some() || config.divisor_basis.is_some() || config.mult.is_some() {
            return Err(CliError::Usage("--builtin conflicts with the geometry in --config".into()));
        }
        config.builtin = Some(b.clone());
    }
    Ok(config)
}

/// Runs a parsed command without rendering.
pub fn execute(cli: &Cli, command_line: String) -> CliResult<Outcome> {
    let config = load_config(cli)?;
    match &cli.command {
        Command::Check { divisor } => commands::check(command_line, &config, divisor.as_deref()),
        Command::Walls {
            class,
            beta_min,
            beta_max,
            alpha_sq_max,
            max_rank,
            max_ch1,
        } => commands::walls(
            command_line,
            &config,
            &WallArgs {
                class,
                beta_min,
                beta_max,
                alpha_sq_max,
                max_rank: *max_rank,
                max_ch1: *max_ch1,
            },
        ),
        Command::Charge {
            class,
            alpha_sq,
            beta,
            s,
            blowup,
        } => commands::charge(
            command_line,
            &config,
            &ChargeArgs {
                class,
                alpha_sq,
                beta,
                s,
                blowup: *blowup,
            },
        ),
        Command::Sweep { family, grid } => {
            if cli.builtin.is_some() || cli.config.is_some() {
                return Err(CliError::Usage("sweep takes its geometry from the family argument".into()));
            }
            commands::sweep(command_line, family, grid)
        }
        Command::Validate => commands::validate(command_line, &config),
    }
}

fn emit(cli: &Cli, text: &str) -> CliResult<()> {
    match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|source| CliError::Io {
                    path: "stdout".into(),
                    source,
                })
        }
    }
}

/// Entry point shared by the binary and tests; returns the exit code.
pub fn run_from_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let command_line = args
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect::<Vec<_>>()
        .join(" ");
    let start = Instant::now();
    let result = execute(&cli, command_line).and_then(|mut outcome| {
        if cli.format == Format::Json {
            outcome.report.timing_ms = Some(start.elapsed().as_secs_f64() * 1000.0);
        }
        let text = outcome.report.render(cli.format)?;
        emit(&cli, &text)?;
        if cli.format != Format::Human {
            for w in &outcome.report.warnings {
                eprintln!("warning: {w}");
            }
        }
        Ok(outcome.exit_code)
    });
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
