// SPDX-License-Identifier: Apache-2.0

//! Command-line front end: `ingest`, `indicators`, `env`, `map`,
//! `centrality` and `report`.
//!
//! Exit status is 0 on success, 1 on a usage error and 2 on a data error.

use std::ffi::OsString;

use clap::error::ErrorKind;
use clap::Parser;

pub mod args;
pub mod commands;
pub mod config;
pub mod error;

use args::{Cli, Command};
use config::RunConfig;
use error::{CliError, Result};

pub use citefield::Execution;

/// Variable bounding the number of kernel threads.
pub const THREADS_VAR: &str = "CITEFIELD_THREADS";

fn configure_threads() -> Result<Execution> {
    let Some(raw) = std::env::var_os(THREADS_VAR) else {
        return Ok(Execution::default());
    };
    let threads = raw
        .to_str()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("{THREADS_VAR} must be a positive integer, got {raw:?}")))?;
    if threads == 1 {
        return Ok(Execution::Sequential);
    }
    #[cfg(feature = "parallel")]
    if let Err(err) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
        // the global pool can only be configured once per process
        log::debug!("{err}");
    }
    Ok(Execution::default())
}

/// Flags on top of the optional `--config` file.
pub fn effective_config(cli: &Cli) -> Result<RunConfig> {
    let mut config = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    match &cli.command {
        Command::Ingest { input, out } => {
            input.apply(&mut config);
            set_out(&mut config, out);
        }
        Command::Indicators {
            input,
            window,
            format,
            out,
            ..
        } => {
            input.apply(&mut config);
            if let Some(w) = window {
                config.window = *w;
            }
            set_format(&mut config, format);
            set_out(&mut config, out);
        }
        Command::Env { input, seeds, out } => {
            input.apply(&mut config);
            seeds.apply(&mut config);
            set_out(&mut config, out);
        }
        Command::Map {
            input,
            seeds,
            graph,
            render,
            format,
            out,
        } => {
            input.apply(&mut config);
            seeds.apply(&mut config);
            graph.apply(&mut config);
            render.apply(&mut config).map_err(CliError::Usage)?;
            set_format(&mut config, format);
            set_out(&mut config, out);
        }
        Command::Centrality {
            input,
            seeds,
            graph,
            measures,
            percent,
            format,
            out,
        } => {
            input.apply(&mut config);
            seeds.apply(&mut config);
            graph.apply(&mut config);
            if let Some(m) = measures {
                config.measures = m.clone();
            }
            config.percent |= percent;
            set_format(&mut config, format);
            set_out(&mut config, out);
        }
        Command::Report {
            input,
            seeds,
            graph,
            render,
            window,
            out_dir,
        } => {
            input.apply(&mut config);
            seeds.apply(&mut config);
            graph.apply(&mut config);
            render.apply(&mut config).map_err(CliError::Usage)?;
            if let Some(w) = window {
                config.window = *w;
            }
            if out_dir.is_some() {
                config.out_dir = out_dir.clone();
            }
        }
    }
    commands::validate(&config)?;
    Ok(config)
}

fn set_out(config: &mut RunConfig, out: &Option<std::path::PathBuf>) {
    if out.is_some() {
        config.out = out.clone();
    }
}

fn set_format(config: &mut RunConfig, format: &Option<String>) {
    if format.is_some() {
        config.format = format.clone();
    }
}

fn dispatch(cli: &Cli) -> Result<()> {
    let exec = configure_threads()?;
    let config = effective_config(cli)?;
    match &cli.command {
        Command::Ingest { .. } => commands::ingest(&config),
        Command::Indicators { journals, .. } => commands::indicators(&config, journals),
        Command::Env { .. } => commands::env(&config, exec),
        Command::Map { .. } => commands::map(&config, exec),
        Command::Centrality { .. } => commands::centrality_cmd(&config, exec),
        Command::Report { .. } => commands::report(&config, exec),
    }
}

/// Parses `args` (program name first), runs the command and returns the exit
/// status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
        }
    };
    match dispatch(&cli) {
        Ok(()) => 0,
        Err(err) => {
            eprintln!("citefield: {err}");
            if let CliError::Usage(_) = err {
                eprintln!("run `citefield --help` for usage");
            }
            err.exit_code()
        }
    }
}
