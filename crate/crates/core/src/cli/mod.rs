//! Command-line front end.
//!
//! Exit codes: 0 success, 1 configuration error, 2 input or output file
//! error, 3 verification failure.

mod commands;
mod config;
mod output;
mod verify;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

pub use commands::{cmd_cstar, cmd_fig3, cmd_region, load_channel, CommandOutput};
pub use config::{parse_config, ConfigError, Origin, RunConfig, ScenarioKind, KEYS};
pub use output::{
    discrete_csv, fmt_sig, gaussian_csv, multi_csv, parse_rate_rows, svg_plot, CSV_DIGITS,
    DISCRETE_HEADER, GAUSSIAN_HEADER,
};
pub use verify::{run_checks, CheckResult, ClosedForm};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(#[from] ConfigError),
    #[error("{0}")]
    Compute(#[from] crate::Error),
    #[error("{path}: {msg}")]
    Input { path: String, msg: String },
    #[error("{failed} of {total} checks failed")]
    Verification { failed: usize, total: usize },
}

impl CliError {
    pub(crate) fn config(msg: String) -> Self {
        CliError::Config(ConfigError {
            origin: Origin::Missing,
            msg,
        })
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Compute(_) => 1,
            CliError::Input { .. } => 2,
            CliError::Verification { .. } => 3,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "coopmac", version, about = "Rate regions of state-dependent multiple-access channels with cooperating encoders")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Frontier of one scenario's rate region as CSV.
    Region(CommonArgs),
    /// Saturation sum rate of the causal conferencing region.
    Cstar(CommonArgs),
    /// Conferencing frontiers for several capacities in one table.
    Fig3(CommonArgs),
    /// Run the built-in consistency checks.
    Verify(CommonArgs),
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// key=value configuration file.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Override a configuration key; may be repeated.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    pub set: Vec<String>,
    /// Write the main output here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write an SVG plot.
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

impl CommonArgs {
    /// File config, then `--set` overrides, then the output flags.
    pub fn load(&self) -> Result<RunConfig, CliError> {
        let mut cfg = match &self.config {
            Some(path) => {
                let text = fs::read_to_string(path).map_err(|e| CliError::Input {
                    path: path.display().to_string(),
                    msg: e.to_string(),
                })?;
                parse_config(&text)?
            }
            None => RunConfig::default(),
        };
        for kv in &self.set {
            cfg.apply_override(kv)?;
        }
        if self.out.is_some() {
            cfg.out.clone_from(&self.out);
        }
        if self.svg.is_some() {
            cfg.svg.clone_from(&self.svg);
        }
        Ok(cfg)
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::Input {
        path: path.display().to_string(),
        msg: e.to_string(),
    })
}

fn emit(cfg: &RunConfig, out: &CommandOutput) -> Result<(), CliError> {
    for w in &out.warnings {
        eprintln!("{w}");
    }
    match &cfg.out {
        Some(path) => write_file(path, &out.text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.text.as_bytes());
        }
    }
    if let (Some(path), Some(svg)) = (&cfg.svg, &out.svg) {
        write_file(path, svg)?;
    }
    Ok(())
}

fn run_command(cmd: &Command) -> Result<(), CliError> {
    let args = match cmd {
        Command::Region(a) | Command::Cstar(a) | Command::Fig3(a) | Command::Verify(a) => a,
    };
    let cfg = args.load()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| CliError::config(format!("cannot start {} workers: {e}", cfg.workers)))?;
    pool.install(|| match cmd {
        Command::Region(_) => emit(&cfg, &cmd_region(&cfg)?),
        Command::Cstar(_) => emit(&cfg, &cmd_cstar(&cfg)?),
        Command::Fig3(_) => emit(&cfg, &cmd_fig3(&cfg)?),
        Command::Verify(_) => {
            let results = run_checks(&cfg, crate::gaussian::maccm_nc_bounds)?;
            let text: String = results.iter().map(|r| format!("{r}\n")).collect();
            emit(
                &cfg,
                &CommandOutput {
                    text,
                    ..Default::default()
                },
            )?;
            let failed = results.iter().filter(|r| !r.pass).count();
            if failed > 0 {
                return Err(CliError::Verification {
                    failed,
                    total: results.len(),
                });
            }
            Ok(())
        }
    })
}

/// Parse arguments, run, report errors on stderr and return the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run_command(&cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
