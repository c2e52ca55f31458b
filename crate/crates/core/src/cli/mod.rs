//! `viscoex` command-line front end.
//!
//! Each subcommand reads one JSON config, runs one computation and writes one
//! table. Exit codes: 0 success, 2 configuration or input error, 3 numerical
//! failure, 1 I/O failure on the output file.

pub mod config;
pub mod output;

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use thiserror::Error;

use crate::dispersion::{dispersion_sweep, k_gap};
use crate::exchange::{mc_pair_integrals, quadrature_pair_integrals, ExchangeResult};
use crate::maxwell::{integrate_strain_driven, integrate_stress_driven};
use crate::transition::transition_sweep;
use crate::viscoelastic::{frequency_sweep, lin_space, log_space};
use config::{parse_config, DriveMode, OutputFormat, RunConfig};
use output::{Cell, Table};

pub const RESPONSE_COLUMNS: &[&str] =
    &["omega", "omega_tau", "F", "G_real", "G_imag", "eta_inv_real", "eta_inv_imag"];
pub const MAXWELL_COLUMNS: &[&str] = &["t", "stress", "strain", "strain_rate"];
pub const DISPERSION_COLUMNS: &[&str] =
    &["k", "omega_re_plus", "omega_im_plus", "omega_re_minus", "omega_im_minus"];
pub const EXCHANGE_COLUMNS: &[&str] =
    &["method", "A", "J0", "J_modulated", "E_sym", "E_anti", "stderr_A", "stderr_J0"];
pub const TRANSITION_COLUMNS: &[&str] = &["omega_tau", "F", "regime", "J_modulated", "splitting"];

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("output error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

impl From<crate::Error> for CliError {
    fn from(e: crate::Error) -> Self {
        match e {
            crate::Error::Numerical(m) => CliError::Numerical(m),
            crate::Error::Domain(m) | crate::Error::Config(m) => CliError::Config(m),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "viscoex", version, about = "Viscoelastic response and dynamically modulated exchange")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// JSON run configuration
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Output file
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Output format, overrides the config file
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,

    /// Monte Carlo seed, overrides the config file
    #[arg(long, global = true, value_name = "U64")]
    seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, Subcommand)]
enum Command {
    /// Frequency sweep of F, G(ω) and 1/η(ω)
    Response,
    /// Time-domain Maxwell integration
    Maxwell,
    /// Shear-wave dispersion and the wavevector gap
    Dispersion,
    /// Direct and exchange integrals, quadrature and Monte Carlo
    Exchange,
    /// Regime classification across a sweep of relaxation times
    Transition,
}

/// Parses `argv` (including the program name), runs the subcommand and
/// returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("viscoex: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: &Cli) -> Result<(), CliError> {
    let config_path = cli.config.as_ref().ok_or_else(|| CliError::Config("--config is required".into()))?;
    let out = cli.out.as_ref().ok_or_else(|| CliError::Config("--out is required".into()))?;
    let mut config = parse_config(config_path)?;
    if let Some(seed) = cli.seed {
        config.mc.seed = seed;
    }
    if let Some(format) = cli.format {
        config.format = format;
    }
    let table = build_table(cli.command, &config)?;
    let text = table.render(config.format)?;
    fs::write(out, text).map_err(|e| CliError::Io(format!("cannot write {}: {e}", out.display())))
}

fn build_table(command: Command, config: &RunConfig) -> Result<Table, CliError> {
    match command {
        Command::Response => response_table(config),
        Command::Maxwell => maxwell_table(config),
        Command::Dispersion => dispersion_table(config),
        Command::Exchange => exchange_table(config),
        Command::Transition => transition_table(config),
    }
}

pub fn response_table(config: &RunConfig) -> Result<Table, CliError> {
    let g = config.grid;
    let grid = log_space(g.min, g.max, g.count)?;
    let mut table = Table::new(RESPONSE_COLUMNS);
    for s in frequency_sweep(&grid, &config.fluid)? {
        table.push(
            [s.omega, s.omega_tau, s.f, s.g_real, s.g_imag, s.eta_inv_real, s.eta_inv_imag]
                .map(Cell::Num)
                .to_vec(),
        );
    }
    Ok(table)
}

pub fn maxwell_table(config: &RunConfig) -> Result<Table, CliError> {
    let m = &config.maxwell;
    let series = match m.mode {
        DriveMode::Stress => integrate_stress_driven(&m.drive, &config.fluid, m.dt, m.horizon)?,
        DriveMode::Strain => integrate_strain_driven(&m.drive, &config.fluid, m.dt, m.horizon)?,
    };
    let mut table = Table::new(MAXWELL_COLUMNS);
    for i in 0..series.len() {
        table.push(
            [series.t[i], series.stress[i], series.strain[i], series.strain_rate[i]]
                .map(Cell::Num)
                .to_vec(),
        );
    }
    Ok(table)
}

pub fn dispersion_table(config: &RunConfig) -> Result<Table, CliError> {
    let d = &config.dispersion;
    let k_max = match d.k_max {
        Some(k) => k,
        None => 4.0 * k_gap(&config.fluid)?,
    };
    let grid = if d.count == 1 { vec![d.k_min] } else { lin_space(d.k_min, k_max, d.count)? };
    let mut table = Table::new(DISPERSION_COLUMNS);
    for p in dispersion_sweep(&grid, &config.fluid)? {
        table.push(
            [p.k, p.omega_plus.re, p.omega_plus.im, p.omega_minus.re, p.omega_minus.im]
                .map(Cell::Num)
                .to_vec(),
        );
    }
    Ok(table)
}

fn exchange_row(r: &ExchangeResult) -> Vec<Cell> {
    let opt = |v: Option<f64>| v.map(Cell::Num).unwrap_or(Cell::Empty);
    vec![
        Cell::Text(r.method.as_str()),
        Cell::Num(r.a),
        Cell::Num(r.j0),
        Cell::Num(r.j_modulated),
        Cell::Num(r.e_sym),
        Cell::Num(r.e_anti),
        opt(r.stderr_a),
        opt(r.stderr_j0),
    ]
}

pub fn exchange_table(config: &RunConfig) -> Result<Table, CliError> {
    let [o1, o2] = &config.orbitals;
    let quad = quadrature_pair_integrals(o1, o2, &config.kernel, &config.quadrature)?
        .modulated(config.exchange_omega_tau)?;
    let mc = mc_pair_integrals(o1, o2, &config.kernel, config.mc.n_samples, config.mc.seed)?
        .modulated(config.exchange_omega_tau)?;
    let mut table = Table::new(EXCHANGE_COLUMNS);
    table.push(exchange_row(&quad));
    table.push(exchange_row(&mc));
    Ok(table)
}

pub fn transition_table(config: &RunConfig) -> Result<Table, CliError> {
    let t = &config.transition;
    let grid = log_space(t.tau_grid.min, t.tau_grid.max, t.tau_grid.count)?;
    let sweep = transition_sweep(t.probe, &grid, &config.thresholds, t.j0)?;
    let opt = |v: Option<f64>| v.map(Cell::Num).unwrap_or(Cell::Empty);
    let mut table = Table::new(TRANSITION_COLUMNS);
    for r in &sweep.rows {
        table.push(vec![
            Cell::Num(r.omega_tau),
            Cell::Num(r.f),
            Cell::Text(r.regime.as_str()),
            opt(r.j_modulated),
            opt(r.splitting),
        ]);
    }
    Ok(table)
}
