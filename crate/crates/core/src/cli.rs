//! Command-line front end.
//!
//! Settings resolve as flags > `--config` TOML file > built-in defaults. The
//! worker count comes from `--threads`, then `LADDER_QST_THREADS`, then the
//! config file; it never affects the data files.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::dimer::uniform_leg_occupation;
use crate::ensemble::{derive_stream, DEFAULT_REALIZATIONS};
use crate::error::{Error, Result};
use crate::experiments::{
    fig1_transfer_sweep, fig2_leakage_trace, log_spaced_grid, oracle_check_against,
    ordered_baseline, uniform_grid, SweepConfig, TraceConfig, BASELINE_TOL, DEFAULT_DELTAS,
    DEFAULT_N_SITES, DEFAULT_TRACE_DELTA, DEFAULT_TRACE_POINTS, DEFAULT_TRACE_SPAN,
    DEFAULT_TRACE_WS, DEFAULT_W_MAX, DEFAULT_W_MIN, DEFAULT_W_POINTS, ORACLE_TOL,
};
use crate::hamiltonian::{build_effective, build_physical};
use crate::model::{sample_realization, CouplingScheme, LadderParams};
use crate::observables::TransferTiming;
use crate::output::{self, OutputDir};

pub const THREADS_ENV: &str = "LADDER_QST_THREADS";

#[derive(Debug, Parser)]
#[command(name = "ladder-qst", version, about = "Entanglement transfer through disordered two-leg ladders")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Mean end-cell concurrence at τ against disorder W, one series per Δ.
    Fig1(Fig1Args),
    /// Mean branch occupations P⁻(t), P⁺(t) for several W.
    Fig2(Fig2Args),
    /// Compare the uniform-ladder numerics with the closed-form leg population.
    Oracle(OracleArgs),
    /// Concurrence at τ of the clean ladder.
    Baseline(BaselineArgs),
    /// Print one sampled Hamiltonian as row,col,value triplets.
    DumpHamiltonian(DumpArgs),
}

#[derive(Debug, Clone, Args)]
pub struct CommonRunArgs {
    #[arg(long)]
    pub n_sites: Option<usize>,
    #[arg(long)]
    pub realizations: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
    #[arg(long, env = THREADS_ENV)]
    pub threads: Option<usize>,
    /// TOML file with `[fig1]` / `[fig2]` tables.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Evaluate at the exact mirror time of the engineered chain (odd N).
    #[arg(long)]
    pub exact_revival: bool,
    /// Allow Δ > W.
    #[arg(long)]
    pub independent_delta: bool,
    /// Also write per-realization values.
    #[arg(long)]
    pub keep_raw: bool,
}

#[derive(Debug, Clone, Args)]
pub struct Fig1Args {
    #[command(flatten)]
    pub common: CommonRunArgs,
    /// Detuning Δ; repeat for several series.
    #[arg(long = "delta")]
    pub deltas: Vec<f64>,
    #[arg(long)]
    pub w_min: Option<f64>,
    #[arg(long)]
    pub w_max: Option<f64>,
    #[arg(long)]
    pub w_points: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct Fig2Args {
    #[command(flatten)]
    pub common: CommonRunArgs,
    #[arg(long)]
    pub delta: Option<f64>,
    /// Disorder W; repeat for several traces.
    #[arg(long = "w")]
    pub ws: Vec<f64>,
    /// Last time point in units of τ.
    #[arg(long)]
    pub t_max: Option<f64>,
    #[arg(long)]
    pub t_points: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct OracleArgs {
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub delta: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub gamma: f64,
    #[arg(long, default_value_t = 5)]
    pub n_sites: usize,
    /// Last time point in units of 1/J.
    #[arg(long, default_value_t = 20.0)]
    pub t_max: f64,
    #[arg(long, default_value_t = 401)]
    pub t_points: usize,
}

#[derive(Debug, Clone, Args)]
pub struct BaselineArgs {
    #[arg(long, default_value_t = DEFAULT_N_SITES)]
    pub n_sites: usize,
    #[arg(long)]
    pub exact_revival: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DumpBasis {
    Physical,
    PlusMinus,
}

#[derive(Debug, Clone, Args)]
pub struct DumpArgs {
    #[arg(long, default_value_t = DEFAULT_N_SITES)]
    pub n_sites: usize,
    #[arg(long, default_value_t = 1.0)]
    pub w: f64,
    #[arg(long, default_value_t = 0.1)]
    pub delta: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Realization index within the seed.
    #[arg(long, default_value_t = 0)]
    pub index: u64,
    #[arg(long, value_enum, default_value_t = DumpBasis::PlusMinus)]
    pub basis: DumpBasis,
    #[arg(long)]
    pub independent_delta: bool,
    /// Write to a file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Optional settings read from `--config`.
#[derive(Debug, Clone, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    #[serde(default)]
    pub threads: Option<usize>,
    #[serde(default)]
    pub fig1: Fig1File,
    #[serde(default)]
    pub fig2: Fig2File,
}

#[derive(Debug, Clone, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Fig1File {
    pub n_sites: Option<usize>,
    pub deltas: Option<Vec<f64>>,
    pub w_min: Option<f64>,
    pub w_max: Option<f64>,
    pub w_points: Option<usize>,
    pub realizations: Option<usize>,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Fig2File {
    pub n_sites: Option<usize>,
    pub delta: Option<f64>,
    pub w_list: Option<Vec<f64>>,
    pub t_max: Option<f64>,
    pub t_points: Option<usize>,
    pub realizations: Option<usize>,
    pub seed: Option<u64>,
}

fn load_config(path: Option<&Path>) -> Result<ConfigFile> {
    match path {
        None => Ok(ConfigFile::default()),
        Some(p) => {
            let text = fs::read_to_string(p)?;
            toml::from_str(&text)
                .map_err(|e| Error::invalid(format!("config file {}: {e}", p.display())))
        }
    }
}

fn timing(exact: bool) -> TransferTiming {
    if exact {
        TransferTiming::ExactRevival
    } else {
        TransferTiming::Standard
    }
}

/// Resolved sweep settings plus the worker count.
pub fn resolve_fig1(args: &Fig1Args) -> Result<(SweepConfig, usize)> {
    let file = load_config(args.common.config.as_deref())?;
    let f = &file.fig1;
    let c = &args.common;
    let w_min = args.w_min.or(f.w_min).unwrap_or(DEFAULT_W_MIN);
    let w_max = args.w_max.or(f.w_max).unwrap_or(DEFAULT_W_MAX);
    let w_points = args.w_points.or(f.w_points).unwrap_or(DEFAULT_W_POINTS);
    let deltas = if !args.deltas.is_empty() {
        args.deltas.clone()
    } else {
        f.deltas.clone().unwrap_or_else(|| DEFAULT_DELTAS.to_vec())
    };
    let config = SweepConfig {
        n_sites: c.n_sites.or(f.n_sites).unwrap_or(DEFAULT_N_SITES),
        deltas,
        w_grid: log_spaced_grid(w_min, w_max, w_points)?,
        n_realizations: c.realizations.or(f.realizations).unwrap_or(DEFAULT_REALIZATIONS),
        master_seed: c.seed.or(f.seed).unwrap_or(0),
        timing: timing(c.exact_revival),
        independent_delta: c.independent_delta,
        retain_raw: c.keep_raw,
    };
    Ok((config, c.threads.or(file.threads).unwrap_or(0)))
}

pub fn resolve_fig2(args: &Fig2Args) -> Result<(TraceConfig, usize)> {
    let file = load_config(args.common.config.as_deref())?;
    let f = &file.fig2;
    let c = &args.common;
    let t_max = args.t_max.or(f.t_max).unwrap_or(DEFAULT_TRACE_SPAN);
    let t_points = args.t_points.or(f.t_points).unwrap_or(DEFAULT_TRACE_POINTS);
    if !(t_max.is_finite() && t_max >= 0.0) {
        return Err(Error::invalid(format!("t_max must be nonnegative, got {t_max}")));
    }
    let w_list = if !args.ws.is_empty() {
        args.ws.clone()
    } else {
        f.w_list.clone().unwrap_or_else(|| DEFAULT_TRACE_WS.to_vec())
    };
    let config = TraceConfig {
        n_sites: c.n_sites.or(f.n_sites).unwrap_or(DEFAULT_N_SITES),
        delta: args.delta.or(f.delta).unwrap_or(DEFAULT_TRACE_DELTA),
        w_list,
        t_over_tau: uniform_grid(t_max, t_points),
        n_realizations: c.realizations.or(f.realizations).unwrap_or(DEFAULT_REALIZATIONS),
        master_seed: c.seed.or(f.seed).unwrap_or(0),
        timing: timing(c.exact_revival),
        independent_delta: c.independent_delta,
        retain_raw: c.keep_raw,
    };
    Ok((config, c.threads.or(file.threads).unwrap_or(0)))
}

pub fn cmd_fig1(args: &Fig1Args) -> Result<i32> {
    let (config, threads) = resolve_fig1(args)?;
    let result = fig1_transfer_sweep(&config, threads)?;
    let mut dir = OutputDir::create(&args.common.out_dir)?;
    let path = dir.write_file("fig1.csv", |b| output::write_fig1_csv(&result, b))?;
    if config.retain_raw {
        dir.write_file("fig1_raw.csv", |b| output::write_fig1_raw_csv(&result, b))?;
    }
    dir.finish("fig1", &config, config.master_seed, threads)?;
    println!(
        "wrote {} ({} rows, tau = {})",
        path.display(),
        result.axis.len() * result.series.len(),
        result.tau
    );
    Ok(0)
}

pub fn cmd_fig2(args: &Fig2Args) -> Result<i32> {
    let (config, threads) = resolve_fig2(args)?;
    let result = fig2_leakage_trace(&config, threads)?;
    let mut dir = OutputDir::create(&args.common.out_dir)?;
    let path = dir.write_file("fig2.csv", |b| output::write_fig2_csv(&result, b))?;
    if config.retain_raw {
        dir.write_file("fig2_raw.csv", |b| output::write_fig2_raw_csv(&result, b))?;
    }
    dir.finish("fig2", &config, config.master_seed, threads)?;
    println!(
        "wrote {} ({} rows, tau = {})",
        path.display(),
        result.t_over_tau.len() * result.series.len(),
        result.tau
    );
    Ok(0)
}

/// Runs the oracle comparison against `closed_form`; exit 0 iff the
/// deviation stays below the oracle tolerance.
pub fn cmd_oracle_with<F>(args: &OracleArgs, closed_form: F) -> Result<i32>
where
    F: Fn(f64, f64, f64) -> f64,
{
    let times: Vec<f64> = uniform_grid(args.t_max, args.t_points);
    let out = oracle_check_against(args.delta, args.gamma, args.n_sites, &times, closed_form)?;
    println!("max deviation {:e}", out.max_deviation);
    Ok(if out.max_deviation < ORACLE_TOL { 0 } else { 1 })
}

pub fn cmd_oracle(args: &OracleArgs) -> Result<i32> {
    cmd_oracle_with(args, uniform_leg_occupation)
}

pub fn cmd_baseline(args: &BaselineArgs) -> Result<i32> {
    let report = ordered_baseline(args.n_sites, timing(args.exact_revival))?;
    println!(
        "N = {}, tau = {}, C(tau) = {}",
        args.n_sites, report.tau, report.concurrence_at_tau
    );
    Ok(if report.concurrence_at_tau >= 1.0 - BASELINE_TOL { 0 } else { 1 })
}

pub fn cmd_dump(args: &DumpArgs) -> Result<i32> {
    let params = LadderParams {
        n_sites: args.n_sites,
        disorder_w: args.w,
        detuning_delta: args.delta,
        coupling_scheme: CouplingScheme::PstEngineered,
        independent_delta: args.independent_delta,
    };
    params.validate()?;
    let realization = sample_realization(&params, &mut derive_stream(args.seed, args.index))?;
    let h = match args.basis {
        DumpBasis::Physical => build_physical(&realization),
        DumpBasis::PlusMinus => build_effective(&realization),
    };
    match &args.out {
        Some(path) => {
            let mut buf = Vec::new();
            h.write_triplets(&mut buf)?;
            fs::write(path, buf)?;
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            h.write_triplets(&mut lock)?;
            lock.flush()?;
        }
    }
    Ok(0)
}

pub fn dispatch(cli: &Cli) -> Result<i32> {
    match &cli.command {
        Command::Fig1(a) => cmd_fig1(a),
        Command::Fig2(a) => cmd_fig2(a),
        Command::Oracle(a) => cmd_oracle(a),
        Command::Baseline(a) => cmd_baseline(a),
        Command::DumpHamiltonian(a) => cmd_dump(a),
    }
}

/// Parses `args` and runs the command. Usage errors exit 2, runtime failures 1.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}
