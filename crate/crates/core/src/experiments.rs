//! Drivers for the transfer sweep, the leakage trace, the clean baseline and
//! the uniform-ladder oracle check.

use serde::{Deserialize, Serialize};

use crate::dimer::uniform_leg_occupation;
use crate::ensemble::{
    run_ensemble_with_threads, ConservationDiagnostics, EnsembleConfig, EnsembleStats,
    ObservablePlan, DEFAULT_REALIZATIONS,
};
use crate::error::{Error, Result};
use crate::hamiltonian::{build_effective, build_physical, Leg, StateVector};
use crate::model::{build_pst_couplings, CouplingScheme, DisorderRealization, LadderParams};
use crate::observables::{leg_occupation, transfer_time, TransferReport, TransferTiming};
use crate::spectral::{eigendecompose, evolve_series};

pub const DEFAULT_N_SITES: usize = 30;
pub const DEFAULT_DELTAS: [f64; 3] = [0.05, 0.1, 0.2];
pub const DEFAULT_W_MIN: f64 = 0.2;
pub const DEFAULT_W_MAX: f64 = 10.0;
pub const DEFAULT_W_POINTS: usize = 25;
pub const DEFAULT_TRACE_DELTA: f64 = 0.2;
pub const DEFAULT_TRACE_WS: [f64; 5] = [0.2, 1.0, 2.0, 5.0, 10.0];
pub const DEFAULT_TRACE_SPAN: f64 = 10.0;
pub const DEFAULT_TRACE_POINTS: usize = 200;
pub const ORACLE_TOL: f64 = 1e-8;
pub const BASELINE_TOL: f64 = 1e-6;

/// `points` log-spaced values from `min` to `max` inclusive.
pub fn log_spaced_grid(min: f64, max: f64, points: usize) -> Result<Vec<f64>> {
    if !(min > 0.0 && max >= min && min.is_finite() && max.is_finite()) {
        return Err(Error::invalid(format!(
            "log grid needs 0 < min <= max, got [{min}, {max}]"
        )));
    }
    match points {
        0 => Ok(Vec::new()),
        1 => Ok(vec![min]),
        _ => {
            let (a, b) = (min.ln(), max.ln());
            let step = (b - a) / (points - 1) as f64;
            let mut grid: Vec<f64> = (0..points).map(|k| (a + step * k as f64).exp()).collect();
            grid[0] = min;
            grid[points - 1] = max;
            Ok(grid)
        }
    }
}

/// `points` uniformly spaced values from 0 to `span` inclusive.
pub fn uniform_grid(span: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![0.0],
        _ => (0..points)
            .map(|k| span * k as f64 / (points - 1) as f64)
            .collect(),
    }
}

fn check_strictly_increasing(axis: &[f64], what: &str) -> Result<()> {
    if axis.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::invalid(format!("{what} must be strictly increasing")));
    }
    Ok(())
}

/// Concurrence-versus-`W` sweep, one series per `Δ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub n_sites: usize,
    pub deltas: Vec<f64>,
    pub w_grid: Vec<f64>,
    pub n_realizations: usize,
    pub master_seed: u64,
    #[serde(default)]
    pub timing: TransferTiming,
    #[serde(default)]
    pub independent_delta: bool,
    #[serde(default)]
    pub retain_raw: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            n_sites: DEFAULT_N_SITES,
            deltas: DEFAULT_DELTAS.to_vec(),
            w_grid: log_spaced_grid(DEFAULT_W_MIN, DEFAULT_W_MAX, DEFAULT_W_POINTS)
                .expect("default grid"),
            n_realizations: DEFAULT_REALIZATIONS,
            master_seed: 0,
            timing: TransferTiming::Standard,
            independent_delta: false,
            retain_raw: false,
        }
    }
}

impl SweepConfig {
    fn ensemble(&self, w: f64, delta: f64) -> Result<EnsembleConfig> {
        let params = LadderParams {
            n_sites: self.n_sites,
            disorder_w: w,
            detuning_delta: delta,
            coupling_scheme: CouplingScheme::PstEngineered,
            independent_delta: self.independent_delta,
        };
        params.validate()?;
        let mut cfg = EnsembleConfig::new(
            params,
            self.n_realizations,
            self.master_seed,
            ObservablePlan::ConcurrenceAtTau,
        );
        cfg.timing = self.timing;
        cfg.retain_raw = self.retain_raw;
        Ok(cfg)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSeries {
    pub delta: f64,
    pub points: Vec<EnsembleStats>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub axis: Vec<f64>,
    pub series: Vec<SweepSeries>,
    pub tau: f64,
    pub metadata: SweepConfig,
    pub diagnostics: ConservationDiagnostics,
}

impl SweepResult {
    pub fn series_for(&self, delta: f64) -> Option<&SweepSeries> {
        self.series.iter().find(|s| s.delta == delta)
    }
}

/// Mean end-cell concurrence at `τ` for every `(Δ, W)` pair, starting from
/// `|1,−⟩` on engineered couplings.
pub fn fig1_transfer_sweep(config: &SweepConfig, threads: usize) -> Result<SweepResult> {
    check_strictly_increasing(&config.w_grid, "W grid")?;
    let tau = transfer_time(config.n_sites, config.timing)?;
    let mut diagnostics = ConservationDiagnostics::default();
    let mut series = Vec::with_capacity(config.deltas.len());
    for &delta in &config.deltas {
        let mut points = Vec::with_capacity(config.w_grid.len());
        for &w in &config.w_grid {
            let result = run_ensemble_with_threads(&config.ensemble(w, delta)?, threads)?;
            diagnostics = diagnostics.merge(result.diagnostics);
            points.push(result.concurrence.expect("concurrence plan"));
        }
        series.push(SweepSeries { delta, points });
    }
    Ok(SweepResult {
        axis: config.w_grid.clone(),
        series,
        tau,
        metadata: config.clone(),
        diagnostics,
    })
}

/// Branch-occupation traces, one per `W`, at fixed `Δ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceConfig {
    pub n_sites: usize,
    pub delta: f64,
    pub w_list: Vec<f64>,
    /// Times in units of `τ`.
    pub t_over_tau: Vec<f64>,
    pub n_realizations: usize,
    pub master_seed: u64,
    #[serde(default)]
    pub timing: TransferTiming,
    #[serde(default)]
    pub independent_delta: bool,
    #[serde(default)]
    pub retain_raw: bool,
}

impl Default for TraceConfig {
    fn default() -> Self {
        TraceConfig {
            n_sites: DEFAULT_N_SITES,
            delta: DEFAULT_TRACE_DELTA,
            w_list: DEFAULT_TRACE_WS.to_vec(),
            t_over_tau: uniform_grid(DEFAULT_TRACE_SPAN, DEFAULT_TRACE_POINTS),
            n_realizations: DEFAULT_REALIZATIONS,
            master_seed: 0,
            timing: TransferTiming::Standard,
            independent_delta: false,
            retain_raw: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceSeries {
    pub w: f64,
    pub p_minus: Vec<EnsembleStats>,
    pub p_plus: Vec<EnsembleStats>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceResult {
    pub t_over_tau: Vec<f64>,
    pub tau: f64,
    pub series: Vec<TraceSeries>,
    pub metadata: TraceConfig,
    pub diagnostics: ConservationDiagnostics,
}

/// Mean `P⁻(t)` and `P⁺(t)` from `|1,−⟩` for each `W`.
pub fn fig2_leakage_trace(config: &TraceConfig, threads: usize) -> Result<TraceResult> {
    let tau = transfer_time(config.n_sites, config.timing)?;
    let times: Vec<f64> = config.t_over_tau.iter().map(|x| x * tau).collect();
    let mut diagnostics = ConservationDiagnostics::default();
    let mut series = Vec::with_capacity(config.w_list.len());
    for &w in &config.w_list {
        let params = LadderParams {
            n_sites: config.n_sites,
            disorder_w: w,
            detuning_delta: config.delta,
            coupling_scheme: CouplingScheme::PstEngineered,
            independent_delta: config.independent_delta,
        };
        params.validate()?;
        let mut cfg = EnsembleConfig::new(
            params,
            config.n_realizations,
            config.master_seed,
            ObservablePlan::BranchOccupationTrace(times.clone()),
        );
        cfg.timing = config.timing;
        cfg.retain_raw = config.retain_raw;
        let result = run_ensemble_with_threads(&cfg, threads)?;
        diagnostics = diagnostics.merge(result.diagnostics);
        series.push(TraceSeries {
            w,
            p_minus: result.p_minus,
            p_plus: result.p_plus,
        });
    }
    Ok(TraceResult {
        t_over_tau: config.t_over_tau.clone(),
        tau,
        series,
        metadata: config.clone(),
        diagnostics,
    })
}

/// Clean-ladder transfer at `τ` together with its conservation record.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BaselineOutcome {
    pub report: TransferReport,
    pub diagnostics: ConservationDiagnostics,
}

/// `W = Δ = 0` on engineered couplings, evolved from `|1,−⟩` to `τ`.
pub fn ordered_baseline(n_sites: usize, timing: TransferTiming) -> Result<TransferReport> {
    ordered_baseline_run(n_sites, timing).map(|o| o.report)
}

pub fn ordered_baseline_run(n_sites: usize, timing: TransferTiming) -> Result<BaselineOutcome> {
    let tau = transfer_time(n_sites, timing)?;
    let zeros = vec![0.0; n_sites];
    let clean = DisorderRealization::custom(
        zeros.clone(),
        zeros.clone(),
        zeros,
        build_pst_couplings(n_sites)?,
    )?;
    let h = build_effective(&clean);
    let sys = eigendecompose(&h)?;
    let psi0 = StateVector::minus_state(n_sites, 1)?;
    let psi = crate::spectral::evolve(&sys, &psi0, tau)?;
    let diagnostics = ConservationDiagnostics {
        max_norm_drift: (psi.norm_sqr() - 1.0).abs(),
        max_energy_drift: (h.expectation(&psi)? - h.expectation(&psi0)?).abs(),
    };
    Ok(BaselineOutcome {
        report: TransferReport::from_state(&psi, tau),
        diagnostics,
    })
}

/// Uniform ladder `ε_{n,1} = 0`, `ε_{n,2} = δ`, `γ_n = γ` on engineered
/// couplings (no bonds for a single cell).
pub fn uniform_ladder(n_sites: usize, delta: f64, gamma: f64) -> Result<DisorderRealization> {
    let couplings = if n_sites >= 2 {
        build_pst_couplings(n_sites)?
    } else {
        Vec::new()
    };
    DisorderRealization::uniform(n_sites, delta, gamma, couplings)
}

/// Result of comparing numeric leg-1 populations with a closed form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleOutcome {
    pub max_deviation: f64,
    pub diagnostics: ConservationDiagnostics,
}

/// Largest `|P₁_numeric(t) − P₁_closed(t)|` over `times` for the uniform
/// ladder started on site 1 of leg 1.
pub fn oracle_check(delta: f64, gamma: f64, n_sites: usize, times: &[f64]) -> Result<f64> {
    oracle_check_against(delta, gamma, n_sites, times, uniform_leg_occupation)
        .map(|o| o.max_deviation)
}

/// [`oracle_check`] against an arbitrary closed form `f(δ, γ, t)`.
pub fn oracle_check_against<F>(
    delta: f64,
    gamma: f64,
    n_sites: usize,
    times: &[f64],
    closed_form: F,
) -> Result<OracleOutcome>
where
    F: Fn(f64, f64, f64) -> f64,
{
    let ladder = uniform_ladder(n_sites, delta, gamma)?;
    let psi0 = StateVector::site_state(n_sites, 1, Leg::Leg1)?;
    numeric_vs_closed_form(&ladder, &psi0, delta, gamma, times, closed_form)
}

/// Compares a given ladder and leg-1 initial state with `f(δ, γ, t)`.
pub fn numeric_vs_closed_form<F>(
    ladder: &DisorderRealization,
    psi0: &StateVector,
    delta: f64,
    gamma: f64,
    times: &[f64],
    closed_form: F,
) -> Result<OracleOutcome>
where
    F: Fn(f64, f64, f64) -> f64,
{
    let h = build_physical(ladder);
    let sys = eigendecompose(&h)?;
    let e0 = h.expectation(psi0)?;
    let states = evolve_series(&sys, psi0, times)?;
    let mut out = OracleOutcome {
        max_deviation: 0.0,
        diagnostics: ConservationDiagnostics::default(),
    };
    for (psi, &t) in states.iter().zip(times) {
        let numeric = leg_occupation(psi, Leg::Leg1)?;
        out.max_deviation = out.max_deviation.max((numeric - closed_form(delta, gamma, t)).abs());
        out.diagnostics = out.diagnostics.merge(ConservationDiagnostics {
            max_norm_drift: (psi.norm_sqr() - 1.0).abs(),
            max_energy_drift: (h.expectation(psi)? - e0).abs(),
        });
    }
    Ok(out)
}
