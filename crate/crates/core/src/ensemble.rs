//! Seeded Monte Carlo over disorder realizations.
//!
//! Realization `i` of a run with master seed `s` draws from ChaCha8 seeded by
//! `seed_from_u64(s)` and switched to stream `i` (`set_stream(i)`, word
//! position 0). That rule is part of the output contract: two runs with the
//! same seed see the same realizations regardless of worker count or
//! scheduling. Per-realization results are collected by index and reduced
//! sequentially, so aggregated floats are bitwise reproducible.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hamiltonian::{build_effective, Branch, StateVector};
use crate::model::{sample_realization, LadderParams, SeedTag};
use crate::observables::{branch_occupation, concurrence, transfer_time, TransferTiming};
use crate::spectral::{check_time_grid, eigendecompose};

pub const DEFAULT_REALIZATIONS: usize = 100;

/// Random stream owned by one realization.
#[derive(Debug, Clone)]
pub struct RealizationStream {
    rng: ChaCha8Rng,
    tag: SeedTag,
}

impl RealizationStream {
    pub fn tag(&self) -> SeedTag {
        self.tag
    }

    pub fn rng_mut(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }
}

/// Stream for realization `index` under `master_seed`.
pub fn derive_stream(master_seed: u64, index: u64) -> RealizationStream {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(index);
    RealizationStream {
        rng,
        tag: SeedTag { master_seed, index },
    }
}

/// What to measure on each realization.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ObservablePlan {
    /// End-cell concurrence at the transfer time.
    ConcurrenceAtTau,
    /// `P⁻(t)` and `P⁺(t)` on an ascending grid of absolute times.
    BranchOccupationTrace(Vec<f64>),
    Both(Vec<f64>),
}

impl ObservablePlan {
    fn wants_concurrence(&self) -> bool {
        matches!(self, ObservablePlan::ConcurrenceAtTau | ObservablePlan::Both(_))
    }

    fn times(&self) -> &[f64] {
        match self {
            ObservablePlan::ConcurrenceAtTau => &[],
            ObservablePlan::BranchOccupationTrace(t) | ObservablePlan::Both(t) => t,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleConfig {
    pub params: LadderParams,
    pub n_realizations: usize,
    pub master_seed: u64,
    pub observable_plan: ObservablePlan,
    #[serde(default)]
    pub timing: TransferTiming,
    /// Keep every per-realization value alongside the moments.
    #[serde(default)]
    pub retain_raw: bool,
}

impl EnsembleConfig {
    pub fn new(params: LadderParams, n_realizations: usize, master_seed: u64, plan: ObservablePlan) -> Self {
        EnsembleConfig {
            params,
            n_realizations,
            master_seed,
            observable_plan: plan,
            timing: TransferTiming::Standard,
            retain_raw: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        if self.n_realizations == 0 {
            return Err(Error::invalid("n_realizations must be at least 1"));
        }
        check_time_grid(self.observable_plan.times())
    }
}

/// Sample mean, standard error `s/√n` and count of one observable.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleStats {
    pub mean: f64,
    pub std_error: f64,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub per_realization: Option<Vec<f64>>,
}

impl EnsembleStats {
    /// Moments of `values`, summed in order.
    pub fn from_values(values: &[f64], retain: bool) -> Self {
        let n = values.len();
        if n == 0 {
            return EnsembleStats {
                mean: f64::NAN,
                std_error: f64::NAN,
                n: 0,
                per_realization: retain.then(Vec::new),
            };
        }
        let (lo, hi) = values
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
        let mean = (values.iter().sum::<f64>() / n as f64).clamp(lo, hi);
        let std_error = if n > 1 {
            let ss: f64 = values.iter().map(|v| (v - mean).powi(2)).sum();
            (ss / (n - 1) as f64).sqrt() / (n as f64).sqrt()
        } else {
            0.0
        };
        EnsembleStats {
            mean,
            std_error,
            n,
            per_realization: retain.then(|| values.to_vec()),
        }
    }

    /// Sample variance recovered from the standard error.
    pub fn variance(&self) -> f64 {
        self.std_error * self.std_error * self.n as f64
    }
}

/// Largest conservation errors seen over every evaluated state of a run.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ConservationDiagnostics {
    pub max_norm_drift: f64,
    pub max_energy_drift: f64,
}

impl ConservationDiagnostics {
    pub fn merge(self, other: ConservationDiagnostics) -> Self {
        ConservationDiagnostics {
            max_norm_drift: self.max_norm_drift.max(other.max_norm_drift),
            max_energy_drift: self.max_energy_drift.max(other.max_energy_drift),
        }
    }
}

/// Aggregated observables of one ensemble run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleResult {
    pub tau: f64,
    pub concurrence: Option<EnsembleStats>,
    pub times: Vec<f64>,
    pub p_minus: Vec<EnsembleStats>,
    pub p_plus: Vec<EnsembleStats>,
    pub diagnostics: ConservationDiagnostics,
}

#[derive(Debug, Clone)]
struct Outcome {
    concurrence: Option<f64>,
    p_minus: Vec<f64>,
    p_plus: Vec<f64>,
    diagnostics: ConservationDiagnostics,
}

/// Runs one realization end to end: sample, build the effective Hamiltonian,
/// diagonalize, evolve `|1,−⟩` and measure.
fn run_one(config: &EnsembleConfig, tau: f64, index: u64) -> Result<Outcome> {
    let mut stream = derive_stream(config.master_seed, index);
    let realization = sample_realization(&config.params, &mut stream)?;
    let h = build_effective(&realization);
    let sys = eigendecompose(&h)?;
    let n = config.params.n_sites;
    let psi0 = StateVector::minus_state(n, 1)?;
    let e0 = h.expectation(&psi0)?;
    let coeffs = sys.project(&psi0)?;
    let mut diag = ConservationDiagnostics::default();
    let mut track = |psi: &StateVector| -> Result<()> {
        let e = h.expectation(psi)?;
        diag = diag.merge(ConservationDiagnostics {
            max_norm_drift: (psi.norm_sqr() - 1.0).abs(),
            max_energy_drift: (e - e0).abs(),
        });
        Ok(())
    };

    let concurrence_at_tau = if config.observable_plan.wants_concurrence() {
        let psi = sys.propagate(&coeffs, tau);
        track(&psi)?;
        Some(concurrence(&psi, n)?)
    } else {
        None
    };

    let times = config.observable_plan.times();
    let mut p_minus = Vec::with_capacity(times.len());
    let mut p_plus = Vec::with_capacity(times.len());
    for &t in times {
        let psi = sys.propagate(&coeffs, t);
        track(&psi)?;
        p_minus.push(branch_occupation(&psi, Branch::Minus));
        p_plus.push(branch_occupation(&psi, Branch::Plus));
    }
    Ok(Outcome {
        concurrence: concurrence_at_tau,
        p_minus,
        p_plus,
        diagnostics: diag,
    })
}

/// Runs the ensemble on the current rayon pool.
pub fn run_ensemble(config: &EnsembleConfig) -> Result<EnsembleResult> {
    config.validate()?;
    let tau = transfer_time(config.params.n_sites, config.timing)?;
    let outcomes: Vec<Result<Outcome>> = (0..config.n_realizations as u64)
        .into_par_iter()
        .map(|i| {
            run_one(config, tau, i).map_err(|e| Error::Realization {
                index: i,
                source: Box::new(e),
            })
        })
        .collect();
    let outcomes = outcomes.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(reduce(config, tau, &outcomes))
}

/// Runs the ensemble on a dedicated pool of `threads` workers (0 = rayon's
/// default).
pub fn run_ensemble_with_threads(config: &EnsembleConfig, threads: usize) -> Result<EnsembleResult> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::invalid(format!("cannot build worker pool: {e}")))?;
    pool.install(|| run_ensemble(config))
}

fn reduce(config: &EnsembleConfig, tau: f64, outcomes: &[Outcome]) -> EnsembleResult {
    let retain = config.retain_raw;
    let concurrence = config.observable_plan.wants_concurrence().then(|| {
        let values: Vec<f64> = outcomes.iter().filter_map(|o| o.concurrence).collect();
        EnsembleStats::from_values(&values, retain)
    });
    let times = config.observable_plan.times().to_vec();
    let column = |pick: fn(&Outcome) -> &[f64], k: usize| {
        let values: Vec<f64> = outcomes.iter().map(|o| pick(o)[k]).collect();
        EnsembleStats::from_values(&values, retain)
    };
    let p_minus = (0..times.len()).map(|k| column(|o| &o.p_minus, k)).collect();
    let p_plus = (0..times.len()).map(|k| column(|o| &o.p_plus, k)).collect();
    let diagnostics = outcomes
        .iter()
        .fold(ConservationDiagnostics::default(), |acc, o| acc.merge(o.diagnostics));
    EnsembleResult {
        tau,
        concurrence,
        times,
        p_minus,
        p_plus,
        diagnostics,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn stream_determinism_and_distinctness() {
        let draws = |seed, idx| {
            let mut s = derive_stream(seed, idx);
            (0..1000).map(|_| s.rng_mut().random::<u64>()).collect::<Vec<_>>()
        };
        assert_eq!(draws(42, 0), draws(42, 0));
        assert_ne!(draws(42, 0), draws(42, 1));
        assert_ne!(draws(42, 0), draws(43, 0));
    }

    #[test]
    fn stats_moments() {
        let s = EnsembleStats::from_values(&[1.0, 2.0, 3.0, 4.0], true);
        assert_eq!(s.mean, 2.5);
        let sd = (5.0f64 / 3.0).sqrt();
        assert!((s.std_error - sd / 2.0).abs() < 1e-15);
        assert_eq!(s.per_realization.as_deref(), Some(&[1.0, 2.0, 3.0, 4.0][..]));
        let one = EnsembleStats::from_values(&[0.7], false);
        assert_eq!(one.std_error, 0.0);
        assert!(one.per_realization.is_none());
        let same = EnsembleStats::from_values(&[0.1; 7], false);
        assert_eq!(same.mean, 0.1);
    }

    #[test]
    fn config_validation() {
        let p = LadderParams::new(4, 1.0, 0.1).unwrap();
        let c = EnsembleConfig::new(p.clone(), 0, 1, ObservablePlan::ConcurrenceAtTau);
        assert!(run_ensemble(&c).is_err());
        let c = EnsembleConfig::new(p, 2, 1, ObservablePlan::BranchOccupationTrace(vec![1.0, 0.5]));
        assert!(matches!(run_ensemble(&c), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn single_clean_realization() {
        let p = LadderParams::new(30, 0.0, 0.0).unwrap();
        let c = EnsembleConfig::new(p, 1, 5, ObservablePlan::ConcurrenceAtTau);
        let r = run_ensemble(&c).unwrap();
        let stats = r.concurrence.unwrap();
        assert!(stats.mean >= 1.0 - 1e-6, "{}", stats.mean);
        assert_eq!(stats.std_error, 0.0);
        assert!(r.p_minus.is_empty());
    }
}
