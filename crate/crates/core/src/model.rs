//! Problem parameters, coupling profiles and the correlated disorder rule.
//!
//! Energies are measured in units of the largest intra-leg coupling, so the
//! engineered profile is normalized to `max J_n = 1` and `W`, `Δ` are
//! dimensionless.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::ensemble::RealizationStream;
use crate::error::{Error, Result};

/// Intra-leg coupling profile `J_n`, shared by both legs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CouplingScheme {
    /// `J_n ∝ √(n(N−n))`, normalized to a maximum of 1.
    PstEngineered,
    /// Every bond set to the same value, used verbatim.
    Uniform(f64),
    /// `N−1` explicit values, used verbatim.
    Explicit(Vec<f64>),
}

/// Static problem definition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LadderParams {
    pub n_sites: usize,
    pub disorder_w: f64,
    pub detuning_delta: f64,
    pub coupling_scheme: CouplingScheme,
    /// Allows `Δ > W`. Off by default since the protected regime is `Δ ≤ W`.
    #[serde(default)]
    pub independent_delta: bool,
}

impl LadderParams {
    pub fn new(n_sites: usize, disorder_w: f64, detuning_delta: f64) -> Result<Self> {
        let params = LadderParams {
            n_sites,
            disorder_w,
            detuning_delta,
            coupling_scheme: CouplingScheme::PstEngineered,
            independent_delta: false,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn with_coupling_scheme(mut self, scheme: CouplingScheme) -> Result<Self> {
        self.coupling_scheme = scheme;
        self.validate()?;
        Ok(self)
    }

    pub fn with_independent_delta(mut self, independent: bool) -> Result<Self> {
        self.independent_delta = independent;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_sites < 2 {
            return Err(Error::invalid(format!(
                "n_sites must be at least 2, got {}",
                self.n_sites
            )));
        }
        if !(self.disorder_w.is_finite() && self.disorder_w >= 0.0) {
            return Err(Error::invalid(format!(
                "disorder W must be finite and nonnegative, got {}",
                self.disorder_w
            )));
        }
        if !(self.detuning_delta.is_finite() && self.detuning_delta >= 0.0) {
            return Err(Error::invalid(format!(
                "detuning Δ must be finite and nonnegative, got {}",
                self.detuning_delta
            )));
        }
        if self.detuning_delta > self.disorder_w && !self.independent_delta {
            return Err(Error::invalid(format!(
                "detuning Δ = {} exceeds W = {}; set independent_delta to allow it",
                self.detuning_delta, self.disorder_w
            )));
        }
        match &self.coupling_scheme {
            CouplingScheme::PstEngineered => {}
            CouplingScheme::Uniform(j) => {
                if !(j.is_finite() && *j != 0.0) {
                    return Err(Error::invalid(format!(
                        "uniform coupling must be finite and nonzero, got {j}"
                    )));
                }
            }
            CouplingScheme::Explicit(js) => {
                if js.len() != self.n_sites - 1 {
                    return Err(Error::invalid(format!(
                        "explicit coupling sequence needs {} entries, got {}",
                        self.n_sites - 1,
                        js.len()
                    )));
                }
                if let Some(bad) = js.iter().find(|j| !(j.is_finite() && **j != 0.0)) {
                    return Err(Error::invalid(format!(
                        "explicit couplings must be finite and nonzero, got {bad}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// The `N−1` bond strengths of either leg.
    pub fn couplings(&self) -> Result<Vec<f64>> {
        match &self.coupling_scheme {
            CouplingScheme::PstEngineered => build_pst_couplings(self.n_sites),
            CouplingScheme::Uniform(j) => Ok(vec![*j; self.n_sites - 1]),
            CouplingScheme::Explicit(js) => Ok(js.clone()),
        }
    }
}

/// Engineered perfect-transfer couplings `√(n(N−n)) / max_m √(m(N−m))` for
/// `n = 1..N−1`.
pub fn build_pst_couplings(n_sites: usize) -> Result<Vec<f64>> {
    if n_sites < 2 {
        return Err(Error::invalid(format!(
            "n_sites must be at least 2, got {n_sites}"
        )));
    }
    let j_max = pst_raw_max(n_sites);
    Ok((1..n_sites)
        .map(|n| {
            // n(N−n) is an exact integer, so the mirrored bonds match bitwise
            let raw = ((n * (n_sites - n)) as f64).sqrt();
            raw / j_max
        })
        .collect())
}

/// `max_n √(n(N−n)) = √(⌊N/2⌋·⌈N/2⌉)`, the normalization of the engineered
/// profile.
pub fn pst_raw_max(n_sites: usize) -> f64 {
    let half = n_sites / 2;
    ((half * (n_sites - half)) as f64).sqrt()
}

/// Records which stream produced a realization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedTag {
    pub master_seed: u64,
    pub index: u64,
}

/// One concrete draw of every site energy, detuning and rung coupling.
///
/// Sampled realizations satisfy `ε_{n,2} = ε_{n,1} + δ_n` and `γ_n = ε_{n,1}`.
/// Hand-built ladders from [`DisorderRealization::custom`] need not.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DisorderRealization {
    eps_leg1: Vec<f64>,
    eps_leg2: Vec<f64>,
    delta_n: Vec<f64>,
    gamma_n: Vec<f64>,
    couplings: Vec<f64>,
    seed_tag: Option<SeedTag>,
}

impl DisorderRealization {
    /// Builds an arbitrary ladder with the given leg energies, rung couplings
    /// and bonds, bypassing the correlated sampling rule. `N = 1` (a single
    /// rung) is allowed here.
    pub fn custom(
        eps_leg1: Vec<f64>,
        eps_leg2: Vec<f64>,
        gamma_n: Vec<f64>,
        couplings: Vec<f64>,
    ) -> Result<Self> {
        let n = eps_leg1.len();
        if n == 0 {
            return Err(Error::invalid("ladder needs at least one cell"));
        }
        if eps_leg2.len() != n || gamma_n.len() != n {
            return Err(Error::invalid(format!(
                "per-cell sequences must all have length {n}"
            )));
        }
        if couplings.len() != n - 1 {
            return Err(Error::invalid(format!(
                "expected {} couplings, got {}",
                n - 1,
                couplings.len()
            )));
        }
        let all = eps_leg1
            .iter()
            .chain(&eps_leg2)
            .chain(&gamma_n)
            .chain(&couplings);
        if all.clone().any(|x| !x.is_finite()) {
            return Err(Error::invalid("ladder parameters must be finite"));
        }
        let delta_n = eps_leg1
            .iter()
            .zip(&eps_leg2)
            .map(|(e1, e2)| e2 - e1)
            .collect();
        Ok(DisorderRealization {
            eps_leg1,
            eps_leg2,
            delta_n,
            gamma_n,
            couplings,
            seed_tag: None,
        })
    }

    /// Uniform ladder: leg 1 at zero, leg 2 detuned by `delta`, every rung
    /// coupled by `gamma`.
    pub fn uniform(n_sites: usize, delta: f64, gamma: f64, couplings: Vec<f64>) -> Result<Self> {
        Self::custom(
            vec![0.0; n_sites],
            vec![delta; n_sites],
            vec![gamma; n_sites],
            couplings,
        )
    }

    pub fn n_sites(&self) -> usize {
        self.eps_leg1.len()
    }

    pub fn eps_leg1(&self) -> &[f64] {
        &self.eps_leg1
    }

    pub fn eps_leg2(&self) -> &[f64] {
        &self.eps_leg2
    }

    pub fn delta_n(&self) -> &[f64] {
        &self.delta_n
    }

    pub fn gamma_n(&self) -> &[f64] {
        &self.gamma_n
    }

    pub fn couplings(&self) -> &[f64] {
        &self.couplings
    }

    pub fn seed_tag(&self) -> Option<SeedTag> {
        self.seed_tag
    }

    /// Effective `±` parameters of every cell.
    pub fn effective_sites(&self) -> Vec<EffectiveSite> {
        (0..self.n_sites())
            .map(|n| effective_parameters(self.eps_leg1[n], self.eps_leg2[n], self.gamma_n[n]))
            .collect()
    }
}

/// Draws a realization from `stream`.
///
/// Draw order: the `N` values `ε_{n,1} ~ U[−W, W]` first, then the `N`
/// detunings `δ_n ~ U[−Δ, Δ]`. Each uniform comes from the generator's
/// half-open `[0, 1)` double mapped affinely onto the symmetric interval, so
/// `+W` itself is never drawn. Since the leg-1 draws come first, realizations
/// sharing a stream share `ε_{n,1}` across every `Δ`.
pub fn sample_realization(
    params: &LadderParams,
    stream: &mut RealizationStream,
) -> Result<DisorderRealization> {
    params.validate()?;
    let n = params.n_sites;
    let couplings = params.couplings()?;
    let w = params.disorder_w;
    let d = params.detuning_delta;
    let rng = stream.rng_mut();
    let eps_leg1: Vec<f64> = (0..n).map(|_| symmetric_uniform(rng, w)).collect();
    let delta_n: Vec<f64> = (0..n).map(|_| symmetric_uniform(rng, d)).collect();
    let eps_leg2 = eps_leg1.iter().zip(&delta_n).map(|(e, d)| e + d).collect();
    let gamma_n = eps_leg1.clone();
    Ok(DisorderRealization {
        eps_leg1,
        eps_leg2,
        delta_n,
        gamma_n,
        couplings,
        seed_tag: Some(stream.tag()),
    })
}

fn symmetric_uniform<R: Rng + ?Sized>(rng: &mut R, half_width: f64) -> f64 {
    let u: f64 = rng.random();
    half_width * (2.0 * u - 1.0)
}

/// Potentials and rung coupling of one cell in the `±` basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveSite {
    pub eps_plus: f64,
    pub eps_minus: f64,
    pub gamma_tilde: f64,
}

/// `ε̃_± = (ε₁+ε₂)/2 ± γ`, `γ̃ = (ε₁−ε₂)/2`.
pub fn effective_parameters(eps1: f64, eps2: f64, gamma: f64) -> EffectiveSite {
    let mean = (eps1 + eps2) / 2.0;
    EffectiveSite {
        eps_plus: mean + gamma,
        eps_minus: mean - gamma,
        gamma_tilde: (eps1 - eps2) / 2.0,
    }
}
