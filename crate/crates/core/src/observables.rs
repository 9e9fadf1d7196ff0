//! End-cell concurrence, branch and leg occupations, and the transfer time.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hamiltonian::{check_cell, Basis, Branch, Leg, StateVector};
use crate::model::pst_raw_max;
use crate::Complex;

/// Outcome of one transfer run evaluated at `tau`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransferReport {
    pub concurrence_at_tau: f64,
    pub tau: f64,
    pub amp_leg1: (f64, f64),
    pub amp_leg2: (f64, f64),
}

impl TransferReport {
    pub fn from_state(state: &StateVector, tau: f64) -> Self {
        let phys = state.in_basis(Basis::Physical);
        let n = phys.n_sites();
        let f1 = phys.amplitude(n, 0);
        let f2 = phys.amplitude(n, 1);
        TransferReport {
            concurrence_at_tau: pair_concurrence(f1, f2),
            tau,
            amp_leg1: (f1.re, f1.im),
            amp_leg2: (f2.re, f2.im),
        }
    }
}

fn pair_concurrence(f1: Complex, f2: Complex) -> f64 {
    2.0 * f1.norm() * f2.norm()
}

/// Two-qubit concurrence `2|f^(1) f^(2)|` of the rung at 1-based `cell`, for a
/// single-excitation pure state.
pub fn concurrence(state: &StateVector, cell: usize) -> Result<f64> {
    check_cell(state.n_sites(), cell)?;
    let phys = state.in_basis(Basis::Physical);
    Ok(pair_concurrence(phys.amplitude(cell, 0), phys.amplitude(cell, 1)))
}

/// Total probability on one `±` branch.
pub fn branch_occupation(state: &StateVector, branch: Branch) -> f64 {
    let pm = state.in_basis(Basis::PlusMinus);
    let slot = match branch {
        Branch::Plus => 0,
        Branch::Minus => 1,
    };
    slot_sum(&pm, slot)
}

/// Total probability on one physical leg.
pub fn leg_occupation(state: &StateVector, leg: Leg) -> Result<f64> {
    if state.basis() != Basis::Physical {
        return Err(Error::contract(
            "leg_occupation expects a physical-basis state",
        ));
    }
    let slot = match leg {
        Leg::Leg1 => 0,
        Leg::Leg2 => 1,
    };
    Ok(slot_sum(state, slot))
}

fn slot_sum(state: &StateVector, slot: usize) -> f64 {
    state
        .amplitudes()
        .chunks_exact(2)
        .map(|cell| cell[slot].norm_sqr())
        .sum()
}

/// How the evaluation time is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TransferTiming {
    /// `τ = πN/4` in units of `1/J`.
    #[default]
    Standard,
    /// Exact mirror time of the normalized engineered chain,
    /// `π·max√(n(N−n))/2`. Equal to the standard rule for even `N`; for odd
    /// `N` it is `π√(N²−1)/4`.
    ExactRevival,
}

/// Transfer time in units of `1/J` with `J = max J_n = 1`.
pub fn transfer_time(n_sites: usize, timing: TransferTiming) -> Result<f64> {
    if n_sites < 2 {
        return Err(Error::invalid(format!(
            "n_sites must be at least 2, got {n_sites}"
        )));
    }
    Ok(match timing {
        TransferTiming::Standard => PI * n_sites as f64 / 4.0,
        TransferTiming::ExactRevival => PI * pst_raw_max(n_sites) / 2.0,
    })
}
