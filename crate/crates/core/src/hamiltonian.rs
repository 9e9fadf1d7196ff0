//! Single-excitation Hamiltonians of the two-leg ladder.
//!
//! Flat indices are cell-major: cell `n` (0-based) owns indices `2n` and
//! `2n + 1`. In the physical basis those are leg 1 then leg 2, in the `±`
//! basis branch `+` then branch `−`. With this ordering the basis change is a
//! per-cell 2×2 map and the matrices have bandwidth 2.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;
use std::io::Write;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::DisorderRealization;
use crate::Complex;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Basis {
    /// `|n⟩^(1)`, `|n⟩^(2)`
    Physical,
    /// `|n,+⟩`, `|n,−⟩`
    PlusMinus,
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Basis::Physical => f.write_str("physical"),
            Basis::PlusMinus => f.write_str("plus-minus"),
        }
    }
}

/// Physical leg.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Leg {
    Leg1,
    Leg2,
}

/// Branch of the `±` basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Plus,
    Minus,
}

/// Flat index of `(cell, slot)` where slot 0 is leg 1 / branch `+`.
#[inline]
pub fn flat_index(cell: usize, slot: usize) -> usize {
    2 * cell + slot
}

/// Real symmetric Hamiltonian in a declared basis.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator {
    entries: DMatrix<f64>,
    basis: Basis,
}

impl HermitianOperator {
    /// Wraps a dense matrix, checking exact symmetry.
    pub fn new(entries: DMatrix<f64>, basis: Basis) -> Result<Self> {
        if !entries.is_square() {
            return Err(Error::contract(format!(
                "operator must be square, got {}x{}",
                entries.nrows(),
                entries.ncols()
            )));
        }
        if !is_exactly_symmetric(&entries) {
            return Err(Error::contract("operator matrix is not symmetric"));
        }
        Ok(HermitianOperator { entries, basis })
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn n_sites(&self) -> usize {
        self.dim() / 2
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.entries[(row, col)]
    }

    pub fn trace(&self) -> f64 {
        self.entries.trace()
    }

    /// Largest absolute row sum, an upper bound on the spectral norm.
    pub fn inf_norm(&self) -> f64 {
        self.entries
            .row_iter()
            .map(|r| r.iter().map(|x| x.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// `H·ψ`. The state must be in the operator's basis.
    pub fn apply(&self, state: &StateVector) -> Result<StateVector> {
        self.check_state(state)?;
        let amps = state.amplitudes();
        let out = (0..self.dim())
            .map(|i| {
                self.entries
                    .row(i)
                    .iter()
                    .zip(amps)
                    .map(|(h, a)| a * *h)
                    .sum()
            })
            .collect();
        Ok(StateVector::from_amplitudes(out, self.basis))
    }

    /// `⟨ψ|H|ψ⟩`.
    pub fn expectation(&self, state: &StateVector) -> Result<f64> {
        let h_psi = self.apply(state)?;
        Ok(state
            .amplitudes()
            .iter()
            .zip(h_psi.amplitudes())
            .map(|(a, b)| (a.conj() * b).re)
            .sum())
    }

    fn check_state(&self, state: &StateVector) -> Result<()> {
        if state.basis() != self.basis {
            return Err(Error::contract(format!(
                "state is in the {} basis, operator in the {} basis",
                state.basis(),
                self.basis
            )));
        }
        if state.dim() != self.dim() {
            return Err(Error::contract(format!(
                "state dimension {} does not match operator dimension {}",
                state.dim(),
                self.dim()
            )));
        }
        Ok(())
    }

    /// Writes the nonzero entries as `row,col,value` lines under a header.
    pub fn write_triplets<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "row,col,value")?;
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let v = self.entries[(i, j)];
                if v != 0.0 {
                    writeln!(out, "{},{},{}", i, j, crate::output::fmt_f64(v))?;
                }
            }
        }
        Ok(())
    }
}

pub(crate) fn is_exactly_symmetric(m: &DMatrix<f64>) -> bool {
    let n = m.nrows();
    (0..n).all(|i| (0..i).all(|j| m[(i, j)] == m[(j, i)]))
}

/// Complex amplitudes over the `2N` single-excitation states.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<Complex>,
    basis: Basis,
}

impl StateVector {
    pub fn from_amplitudes(amplitudes: Vec<Complex>, basis: Basis) -> Self {
        StateVector { amplitudes, basis }
    }

    /// A single excitation on flat index `index`.
    pub fn basis_state(n_sites: usize, index: usize, basis: Basis) -> Result<Self> {
        if index >= 2 * n_sites {
            return Err(Error::invalid(format!(
                "flat index {index} out of range for {n_sites} cells"
            )));
        }
        let mut amplitudes = vec![Complex::new(0.0, 0.0); 2 * n_sites];
        amplitudes[index] = Complex::new(1.0, 0.0);
        Ok(StateVector { amplitudes, basis })
    }

    /// `|cell, −⟩` in the `±` basis. `cell` is 1-based, so `|1,−⟩` is the
    /// encoded Bell pair on the first rung.
    pub fn minus_state(n_sites: usize, cell: usize) -> Result<Self> {
        check_cell(n_sites, cell)?;
        Self::basis_state(n_sites, flat_index(cell - 1, 1), Basis::PlusMinus)
    }

    /// `|cell⟩^(leg)` in the physical basis, 1-based cell.
    pub fn site_state(n_sites: usize, cell: usize, leg: Leg) -> Result<Self> {
        check_cell(n_sites, cell)?;
        let slot = match leg {
            Leg::Leg1 => 0,
            Leg::Leg2 => 1,
        };
        Self::basis_state(n_sites, flat_index(cell - 1, slot), Basis::Physical)
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn n_sites(&self) -> usize {
        self.dim() / 2
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn amplitudes(&self) -> &[Complex] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex> {
        self.amplitudes
    }

    /// Amplitude at 1-based `cell` and slot (0 = leg 1 / `+`, 1 = leg 2 / `−`).
    pub fn amplitude(&self, cell: usize, slot: usize) -> Complex {
        self.amplitudes[flat_index(cell - 1, slot)]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Complex {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn max_abs_diff(&self, other: &StateVector) -> f64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Returns the state expressed in `basis`, converting if needed.
    pub fn in_basis(&self, basis: Basis) -> StateVector {
        if self.basis == basis {
            return self.clone();
        }
        StateVector {
            amplitudes: rotate_cells(&self.amplitudes),
            basis,
        }
    }
}

pub(crate) fn check_cell(n_sites: usize, cell: usize) -> Result<()> {
    if cell == 0 || cell > n_sites {
        return Err(Error::invalid(format!(
            "cell {cell} out of range 1..={n_sites}"
        )));
    }
    Ok(())
}

// (a1, a2) -> ((a1 + a2)/√2, (a1 − a2)/√2); the map is its own inverse
fn rotate_cells(amps: &[Complex]) -> Vec<Complex> {
    let mut out = Vec::with_capacity(amps.len());
    for cell in amps.chunks_exact(2) {
        out.push((cell[0] + cell[1]) * FRAC_1_SQRT_2);
        out.push((cell[0] - cell[1]) * FRAC_1_SQRT_2);
    }
    out
}

/// Physical-basis state to the `±` basis.
pub fn to_plus_minus(state: &StateVector) -> Result<StateVector> {
    if state.basis != Basis::Physical {
        return Err(Error::contract(format!(
            "to_plus_minus expects a physical-basis state, got {}",
            state.basis
        )));
    }
    Ok(state.in_basis(Basis::PlusMinus))
}

/// `±`-basis state to the physical basis.
pub fn to_physical(state: &StateVector) -> Result<StateVector> {
    if state.basis != Basis::PlusMinus {
        return Err(Error::contract(format!(
            "to_physical expects a plus-minus state, got {}",
            state.basis
        )));
    }
    Ok(state.in_basis(Basis::Physical))
}

/// Assembles a cell-major ladder matrix from per-cell 2×2 blocks and the
/// shared intra-leg bonds.
fn assemble(diag: &[(f64, f64)], rung: &[f64], bonds: &[f64]) -> DMatrix<f64> {
    let n = diag.len();
    let mut h = DMatrix::zeros(2 * n, 2 * n);
    for cell in 0..n {
        let (a, b) = diag[cell];
        let (i0, i1) = (flat_index(cell, 0), flat_index(cell, 1));
        h[(i0, i0)] = a;
        h[(i1, i1)] = b;
        h[(i0, i1)] = rung[cell];
        h[(i1, i0)] = rung[cell];
    }
    for (cell, &j) in bonds.iter().enumerate() {
        for slot in 0..2 {
            let (p, q) = (flat_index(cell, slot), flat_index(cell + 1, slot));
            h[(p, q)] = j;
            h[(q, p)] = j;
        }
    }
    h
}

/// Physical Hamiltonian: leg energies `ε_{n,j}` on the diagonal, bonds `J_n`
/// inside each leg and rungs `γ_n` between the legs of each cell.
pub fn build_physical(realization: &DisorderRealization) -> HermitianOperator {
    let diag: Vec<_> = realization
        .eps_leg1()
        .iter()
        .copied()
        .zip(realization.eps_leg2().iter().copied())
        .collect();
    HermitianOperator {
        entries: assemble(&diag, realization.gamma_n(), realization.couplings()),
        basis: Basis::Physical,
    }
}

/// Effective Hamiltonian in the `±` basis: branch potentials `ε̃_{n,±}`,
/// the same bonds `J_n` inside each branch and `γ̃_n` between branches.
pub fn build_effective(realization: &DisorderRealization) -> HermitianOperator {
    let sites = realization.effective_sites();
    let diag: Vec<_> = sites.iter().map(|s| (s.eps_plus, s.eps_minus)).collect();
    let rung: Vec<_> = sites.iter().map(|s| s.gamma_tilde).collect();
    HermitianOperator {
        entries: assemble(&diag, &rung, realization.couplings()),
        basis: Basis::PlusMinus,
    }
}
