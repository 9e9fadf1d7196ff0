//! Exact diagonalization and spectral propagation `ψ(t) = Σ_k e^{−iλ_k t} v_k ⟨v_k|ψ₀⟩`.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{Error, Result};
use crate::hamiltonian::{is_exactly_symmetric, Basis, HermitianOperator, StateVector};
use crate::Complex;

/// Relative residual bound `‖H v − λ v‖ ≤ RESIDUAL_TOL·‖H‖` met by every eigenpair.
pub const RESIDUAL_TOL: f64 = 1e-10;
/// Bound on `|‖ψ(t)‖² − 1|` along any trajectory.
pub const NORM_DRIFT_TOL: f64 = 1e-10;
/// Bound on the drift of `⟨ψ(t)|H|ψ(t)⟩` along any trajectory.
pub const ENERGY_DRIFT_TOL: f64 = 1e-9;

/// Eigenvalues in ascending order with the matching orthonormal eigenvectors
/// as columns.
#[derive(Debug, Clone)]
pub struct EigenSystem {
    eigenvalues: Vec<f64>,
    eigenvectors: DMatrix<f64>,
    basis: Basis,
}

impl EigenSystem {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &DMatrix<f64> {
        &self.eigenvectors
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Expansion coefficients `⟨v_k|ψ₀⟩`.
    pub fn project(&self, psi0: &StateVector) -> Result<Vec<Complex>> {
        self.check(psi0)?;
        let (re, im) = split(psi0.amplitudes());
        let c_re = self.eigenvectors.tr_mul(&re);
        let c_im = self.eigenvectors.tr_mul(&im);
        Ok(c_re
            .iter()
            .zip(c_im.iter())
            .map(|(r, i)| Complex::new(*r, *i))
            .collect())
    }

    /// Rebuilds the state at time `t` from expansion coefficients.
    pub fn propagate(&self, coeffs: &[Complex], t: f64) -> StateVector {
        let n = self.dim();
        let mut re = DVector::zeros(n);
        let mut im = DVector::zeros(n);
        for k in 0..n {
            let (s, c) = (self.eigenvalues[k] * t).sin_cos();
            // e^{−iλt} = cos λt − i sin λt
            let z = coeffs[k] * Complex::new(c, -s);
            re[k] = z.re;
            im[k] = z.im;
        }
        let out_re = &self.eigenvectors * re;
        let out_im = &self.eigenvectors * im;
        let amps = out_re
            .iter()
            .zip(out_im.iter())
            .map(|(r, i)| Complex::new(*r, *i))
            .collect();
        StateVector::from_amplitudes(amps, self.basis)
    }

    fn check(&self, psi: &StateVector) -> Result<()> {
        if psi.basis() != self.basis {
            return Err(Error::contract(format!(
                "state is in the {} basis, eigensystem in the {} basis",
                psi.basis(),
                self.basis
            )));
        }
        if psi.dim() != self.dim() {
            return Err(Error::contract(format!(
                "state dimension {} does not match eigensystem dimension {}",
                psi.dim(),
                self.dim()
            )));
        }
        Ok(())
    }
}

fn split(amps: &[Complex]) -> (DVector<f64>, DVector<f64>) {
    (
        DVector::from_iterator(amps.len(), amps.iter().map(|a| a.re)),
        DVector::from_iterator(amps.len(), amps.iter().map(|a| a.im)),
    )
}

/// Full symmetric eigendecomposition, eigenvalues ascending.
pub fn eigendecompose(h: &HermitianOperator) -> Result<EigenSystem> {
    decompose_matrix(h.matrix(), h.basis())
}

pub(crate) fn decompose_matrix(m: &DMatrix<f64>, basis: Basis) -> Result<EigenSystem> {
    if !m.is_square() || !is_exactly_symmetric(m) {
        return Err(Error::contract("eigendecompose requires a symmetric matrix"));
    }
    let eig = SymmetricEigen::try_new(m.clone(), f64::EPSILON, 0).ok_or_else(|| {
        Error::Eigensolver(format!("no convergence for {}x{} matrix", m.nrows(), m.ncols()))
    })?;
    let n = m.nrows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]).then(a.cmp(&b)));
    let eigenvalues = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let mut eigenvectors = DMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        eigenvectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    Ok(EigenSystem {
        eigenvalues,
        eigenvectors,
        basis,
    })
}

/// `U(t)ψ₀ = e^{−iHt}ψ₀`. Negative `t` runs the evolution backwards.
pub fn evolve(sys: &EigenSystem, psi0: &StateVector, t: f64) -> Result<StateVector> {
    let coeffs = sys.project(psi0)?;
    Ok(sys.propagate(&coeffs, t))
}

/// [`evolve`] on an ascending, nonnegative time grid, projecting `ψ₀` once.
pub fn evolve_series(
    sys: &EigenSystem,
    psi0: &StateVector,
    times: &[f64],
) -> Result<Vec<StateVector>> {
    check_time_grid(times)?;
    let coeffs = sys.project(psi0)?;
    Ok(times.iter().map(|&t| sys.propagate(&coeffs, t)).collect())
}

pub(crate) fn check_time_grid(times: &[f64]) -> Result<()> {
    if let Some(t) = times.iter().find(|t| !(t.is_finite() && **t >= 0.0)) {
        return Err(Error::invalid(format!(
            "times must be finite and nonnegative, got {t}"
        )));
    }
    if times.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::invalid("times must be ascending"));
    }
    Ok(())
}
