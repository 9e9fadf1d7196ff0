//! Closed-form solution of the uniform ladder.
//!
//! With `δ_n = δ` and `γ_n = γ` on every cell, both legs share their normal
//! modes and the rung term couples mode `k` of leg 1 only to mode `k` of leg
//! 2. The ladder splits into independent two-level systems
//! `[[λ_k, γ], [γ, λ_k + δ]]`, all with the same Rabi frequency
//! `Ω = √(δ² + 4γ²)`, so the leg-1 population does not depend on the
//! intra-leg spectrum at all.

/// Eigenpairs of one mode dimer `[[λ, γ], [γ, λ + δ]]`.
///
/// Eigenvector `±` is `A^± |λ_{k,1}⟩ + B^± |λ_{k,2}⟩` with energy `E^±`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimerSolution {
    pub rabi_omega: f64,
    pub energy_plus: f64,
    pub energy_minus: f64,
    pub amp_a_plus: f64,
    pub amp_a_minus: f64,
    pub amp_b_plus: f64,
    pub amp_b_minus: f64,
}

impl DimerSolution {
    /// Rebuilds `[[h11, h12], [h12, h22]]` from the eigenpairs.
    pub fn reconstruct(&self) -> [[f64; 2]; 2] {
        let (ap, bp, am, bm) = (
            self.amp_a_plus,
            self.amp_b_plus,
            self.amp_a_minus,
            self.amp_b_minus,
        );
        let (ep, em) = (self.energy_plus, self.energy_minus);
        [
            [ep * ap * ap + em * am * am, ep * ap * bp + em * am * bm],
            [ep * bp * ap + em * bm * am, ep * bp * bp + em * bm * bm],
        ]
    }
}

/// Diagonalizes the mode dimer with leg-1 energy `lambda_k1`, detuning
/// `delta` and rung coupling `gamma`.
///
/// `A^± = 2γ/√((δ±Ω)²+4γ²)`, `B^± = (δ±Ω)/√((δ±Ω)²+4γ²)`,
/// `E^± = λ + (δ±Ω)/2`.
///
/// For `γ = 0` the formula degenerates (the `−` normalization vanishes when
/// `δ ≥ 0`); the legs are then uncoupled and the site basis is returned,
/// ordered so that `E^+ ≥ E^−`. With `δ = 0` as well, `Ω = 0` and both
/// energies equal `λ`.
pub fn dimer_eigenpairs(lambda_k1: f64, delta: f64, gamma: f64) -> DimerSolution {
    if gamma == 0.0 {
        let (a_plus, b_plus, a_minus, b_minus) = if delta >= 0.0 {
            (0.0, 1.0, 1.0, 0.0)
        } else {
            (1.0, 0.0, 0.0, 1.0)
        };
        let omega = delta.abs();
        return DimerSolution {
            rabi_omega: omega,
            energy_plus: lambda_k1 + (delta + omega) / 2.0,
            energy_minus: lambda_k1 + (delta - omega) / 2.0,
            amp_a_plus: a_plus,
            amp_a_minus: a_minus,
            amp_b_plus: b_plus,
            amp_b_minus: b_minus,
        };
    }
    let omega = (delta * delta + 4.0 * gamma * gamma).sqrt();
    let amps = |shift: f64| {
        let norm = (shift * shift + 4.0 * gamma * gamma).sqrt();
        (2.0 * gamma / norm, shift / norm)
    };
    let (a_plus, b_plus) = amps(delta + omega);
    let (a_minus, b_minus) = amps(delta - omega);
    DimerSolution {
        rabi_omega: omega,
        energy_plus: lambda_k1 + (delta + omega) / 2.0,
        energy_minus: lambda_k1 + (delta - omega) / 2.0,
        amp_a_plus: a_plus,
        amp_a_minus: a_minus,
        amp_b_plus: b_plus,
        amp_b_minus: b_minus,
    }
}

/// Leg-1 population `1 − 2(γ/Ω)²[1 − cos Ωt]` of a uniform ladder started
/// entirely on leg 1.
pub fn uniform_leg_occupation(delta: f64, gamma: f64, t: f64) -> f64 {
    if gamma == 0.0 {
        return 1.0;
    }
    let omega = (delta * delta + 4.0 * gamma * gamma).sqrt();
    let ratio = gamma / omega;
    1.0 - 2.0 * ratio * ratio * (1.0 - (omega * t).cos())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    #[test]
    fn resonant_dimer() {
        let lam = 0.4;
        let s = dimer_eigenpairs(lam, 0.0, 1.0);
        assert_relative_eq!(s.rabi_omega, 2.0);
        assert_relative_eq!(s.amp_a_plus, FRAC_1_SQRT_2, epsilon = 1e-15);
        assert_relative_eq!(s.amp_b_plus, FRAC_1_SQRT_2, epsilon = 1e-15);
        assert_relative_eq!(s.amp_a_minus, FRAC_1_SQRT_2, epsilon = 1e-15);
        assert_relative_eq!(s.amp_b_minus, -FRAC_1_SQRT_2, epsilon = 1e-15);
        assert_relative_eq!(s.energy_plus, lam + 1.0, epsilon = 1e-15);
        assert_relative_eq!(s.energy_minus, lam - 1.0, epsilon = 1e-15);
    }

    #[test]
    fn detuned_dimer() {
        let s = dimer_eigenpairs(0.0, 2.0, 1.0);
        assert_relative_eq!(s.rabi_omega, 2.0 * 2f64.sqrt(), epsilon = 1e-15);
        assert_relative_eq!(s.energy_plus, 1.0 + 2f64.sqrt(), epsilon = 1e-15);
        assert_relative_eq!(s.energy_minus, 1.0 - 2f64.sqrt(), epsilon = 1e-15);
    }

    #[test]
    fn normalization_and_orthogonality() {
        for (d, g) in [(0.0, 0.3), (1.0, 0.3), (-2.0, 0.7), (5.0, -0.1)] {
            let s = dimer_eigenpairs(0.0, d, g);
            assert_relative_eq!(s.amp_a_plus.powi(2) + s.amp_b_plus.powi(2), 1.0, epsilon = 1e-12);
            assert_relative_eq!(s.amp_a_minus.powi(2) + s.amp_b_minus.powi(2), 1.0, epsilon = 1e-12);
            assert!((s.amp_a_plus * s.amp_a_minus + s.amp_b_plus * s.amp_b_minus).abs() < 1e-12);
        }
    }

    #[test]
    fn uncoupled_dimer_convention() {
        let s = dimer_eigenpairs(1.5, 0.0, 0.0);
        assert_eq!(s.rabi_omega, 0.0);
        assert_eq!(s.energy_plus, 1.5);
        assert_eq!(s.energy_minus, 1.5);
        assert_eq!(s.reconstruct(), [[1.5, 0.0], [0.0, 1.5]]);
        let s = dimer_eigenpairs(0.0, -0.5, 0.0);
        assert_eq!(s.reconstruct(), [[0.0, 0.0], [0.0, -0.5]]);
        assert_eq!(uniform_leg_occupation(0.3, 0.0, 12.0), 1.0);
    }

    #[test]
    fn closed_form_values() {
        assert!(uniform_leg_occupation(0.0, 0.5, PI).abs() < 1e-15);
        let half_period = PI / (2.0 * 2f64.sqrt());
        assert_relative_eq!(uniform_leg_occupation(2.0, 1.0, half_period), 0.5, epsilon = 1e-14);
    }
}
