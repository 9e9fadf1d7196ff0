use ladder_qst::ensemble::derive_stream;
use ladder_qst::hamiltonian::{build_effective, Basis, HermitianOperator, StateVector};
use ladder_qst::model::{build_pst_couplings, sample_realization, LadderParams};
use ladder_qst::spectral::{eigendecompose, evolve, evolve_series, EigenSystem};
use ladder_qst::Complex;
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

fn random_symmetric(rng: &mut impl Rng, n: usize) -> HermitianOperator {
    let mut m = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let v = rng.random::<f64>() * 2.0 - 1.0;
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
    }
    HermitianOperator::new(m, Basis::Physical).unwrap()
}

fn random_state(rng: &mut impl Rng, dim: usize, basis: Basis) -> StateVector {
    let amps: Vec<Complex> = (0..dim)
        .map(|_| Complex::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
        .collect();
    let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    StateVector::from_amplitudes(amps.into_iter().map(|a| a / norm).collect(), basis)
}

fn disordered_system(n: usize, w: f64, idx: u64) -> (HermitianOperator, EigenSystem) {
    let p = LadderParams::new(n, w, 0.2).unwrap();
    let r = sample_realization(&p, &mut derive_stream(4242, idx)).unwrap();
    let h = build_effective(&r);
    let sys = eigendecompose(&h).unwrap();
    (h, sys)
}

/// Classical RK4 on dψ/dt = −iHψ.
fn rk4(h: &DMatrix<f64>, psi0: &[Complex], t_end: f64, dt: f64) -> Vec<Complex> {
    let n = psi0.len();
    let deriv = |psi: &[Complex]| -> Vec<Complex> {
        (0..n)
            .map(|i| {
                let s: Complex = (0..n).map(|j| psi[j] * h[(i, j)]).sum();
                Complex::new(0.0, -1.0) * s
            })
            .collect()
    };
    let axpy = |y: &[Complex], k: &[Complex], a: f64| -> Vec<Complex> {
        y.iter().zip(k).map(|(y, k)| y + k * a).collect()
    };
    let steps = (t_end / dt).round() as usize;
    let mut psi = psi0.to_vec();
    for _ in 0..steps {
        let k1 = deriv(&psi);
        let k2 = deriv(&axpy(&psi, &k1, dt / 2.0));
        let k3 = deriv(&axpy(&psi, &k2, dt / 2.0));
        let k4 = deriv(&axpy(&psi, &k3, dt));
        for i in 0..n {
            psi[i] += (k1[i] + k2[i] * 2.0 + k3[i] * 2.0 + k4[i]) * (dt / 6.0);
        }
    }
    psi
}

#[test]
fn spectral_evolution_matches_rk4() {
    let mut rng = ChaCha20Rng::seed_from_u64(31);
    for _ in 0..3 {
        let h = random_symmetric(&mut rng, 8);
        let psi0 = random_state(&mut rng, 8, Basis::Physical);
        let sys = eigendecompose(&h).unwrap();
        let spectral = evolve(&sys, &psi0, 1.0).unwrap();
        let numeric = rk4(h.matrix(), psi0.amplitudes(), 1.0, 1e-4);
        let dev = spectral
            .amplitudes()
            .iter()
            .zip(&numeric)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        assert!(dev < 1e-6, "deviation {dev}");
    }
}

/// Characteristic polynomial of a zero-diagonal tridiagonal matrix by the
/// continuant recurrence.
fn char_poly(bonds: &[f64], x: f64) -> f64 {
    let (mut p_prev, mut p) = (1.0, x);
    for j in bonds {
        let next = x * p - j * j * p_prev;
        p_prev = p;
        p = next;
    }
    p
}

fn bisect(bonds: &[f64], mut lo: f64, mut hi: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if char_poly(bonds, lo).signum() == char_poly(bonds, mid).signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[test]
fn engineered_chain_has_equally_spaced_levels() {
    let bonds = build_pst_couplings(4).unwrap();
    // roots by sign-change scan of the characteristic polynomial
    let grid: Vec<f64> = (0..=4001).map(|k| -2.0 + 4.0 * k as f64 / 4001.0).collect();
    let mut roots = Vec::new();
    for w in grid.windows(2) {
        if char_poly(&bonds, w[0]).signum() != char_poly(&bonds, w[1]).signum() {
            roots.push(bisect(&bonds, w[0], w[1]));
        }
    }
    assert_eq!(roots.len(), 4);

    let mut m = DMatrix::zeros(4, 4);
    for (k, j) in bonds.iter().enumerate() {
        m[(k, k + 1)] = *j;
        m[(k + 1, k)] = *j;
    }
    let sys = eigendecompose(&HermitianOperator::new(m, Basis::Physical).unwrap()).unwrap();
    for (a, b) in sys.eigenvalues().iter().zip(&roots) {
        assert!((a - b).abs() < 1e-12, "{a} vs {b}");
    }
    let gaps: Vec<f64> = sys.eigenvalues().windows(2).map(|w| w[1] - w[0]).collect();
    for g in &gaps {
        assert!((g - gaps[0]).abs() < 1e-12);
    }
    // normalized profile: spacing 2·(2/N) = 1 for N = 4
    assert!((gaps[0] - 1.0).abs() < 1e-12);
}

#[test]
fn similarity_transform_preserves_spectrum() {
    let mut rng = ChaCha20Rng::seed_from_u64(77);
    let h = random_symmetric(&mut rng, 12);
    let a = DMatrix::from_fn(12, 12, |_, _| rng.random::<f64>() - 0.5);
    let q = a.qr().q();
    let mut rotated = &q * h.matrix() * q.transpose();
    // restore exact symmetry lost to rounding
    rotated = (&rotated + rotated.transpose()) * 0.5;
    let h2 = HermitianOperator::new(rotated, Basis::Physical).unwrap();
    let e1 = eigendecompose(&h).unwrap();
    let e2 = eigendecompose(&h2).unwrap();
    for (x, y) in e1.eigenvalues().iter().zip(e2.eigenvalues()) {
        assert!((x - y).abs() < 1e-10);
    }
}

#[test]
fn eigenpairs_are_accurate_and_orthonormal() {
    for (n, w) in [(2, 0.5), (16, 3.0), (30, 10.0), (60, 25.0)] {
        let (h, sys) = disordered_system(n, w, n as u64);
        let v = sys.eigenvectors();
        let norm = h.inf_norm();
        let residual = h.matrix() * v - v * DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(sys.eigenvalues()));
        for k in 0..sys.dim() {
            assert!(residual.column(k).norm() <= 1e-10 * norm);
        }
        let gram = v.transpose() * v;
        assert!((gram - DMatrix::identity(2 * n, 2 * n)).amax() < 1e-10);
        assert!(sys.eigenvalues().windows(2).all(|p| p[0] <= p[1]));
    }
}

#[test]
fn eigendecomposition_is_deterministic() {
    let (h, a) = disordered_system(20, 5.0, 1);
    let b = eigendecompose(&h).unwrap();
    assert_eq!(a.eigenvalues(), b.eigenvalues());
    assert_eq!(a.eigenvectors(), b.eigenvectors());
}

#[test]
fn conservation_composition_and_reversal() {
    let (h, sys) = disordered_system(30, 10.0, 9);
    let psi0 = StateVector::minus_state(30, 1).unwrap();
    let e0 = h.expectation(&psi0).unwrap();
    let times: Vec<f64> = (0..200).map(|k| k as f64 * 1.3).collect();
    for psi in evolve_series(&sys, &psi0, &times).unwrap() {
        assert!((psi.norm_sqr() - 1.0).abs() <= 1e-10);
        assert!((h.expectation(&psi).unwrap() - e0).abs() <= 1e-9);
    }
    let (t1, t2) = (3.7, 11.2);
    let two_step = evolve(&sys, &evolve(&sys, &psi0, t1).unwrap(), t2).unwrap();
    let one_step = evolve(&sys, &psi0, t1 + t2).unwrap();
    assert!(two_step.max_abs_diff(&one_step) < 1e-10);
    let back = evolve(&sys, &evolve(&sys, &psi0, 40.0).unwrap(), -40.0).unwrap();
    assert!(back.max_abs_diff(&psi0) < 1e-10);
}

#[test]
fn series_equals_independent_calls() {
    let (_, sys) = disordered_system(12, 2.0, 4);
    let mut rng = ChaCha20Rng::seed_from_u64(5);
    let psi0 = random_state(&mut rng, 24, Basis::PlusMinus);
    let times: Vec<f64> = (0..100).map(|k| k as f64 * 0.25).collect();
    let series = evolve_series(&sys, &psi0, &times).unwrap();
    for (psi, &t) in series.iter().zip(&times) {
        assert!(psi.max_abs_diff(&evolve(&sys, &psi0, t).unwrap()) < 1e-12);
    }
    let single = evolve_series(&sys, &psi0, &[2.5]).unwrap();
    assert!(single[0].max_abs_diff(&evolve(&sys, &psi0, 2.5).unwrap()) < 1e-15);
}
