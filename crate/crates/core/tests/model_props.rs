use ladder_qst::ensemble::derive_stream;
use ladder_qst::model::{build_pst_couplings, sample_realization, LadderParams};
use proptest::prelude::*;

fn params() -> impl Strategy<Value = LadderParams> {
    (2usize..40, 0.0f64..20.0, 0.0f64..1.0).prop_map(|(n, w, frac)| {
        LadderParams::new(n, w, w * frac).unwrap()
    })
}

proptest! {
    #[test]
    fn sampled_realizations_obey_channel_condition(p in params(), seed: u64, idx in 0u64..1000) {
        let r = sample_realization(&p, &mut derive_stream(seed, idx)).unwrap();
        for n in 0..p.n_sites {
            prop_assert_eq!(r.eps_leg2()[n], r.eps_leg1()[n] + r.delta_n()[n]);
            prop_assert_eq!(r.gamma_n()[n], r.eps_leg1()[n]);
            prop_assert!(r.eps_leg1()[n].abs() <= p.disorder_w);
            prop_assert!(r.delta_n()[n].abs() <= p.detuning_delta);
        }
        let jmax = r.couplings().iter().fold(0.0f64, |m, j| m.max(j.abs()));
        prop_assert_eq!(jmax, 1.0);
    }

    #[test]
    fn minus_branch_only_sees_detuning(p in params(), seed: u64) {
        let r = sample_realization(&p, &mut derive_stream(seed, 0)).unwrap();
        for (n, s) in r.effective_sites().iter().enumerate() {
            let d = r.delta_n()[n];
            let e = r.eps_leg1()[n];
            let scale = 4.0 * (e.abs() + d.abs()) * f64::EPSILON + 1e-300;
            prop_assert!((s.eps_minus - d / 2.0).abs() <= scale);
            prop_assert!((s.gamma_tilde + d / 2.0).abs() <= scale);
            prop_assert!((s.eps_plus - (4.0 * e + d) / 2.0).abs() <= 4.0 * scale);
        }
    }

    #[test]
    fn zero_detuning_decouples_exactly(n in 2usize..40, w in 0.0f64..50.0, seed: u64) {
        let p = LadderParams::new(n, w, 0.0).unwrap();
        let r = sample_realization(&p, &mut derive_stream(seed, 3)).unwrap();
        for s in r.effective_sites() {
            prop_assert_eq!(s.eps_minus, 0.0);
            prop_assert_eq!(s.gamma_tilde, 0.0);
        }
    }

    #[test]
    fn same_stream_same_realization(p in params(), seed: u64, idx: u64) {
        let a = sample_realization(&p, &mut derive_stream(seed, idx)).unwrap();
        let b = sample_realization(&p, &mut derive_stream(seed, idx)).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn pst_profile_is_palindromic_with_unit_peak(n in 2usize..300) {
        let j = build_pst_couplings(n).unwrap();
        prop_assert_eq!(j.len(), n - 1);
        for k in 0..j.len() {
            prop_assert_eq!(j[k], j[j.len() - 1 - k]);
        }
        prop_assert_eq!(j[n / 2 - 1], 1.0);
        prop_assert!(j.iter().all(|&x| x > 0.0 && x <= 1.0));
    }
}
