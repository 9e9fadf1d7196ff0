use ladder_qst::experiments::{
    fig1_transfer_sweep, fig2_leakage_trace, log_spaced_grid, uniform_grid, SweepConfig,
    TraceConfig,
};
use ladder_qst::stats::welch_greater;

#[test]
fn clean_control_row_is_perfect() {
    let cfg = SweepConfig {
        deltas: vec![0.0],
        w_grid: log_spaced_grid(0.2, 10.0, 5).unwrap(),
        n_realizations: 10,
        master_seed: 4,
        ..SweepConfig::default()
    };
    let r = fig1_transfer_sweep(&cfg, 0).unwrap();
    for s in &r.series[0].points {
        assert!(s.mean >= 1.0 - 1e-6);
    }
}

#[test]
fn sweep_reproduces_from_metadata() {
    let cfg = SweepConfig {
        n_sites: 12,
        w_grid: log_spaced_grid(0.2, 10.0, 4).unwrap(),
        n_realizations: 8,
        master_seed: 21,
        ..SweepConfig::default()
    };
    let a = fig1_transfer_sweep(&cfg, 2).unwrap();
    let b = fig1_transfer_sweep(&a.metadata, 5).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.axis.len(), 4);
    assert!(a.series.iter().all(|s| s.points.len() == 4));
}

#[test]
fn sweep_trend_and_detuning_order() {
    let cfg = SweepConfig {
        w_grid: vec![0.2, 10.0],
        master_seed: 1_000,
        ..SweepConfig::default()
    };
    let r = fig1_transfer_sweep(&cfg, 0).unwrap();
    let last = r.axis.len() - 1;
    for series in &r.series {
        let first = &series.points[0];
        let end = &series.points[last];
        assert!(end.mean > first.mean, "Δ = {}", series.delta);
    }
    let sat: Vec<_> = r.series.iter().map(|s| s.points[last].clone()).collect();
    assert!(sat[0].mean > sat[1].mean && sat[1].mean > sat[2].mean);
    assert!(welch_greater(&sat[0], &sat[1]).significant_at(0.05));
    assert!(welch_greater(&sat[1], &sat[2]).significant_at(0.05));
    let d02 = r.series_for(0.2).unwrap();
    assert!(welch_greater(&d02.points[last], &d02.points[0]).significant_at(0.01));
}

#[test]
fn trace_starts_on_minus_branch_and_conserves_probability() {
    let cfg = TraceConfig {
        n_sites: 16,
        w_list: vec![0.2, 10.0],
        t_over_tau: uniform_grid(10.0, 41),
        n_realizations: 30,
        master_seed: 8,
        ..TraceConfig::default()
    };
    let r = fig2_leakage_trace(&cfg, 0).unwrap();
    for s in &r.series {
        assert!((s.p_minus[0].mean - 1.0).abs() < 1e-12);
        for (m, p) in s.p_minus.iter().zip(&s.p_plus) {
            assert!((m.mean + p.mean - 1.0).abs() < 1e-12);
        }
    }
    let late = |k: usize| {
        let s = &r.series[k];
        s.p_minus[20..].iter().map(|x| x.mean).sum::<f64>() / 21.0
    };
    assert!(late(1) > late(0));
}

#[test]
fn default_configs_follow_documented_grids() {
    let s = SweepConfig::default();
    assert_eq!(s.n_sites, 30);
    assert_eq!(s.deltas, vec![0.05, 0.1, 0.2]);
    assert_eq!(s.w_grid.len(), 25);
    assert_eq!((s.w_grid[0], s.w_grid[24]), (0.2, 10.0));
    assert_eq!(s.n_realizations, 100);
    let t = TraceConfig::default();
    assert_eq!(t.delta, 0.2);
    assert_eq!(t.w_list, vec![0.2, 1.0, 2.0, 5.0, 10.0]);
    assert_eq!(t.t_over_tau.len(), 200);
    assert_eq!(*t.t_over_tau.last().unwrap(), 10.0);
}

#[test]
fn strong_disorder_plateau_slope() {
    use ladder_qst::stats::weighted_slope;
    let grid = log_spaced_grid(0.2, 10.0, 25).unwrap();
    let tail = grid[grid.len() - grid.len() / 4..].to_vec();
    let cfg = SweepConfig {
        deltas: vec![0.2],
        w_grid: tail.clone(),
        master_seed: 20_190_101,
        ..SweepConfig::default()
    };
    let r = fig1_transfer_sweep(&cfg, 0).unwrap();
    let pts = &r.series[0].points;
    let y: Vec<f64> = pts.iter().map(|p| p.mean).collect();
    let e: Vec<f64> = pts.iter().map(|p| p.std_error).collect();
    let (slope, se) = weighted_slope(&tail, &y, &e);
    eprintln!("tail W = {tail:?}\nmeans = {y:?}\nslope = {slope:e} +- {se:e}");
    assert!(slope.abs() < 2.0 * se, "slope {slope:e} vs se {se:e}");
}
