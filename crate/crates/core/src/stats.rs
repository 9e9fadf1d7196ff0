//! Small hypothesis tests used to decide ensemble trends.

use statrs::distribution::{ContinuousCDF, StudentsT};

use crate::ensemble::EnsembleStats;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WelchTest {
    pub t_statistic: f64,
    pub degrees_of_freedom: f64,
    /// One-sided p-value for `mean_a > mean_b`.
    pub p_value: f64,
}

impl WelchTest {
    pub fn significant_at(&self, alpha: f64) -> bool {
        self.p_value < alpha
    }
}

/// One-sided Welch t-test of `H₁: mean_a > mean_b` from summary statistics.
pub fn welch_greater(a: &EnsembleStats, b: &EnsembleStats) -> WelchTest {
    welch_from_moments(a.mean, a.variance(), a.n, b.mean, b.variance(), b.n)
}

/// Same test from raw samples.
pub fn welch_greater_samples(a: &[f64], b: &[f64]) -> WelchTest {
    welch_greater(
        &EnsembleStats::from_values(a, false),
        &EnsembleStats::from_values(b, false),
    )
}

fn welch_from_moments(ma: f64, va: f64, na: usize, mb: f64, vb: f64, nb: usize) -> WelchTest {
    let (na, nb) = (na as f64, nb as f64);
    let sa = va / na;
    let sb = vb / nb;
    let se2 = sa + sb;
    let diff = ma - mb;
    if se2 == 0.0 {
        // both samples constant: the ordering is certain either way
        let p = if diff > 0.0 { 0.0 } else { 1.0 };
        return WelchTest {
            t_statistic: diff.signum() * f64::INFINITY,
            degrees_of_freedom: f64::INFINITY,
            p_value: p,
        };
    }
    let t = diff / se2.sqrt();
    let df = se2 * se2 / (sa * sa / (na - 1.0) + sb * sb / (nb - 1.0));
    let dist = StudentsT::new(0.0, 1.0, df).expect("positive degrees of freedom");
    WelchTest {
        t_statistic: t,
        degrees_of_freedom: df,
        p_value: 1.0 - dist.cdf(t),
    }
}

/// Weighted least-squares slope of `y` against `x` with per-point standard
/// errors, returning `(slope, slope_std_error)`.
pub fn weighted_slope(x: &[f64], y: &[f64], y_err: &[f64]) -> (f64, f64) {
    let w: Vec<f64> = y_err.iter().map(|e| 1.0 / (e * e).max(f64::MIN_POSITIVE)).collect();
    let sw: f64 = w.iter().sum();
    let sx: f64 = w.iter().zip(x).map(|(w, x)| w * x).sum();
    let sy: f64 = w.iter().zip(y).map(|(w, y)| w * y).sum();
    let sxx: f64 = w.iter().zip(x).map(|(w, x)| w * x * x).sum();
    let sxy: f64 = w.iter().zip(x).zip(y).map(|((w, x), y)| w * x * y).sum();
    let det = sw * sxx - sx * sx;
    ((sw * sxy - sx * sy) / det, (sw / det).sqrt())
}
