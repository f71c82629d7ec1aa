//! Statistical behavior of the Monte Carlo estimator: consistency with the
//! enumeration oracle and the expected 1/sqrt(n) error decay.
//!
//! Seeds are pinned, so these tests are deterministic; the generous
//! acceptance windows are sized for the randomness baked into those seeds.

use dephasim::engine::{fe_exact, fe_monte_carlo};
use dephasim::{ChannelParams, CodeName};

fn params(p0: f64, mu: f64) -> ChannelParams<f64> {
    ChannelParams::new(p0, mu).unwrap()
}

/// Least-squares slope of y over x.
fn slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let cov: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let var: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    cov / var
}

#[test]
fn million_sample_estimate_is_consistent_with_enumeration() {
    let p = params(0.999, 0.1);
    let exact = fe_exact(CodeName::C1, &p).unwrap();
    let mc = fe_monte_carlo(CodeName::C1, &p, 1_000_000, 2024).unwrap();
    assert!(mc.std_error > 0.0);
    assert!(
        (mc.fe - exact).abs() <= 4.0 * mc.std_error,
        "estimate {} vs exact {} exceeds 4 x stderr {}",
        mc.fe,
        exact,
        mc.std_error
    );
}

#[test]
fn reported_stderr_decays_like_inverse_sqrt_n() {
    let p = params(0.9, 0.3);
    let ns = [1_000usize, 10_000, 100_000, 1_000_000];
    let log_n: Vec<f64> = ns.iter().map(|&n| (n as f64).ln()).collect();
    let log_err: Vec<f64> = ns
        .iter()
        .map(|&n| {
            fe_monte_carlo(CodeName::C1, &p, n, 77)
                .unwrap()
                .std_error
                .ln()
        })
        .collect();
    let s = slope(&log_n, &log_err);
    assert!((s + 0.5).abs() <= 0.1, "stderr log-log slope {s}");
}

#[test]
fn actual_estimation_error_decays_like_inverse_sqrt_n() {
    // Root-mean-square error over 16 seeds at each sample count.
    let p = params(0.8, 0.5);
    let exact = fe_exact(CodeName::C2, &p).unwrap();
    let ns = [1_000usize, 10_000, 100_000];
    let log_n: Vec<f64> = ns.iter().map(|&n| (n as f64).ln()).collect();
    let log_rms: Vec<f64> = ns
        .iter()
        .map(|&n| {
            let mean_sq: f64 = (0..16)
                .map(|seed| {
                    let mc = fe_monte_carlo(CodeName::C2, &p, n, seed).unwrap();
                    (mc.fe - exact).powi(2)
                })
                .sum::<f64>()
                / 16.0;
            mean_sq.sqrt().ln()
        })
        .collect();
    let s = slope(&log_n, &log_rms);
    assert!((s + 0.5).abs() <= 0.1, "rms error log-log slope {s}");
}

#[test]
fn estimates_at_every_scale_stay_within_four_stderr() {
    let p = params(0.9, 0.2);
    for code in CodeName::ALL {
        let exact = fe_exact(code, &p).unwrap();
        for n in [1_000usize, 10_000, 100_000] {
            let mc = fe_monte_carlo(code, &p, n, 5).unwrap();
            assert!(
                (mc.fe - exact).abs() <= 4.0 * mc.std_error,
                "{code} at n={n}: {} vs {} (stderr {})",
                mc.fe,
                exact,
                mc.std_error
            );
        }
    }
}
