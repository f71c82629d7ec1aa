//! Self-check suite behind the `verify` subcommand.
//!
//! Each check evaluates one library invariant on a fixed grid and reports
//! the worst discrepancy it saw, so a caller can print raw numbers instead
//! of a bare verdict. Checks run in double precision with hard-coded
//! tolerances; the test suite asserts that all of them pass, while the CLI
//! only relays the outcomes.

use crate::analysis::{
    binary_entropy, c2_beats_c1_crossover, c2_beats_uncoded_threshold, capacity,
    crossover_exact_mu, fe_closed,
};
use crate::codes::{CodeName, CodeSpec};
use crate::engine::{fe_exact, fe_exact_density, trajectory_fidelities};
use crate::error_model::{enumerate_sequences, ChannelParams, PauliLabel};
use crate::qsim::{fidelity_with_pure, StateVector};

/// Result of one named invariant check.
#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    /// Worst deviation observed, in the check's own units.
    pub max_discrepancy: f64,
    /// What was checked, grid sizes included.
    pub detail: String,
}

impl CheckOutcome {
    fn new(name: &'static str, passed: bool, max_discrepancy: f64, detail: String) -> Self {
        Self {
            name,
            passed,
            max_discrepancy,
            detail,
        }
    }
}

fn params(p0: f64, mu: f64) -> ChannelParams<f64> {
    ChannelParams::new(p0, mu).expect("grid values are valid probabilities")
}

/// Evenly spaced grid over [0, 1] with exact endpoints.
fn unit_grid(points: usize) -> Vec<f64> {
    (0..points)
        .map(|i| i as f64 / (points - 1) as f64)
        .collect()
}

fn check_conditional_stochasticity() -> CheckOutcome {
    let grid = unit_grid(11);
    let mut worst = 0.0f64;
    for &p0 in &grid {
        for &mu in &grid {
            let p = params(p0, mu);
            for prev in PauliLabel::ALL {
                let total = p.conditional(prev, PauliLabel::I) + p.conditional(prev, PauliLabel::Z);
                worst = worst.max((total - 1.0).abs());
            }
        }
    }
    CheckOutcome::new(
        "conditional-stochasticity",
        worst <= 1e-15,
        worst,
        "rows of the transition kernel sum to 1 on an 11x11 parameter grid".into(),
    )
}

fn check_enumeration_normalization() -> CheckOutcome {
    let mut worst = 0.0f64;
    for n in [1usize, 2, 3, 5, 8] {
        for &p0 in &[0.0, 0.3, 0.9, 1.0] {
            for &mu in &[0.0, 0.5, 1.0] {
                let total: f64 = enumerate_sequences(n, &params(p0, mu))
                    .expect("n is within the enumeration cap")
                    .into_iter()
                    .map(|(_, p)| p)
                    .sum();
                worst = worst.max((total - 1.0).abs());
            }
        }
    }
    CheckOutcome::new(
        "enumeration-normalization",
        worst <= 1e-12,
        worst,
        "sequence probabilities sum to 1 for lengths {1,2,3,5,8}".into(),
    )
}

fn check_stationary_marginals() -> CheckOutcome {
    let n = 3;
    let mut worst = 0.0f64;
    for &p0 in &[0.0, 0.3, 0.9, 1.0] {
        for &mu in &[0.0, 0.5, 0.9, 1.0] {
            let p = params(p0, mu);
            let seqs = enumerate_sequences(n, &p).expect("short sequence");
            for pos in 0..n {
                let marginal: f64 = seqs
                    .iter()
                    .filter(|(s, _)| s.labels()[pos] == PauliLabel::I)
                    .map(|(_, prob)| prob)
                    .sum();
                worst = worst.max((marginal - p0).abs());
            }
        }
    }
    CheckOutcome::new(
        "stationary-marginals",
        worst <= 1e-12,
        worst,
        "every position of a length-3 sequence is I with probability p0".into(),
    )
}

fn check_oracle_equality() -> CheckOutcome {
    let grid = unit_grid(21);
    let mut worst = 0.0f64;
    for code in CodeName::ALL {
        for &p0 in &grid {
            for &mu in &grid {
                let p = params(p0, mu);
                let exact = fe_exact(code, &p).expect("enumeration succeeds");
                let closed = fe_closed(code, &p).fe;
                worst = worst.max((exact - closed).abs());
            }
        }
    }
    CheckOutcome::new(
        "oracle-equality-grid",
        worst <= 1e-12,
        worst,
        "enumerated fidelity equals the closed form, 3 codes x 21x21 grid".into(),
    )
}

fn check_pure_vs_density() -> CheckOutcome {
    let grid = unit_grid(5);
    let mut worst = 0.0f64;
    for code in CodeName::ALL {
        for &p0 in &grid {
            for &mu in &grid {
                let p = params(p0, mu);
                let pure = fe_exact(code, &p).expect("enumeration succeeds");
                let dense = fe_exact_density(code, &p).expect("mixture is a valid state");
                worst = worst.max((pure - dense).abs());
            }
        }
    }
    CheckOutcome::new(
        "pure-vs-density",
        worst <= 1e-12,
        worst,
        "pure-trajectory sum equals the density-matrix pipeline, 3 codes x 5x5 grid".into(),
    )
}

fn check_capacity_endpoints() -> CheckOutcome {
    let grid = unit_grid(101);
    let mut worst = 0.0f64;
    let mut exact_at_full_memory = true;
    for &p0 in &grid {
        let at_one = capacity(&params(p0, 1.0)).q;
        if at_one != 1.0 {
            exact_at_full_memory = false;
        }
        let at_zero = capacity(&params(p0, 0.0)).q;
        let memoryless = 1.0 - binary_entropy(p0).expect("grid probability");
        worst = worst.max((at_zero - memoryless).abs());
    }
    CheckOutcome::new(
        "capacity-endpoints",
        exact_at_full_memory && worst <= 1e-12,
        worst,
        "Q is exactly 1 at mu=1 and matches the memoryless entropy formula at mu=0, 101 p0 points"
            .into(),
    )
}

fn check_capacity_monotone() -> CheckOutcome {
    let grid = unit_grid(1001);
    let mut worst_drop = 0.0f64;
    for &p0 in &[0.6, 0.9, 0.999] {
        let mut prev = None;
        for &mu in &grid {
            let q = capacity(&params(p0, mu)).q;
            if let Some(last) = prev {
                worst_drop = worst_drop.max(last - q);
            }
            prev = Some(q);
        }
    }
    CheckOutcome::new(
        "capacity-monotone",
        worst_drop <= 0.0,
        worst_drop,
        "Q never decreases along 1001 mu points for p0 in {0.6, 0.9, 0.999}".into(),
    )
}

fn check_c1_monotone_dominant() -> CheckOutcome {
    let mu_grid = unit_grid(101);
    let mut worst = 0.0f64;
    for &p0 in &[0.55, 0.7, 0.9, 0.999] {
        let mut prev = None;
        for &mu in &mu_grid {
            let fe = fe_closed(CodeName::C1, &params(p0, mu)).fe;
            if let Some(last) = prev {
                worst = worst.max(fe - last);
            }
            worst = worst.max(p0 - fe);
            prev = Some(fe);
        }
    }
    CheckOutcome::new(
        "c1-monotone-dominant",
        worst <= 1e-15,
        worst,
        "three-qubit fidelity never rises with mu and never drops below p0, 4x101 grid".into(),
    )
}

fn check_c2_perfect_memory() -> CheckOutcome {
    let mut worst = 0.0f64;
    for &p0 in &unit_grid(101) {
        worst = worst.max((fe_closed(CodeName::C2, &params(p0, 1.0)).fe - 1.0).abs());
        // Approach from below: closer to full memory is never worse.
        let near = fe_closed(CodeName::C2, &params(p0, 0.999)).fe;
        let nearer = fe_closed(CodeName::C2, &params(p0, 0.9999)).fe;
        worst = worst.max(near - nearer);
    }
    CheckOutcome::new(
        "c2-perfect-memory",
        worst <= 0.0,
        worst,
        "two-qubit fidelity reaches exactly 1 at mu=1, approached monotonically".into(),
    )
}

fn check_closed_form_identities() -> CheckOutcome {
    let grid = unit_grid(21);
    let mut worst = 0.0f64;
    for &p0 in &grid {
        for &mu in &grid {
            let p = params(p0, mu);
            let pz = 1.0 - p0;
            let f_c1 = 3.0 * p0 * p0 - 2.0 * p0 * p0 * p0;
            let factored_c1 = f_c1 - mu * (2.0 - mu) * (f_c1 - p0);
            worst = worst.max((fe_closed(CodeName::C1, &p).fe - factored_c1).abs());
            let f_c2 = p0 * p0 + pz * pz;
            let factored_c2 = f_c2 + mu * (1.0 - f_c2);
            worst = worst.max((fe_closed(CodeName::C2, &p).fe - factored_c2).abs());
        }
    }
    CheckOutcome::new(
        "closed-form-identities",
        worst <= 1e-12,
        worst,
        "term-sum and factored fidelity forms agree on a 21x21 grid".into(),
    )
}

fn check_threshold_bisection() -> CheckOutcome {
    let mut worst = 0.0f64;
    for &p0 in &[0.6, 0.9, 0.999] {
        let gap = |mu: f64| fe_closed(CodeName::C2, &params(p0, mu)).fe - p0;
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid == lo || mid == hi {
                break;
            }
            if gap(mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let root = 0.5 * (lo + hi);
        let predicted = c2_beats_uncoded_threshold(p0).expect("p0 > 0");
        worst = worst.max((root - predicted).abs());
    }
    CheckOutcome::new(
        "threshold-bisection",
        worst <= 1e-9,
        worst,
        "sign change of the two-qubit advantage sits at (2p0-1)/(2p0) for 3 p0 values".into(),
    )
}

fn check_crossover_location() -> CheckOutcome {
    let mu = c2_beats_c1_crossover::<f64>();
    let residual = (mu * (2.0 - mu) - 2.0 * (1.0 - mu)).abs();
    let exact = crossover_exact_mu(1e-3).expect("eps in range");
    let offset = (exact - mu).abs();
    CheckOutcome::new(
        "crossover-location",
        residual <= 1e-12 && offset <= 5e-3,
        residual.max(offset),
        format!(
            "mu(2-mu)=2(1-mu) residual {residual:.3e}; exact crossover at eps=1e-3 \
             sits {offset:.3e} away"
        ),
    )
}

fn check_trajectory_dichotomy() -> CheckOutcome {
    let grid = unit_grid(5);
    let mut worst = 0.0f64;
    for code in CodeName::ALL {
        for &p0 in &grid {
            for &mu in &grid {
                for record in
                    trajectory_fidelities(code, &params(p0, mu)).expect("enumeration succeeds")
                {
                    worst = worst.max(record.fidelity.min(1.0 - record.fidelity).abs());
                }
            }
        }
    }
    CheckOutcome::new(
        "trajectory-dichotomy",
        worst <= 1e-12,
        worst,
        "every per-sequence fidelity is 0 or 1, 3 codes x 5x5 grid".into(),
    )
}

fn check_codes_roundtrip() -> CheckOutcome {
    let mut worst = 0.0f64;
    for name in CodeName::ALL {
        let code = CodeSpec::get(name);
        let bell = StateVector::<f64>::bell_state();
        let input = if code.n_ancilla() > 0 {
            bell.tensor(&StateVector::computational(code.n_ancilla(), 0).expect("ground state"))
        } else {
            bell.clone()
        };
        let encoded = code.encode(&input).expect("valid register");
        let reduced = code.decode(&encoded.to_density()).expect("valid register");
        let f = fidelity_with_pure(&bell, &reduced).expect("matching dimensions");
        worst = worst.max((f - 1.0).abs());
    }
    CheckOutcome::new(
        "codes-roundtrip",
        worst <= 1e-12,
        worst,
        "encode then decode without noise returns the Bell pair for all codes".into(),
    )
}

/// Runs every check, in a fixed order.
pub fn run_all() -> Vec<CheckOutcome> {
    vec![
        check_conditional_stochasticity(),
        check_enumeration_normalization(),
        check_stationary_marginals(),
        check_oracle_equality(),
        check_pure_vs_density(),
        check_capacity_endpoints(),
        check_capacity_monotone(),
        check_c1_monotone_dominant(),
        check_c2_perfect_memory(),
        check_closed_form_identities(),
        check_threshold_bisection(),
        check_crossover_location(),
        check_trajectory_dichotomy(),
        check_codes_roundtrip(),
    ]
}
