//! Subcommand implementations. Each returns the process exit code on
//! success; argument and parameter problems come back as `Err` strings and
//! exit with code 1.

use crate::args::{CapacityArgs, CrossoverArgs, FidelityArgs, Method};
use crate::output::Table;
use crate::sweep::{lerp_grid, resolve, Grid};
use dephasim::engine::{fe_exact, fe_monte_carlo};
use dephasim::verify::run_all;
use dephasim::{
    c2_beats_c1_crossover, c2_beats_uncoded_threshold, capacity, crossover_exact_mu, fe_closed,
    ChannelParams, CodeName,
};
use serde_json::{json, Value};

const VERSION: &str = env!("CARGO_PKG_VERSION");

fn metadata(command: &str, parameters: Value) -> Value {
    json!({
        "command": command,
        "parameters": parameters,
        "version": VERSION,
    })
}

fn params_at(p0: f64, mu: f64) -> Result<ChannelParams<f64>, String> {
    ChannelParams::new(p0, mu).map_err(|e| e.to_string())
}

pub fn cmd_capacity(args: &CapacityArgs) -> Result<i32, String> {
    let grid = resolve(&args.point)?;
    let mut rows = Vec::with_capacity(grid.points.len());
    for &(p0, mu) in &grid.points {
        rows.push(vec![p0, mu, capacity(&params_at(p0, mu)?).q]);
    }
    Table {
        columns: vec!["p0".into(), "mu".into(), "Q".into()],
        rows,
    }
    .write(
        args.output.format,
        args.output.out.as_deref(),
        metadata("capacity", grid.description),
    )?;
    Ok(0)
}

pub fn cmd_fidelity(args: &FidelityArgs) -> Result<i32, String> {
    let (grid, codes, methods) = if args.figure1 {
        let p0 = 0.999;
        let grid = Grid {
            points: lerp_grid(0.0, 1.0, 201)
                .into_iter()
                .map(|mu| (p0, mu))
                .collect(),
            description: json!({
                "preset": "figure1",
                "p0": p0,
                "sweep": { "param": "mu", "start": 0.0, "stop": 1.0, "points": 201 },
            }),
        };
        (grid, CodeName::ALL.to_vec(), vec![Method::Closed])
    } else {
        let grid = resolve(&args.point)?;
        let codes = args
            .codes
            .iter()
            .map(|s| s.parse::<CodeName>().map_err(|e| e.to_string()))
            .collect::<Result<Vec<_>, _>>()?;
        (grid, codes, args.method.clone())
    };
    for (what, count) in [("--codes", codes.len()), ("--method", methods.len())] {
        if count == 0 {
            return Err(format!("{what} must name at least one entry"));
        }
    }
    for (i, code) in codes.iter().enumerate() {
        if codes[..i].contains(code) {
            return Err(format!("--codes lists `{code}` twice"));
        }
    }
    for (i, method) in methods.iter().enumerate() {
        if methods[..i].contains(method) {
            return Err(format!("--method lists `{}` twice", method.label()));
        }
    }
    let wants_mc = methods.contains(&Method::Mc);
    if wants_mc && args.seed.is_none() {
        return Err("method `mc` needs --seed so results are reproducible".into());
    }

    let mut columns = vec!["p0".to_string(), "mu".to_string()];
    for code in &codes {
        for method in &methods {
            columns.push(format!("pe_{code}_{}", method.label()));
            if *method == Method::Mc {
                columns.push(format!("pe_{code}_mc_stderr"));
            }
        }
    }

    let mut rows = Vec::with_capacity(grid.points.len());
    for (i, &(p0, mu)) in grid.points.iter().enumerate() {
        let params = params_at(p0, mu)?;
        let mut row = vec![p0, mu];
        for &code in &codes {
            for &method in &methods {
                match method {
                    Method::Closed => row.push(fe_closed(code, &params).pe),
                    Method::Exact => {
                        row.push(1.0 - fe_exact(code, &params).map_err(|e| e.to_string())?)
                    }
                    Method::Mc => {
                        let seed = args.seed.expect("checked above").wrapping_add(i as u64);
                        let estimate = fe_monte_carlo(code, &params, args.samples, seed)
                            .map_err(|e| e.to_string())?;
                        row.push(1.0 - estimate.fe);
                        row.push(estimate.std_error);
                    }
                }
            }
        }
        rows.push(row);
    }

    let mut parameters = grid.description;
    parameters["codes"] = json!(codes.iter().map(|c| c.to_string()).collect::<Vec<_>>());
    parameters["methods"] = json!(methods.iter().map(|m| m.label()).collect::<Vec<_>>());
    if wants_mc {
        parameters["samples"] = json!(args.samples);
        parameters["seed"] = json!(args.seed.expect("checked above"));
    }
    Table { columns, rows }.write(
        args.output.format,
        args.output.out.as_deref(),
        metadata("fidelity", parameters),
    )?;
    Ok(0)
}

pub fn cmd_crossover(args: &CrossoverArgs) -> Result<i32, String> {
    let p0 = args.p0;
    if !(p0 > 0.5 && p0 < 1.0) {
        return Err(format!(
            "--p0 must lie in (0.5, 1): the exact crossover is defined for a \
             small error rate eps = 1 - p0, got p0 = {p0}"
        ));
    }
    let threshold = c2_beats_uncoded_threshold(p0).map_err(|e| e.to_string())?;
    let small_eps = c2_beats_c1_crossover::<f64>();
    let exact = crossover_exact_mu(1.0 - p0).map_err(|e| e.to_string())?;
    Table {
        columns: vec![
            "p0".into(),
            "mu_c2_beats_uncoded".into(),
            "mu_c2_beats_c1_small_eps".into(),
            "mu_c2_beats_c1_exact".into(),
        ],
        rows: vec![vec![p0, threshold, small_eps, exact]],
    }
    .write(
        args.output.format,
        args.output.out.as_deref(),
        metadata("crossover", json!({ "p0": p0, "eps": 1.0 - p0 })),
    )?;
    Ok(0)
}

pub fn cmd_verify() -> Result<i32, String> {
    let outcomes = run_all();
    let passed = outcomes.iter().filter(|o| o.passed).count();
    for outcome in &outcomes {
        println!(
            "{} {:<26} max discrepancy {:.3e}  ({})",
            if outcome.passed { "PASS" } else { "FAIL" },
            outcome.name,
            outcome.max_discrepancy,
            outcome.detail
        );
    }
    println!("{passed}/{} checks passed", outcomes.len());
    Ok(if passed == outcomes.len() { 0 } else { 2 })
}
