//! Resolves the point flags into the list of (p0, mu) rows to evaluate.

use crate::args::PointArgs;
use serde_json::{json, Value};

pub struct Grid {
    /// One (p0, mu) pair per output row, in sweep order.
    pub points: Vec<(f64, f64)>,
    /// Grid description for the JSON metadata block.
    pub description: Value,
}

fn check_probability(name: &str, value: f64) -> Result<(), String> {
    // `contains` is false for NaN, so NaN is rejected too.
    if !(0.0..=1.0).contains(&value) {
        return Err(format!("{name} must lie in [0, 1], got {value}"));
    }
    Ok(())
}

/// Inclusive evenly spaced grid; both endpoints are hit exactly.
pub fn lerp_grid(start: f64, stop: f64, points: usize) -> Vec<f64> {
    (0..points)
        .map(|i| {
            let t = i as f64 / (points - 1) as f64;
            start * (1.0 - t) + stop * t
        })
        .collect()
}

pub fn resolve(point: &PointArgs) -> Result<Grid, String> {
    let Some(spec) = &point.sweep else {
        let p0 = point
            .p0
            .ok_or("give --p0, or sweep it with --sweep p0:start:stop:points")?;
        let mu = point
            .mu
            .ok_or("give --mu, or sweep it with --sweep mu:start:stop:points")?;
        check_probability("--p0", p0)?;
        check_probability("--mu", mu)?;
        return Ok(Grid {
            points: vec![(p0, mu)],
            description: json!({ "p0": p0, "mu": mu }),
        });
    };

    let parts: Vec<&str> = spec.split(':').collect();
    let [name, start, stop, n] = parts[..] else {
        return Err(format!(
            "--sweep expects `param:start:stop:points`, got `{spec}`"
        ));
    };
    let start: f64 = start
        .parse()
        .map_err(|_| format!("sweep start `{start}` is not a number"))?;
    let stop: f64 = stop
        .parse()
        .map_err(|_| format!("sweep stop `{stop}` is not a number"))?;
    let n: usize = n
        .parse()
        .map_err(|_| format!("sweep point count `{n}` is not a whole number"))?;
    check_probability("sweep start", start)?;
    check_probability("sweep stop", stop)?;
    if n < 2 {
        return Err(format!("a sweep needs at least 2 points, got {n}"));
    }
    // NaN endpoints were rejected above, so >= is a total order here.
    if start >= stop {
        return Err(format!("sweep start {start} must be below stop {stop}"));
    }
    let values = lerp_grid(start, stop, n);
    let sweep_desc = json!({ "param": name, "start": start, "stop": stop, "points": n });

    match name {
        "mu" => {
            if point.mu.is_some() {
                return Err("--mu conflicts with sweeping mu".into());
            }
            let p0 = point.p0.ok_or("sweeping mu needs a fixed --p0")?;
            check_probability("--p0", p0)?;
            Ok(Grid {
                points: values.into_iter().map(|mu| (p0, mu)).collect(),
                description: json!({ "p0": p0, "sweep": sweep_desc }),
            })
        }
        "p0" => {
            if point.p0.is_some() {
                return Err("--p0 conflicts with sweeping p0".into());
            }
            let mu = point.mu.ok_or("sweeping p0 needs a fixed --mu")?;
            check_probability("--mu", mu)?;
            Ok(Grid {
                points: values.into_iter().map(|p0| (p0, mu)).collect(),
                description: json!({ "mu": mu, "sweep": sweep_desc }),
            })
        }
        other => Err(format!(
            "unknown sweep parameter `{other}` (use `p0` or `mu`)"
        )),
    }
}
