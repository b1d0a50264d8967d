//! Subcommand implementations.

use std::f64::consts::FRAC_PI_2;
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use tuav_place::channel::path_loss_db;
use tuav_place::geometry::TetherCoord;
use tuav_place::optimizer::{opt_bounds, solve, suboptimal, FreeVariable};

use crate::config::{CityInput, CliError, PlacementInput, SweepInput};
use crate::output::{print_json, sig9, write_file, BoundsJson, Manifest, SolutionJson};

pub fn cmd_solve(input: &PlacementInput) -> Result<(), CliError> {
    let sol = solve(&input.config, &input.env, input.mode);
    print_json(&SolutionJson::from(&sol));
    Ok(())
}

pub fn cmd_bounds(input: &PlacementInput) -> Result<(), CliError> {
    let bounds = opt_bounds(&input.config);
    print_json(&BoundsJson::from(&bounds));
    Ok(())
}

pub fn cmd_suboptimal(input: &PlacementInput) -> Result<(), CliError> {
    let sol = suboptimal(&input.config, &input.env, input.mode);
    print_json(&SolutionJson::from(&sol));
    Ok(())
}

/// One sweep point: optimal and suboptimal placements, the reduced bounds,
/// and the loss at both bound endpoints (the attainable loss range over the
/// reduced set).
pub fn cmd_sweep(input: &SweepInput, out_dir: &Path, seed: u64) -> Result<(), CliError> {
    let started = Instant::now();

    let rows: Vec<Result<String, CliError>> = (0..input.steps)
        .into_par_iter()
        .map(|index| {
            let cfg = input.config_at(index)?;
            let value = input.value_at(index);
            let opt = solve(&cfg, &input.env, input.mode);
            let sub = suboptimal(&cfg, &input.env, input.mode);
            let bounds = opt_bounds(&cfg);
            let eval = |t: f64, theta: f64| {
                path_loss_db(cfg.to_cartesian(TetherCoord::new(t, theta)), &input.env, input.mode)
                    .expect("hovering position coincides with the receiver")
            };
            let (pl_lower, pl_upper, bound_lower, bound_upper) = match bounds.free_variable {
                FreeVariable::TetherLength => (
                    eval(bounds.lower, bounds.fixed_value),
                    eval(bounds.upper, bounds.fixed_value),
                    bounds.lower,
                    bounds.upper,
                ),
                FreeVariable::InclinationAngle => (
                    eval(bounds.fixed_value, bounds.lower),
                    eval(bounds.fixed_value, bounds.upper),
                    bounds.lower.to_degrees(),
                    bounds.upper.to_degrees(),
                ),
            };
            Ok([
                sig9(value),
                sig9(opt.coord.t),
                sig9(opt.coord.theta.to_degrees()),
                sig9(opt.pl_db),
                sig9(sub.coord.t),
                sig9(sub.coord.theta.to_degrees()),
                sig9(sub.pl_db),
                sig9(bound_lower),
                sig9(bound_upper),
                sig9(pl_lower),
                sig9(pl_upper),
                bounds.regime.to_string(),
            ]
            .join(","))
        })
        .collect();

    let mut csv = String::from(
        "value,t_opt_m,theta_opt_deg,pl_opt_db,t_sub_m,theta_sub_deg,pl_sub_db,\
         bound_lower,bound_upper,pl_lower_db,pl_upper_db,regime\n",
    );
    // name the swept column after the variable
    csv = csv.replacen("value", input.variable.column(), 1);
    for row in rows {
        csv.push_str(&row?);
        csv.push('\n');
    }
    write_file(out_dir, "sweep.csv", &csv)?;

    let mut manifest = Manifest::new("sweep", seed, input.raw.entries.clone());
    manifest.outputs.push("sweep.csv".to_string());
    manifest.wall_clock_ms = started.elapsed().as_millis();
    write_file(
        out_dir,
        "manifest.json",
        &format!(
            "{}\n",
            serde_json::to_string_pretty(&manifest).expect("manifest always serializes")
        ),
    )
}

/// Analytic CDF of the minimum safe inclination angle on a uniform grid,
/// optionally with a Monte Carlo column, plus the mean as a trailing record.
pub fn cmd_theta_min(
    input: &CityInput,
    out_dir: &Path,
    samples: u64,
    seed: u64,
    grid: usize,
) -> Result<(), CliError> {
    if grid < 2 {
        return Err(CliError::Invariant(format!("grid must have at least 2 points (got {grid})")));
    }
    let started = Instant::now();
    let city = &input.city;
    let thetas: Vec<f64> =
        (0..grid).map(|j| FRAC_PI_2 * j as f64 / (grid - 1) as f64).collect();

    let empirical = if samples > 0 {
        Some(
            city.sample_cdf(&thetas, samples, seed)
                .map_err(|e| CliError::Invariant(e.to_string()))?,
        )
    } else {
        None
    };

    let mut csv = String::from(if empirical.is_some() {
        "theta_deg,f_analytic,f_empirical\n"
    } else {
        "theta_deg,f_analytic\n"
    });
    for (j, &theta) in thetas.iter().enumerate() {
        csv.push_str(&sig9(theta.to_degrees()));
        csv.push(',');
        csv.push_str(&sig9(city.cdf(theta)));
        if let Some(ecdf) = &empirical {
            csv.push(',');
            csv.push_str(&sig9(ecdf.probs[j]));
        }
        csv.push('\n');
    }
    let mean_deg = city.mean_theta_min().to_degrees();
    csv.push_str(&format!("# mean_theta_min_deg = {}\n", sig9(mean_deg)));
    write_file(out_dir, "theta_min.csv", &csv)?;

    let mut manifest = Manifest::new("theta-min", seed, input.raw.entries.clone());
    manifest.outputs.push("theta_min.csv".to_string());
    manifest.wall_clock_ms = started.elapsed().as_millis();
    write_file(
        out_dir,
        "manifest.json",
        &format!(
            "{}\n",
            serde_json::to_string_pretty(&manifest).expect("manifest always serializes")
        ),
    )
}
