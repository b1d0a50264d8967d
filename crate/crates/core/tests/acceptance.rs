//! Acceptance suite. Each test covers one numbered criterion, prints a
//! `[PASS]`/`[FAIL]` line with the measured values, and asserts the stated
//! tolerances. Run `cargo test --test acceptance -- --nocapture` to see the
//! per-criterion lines for passing tests as well.

use std::f64::consts::FRAC_PI_2;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_pcg::Pcg64;

use tuav_place::channel::{los_probability, path_loss_db, Environment, PathLossMode, Point3};
use tuav_place::geometry::{PlacementConfig, TetherCoord};
use tuav_place::optimizer::{
    brute_force, critical_inclination, critical_tether_length, opt_bounds, solve, suboptimal,
    suboptimal_closed_form, FreeVariable,
};
use tuav_place::special::{erf, lower_incomplete_gamma};
use tuav_place::theta_min::CityModel;

const MODES: [PathLossMode; 2] = [PathLossMode::Linear, PathLossMode::AdditiveDb];

const PRESETS: [(&str, f64, f64); 4] = [
    ("suburban", 750.0, 8.0),
    ("urban", 500.0, 15.0),
    ("dense-urban", 300.0, 20.0),
    ("high-rise-urban", 300.0, 50.0),
];

fn report(criterion: &str, failures: &[String]) {
    if failures.is_empty() {
        println!("[PASS] {criterion}");
    } else {
        println!("[FAIL] {criterion}");
        for line in failures.iter().take(12) {
            println!("       {line}");
        }
        if failures.len() > 12 {
            println!("       ... and {} more", failures.len() - 12);
        }
        panic!(
            "{criterion}: {} failing check(s): {}",
            failures.len(),
            failures.iter().take(4).cloned().collect::<Vec<_>>().join(" | ")
        );
    }
}

fn cfg(h_b: f64, d: f64, t_max: f64, theta_min_deg: f64) -> PlacementConfig {
    PlacementConfig::new(h_b, d, t_max, theta_min_deg.to_radians()).unwrap()
}

fn uniform_grid(n: usize) -> Vec<f64> {
    (0..n).map(|j| FRAC_PI_2 * j as f64 / (n - 1) as f64).collect()
}

#[test]
fn criterion_01_mean_inclination_reproduction() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let expected = [10.6, 15.3, 15.3, 30.8];
    let mut measured = Vec::new();
    for ((name, beta, gamma), target) in PRESETS.iter().zip(expected) {
        let city = CityModel::new(*beta, *gamma, *gamma, 150.0).unwrap();
        let mean_deg = city.mean_theta_min().to_degrees();
        measured.push(format!("{name} {mean_deg:.3}"));
        if (mean_deg - target).abs() > 0.3 {
            failures.push(format!(
                "{name}: mean_theta_min = {mean_deg:.4} deg, published {target} deg, |diff| = {:.4} > 0.3",
                (mean_deg - target).abs()
            ));
        }
    }
    let elapsed = started.elapsed().as_secs_f64();
    if elapsed >= 5.0 {
        failures.push(format!("runtime {elapsed:.2} s exceeds 5 s"));
    }
    println!("criterion 1 measured means (deg): {}", measured.join(", "));
    report(
        "criterion 1: mean theta_min reproduction (h_b = gamma, t_max = 150 m, +-0.3 deg)",
        &failures,
    );
}

#[test]
fn criterion_02_analytic_vs_monte_carlo_cdf() {
    let mut failures = Vec::new();
    let grid = uniform_grid(90);
    for (name, beta, gamma) in PRESETS {
        let started = Instant::now();
        let city = CityModel::new(beta, gamma, gamma, 150.0).unwrap();
        let ecdf = city.sample_cdf(&grid, 100_000, 7).unwrap();
        let sup = grid
            .iter()
            .zip(&ecdf.probs)
            .map(|(&theta, &p)| (p - city.cdf(theta)).abs())
            .fold(0.0f64, f64::max);
        let elapsed = started.elapsed().as_secs_f64();
        println!("criterion 2 {name}: sup distance {sup:.5} in {elapsed:.1} s");
        if sup > 0.02 {
            failures.push(format!("{name}: sup-norm distance {sup:.5} > 0.02"));
        }
        if elapsed >= 60.0 {
            failures.push(format!("{name}: runtime {elapsed:.1} s exceeds 60 s"));
        }
    }
    report(
        "criterion 2: analytic vs Monte Carlo CDF (1e5 samples, 90-point grid, sup <= 0.02)",
        &failures,
    );
}

#[test]
fn criterion_03_bound_containment() {
    let started = Instant::now();
    let env = Environment::dense_urban();
    let grid_n = 400;
    let mut failures = Vec::new();
    for mode in MODES {
        for theta_min_deg in [0.0, 15.0, 30.0] {
            for step in 1..=50 {
                let d = (step * 10) as f64;
                let c = cfg(30.0, d, 150.0, theta_min_deg);
                let bounds = opt_bounds(&c);
                let oracle = brute_force(&c, &env, mode, grid_n);
                let cell_t = c.t_max / (grid_n - 1) as f64;
                let cell_theta = (FRAC_PI_2 - c.theta_min) / (grid_n - 1) as f64;
                let contained = match bounds.free_variable {
                    FreeVariable::TetherLength => {
                        (oracle.coord.theta - bounds.fixed_value).abs() <= cell_theta
                            && oracle.coord.t >= bounds.lower - cell_t
                            && oracle.coord.t <= bounds.upper + cell_t
                    }
                    FreeVariable::InclinationAngle => {
                        (oracle.coord.t - bounds.fixed_value).abs() <= cell_t
                            && oracle.coord.theta >= bounds.lower - cell_theta
                            && oracle.coord.theta <= bounds.upper + cell_theta
                    }
                };
                if !contained {
                    failures.push(format!(
                        "{mode:?} d={d} theta_min={theta_min_deg}: oracle (t={:.3}, theta={:.4}) outside bounds [{:.3}, {:.3}] ({})",
                        oracle.coord.t, oracle.coord.theta, bounds.lower, bounds.upper, bounds.free_variable
                    ));
                }
                let sol = solve(&c, &env, mode);
                if sol.pl_db > oracle.pl_db + 0.01 {
                    failures.push(format!(
                        "{mode:?} d={d} theta_min={theta_min_deg}: solve {:.4} dB above oracle {:.4} dB + 0.01",
                        sol.pl_db, oracle.pl_db
                    ));
                }
            }
        }
    }
    let elapsed = started.elapsed().as_secs_f64();
    println!("criterion 3 runtime: {elapsed:.1} s");
    if elapsed >= 120.0 {
        failures.push(format!("runtime {elapsed:.1} s exceeds 2 min"));
    }
    report(
        "criterion 3: oracle optimum inside reduced bounds, solve within 0.01 dB (both modes)",
        &failures,
    );
}

#[test]
fn criterion_04_reachable_receiver_exactness() {
    let env = Environment::dense_urban();
    let mut failures = Vec::new();
    let mut ds: Vec<f64> = (1..=15).map(|k| (k * 10) as f64).collect();
    ds.extend([7.3, 42.195, 149.999]);
    for d in ds {
        let c = cfg(30.0, d, 150.0, 0.0);
        for mode in MODES {
            let sol = solve(&c, &env, mode);
            if (sol.coord.t - d).abs() > 1e-6
                || sol.coord.theta.abs() > 1e-8
                || sol.position.x.abs() > 1e-6
                || (sol.position.z - 30.0).abs() > 1e-9
            {
                failures.push(format!(
                    "{mode:?} d={d}: got (t={}, theta={}), position ({}, {}, {})",
                    sol.coord.t, sol.coord.theta, sol.position.x, sol.position.y, sol.position.z
                ));
            }
        }
    }
    report(
        "criterion 4: theta_min=0, d <= t_max solves to (d, 0) at position (0, 0, h_b)",
        &failures,
    );
}

#[test]
fn criterion_05_suboptimal_gap() {
    let env = Environment::dense_urban();
    let mode = PathLossMode::Linear;
    let ds: Vec<f64> = (1..=40).map(|k| (k * 10) as f64).collect();
    let gaps = |theta_min_deg: f64| -> Vec<f64> {
        ds.iter()
            .map(|&d| {
                let c = cfg(30.0, d, 150.0, theta_min_deg);
                suboptimal(&c, &env, mode).pl_db - solve(&c, &env, mode).pl_db
            })
            .collect()
    };
    let g15 = gaps(15.0);
    let g30 = gaps(30.0);
    let g0 = gaps(0.0);

    let max_of = |v: &[f64]| v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min_of = |v: &[f64]| v.iter().cloned().fold(f64::INFINITY, f64::min);
    println!(
        "criterion 5 gap ranges (dB): theta_min=0 [{:.3}, {:.3}] (reported, unbounded), 15 [{:.3}, {:.3}], 30 [{:.3}, {:.3}]",
        min_of(&g0), max_of(&g0), min_of(&g15), max_of(&g15), min_of(&g30), max_of(&g30)
    );

    let mut failures = Vec::new();
    for (label, gaps) in [("15", &g15), ("30", &g30)] {
        for (&d, &gap) in ds.iter().zip(gaps) {
            if gap < -1e-6 {
                failures.push(format!("theta_min={label}: gap {gap:.6} < 0 at d={d}"));
            }
            if gap > 3.0 {
                failures.push(format!("theta_min={label}: gap {gap:.4} dB > 3 dB at d={d}"));
            }
        }
    }
    for ((&d, &narrow), &wide) in ds.iter().zip(&g30).zip(&g15) {
        if narrow > wide + 1e-9 {
            failures.push(format!(
                "gap not tighter at larger floor: d={d}, gap30 {narrow:.4} > gap15 {wide:.4}"
            ));
        }
    }
    report(
        "criterion 5: suboptimal gap within [0, 3] dB for theta_min in {15, 30} deg, tighter at 30",
        &failures,
    );
}

#[test]
fn criterion_06_tether_length_gain() {
    let env = Environment::dense_urban();
    let mode = PathLossMode::Linear;
    let pl = |d: f64, t_max: f64| solve(&cfg(30.0, d, t_max, 0.0), &env, mode).pl_db;

    let mut failures = Vec::new();
    let gain = pl(150.0, 50.0) - pl(150.0, 150.0);
    println!("criterion 6 gain at d=150: {gain:.4} dB");
    if gain < 8.0 {
        failures.push(format!("gain {gain:.4} dB below 8 dB"));
    }
    // frozen by the independent fine-grid oracle before the build
    if (gain - 18.096502000).abs() > 0.01 {
        failures.push(format!("gain {gain:.6} dB drifted from the frozen oracle value 18.096502"));
    }

    let diffs: Vec<(f64, f64)> = (15..=40)
        .map(|k| {
            let d = (k * 10) as f64;
            (d, pl(d, 50.0) - pl(d, 150.0))
        })
        .collect();
    for pair in diffs.windows(2) {
        let (d_prev, v_prev) = pair[0];
        let (d_next, v_next) = pair[1];
        if v_next > v_prev + 1e-9 {
            failures.push(format!(
                "gain difference increases from {v_prev:.4} dB at d={d_prev} to {v_next:.4} dB at d={d_next}"
            ));
        }
    }
    report(
        "criterion 6: tether-length gain >= 8 dB at d=150 and nonincreasing on d in [150, 400]",
        &failures,
    );
}

#[test]
fn criterion_07_lemma_property_suite() {
    let mut rng = Pcg64::seed_from_u64(0x1EA5);
    let mut failures = Vec::new();
    for case in 0..1000 {
        let h_b = rng.gen_range(5.0..80.0);
        let d = rng.gen_range(20.0..450.0);
        let t_max = rng.gen_range(30.0..250.0);
        let c = PlacementConfig::new(h_b, d, t_max, 0.0).unwrap();
        let range2 = |t: f64, theta: f64| {
            let p = c.to_cartesian(TetherCoord::new(t, theta));
            p.x * p.x + p.z * p.z
        };
        let ratio = |t: f64, theta: f64| {
            let p = c.to_cartesian(TetherCoord::new(t, theta));
            p.z / p.x
        };

        // squared range is convex in t with its minimum at the critical length
        let theta = rng.gen_range(0.05..FRAC_PI_2 - 0.05);
        let t_star = critical_tether_length(&c, theta);
        let n = 801;
        let (lo, hi) = (t_star - 60.0, t_star + 60.0);
        let cell = (hi - lo) / (n - 1) as f64;
        let values: Vec<f64> = (0..n).map(|i| range2(lo + cell * i as f64, theta)).collect();
        if values.windows(3).any(|w| w[2] - 2.0 * w[1] + w[0] <= 0.0) {
            failures.push(format!("case {case}: squared range not convex in t"));
        }
        let argmin = values
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .map(|(i, _)| lo + cell * i as f64)
            .unwrap();
        if (argmin - t_star).abs() > cell {
            failures.push(format!(
                "case {case}: numeric range argmin {argmin:.4} vs critical length {t_star:.4} (cell {cell:.4})"
            ));
        }

        // height-to-gap ratio strictly increasing in t while the platform
        // stays short of the receiver
        let t_hi = 0.999 * d / theta.cos();
        let m = 401;
        let ratios: Vec<f64> = (0..m)
            .map(|i| ratio(t_hi * i as f64 / (m - 1) as f64, theta))
            .collect();
        if ratios.windows(2).any(|w| w[1] <= w[0]) {
            failures.push(format!("case {case}: LoS ratio not increasing in t"));
        }

        // in theta the ratio has a single interior maximum at the critical
        // inclination
        let t = rng.gen_range(0.1..0.9) * d;
        let theta_star = critical_inclination(&c, t).unwrap();
        let k = 4001;
        let (a_lo, a_hi) = (1e-4, FRAC_PI_2 - 1e-4);
        let a_cell = (a_hi - a_lo) / (k - 1) as f64;
        let curve: Vec<f64> = (0..k).map(|i| ratio(t, a_lo + a_cell * i as f64)).collect();
        let mut rises_to_falls = 0;
        let mut falls_to_rises = 0;
        let mut prev_rising = curve[1] >= curve[0];
        for w in curve.windows(2).skip(1) {
            let rising = w[1] >= w[0];
            if prev_rising && !rising {
                rises_to_falls += 1;
            }
            if !prev_rising && rising {
                falls_to_rises += 1;
            }
            prev_rising = rising;
        }
        if rises_to_falls != 1 || falls_to_rises != 0 {
            failures.push(format!(
                "case {case}: LoS ratio in theta has {rises_to_falls} maxima / {falls_to_rises} minima"
            ));
        }
        let argmax = curve
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .map(|(i, _)| a_lo + a_cell * i as f64)
            .unwrap();
        if (argmax - theta_star).abs() > a_cell {
            failures.push(format!(
                "case {case}: numeric ratio argmax {argmax:.6} vs critical inclination {theta_star:.6}"
            ));
        }

        // squared range strictly increasing in theta at fixed positive t
        let t_fixed = rng.gen_range(0.05..1.0) * t_max;
        let r2: Vec<f64> = (0..m)
            .map(|i| range2(t_fixed, FRAC_PI_2 * i as f64 / (m - 1) as f64))
            .collect();
        if r2.windows(2).any(|w| w[1] <= w[0]) {
            failures.push(format!("case {case}: squared range not increasing in theta"));
        }
    }
    report(
        "criterion 7: convexity/monotonicity property suite on 1000 random configs",
        &failures,
    );
}

#[test]
fn criterion_08_dominance_suite() {
    let env = Environment::dense_urban();
    let mut rng = Pcg64::seed_from_u64(0xD0E5);
    let mut failures = Vec::new();

    // margin keeping transformed points meaningfully distinct from their
    // sources so "strictly better" is resolvable in double precision
    let margin = 1e-3;
    let mut checked = [0usize; 3];
    let categories = ["y-projection", "x-reflection", "x-clamp"];

    while checked.iter().sum::<usize>() < 10_000 {
        let h_b = rng.gen_range(5.0..80.0);
        let t_max = rng.gen_range(50.0..250.0);
        let theta_min_deg = rng.gen_range(0.0..45.0f64);
        let theta_min = theta_min_deg.to_radians();
        // keep x < 0 reachable for the clamp category
        let d = rng.gen_range(5.0..(0.9 * t_max * theta_min.cos()).max(10.0));
        let Ok(c) = PlacementConfig::new(h_b, d, t_max, theta_min) else {
            continue;
        };

        let alpha = rng.gen_range(theta_min..FRAC_PI_2);
        let azimuth = rng.gen_range(0.0..std::f64::consts::TAU);
        let len = rng.gen_range(0.01..1.0) * t_max;
        let p = Point3::new(
            d + len * alpha.cos() * azimuth.cos(),
            len * alpha.cos() * azimuth.sin(),
            h_b + len * alpha.sin(),
        );
        debug_assert!(c.in_hovering_region(p));

        let candidates = [
            (0, (p.y.abs() > margin).then(|| Point3::new(p.x, 0.0, p.z))),
            (1, (p.x > d + margin).then(|| Point3::new(2.0 * d - p.x, p.y, p.z))),
            (2, (p.x < -margin).then(|| Point3::new(0.0, p.y, p.z))),
        ];
        for (cat, improved) in candidates {
            let Some(q) = improved else { continue };
            if checked[cat] >= 3_400 {
                continue;
            }
            checked[cat] += 1;
            if !c.in_hovering_region(q) {
                failures.push(format!(
                    "{}: transformed point ({:.3}, {:.3}, {:.3}) left the region",
                    categories[cat], q.x, q.y, q.z
                ));
                continue;
            }
            for mode in MODES {
                let before = path_loss_db(p, &env, mode).unwrap();
                let after = path_loss_db(q, &env, mode).unwrap();
                if after >= before {
                    failures.push(format!(
                        "{} {mode:?}: loss {after:.9} dB not strictly below {before:.9} dB",
                        categories[cat]
                    ));
                }
            }
        }
    }
    println!(
        "criterion 8 checked points: projection {}, reflection {}, clamp {}",
        checked[0], checked[1], checked[2]
    );
    report(
        "criterion 8: projection/reflection/clamp dominance on 1e4 random in-region points",
        &failures,
    );
}

#[test]
fn criterion_09_closed_form_consistency() {
    let env = Environment::dense_urban();
    let mut rng = Pcg64::seed_from_u64(0xC105ED);
    let mut failures = Vec::new();
    let mut regime_hits = [0usize; 3];
    let rel = |a: f64, b: f64| (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE);

    for case in 0..1000 {
        let h_b = rng.gen_range(5.0..80.0);
        let t_max = rng.gen_range(30.0..250.0);
        let stratum = case % 3;
        let theta_min_deg: f64 = if stratum == 1 {
            rng.gen_range(5.0..60.0)
        } else {
            rng.gen_range(0.0..60.0)
        };
        let theta_min = theta_min_deg.to_radians();
        let near_limit = t_max * theta_min.cos();
        let f = t_max / theta_min.cos() + h_b * theta_min.tan();
        let d = match stratum {
            0 => rng.gen_range(0.05..0.95) * near_limit,
            1 => near_limit + rng.gen_range(0.05..0.95) * (f - near_limit),
            _ => f * rng.gen_range(1.0..3.0),
        };
        let Ok(c) = PlacementConfig::new(h_b, d, t_max, theta_min) else {
            continue;
        };
        regime_hits[stratum] += 1;

        let closed = suboptimal_closed_form(&c, &env);
        let position = c.to_cartesian(closed.coord);
        let p_los = los_probability(position, &env).unwrap();
        let range = position.norm();
        if rel(closed.p_los, p_los) > 1e-9 {
            failures.push(format!(
                "case {case} ({:?}): closed-form P_LoS {:.12} vs channel {:.12}",
                c.regime(), closed.p_los, p_los
            ));
        }
        if rel(closed.range_m, range) > 1e-9 {
            failures.push(format!(
                "case {case} ({:?}): closed-form range {:.9} vs channel {:.9}",
                c.regime(), closed.range_m, range
            ));
        }
    }
    println!(
        "criterion 9 regime coverage: near {}, mid {}, far {}",
        regime_hits[0], regime_hits[1], regime_hits[2]
    );
    if regime_hits.contains(&0) {
        failures.push("a regime stratum was never sampled".to_string());
    }
    report(
        "criterion 9: closed-form suboptimal P_LoS and range match the channel to 1e-9 relative",
        &failures,
    );
}

#[test]
fn criterion_10_incomplete_gamma_identity() {
    let mut failures = Vec::new();
    let sqrt_pi = std::f64::consts::PI.sqrt();
    for k in 0..50 {
        // log-spaced grid over [1e-3, 1e2]
        let x = 10f64.powf(-3.0 + 5.0 * k as f64 / 49.0);
        let lhs = lower_incomplete_gamma(0.5, x);
        let rhs = sqrt_pi * erf(x.sqrt());
        if (lhs - rhs).abs() > 1e-12 {
            failures.push(format!("x={x:.4e}: gamma route {lhs:.15} vs erf route {rhs:.15}"));
        }
    }
    report(
        "criterion 10: lower incomplete gamma(1/2, x) = sqrt(pi) erf(sqrt(x)) to 1e-12",
        &failures,
    );
}
