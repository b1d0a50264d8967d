//! Placement optimizers.
//!
//! The optimal placement never needs a 2-D search: the optimum sits on the
//! boundary of the hovering region, on a 1-D set with one tether coordinate
//! pinned ([`opt_bounds`]). [`solve`] searches that set with a uniform
//! pre-scan plus golden-section refinement. [`suboptimal`] is the closed-form
//! placement that maximizes the LoS probability instead of minimizing the
//! path-loss. [`brute_force`] is a deliberately independent 2-D grid oracle
//! used to validate the reduction.

use std::f64::consts::FRAC_PI_2;

use rayon::prelude::*;

use crate::channel::{los_probability, path_loss_db, Environment, PathLossMode, Point3};
use crate::geometry::{PlacementConfig, RegimeLabel, TetherCoord};
use crate::numeric::golden_section_minimize;
use crate::Error;

/// Uniform pre-scan resolution: the loss along the reduced set is not proven
/// unimodal, so the scan brackets the global minimum before refinement.
const PRESCAN_POINTS: usize = 2001;
/// Golden-section convergence tolerance on tether length, meters.
const TETHER_TOL_M: f64 = 1e-6;
/// Golden-section convergence tolerance on inclination, radians.
const INCLINATION_TOL_RAD: f64 = 1e-8;
/// Grid losses within this many dB are treated as tied; ties resolve to the
/// smallest tether length, then the smallest inclination.
const TIE_EPS_DB: f64 = 1e-12;
/// Closed-form values must match a direct channel evaluation this tightly.
const CLOSED_FORM_REL_TOL: f64 = 1e-9;

/// Which coordinate of `(t, theta)` remains free in the reduced search set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FreeVariable {
    TetherLength,
    InclinationAngle,
}

impl std::fmt::Display for FreeVariable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            FreeVariable::TetherLength => "TetherLength",
            FreeVariable::InclinationAngle => "InclinationAngle",
        })
    }
}

/// The reduced 1-D search set for the optimum: one coordinate pinned at
/// `fixed_value`, the other bounded by `[lower, upper]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OptBounds {
    pub regime: RegimeLabel,
    pub free_variable: FreeVariable,
    /// The pinned coordinate: `theta_min` (near/mid field, radians) or
    /// `t_max` (far field, meters).
    pub fixed_value: f64,
    pub lower: f64,
    pub upper: f64,
}

/// How a [`PlacementSolution`] was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolutionKind {
    Optimal,
    Suboptimal,
    BruteForce,
}

impl std::fmt::Display for SolutionKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SolutionKind::Optimal => "Optimal",
            SolutionKind::Suboptimal => "Suboptimal",
            SolutionKind::BruteForce => "BruteForce",
        })
    }
}

/// A placement together with the channel quantities evaluated at it.
#[derive(Clone, Debug, PartialEq)]
pub struct PlacementSolution {
    pub coord: TetherCoord,
    pub position: Point3,
    pub p_los: f64,
    pub range_m: f64,
    pub pl_db: f64,
    pub regime: RegimeLabel,
    pub kind: SolutionKind,
}

/// Closed-form LoS probability and range of the suboptimal placement.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SuboptimalClosedForm {
    pub coord: TetherCoord,
    pub p_los: f64,
    pub range_m: f64,
}

/// Tether length that minimizes the receiver range at a fixed inclination:
/// `t*(theta) = d·cos(theta) − h_b·sin(theta)`. May be negative; callers
/// clamp at zero.
pub fn critical_tether_length(cfg: &PlacementConfig, theta: f64) -> f64 {
    debug_assert!((0.0..=FRAC_PI_2).contains(&theta));
    cfg.d * theta.cos() - cfg.h_b * theta.sin()
}

/// Inclination that maximizes the LoS probability at a fixed tether length:
/// `theta*(t) = asin(d/√(d²+h_b²)) − asin(t/√(d²+h_b²))`. May fall below
/// `theta_min`; callers clamp. Errors when `t` exceeds the
/// rooftop-to-receiver reach `√(d²+h_b²)`.
pub fn critical_inclination(cfg: &PlacementConfig, t: f64) -> Result<f64, Error> {
    let reach = (cfg.d * cfg.d + cfg.h_b * cfg.h_b).sqrt();
    if t > reach * (1.0 + crate::geometry::FEASIBILITY_REL_TOL) {
        return Err(Error::TetherBeyondReach { t, reach });
    }
    Ok((cfg.d / reach).clamp(-1.0, 1.0).asin() - (t / reach).clamp(-1.0, 1.0).asin())
}

/// The reduced search set the optimum is confined to.
pub fn opt_bounds(cfg: &PlacementConfig) -> OptBounds {
    let regime = cfg.regime();
    match regime {
        RegimeLabel::NearField => {
            let upper = cfg.d / cfg.theta_min.cos();
            let lower = critical_tether_length(cfg, cfg.theta_min).max(0.0).min(upper);
            OptBounds {
                regime,
                free_variable: FreeVariable::TetherLength,
                fixed_value: cfg.theta_min,
                lower,
                upper,
            }
        }
        RegimeLabel::MidField => {
            let upper = cfg.t_max;
            let lower = critical_tether_length(cfg, cfg.theta_min).max(0.0).min(upper);
            OptBounds {
                regime,
                free_variable: FreeVariable::TetherLength,
                fixed_value: cfg.theta_min,
                lower,
                upper,
            }
        }
        RegimeLabel::FarField => {
            // d >= F >= t_max keeps the tether inside the reach, so the
            // critical inclination is always defined here
            let theta_star = critical_inclination(cfg, cfg.t_max)
                .expect("far-field receiver lies beyond the tether reach");
            OptBounds {
                regime,
                free_variable: FreeVariable::InclinationAngle,
                fixed_value: cfg.t_max,
                lower: cfg.theta_min,
                upper: theta_star.max(cfg.theta_min),
            }
        }
    }
}

/// Path loss at tether coordinates `(t, theta)`. Hovering positions sit at or
/// above the rooftop, never at the receiver, so the evaluation cannot fail.
fn eval_pl(cfg: &PlacementConfig, env: &Environment, mode: PathLossMode, t: f64, theta: f64) -> f64 {
    path_loss_db(cfg.to_cartesian(TetherCoord::new(t, theta)), env, mode)
        .expect("hovering position coincides with the receiver")
}

fn make_solution(
    cfg: &PlacementConfig,
    env: &Environment,
    mode: PathLossMode,
    coord: TetherCoord,
    kind: SolutionKind,
) -> PlacementSolution {
    let position = cfg.to_cartesian(coord);
    PlacementSolution {
        coord,
        position,
        p_los: los_probability(position, env).expect("hovering position coincides with the receiver"),
        range_m: position.norm(),
        pl_db: path_loss_db(position, env, mode).expect("hovering position coincides with the receiver"),
        regime: cfg.regime(),
        kind,
    }
}

/// Exact optimum of the placement problem.
///
/// Searches the free coordinate of [`opt_bounds`] with a uniform
/// [`PRESCAN_POINTS`]-point scan followed by golden-section refinement of the
/// bracketing cell. A collapsed interval returns its single feasible point.
pub fn solve(cfg: &PlacementConfig, env: &Environment, mode: PathLossMode) -> PlacementSolution {
    let bounds = opt_bounds(cfg);
    let objective = |v: f64| match bounds.free_variable {
        FreeVariable::TetherLength => eval_pl(cfg, env, mode, v, bounds.fixed_value),
        FreeVariable::InclinationAngle => eval_pl(cfg, env, mode, bounds.fixed_value, v),
    };

    let (lower, upper) = (bounds.lower, bounds.upper);
    let best_v = if upper <= lower {
        lower
    } else {
        let at = |i: usize| lower + (upper - lower) * i as f64 / (PRESCAN_POINTS - 1) as f64;
        let mut best_i = 0;
        let mut best_f = f64::INFINITY;
        for i in 0..PRESCAN_POINTS {
            let f = objective(at(i));
            if f < best_f {
                best_f = f;
                best_i = i;
            }
        }
        let tol = match bounds.free_variable {
            FreeVariable::TetherLength => TETHER_TOL_M,
            FreeVariable::InclinationAngle => INCLINATION_TOL_RAD,
        };
        let (refined, refined_f) = golden_section_minimize(
            objective,
            at(best_i.saturating_sub(1)),
            at((best_i + 1).min(PRESCAN_POINTS - 1)),
            tol,
        );
        if refined_f < best_f {
            refined
        } else {
            at(best_i)
        }
    };

    let coord = match bounds.free_variable {
        FreeVariable::TetherLength => TetherCoord::new(best_v, bounds.fixed_value),
        FreeVariable::InclinationAngle => TetherCoord::new(bounds.fixed_value, best_v),
    };
    make_solution(cfg, env, mode, coord, SolutionKind::Optimal)
}

/// Closed-form suboptimal placement and its LoS probability and range.
///
/// The placement maximizes the LoS probability over the hovering region:
/// hover with the receiver directly underneath when reachable, otherwise run
/// the tether to full length at the inclination floor, and beyond the regime
/// threshold tilt up to the LoS-maximizing inclination.
pub fn suboptimal_closed_form(cfg: &PlacementConfig, env: &Environment) -> SuboptimalClosedForm {
    let (h_b, d, t_max, theta_min) = (cfg.h_b, cfg.d, cfg.t_max, cfg.theta_min);
    let (coord, elevation_deg, range_m) = match cfg.regime() {
        RegimeLabel::NearField => {
            let coord = TetherCoord::new(d / theta_min.cos(), theta_min);
            (coord, 90.0, h_b + d * theta_min.tan())
        }
        RegimeLabel::MidField => {
            let coord = TetherCoord::new(t_max, theta_min);
            let height = h_b + t_max * theta_min.sin();
            // the horizontal gap can round fractionally negative right at the
            // near-field boundary; the elevation is 90 degrees there
            let gap = (d - t_max * theta_min.cos()).max(0.0);
            let elevation = height.atan2(gap).to_degrees();
            let range = (h_b * h_b + d * d + t_max * t_max
                - 2.0 * d * t_max * theta_min.cos()
                + 2.0 * h_b * t_max * theta_min.sin())
            .sqrt();
            (coord, elevation, range)
        }
        RegimeLabel::FarField => {
            let theta_star = critical_inclination(cfg, t_max)
                .expect("far-field receiver lies beyond the tether reach")
                .max(theta_min);
            let coord = TetherCoord::new(t_max, theta_star);
            let q = (h_b * h_b + d * d - t_max * t_max).sqrt();
            let elevation = (h_b * q + d * t_max).atan2(d * q - h_b * t_max).to_degrees();
            (coord, elevation, q)
        }
    };
    // same clamping pipeline as the channel model
    let base = (elevation_deg - 15.0).max(0.0);
    let p_los = if base == 0.0 {
        0.0
    } else {
        (env.a * base.powf(env.b)).clamp(0.0, 1.0)
    };
    SuboptimalClosedForm { coord, p_los, range_m }
}

/// Suboptimal placement evaluated through the channel model.
///
/// Asserts that the closed-form LoS probability and range agree with the
/// channel evaluation at the mapped Cartesian point to within
/// [`CLOSED_FORM_REL_TOL`] relative.
pub fn suboptimal(cfg: &PlacementConfig, env: &Environment, mode: PathLossMode) -> PlacementSolution {
    let closed = suboptimal_closed_form(cfg, env);
    let solution = make_solution(cfg, env, mode, closed.coord, SolutionKind::Suboptimal);
    let rel = |a: f64, b: f64| (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE);
    assert!(
        rel(closed.p_los, solution.p_los) <= CLOSED_FORM_REL_TOL,
        "closed-form LoS probability {} disagrees with channel evaluation {}",
        closed.p_los,
        solution.p_los,
    );
    assert!(
        rel(closed.range_m, solution.range_m) <= CLOSED_FORM_REL_TOL,
        "closed-form range {} disagrees with channel evaluation {}",
        closed.range_m,
        solution.range_m,
    );
    solution
}

#[derive(Clone, Copy)]
struct Candidate {
    pl_db: f64,
    t: f64,
    theta: f64,
}

/// `true` when `next` should replace `cur`: strictly lower loss, or tied
/// within [`TIE_EPS_DB`] with lexicographically smaller `(t, theta)`.
fn improves(next: &Candidate, cur: &Candidate) -> bool {
    if next.pl_db < cur.pl_db - TIE_EPS_DB {
        return true;
    }
    if (next.pl_db - cur.pl_db).abs() <= TIE_EPS_DB {
        return next.t < cur.t || (next.t == cur.t && next.theta < cur.theta);
    }
    false
}

/// Exhaustive 2-D oracle: minimum over a `grid_n × grid_n` grid of feasible
/// `(t, theta)` in `[0, t_max] × [theta_min, π/2]`, then one refinement pass
/// at 10× resolution around the incumbent.
///
/// Rows are evaluated in parallel and reduced in index order, so the result
/// is identical for any worker count.
///
/// # Panics
///
/// Panics when `grid_n < 100`; a coarser grid is useless as an oracle.
pub fn brute_force(
    cfg: &PlacementConfig,
    env: &Environment,
    mode: PathLossMode,
    grid_n: usize,
) -> PlacementSolution {
    assert!(grid_n >= 100, "oracle grid must have at least 100 points per axis");
    let n = grid_n;
    let t_at = |i: usize| cfg.t_max * i as f64 / (n - 1) as f64;
    let theta_at = |j: usize| cfg.theta_min + (FRAC_PI_2 - cfg.theta_min) * j as f64 / (n - 1) as f64;

    let row_best: Vec<Option<Candidate>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let t = t_at(i);
            let mut best: Option<Candidate> = None;
            for j in 0..n {
                let theta = theta_at(j);
                if !cfg.is_feasible(TetherCoord::new(t, theta)) {
                    continue;
                }
                let cand = Candidate { pl_db: eval_pl(cfg, env, mode, t, theta), t, theta };
                if best.as_ref().is_none_or(|b| improves(&cand, b)) {
                    best = Some(cand);
                }
            }
            best
        })
        .collect();

    // t = 0 with theta = theta_min is always feasible, so a minimum exists
    let mut best = row_best
        .into_iter()
        .flatten()
        .reduce(|cur, cand| if improves(&cand, &cur) { cand } else { cur })
        .expect("the zero-tether point is always feasible");

    // refinement: +-1 coarse cell around the incumbent at 10x resolution
    let dt = cfg.t_max / (n - 1) as f64;
    let dtheta = (FRAC_PI_2 - cfg.theta_min) / (n - 1) as f64;
    let (t0, theta0) = (best.t, best.theta);
    for i in -10..=10i32 {
        for j in -10..=10i32 {
            let t = (t0 + f64::from(i) * dt / 10.0).clamp(0.0, cfg.t_max);
            let theta = (theta0 + f64::from(j) * dtheta / 10.0).clamp(cfg.theta_min, FRAC_PI_2);
            if !cfg.is_feasible(TetherCoord::new(t, theta)) {
                continue;
            }
            let cand = Candidate { pl_db: eval_pl(cfg, env, mode, t, theta), t, theta };
            if improves(&cand, &best) {
                best = cand;
            }
        }
    }

    make_solution(cfg, env, mode, TetherCoord::new(best.t, best.theta), SolutionKind::BruteForce)
}
