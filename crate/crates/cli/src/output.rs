//! Output formatting: fixed-precision CSV numbers, solution JSON, and the
//! run manifest.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;
use tuav_place::optimizer::{FreeVariable, OptBounds, PlacementSolution};

use crate::config::CliError;

/// Nine significant digits in scientific notation: platform-stable,
/// `.`-separated, consumable by any plotting tool.
pub fn sig9(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x }; // normalize -0.0
    format!("{x:.8e}")
}

/// Placement solution as emitted on standard output.
#[derive(Debug, Serialize)]
pub struct SolutionJson {
    pub t_m: f64,
    pub theta_deg: f64,
    pub x_m: f64,
    pub z_m: f64,
    pub p_los: f64,
    pub r_m: f64,
    pub pl_db: f64,
    pub regime: String,
    pub kind: String,
}

impl From<&PlacementSolution> for SolutionJson {
    fn from(sol: &PlacementSolution) -> Self {
        Self {
            t_m: sol.coord.t,
            theta_deg: sol.coord.theta.to_degrees(),
            x_m: sol.position.x,
            z_m: sol.position.z,
            p_los: sol.p_los,
            r_m: sol.range_m,
            pl_db: sol.pl_db,
            regime: sol.regime.to_string(),
            kind: sol.kind.to_string(),
        }
    }
}

/// Reduced search bounds as emitted on standard output. Angle values cross
/// this boundary in degrees: for a free tether length the fixed value is the
/// inclination floor in degrees and the bounds are meters; for a free
/// inclination the fixed value is the tether length in meters and the bounds
/// are degrees.
#[derive(Debug, Serialize)]
pub struct BoundsJson {
    pub regime: String,
    pub free_variable: String,
    pub fixed_value: f64,
    pub lower: f64,
    pub upper: f64,
}

impl From<&OptBounds> for BoundsJson {
    fn from(bounds: &OptBounds) -> Self {
        let (fixed_value, lower, upper) = match bounds.free_variable {
            FreeVariable::TetherLength => {
                (bounds.fixed_value.to_degrees(), bounds.lower, bounds.upper)
            }
            FreeVariable::InclinationAngle => (
                bounds.fixed_value,
                bounds.lower.to_degrees(),
                bounds.upper.to_degrees(),
            ),
        };
        Self {
            regime: bounds.regime.to_string(),
            free_variable: bounds.free_variable.to_string(),
            fixed_value,
            lower,
            upper,
        }
    }
}

/// Record of one artifact-producing run: configuration snapshot, tool
/// version, seed, emitted files, and wall-clock time.
#[derive(Debug, Serialize)]
pub struct Manifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub seed: u64,
    pub config: BTreeMap<String, String>,
    pub outputs: Vec<String>,
    pub wall_clock_ms: u128,
}

impl Manifest {
    pub fn new(command: &str, seed: u64, config: BTreeMap<String, String>) -> Self {
        Self {
            tool: "tuav-place",
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            seed,
            config,
            outputs: Vec::new(),
            wall_clock_ms: 0,
        }
    }
}

pub fn write_file(dir: &Path, name: &str, contents: &str) -> Result<(), CliError> {
    std::fs::create_dir_all(dir)
        .map_err(|e| CliError::Parse(format!("cannot create {}: {e}", dir.display())))?;
    let path = dir.join(name);
    std::fs::write(&path, contents)
        .map_err(|e| CliError::Parse(format!("cannot write {}: {e}", path.display())))
}

pub fn print_json<T: Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("output structs always serialize")
    );
}
