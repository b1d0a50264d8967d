//! Plain-text configuration files: one `key = value` pair per line, `#`
//! comments, case-insensitive keys. Angles cross this boundary in degrees
//! and are converted to radians immediately.

use std::collections::BTreeMap;
use std::path::Path;

use tuav_place::channel::{Environment, PathLossMode};
use tuav_place::geometry::PlacementConfig;
use tuav_place::theta_min::CityModel;

/// Errors split by exit code: malformed input exits 2, a well-formed value
/// that violates a model invariant exits 3.
#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Invariant(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Invariant(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Parse(m) | CliError::Invariant(m) => m,
        }
    }
}

const ALLOWED_KEYS: &[&str] = &[
    "h_b",
    "d",
    "t_max",
    "theta_min_deg",
    "environment",
    "pathloss_mode",
    "a",
    "b",
    "eta_los_db",
    "eta_nlos_db",
    "beta",
    "gamma",
    "variable",
    "start",
    "stop",
    "steps",
];

/// Parsed key-value file with lowercased keys.
#[derive(Clone, Debug, Default)]
pub struct RawConfig {
    pub entries: BTreeMap<String, String>,
}

impl RawConfig {
    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))?;
        let mut entries = BTreeMap::new();
        for (index, raw_line) in text.lines().enumerate() {
            let line = raw_line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(CliError::Parse(format!(
                    "{}:{}: expected `key = value`, got `{raw_line}`",
                    path.display(),
                    index + 1
                )));
            };
            let key = key.trim().to_ascii_lowercase();
            let value = value.trim().to_string();
            if !ALLOWED_KEYS.contains(&key.as_str()) {
                return Err(CliError::Parse(format!(
                    "{}:{}: unknown key `{key}`",
                    path.display(),
                    index + 1
                )));
            }
            if entries.insert(key.clone(), value).is_some() {
                return Err(CliError::Parse(format!(
                    "{}:{}: duplicate key `{key}`",
                    path.display(),
                    index + 1
                )));
            }
        }
        Ok(Self { entries })
    }

    pub fn f64_opt(&self, key: &str) -> Result<Option<f64>, CliError> {
        match self.entries.get(key) {
            None => Ok(None),
            Some(value) => value
                .parse::<f64>()
                .map(Some)
                .map_err(|_| CliError::Parse(format!("key `{key}`: `{value}` is not a number"))),
        }
    }

    pub fn f64_required(&self, key: &str) -> Result<f64, CliError> {
        self.f64_opt(key)?
            .ok_or_else(|| CliError::Parse(format!("missing required key `{key}`")))
    }
}

pub fn parse_mode(value: &str) -> Result<PathLossMode, String> {
    match value.trim().to_ascii_lowercase().as_str() {
        "linear" => Ok(PathLossMode::Linear),
        "additive-db" | "additive_db" | "additivedb" => Ok(PathLossMode::AdditiveDb),
        other => Err(format!("unknown path-loss mode `{other}` (use linear | additive-db)")),
    }
}

/// Environment from the `environment` preset (default dense-urban) with any
/// explicit per-field overrides applied on top.
pub fn build_environment(raw: &RawConfig) -> Result<Environment, CliError> {
    let base = match raw.entries.get("environment") {
        None => Environment::dense_urban(),
        Some(name) => Environment::preset(name)
            .ok_or_else(|| CliError::Parse(format!("unknown environment preset `{name}`")))?,
    };
    let a = raw.f64_opt("a")?.unwrap_or(base.a);
    let b = raw.f64_opt("b")?.unwrap_or(base.b);
    let eta_los_db = raw.f64_opt("eta_los_db")?.unwrap_or(base.eta_los_db);
    let eta_nlos_db = raw.f64_opt("eta_nlos_db")?.unwrap_or(base.eta_nlos_db);
    let beta = raw.f64_opt("beta")?.unwrap_or(base.beta_per_km2);
    let gamma = raw.f64_opt("gamma")?.unwrap_or(base.gamma_m);
    Environment::new(a, b, eta_los_db, eta_nlos_db, beta, gamma, base.name.clone())
        .map_err(|e| CliError::Invariant(e.to_string()))
}

fn mode_from(raw: &RawConfig, flag_override: Option<PathLossMode>) -> Result<PathLossMode, CliError> {
    if let Some(mode) = flag_override {
        return Ok(mode);
    }
    match raw.entries.get("pathloss_mode") {
        None => Ok(PathLossMode::default()),
        Some(value) => parse_mode(value).map_err(CliError::Parse),
    }
}

/// A fully resolved placement problem instance.
pub struct PlacementInput {
    pub config: PlacementConfig,
    pub env: Environment,
    pub mode: PathLossMode,
}

pub fn build_placement(
    raw: RawConfig,
    flag_mode: Option<PathLossMode>,
) -> Result<PlacementInput, CliError> {
    let h_b = raw.f64_required("h_b")?;
    let d = raw.f64_required("d")?;
    let t_max = raw.f64_required("t_max")?;
    let theta_min_deg = raw.f64_required("theta_min_deg")?;
    let env = build_environment(&raw)?;
    let mode = mode_from(&raw, flag_mode)?;
    let config = PlacementConfig::new(h_b, d, t_max, theta_min_deg.to_radians())
        .map_err(|e| CliError::Invariant(e.to_string()))?;
    Ok(PlacementInput { config, env, mode })
}

/// City instance for the inclination-angle distribution: rooftop geometry
/// plus the building field of the environment (or explicit beta/gamma).
pub struct CityInput {
    pub city: CityModel,
    pub raw: RawConfig,
}

pub fn build_city(raw: RawConfig) -> Result<CityInput, CliError> {
    let h_b = raw.f64_required("h_b")?;
    let t_max = raw.f64_required("t_max")?;
    let env = build_environment(&raw)?;
    let city = CityModel::from_environment(&env, h_b, t_max)
        .map_err(|e| CliError::Invariant(e.to_string()))?;
    Ok(CityInput { city, raw })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepVariable {
    D,
    ThetaMinDeg,
    TMax,
}

impl SweepVariable {
    /// CSV column header for the swept value.
    pub fn column(self) -> &'static str {
        match self {
            SweepVariable::D => "d_m",
            SweepVariable::ThetaMinDeg => "theta_min_deg",
            SweepVariable::TMax => "t_max_m",
        }
    }
}

/// A parameter sweep: `steps` evenly spaced values of `variable` over
/// `[start, stop]` applied to a base placement instance.
pub struct SweepInput {
    pub variable: SweepVariable,
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
    pub base_h_b: f64,
    pub base_d: f64,
    pub base_t_max: f64,
    pub base_theta_min_deg: f64,
    pub env: Environment,
    pub mode: PathLossMode,
    pub raw: RawConfig,
}

impl SweepInput {
    pub fn value_at(&self, index: usize) -> f64 {
        self.start + (self.stop - self.start) * index as f64 / (self.steps - 1) as f64
    }

    /// Placement config for one sweep point; invariant violations surface as
    /// exit-3 errors.
    pub fn config_at(&self, index: usize) -> Result<PlacementConfig, CliError> {
        let v = self.value_at(index);
        let pick = |var: SweepVariable, base: f64| if self.variable == var { v } else { base };
        let d = pick(SweepVariable::D, self.base_d);
        let t_max = pick(SweepVariable::TMax, self.base_t_max);
        let theta_min_deg = pick(SweepVariable::ThetaMinDeg, self.base_theta_min_deg);
        PlacementConfig::new(self.base_h_b, d, t_max, theta_min_deg.to_radians())
            .map_err(|e| CliError::Invariant(format!("sweep point {index} ({v}): {e}")))
    }
}

pub fn build_sweep(raw: RawConfig, flag_mode: Option<PathLossMode>) -> Result<SweepInput, CliError> {
    let variable = match raw.entries.get("variable").map(String::as_str) {
        Some("d") => SweepVariable::D,
        Some("theta_min_deg") => SweepVariable::ThetaMinDeg,
        Some("t_max") => SweepVariable::TMax,
        Some(other) => {
            return Err(CliError::Parse(format!(
                "unknown sweep variable `{other}` (use d | theta_min_deg | t_max)"
            )))
        }
        None => return Err(CliError::Parse("missing required key `variable`".into())),
    };
    let start = raw.f64_required("start")?;
    let stop = raw.f64_required("stop")?;
    let steps = {
        let v = raw.f64_required("steps")?;
        if v.fract() != 0.0 || v < 0.0 {
            return Err(CliError::Parse(format!("steps must be a nonnegative integer (got {v})")));
        }
        v as usize
    };
    if steps < 2 {
        return Err(CliError::Invariant(format!("steps must be at least 2 (got {steps})")));
    }
    if !start.is_finite() || !stop.is_finite() || start >= stop {
        return Err(CliError::Invariant(format!("start must be below stop (got {start} vs {stop})")));
    }

    // the swept key may be omitted from the base config; its per-point value
    // replaces it anyway
    let base_for = |key: &str, swept: SweepVariable| -> Result<f64, CliError> {
        if variable == swept {
            Ok(raw.f64_opt(key)?.unwrap_or(start))
        } else {
            raw.f64_required(key)
        }
    };
    let base_h_b = raw.f64_required("h_b")?;
    let base_d = base_for("d", SweepVariable::D)?;
    let base_t_max = base_for("t_max", SweepVariable::TMax)?;
    let base_theta_min_deg = base_for("theta_min_deg", SweepVariable::ThetaMinDeg)?;
    let env = build_environment(&raw)?;
    let mode = mode_from(&raw, flag_mode)?;

    // validate the base instance eagerly so errors carry the right exit code
    PlacementConfig::new(base_h_b, base_d, base_t_max, base_theta_min_deg.to_radians())
        .map_err(|e| CliError::Invariant(e.to_string()))?;

    Ok(SweepInput {
        variable,
        start,
        stop,
        steps,
        base_h_b,
        base_d,
        base_t_max,
        base_theta_min_deg,
        env,
        mode,
        raw,
    })
}
