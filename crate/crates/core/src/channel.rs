//! Air-to-ground channel model.
//!
//! The receiver sits at the origin. For an aerial platform at `p` the model
//! combines distance-squared spreading with the mean excess losses of the
//! line-of-sight (LoS) and non-LoS states, weighted by an elevation-dependent
//! LoS probability
//!
//! ```text
//! P_LoS = a · (φ_deg − 15)^b            (clamped to [0, 1], base floored at 0)
//! ```
//!
//! where `φ_deg` is the elevation angle of `p` seen from the receiver, in
//! degrees. Only relative dB levels matter for placement, so no
//! frequency-dependent free-space constant is added; reported path-loss
//! values are meaningful up to a common additive offset.

use crate::Error;

/// The model's minimum elevation angle in degrees; below it the LoS
/// probability is zero.
const ELEVATION_OFFSET_DEG: f64 = 15.0;

/// A location in 3-D Cartesian space, in meters, with the receiver at the
/// origin. Physically placed platforms keep `z ≥ 0`; the type itself permits
/// any reals so oracle sweeps can probe the model everywhere.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Point3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    /// Euclidean distance to the receiver at the origin.
    pub fn norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    /// Distance of the ground projection to the receiver.
    pub fn horizontal(&self) -> f64 {
        (self.x * self.x + self.y * self.y).sqrt()
    }

    pub fn is_origin(&self) -> bool {
        self.x == 0.0 && self.y == 0.0 && self.z == 0.0
    }
}

/// Channel and city parameters of a deployment environment.
///
/// `a` and `b` shape the LoS-probability curve, `eta_los_db < eta_nlos_db`
/// are the mean excess losses of the two link states, and `(beta_per_km2,
/// gamma_m)` describe the surrounding building field (density and height
/// scale) used by the inclination-angle distribution.
///
/// The four named presets carry the published building parameters
/// `(β, γ)` = (750, 8), (500, 15), (300, 20), (300, 50) for suburban, urban,
/// dense-urban, and high-rise-urban. The channel constants
/// `a = 0.37, b = 0.21, η_LoS = 1.6 dB, η_nLoS = 23 dB` are the dense-urban
/// measurement set; the presets share them as defaults and callers may
/// override any field through [`Environment::new`].
#[derive(Clone, Debug, PartialEq)]
pub struct Environment {
    pub a: f64,
    pub b: f64,
    pub eta_los_db: f64,
    pub eta_nlos_db: f64,
    pub beta_per_km2: f64,
    pub gamma_m: f64,
    pub name: String,
}

impl Environment {
    pub fn new(
        a: f64,
        b: f64,
        eta_los_db: f64,
        eta_nlos_db: f64,
        beta_per_km2: f64,
        gamma_m: f64,
        name: impl Into<String>,
    ) -> Result<Self, Error> {
        if !crate::positive_finite(a) || !crate::positive_finite(b) {
            return Err(Error::InvalidEnvironment(format!(
                "a and b must be positive (got a={a}, b={b})"
            )));
        }
        if !eta_los_db.is_finite() || !eta_nlos_db.is_finite() || eta_los_db >= eta_nlos_db {
            return Err(Error::InvalidEnvironment(format!(
                "eta_los_db must be below eta_nlos_db (got {eta_los_db} vs {eta_nlos_db})"
            )));
        }
        if !crate::positive_finite(beta_per_km2) || !crate::positive_finite(gamma_m) {
            return Err(Error::InvalidEnvironment(format!(
                "beta and gamma must be positive (got beta={beta_per_km2}, gamma={gamma_m})"
            )));
        }
        Ok(Self {
            a,
            b,
            eta_los_db,
            eta_nlos_db,
            beta_per_km2,
            gamma_m,
            name: name.into(),
        })
    }

    fn preset_with(beta_per_km2: f64, gamma_m: f64, name: &str) -> Self {
        Self {
            a: 0.37,
            b: 0.21,
            eta_los_db: 1.6,
            eta_nlos_db: 23.0,
            beta_per_km2,
            gamma_m,
            name: name.to_string(),
        }
    }

    pub fn suburban() -> Self {
        Self::preset_with(750.0, 8.0, "suburban")
    }

    pub fn urban() -> Self {
        Self::preset_with(500.0, 15.0, "urban")
    }

    pub fn dense_urban() -> Self {
        Self::preset_with(300.0, 20.0, "dense-urban")
    }

    pub fn high_rise_urban() -> Self {
        Self::preset_with(300.0, 50.0, "high-rise-urban")
    }

    /// Look up a preset by name. Case-insensitive; spaces and underscores
    /// are treated as hyphens.
    pub fn preset(name: &str) -> Option<Self> {
        let key: String = name
            .trim()
            .chars()
            .map(|c| match c {
                ' ' | '_' => '-',
                c => c.to_ascii_lowercase(),
            })
            .collect();
        match key.as_str() {
            "suburban" => Some(Self::suburban()),
            "urban" => Some(Self::urban()),
            "dense-urban" => Some(Self::dense_urban()),
            "high-rise-urban" => Some(Self::high_rise_urban()),
            _ => None,
        }
    }
}

/// How the LoS/non-LoS excess losses are combined with the spreading term.
///
/// Every ordering the optimizer relies on (monotonicity in range and in LoS
/// probability) holds under both modes.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PathLossMode {
    /// Average the excess losses as linear power ratios:
    /// `PL = 10·log10(R² · (P_LoS·η_L + (1−P_LoS)·η_N))` with `η` converted
    /// from dB.
    #[default]
    Linear,
    /// Average the excess losses in dB:
    /// `PL = 20·log10(R) + P_LoS·η_LoS_dB + (1−P_LoS)·η_nLoS_dB`.
    AdditiveDb,
}

/// Power-quantity dB to linear ratio: `10^(dB/10)`.
pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Linear power ratio to dB: `10·log10(x)`.
pub fn linear_to_db(lin: f64) -> f64 {
    10.0 * lin.log10()
}

/// Elevation angle of `p` seen from the receiver, in degrees within
/// `[-90, 90]`. A point straight overhead reads 90°.
pub fn elevation_angle_deg(p: Point3) -> Result<f64, Error> {
    if p.is_origin() {
        return Err(Error::OriginPoint);
    }
    Ok(p.z.atan2(p.horizontal()).to_degrees())
}

/// Line-of-sight probability at `p`.
///
/// Elevation angles at or below the 15° model offset give probability zero;
/// the result is clamped to `[0, 1]` so user-supplied `(a, b)` cannot
/// produce an invalid probability.
pub fn los_probability(p: Point3, env: &Environment) -> Result<f64, Error> {
    let elevation = elevation_angle_deg(p)?;
    let base = elevation - ELEVATION_OFFSET_DEG;
    if base <= 0.0 {
        return Ok(0.0);
    }
    Ok((env.a * base.powf(env.b)).clamp(0.0, 1.0))
}

/// Average path-loss between `p` and the receiver, in dB.
pub fn path_loss_db(p: Point3, env: &Environment, mode: PathLossMode) -> Result<f64, Error> {
    let range = p.norm();
    if range == 0.0 {
        return Err(Error::OriginPoint);
    }
    let p_los = los_probability(p, env)?;
    Ok(match mode {
        PathLossMode::Linear => {
            let excess = p_los * db_to_linear(env.eta_los_db)
                + (1.0 - p_los) * db_to_linear(env.eta_nlos_db);
            linear_to_db(range * range * excess)
        }
        PathLossMode::AdditiveDb => {
            20.0 * range.log10() + p_los * env.eta_los_db + (1.0 - p_los) * env.eta_nlos_db
        }
    })
}
