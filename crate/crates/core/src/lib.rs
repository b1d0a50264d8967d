//! Placement of a tethered aerial base station.
//!
//! A tethered UAV is launched from a ground station on a rooftop and serves a
//! receiver on the ground. The tether has a maximum length and must keep a
//! minimum inclination angle above the horizontal so it cannot tangle on the
//! surrounding buildings. This crate provides:
//!
//! - [`channel`] — the air-to-ground channel model: elevation angle,
//!   line-of-sight probability, and average path-loss;
//! - [`geometry`] — the hovering region reachable by the UAV and the
//!   tether-coordinate parameterization;
//! - [`optimizer`] — placement optimizers: exact search over the reduced
//!   boundary set, a closed-form suboptimal placement, and an exhaustive
//!   grid oracle;
//! - [`theta_min`] — the probability distribution of the minimum safe
//!   inclination angle over a random (Poisson) building field, with a
//!   Monte Carlo validator;
//! - [`special`], [`numeric`] — the supporting special functions and
//!   numerical routines.
//!
//! ```
//! use tuav_place::channel::Environment;
//! use tuav_place::geometry::PlacementConfig;
//! use tuav_place::optimizer::solve;
//!
//! let cfg = PlacementConfig::new(30.0, 100.0, 150.0, 0.0).unwrap();
//! let sol = solve(&cfg, &Environment::dense_urban(), Default::default());
//! // With no inclination floor and the receiver within tether reach, the
//! // UAV hovers straight above the receiver.
//! assert!((sol.coord.t - 100.0).abs() < 1e-9);
//! assert!(sol.position.x.abs() < 1e-9);
//! ```

pub mod channel;
pub mod geometry;
pub mod numeric;
pub mod optimizer;
pub mod special;
pub mod theta_min;

pub use channel::{Environment, PathLossMode, Point3};
pub use geometry::{PlacementConfig, RegimeLabel, TetherCoord};
pub use optimizer::{OptBounds, PlacementSolution, SolutionKind};
pub use theta_min::{CityModel, EmpiricalCdf};

/// Finite and strictly positive; rejects NaN and infinities in validators.
pub(crate) fn positive_finite(x: f64) -> bool {
    x.is_finite() && x > 0.0
}

/// Finite and nonnegative.
pub(crate) fn nonnegative_finite(x: f64) -> bool {
    x.is_finite() && x >= 0.0
}

/// Errors reported by the library.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// The receiver location itself has no defined elevation angle or range.
    #[error("point coincides with the receiver at the origin")]
    OriginPoint,
    /// An environment parameter violates its invariant.
    #[error("invalid environment: {0}")]
    InvalidEnvironment(String),
    /// A placement-geometry parameter violates its invariant.
    #[error("invalid placement config: {0}")]
    InvalidConfig(String),
    /// A city-model parameter violates its invariant.
    #[error("invalid city model: {0}")]
    InvalidCity(String),
    /// The tether length exceeds the rooftop-to-receiver reach, so the
    /// line-of-sight-maximizing inclination is undefined.
    #[error("tether length {t} m exceeds the rooftop-to-receiver reach {reach} m")]
    TetherBeyondReach { t: f64, reach: f64 },
    /// The inclination grid for an empirical CDF is empty.
    #[error("inclination grid is empty")]
    EmptyGrid,
    /// Monte Carlo sampling needs at least one sample.
    #[error("sample count must be at least 1")]
    NoSamples,
}
