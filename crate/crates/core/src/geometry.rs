//! Problem geometry: tether coordinates, the hovering region, and the regime
//! split that drives the placement optimizer.
//!
//! The ground station sits on a rooftop at `(d, 0, h_b)`; the receiver is at
//! the origin. A UAV position in the x–z plane is parameterized by the tether
//! length `t` and its inclination angle `theta` above the horizontal:
//! `x = d − t·cos(theta)`, `z = h_b + t·sin(theta)`.

use std::f64::consts::FRAC_PI_2;

use crate::channel::Point3;
use crate::Error;

/// Relative tolerance applied to every feasibility and regime comparison so
/// grid sweeps do not flap on region boundaries.
pub const FEASIBILITY_REL_TOL: f64 = 1e-9;

/// `a ≤ b` up to the shared relative tolerance.
pub(crate) fn tol_leq(a: f64, b: f64) -> bool {
    a <= b + FEASIBILITY_REL_TOL * a.abs().max(b.abs()).max(1.0)
}

/// `a ≥ b` up to the shared relative tolerance.
pub(crate) fn tol_geq(a: f64, b: f64) -> bool {
    tol_leq(b, a)
}

/// Tether-coordinate parameterization `(t, theta)` of a UAV position in the
/// x–z plane. Any `t ≥ 0` and `theta ∈ [−π/2, π/2]` is representable;
/// feasibility against a [`PlacementConfig`] is checked separately.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TetherCoord {
    /// Tether length in meters.
    pub t: f64,
    /// Inclination angle above the horizontal, in radians.
    pub theta: f64,
}

impl TetherCoord {
    pub const fn new(t: f64, theta: f64) -> Self {
        Self { t, theta }
    }
}

/// Geometry of one placement instance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlacementConfig {
    /// Rooftop (ground-station) height in meters.
    pub h_b: f64,
    /// Horizontal receiver-to-building distance in meters.
    pub d: f64,
    /// Maximum tether length in meters.
    pub t_max: f64,
    /// Minimum safe inclination angle in radians.
    pub theta_min: f64,
}

impl PlacementConfig {
    pub fn new(h_b: f64, d: f64, t_max: f64, theta_min: f64) -> Result<Self, Error> {
        if !crate::positive_finite(h_b) {
            return Err(Error::InvalidConfig(format!("h_b must be positive (got {h_b})")));
        }
        if !crate::nonnegative_finite(d) {
            return Err(Error::InvalidConfig(format!("d must be nonnegative (got {d})")));
        }
        if !crate::positive_finite(t_max) {
            return Err(Error::InvalidConfig(format!("t_max must be positive (got {t_max})")));
        }
        if !(0.0..FRAC_PI_2).contains(&theta_min) {
            return Err(Error::InvalidConfig(format!(
                "theta_min must lie in [0, pi/2) (got {theta_min} rad)"
            )));
        }
        Ok(Self { h_b, d, t_max, theta_min })
    }

    /// Cartesian position of the UAV for tether coordinates `c`.
    pub fn to_cartesian(&self, c: TetherCoord) -> Point3 {
        Point3::new(
            self.d - c.t * c.theta.cos(),
            0.0,
            self.h_b + c.t * c.theta.sin(),
        )
    }

    /// Whether `c` satisfies the reduced-problem constraints:
    /// `theta_min ≤ theta ≤ π/2`, `t·cos(theta) ≤ d`, and `0 ≤ t ≤ t_max`.
    pub fn is_feasible(&self, c: TetherCoord) -> bool {
        tol_geq(c.theta, self.theta_min)
            && tol_leq(c.theta, FRAC_PI_2)
            && tol_leq(c.t * c.theta.cos(), self.d)
            && tol_geq(c.t, 0.0)
            && tol_leq(c.t, self.t_max)
    }

    /// Whether the 3-D point `p` is reachable by the UAV: within tether reach
    /// of the rooftop and above the minimum-inclination cone. The rooftop
    /// point itself (zero tether) counts as reachable.
    pub fn in_hovering_region(&self, p: Point3) -> bool {
        let dx = p.x - self.d;
        let dz = p.z - self.h_b;
        let tether = (dx * dx + p.y * p.y + dz * dz).sqrt();
        if !tol_leq(tether, self.t_max) {
            return false;
        }
        if tether == 0.0 {
            return true;
        }
        let inclination = (dz / tether).clamp(-1.0, 1.0).asin();
        tol_geq(inclination, self.theta_min)
    }

    /// Regime threshold `F = t_max/cos(theta_min) + h_b·tan(theta_min)`:
    /// receivers beyond it force the tether to full extension.
    pub fn threshold_f(&self) -> f64 {
        self.t_max / self.theta_min.cos() + self.h_b * self.theta_min.tan()
    }

    /// Which of the three optimizer regimes this instance falls in.
    pub fn regime(&self) -> RegimeLabel {
        if tol_leq(self.d, self.t_max * self.theta_min.cos()) {
            RegimeLabel::NearField
        } else if tol_geq(self.d, self.threshold_f()) {
            RegimeLabel::FarField
        } else {
            RegimeLabel::MidField
        }
    }
}

/// The three-case split of the optimal placement.
///
/// `NearField`: `d ≤ t_max·cos(theta_min)` — the UAV can hover with the
/// receiver directly underneath. `MidField`: up to the threshold `F` the
/// inclination stays pinned at `theta_min`. `FarField`: `d ≥ F` — the tether
/// runs at full length and only the inclination is free.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RegimeLabel {
    NearField,
    MidField,
    FarField,
}

impl std::fmt::Display for RegimeLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            RegimeLabel::NearField => "NearField",
            RegimeLabel::MidField => "MidField",
            RegimeLabel::FarField => "FarField",
        })
    }
}
