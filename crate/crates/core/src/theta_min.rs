//! Distribution of the minimum safe tether inclination angle.
//!
//! Buildings around the rooftop form a Poisson field with density `beta`
//! (per km²) and heights drawn from the CDF `1 − exp(−h²/γ²)`. The tether can
//! safely run at inclination `theta` when every building at horizontal
//! distance `L ≤ t_max·cos(theta)` stays below the tether line
//! `h_b + L·tan(theta)`. [`CityModel::cdf`] evaluates the closed form of that
//! probability; [`CityModel::sample_cdf`] estimates it by simulating the
//! event directly, which is the oracle the closed form is validated against.

use std::f64::consts::{FRAC_PI_2, PI};

use rand::{Rng, SeedableRng};
use rand_distr::{Distribution, Poisson};
use rand_pcg::Pcg64;
use rayon::prelude::*;

use crate::channel::Environment;
use crate::numeric::adaptive_simpson;
use crate::special::erf;
use crate::Error;

/// Below this inclination the closed form switches to its analytic limit,
/// avoiding the 1/tan² singularity.
const THETA_LIMIT_RAD: f64 = 1e-6;
/// Absolute quadrature tolerance for the mean, radians.
const MEAN_ABS_TOL: f64 = 1e-6;

/// Building-field and rooftop parameters of one city instance.
///
/// The density is user-facing in buildings per square kilometer and converted
/// to per-square-meter once, internally; all lengths are meters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CityModel {
    /// Building density in buildings per square kilometer.
    pub beta_per_km2: f64,
    /// Height-distribution scale in meters (height CDF `1 − exp(−h²/γ²)`).
    pub gamma_m: f64,
    /// Rooftop height of the ground station, meters.
    pub h_b_m: f64,
    /// Maximum tether length, meters.
    pub t_max_m: f64,
}

/// Empirical CDF of the minimum safe inclination angle, reproducible from
/// its seed.
#[derive(Clone, Debug, PartialEq)]
pub struct EmpiricalCdf {
    /// Grid angles, radians.
    pub thetas: Vec<f64>,
    /// Per-angle satisfaction frequency; nondecreasing, within `[0, 1]`.
    pub probs: Vec<f64>,
    pub n_samples: u64,
    pub seed: u64,
}

impl CityModel {
    pub fn new(beta_per_km2: f64, gamma_m: f64, h_b_m: f64, t_max_m: f64) -> Result<Self, Error> {
        if !crate::positive_finite(beta_per_km2) || !crate::positive_finite(gamma_m) {
            return Err(Error::InvalidCity(format!(
                "beta and gamma must be positive (got beta={beta_per_km2}, gamma={gamma_m})"
            )));
        }
        if !crate::nonnegative_finite(h_b_m) {
            return Err(Error::InvalidCity(format!("h_b must be nonnegative (got {h_b_m})")));
        }
        if !crate::positive_finite(t_max_m) {
            return Err(Error::InvalidCity(format!("t_max must be positive (got {t_max_m})")));
        }
        Ok(Self { beta_per_km2, gamma_m, h_b_m, t_max_m })
    }

    /// City with the building field of `env` and the given rooftop geometry.
    pub fn from_environment(env: &Environment, h_b_m: f64, t_max_m: f64) -> Result<Self, Error> {
        Self::new(env.beta_per_km2, env.gamma_m, h_b_m, t_max_m)
    }

    fn beta_per_m2(&self) -> f64 {
        self.beta_per_km2 * 1e-6
    }

    /// CDF of the minimum safe inclination angle at `theta` radians.
    ///
    /// ```text
    /// F(θ) = exp( (−π β γ / tan²θ) · [ γ(e^(−h_b²/γ²) − e^(−A²/γ²))
    ///                                  − h_b √π (erf(A/γ) − erf(h_b/γ)) ] )
    /// ```
    ///
    /// with `A = h_b + t_max·sin(θ)` and `β` per square meter. At `θ = 0` the
    /// exact limit `exp(−π β t_max² e^(−h_b²/γ²))` is used; at `θ ≥ π/2` the
    /// exclusion disk is empty and the CDF is 1.
    pub fn cdf(&self, theta: f64) -> f64 {
        if theta >= FRAC_PI_2 {
            return 1.0;
        }
        let theta = theta.max(0.0);
        let beta = self.beta_per_m2();
        let (gamma, h_b) = (self.gamma_m, self.h_b_m);
        if theta < THETA_LIMIT_RAD {
            let exposed = (-h_b * h_b / (gamma * gamma)).exp();
            return (-PI * beta * self.t_max_m * self.t_max_m * exposed).exp();
        }
        let reach = h_b + self.t_max_m * theta.sin();
        let bracket = gamma
            * ((-h_b * h_b / (gamma * gamma)).exp() - (-reach * reach / (gamma * gamma)).exp())
            - h_b * PI.sqrt() * (erf(reach / gamma) - erf(h_b / gamma));
        (-PI * beta * gamma / theta.tan().powi(2) * bracket).exp()
    }

    /// Mean of the minimum safe inclination angle, radians:
    /// `E[θ_min] = ∫₀^(π/2) (1 − F(θ)) dθ`.
    pub fn mean_theta_min(&self) -> f64 {
        adaptive_simpson(&|theta| 1.0 - self.cdf(theta), 0.0, FRAC_PI_2, MEAN_ABS_TOL)
    }

    /// Monte Carlo estimate of the CDF on `thetas`.
    ///
    /// Each sample draws a Poisson number of buildings uniformly in the disk
    /// of radius `t_max` around the rooftop with heights from
    /// `1 − exp(−h²/γ²)`, then marks each grid angle satisfied iff every
    /// building with `L ≤ t_max·cos(θ)` stays below `h_b + L·tan(θ)`.
    ///
    /// Samples use independent RNG streams keyed by `(seed, sample index)`,
    /// so the result is bit-identical for a given `(seed, n_samples, grid)`
    /// regardless of how many workers run it.
    pub fn sample_cdf(
        &self,
        thetas: &[f64],
        n_samples: u64,
        seed: u64,
    ) -> Result<EmpiricalCdf, Error> {
        if thetas.is_empty() {
            return Err(Error::EmptyGrid);
        }
        if n_samples == 0 {
            return Err(Error::NoSamples);
        }
        debug_assert!(
            thetas.windows(2).all(|w| w[0] <= w[1]),
            "inclination grid must be sorted ascending"
        );

        // Each building constrains exactly the angles up to
        // min(acos(L/t_max), atan((h − h_b)/L)), so one critical angle per
        // sample encodes the whole per-angle event family.
        let mut criticals: Vec<f64> = (0..n_samples)
            .into_par_iter()
            .map(|index| self.sample_critical_angle(seed, index))
            .collect();
        criticals.sort_unstable_by(f64::total_cmp);

        let probs = thetas
            .iter()
            .map(|&theta| {
                let satisfied = criticals.partition_point(|&c| c < theta);
                satisfied as f64 / n_samples as f64
            })
            .collect();

        Ok(EmpiricalCdf { thetas: thetas.to_vec(), probs, n_samples, seed })
    }

    /// Largest angle still violated by any building of one sampled field;
    /// `-1` when no building constrains the tether at all.
    fn sample_critical_angle(&self, seed: u64, index: u64) -> f64 {
        let mut rng = stream_rng(seed, index);
        let mean = self.beta_per_m2() * PI * self.t_max_m * self.t_max_m;
        let count = Poisson::new(mean).expect("positive Poisson mean").sample(&mut rng) as u64;

        let mut critical = -1.0f64;
        for _ in 0..count {
            // radial coordinate of a uniform point in the disk
            let radius = self.t_max_m * rng.gen::<f64>().sqrt();
            let height = self.gamma_m * (-(1.0 - rng.gen::<f64>()).ln()).sqrt();
            if height < self.h_b_m {
                continue;
            }
            let in_disk_up_to = (radius / self.t_max_m).min(1.0).acos();
            let overtops_up_to = ((height - self.h_b_m) / radius).atan();
            critical = critical.max(in_disk_up_to.min(overtops_up_to));
        }
        critical
    }
}

/// Independent RNG stream for `(seed, index)`: a splitmix64 scramble feeds a
/// PCG generator, keeping parallel sampling order-free.
fn stream_rng(seed: u64, index: u64) -> Pcg64 {
    let mut z = seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    Pcg64::seed_from_u64(z ^ (z >> 31))
}
