//! Special functions for the inclination-angle distribution.
//!
//! The closed-form CDF needs the error function; the lower incomplete gamma
//! function is provided as the independent route for the identity
//! `γ(1/2, x) = √π · erf(√x)` that certifies the erf-based evaluation path.

/// Error function.
pub fn erf(x: f64) -> f64 {
    libm::erf(x)
}

/// Complementary error function.
pub fn erfc(x: f64) -> f64 {
    libm::erfc(x)
}

/// Lower incomplete gamma function `γ(s, x) = ∫₀ˣ u^(s−1) e^(−u) du` for
/// `s > 0`, `x ≥ 0`.
///
/// Series expansion for `x < s + 1`, Lentz continued fraction for the upper
/// tail otherwise; both converge to near machine precision in double
/// arithmetic.
pub fn lower_incomplete_gamma(s: f64, x: f64) -> f64 {
    assert!(s > 0.0, "shape parameter must be positive");
    assert!(x >= 0.0, "argument must be nonnegative");
    if x == 0.0 {
        return 0.0;
    }
    // x^s e^-x without intermediate overflow
    let prefactor = (s * x.ln() - x).exp();
    if x < s + 1.0 {
        // γ(s,x) = x^s e^-x Σ_{n≥0} x^n / (s(s+1)...(s+n))
        let mut denom = s;
        let mut term = 1.0 / s;
        let mut sum = term;
        for _ in 0..500 {
            denom += 1.0;
            term *= x / denom;
            sum += term;
            if term.abs() < sum.abs() * 1e-17 {
                break;
            }
        }
        prefactor * sum
    } else {
        // Lentz continued fraction for Γ(s,x); γ = Γ(s) − Γ(s,x)
        let tiny = 1e-300;
        let mut b = x + 1.0 - s;
        let mut c = 1.0 / tiny;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..500 {
            let an = -(i as f64) * (i as f64 - s);
            b += 2.0;
            d = an * d + b;
            if d.abs() < tiny {
                d = tiny;
            }
            c = b + an / c;
            if c.abs() < tiny {
                c = tiny;
            }
            d = 1.0 / d;
            let delta = d * c;
            h *= delta;
            if (delta - 1.0).abs() < 1e-16 {
                break;
            }
        }
        libm::tgamma(s) - prefactor * h
    }
}
