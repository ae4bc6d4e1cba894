//! Chi-square distribution helpers for gate thresholds and unit-ball volumes.

use crate::error::{Error, Result};
use statrs::function::gamma::{gamma, gamma_lr, ln_gamma};

/// `P(X ≤ x)` for `X ~ χ²(dof)`.
pub fn chi2_cdf(x: f64, dof: usize) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        gamma_lr(dof as f64 / 2.0, x / 2.0)
    }
}

pub fn chi2_pdf(x: f64, dof: usize) -> f64 {
    if x < 0.0 {
        return 0.0;
    }
    let k = dof as f64 / 2.0;
    if x == 0.0 {
        return match dof {
            1 => f64::INFINITY,
            2 => 0.5,
            _ => 0.0,
        };
    }
    ((k - 1.0) * x.ln() - x / 2.0 - k * std::f64::consts::LN_2 - ln_gamma(k)).exp()
}

/// The `p`-quantile of `χ²(dof)`, solved to `|CDF(τ) − p| ≤ 1e-10` by
/// Newton steps safeguarded by bisection.
pub fn chi2_inv_cdf(p: f64, dof: usize) -> Result<f64> {
    if dof == 0 {
        return Err(Error::InvalidDegreesOfFreedom);
    }
    if !(0.0..1.0).contains(&p) {
        return Err(Error::InvalidProbability(p));
    }
    if p == 0.0 {
        return Ok(0.0);
    }
    let mut lo = 0.0;
    let mut hi = dof as f64;
    while chi2_cdf(hi, dof) < p {
        lo = hi;
        hi *= 2.0;
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..200 {
        let err = chi2_cdf(x, dof) - p;
        if err.abs() <= 1e-13 {
            break;
        }
        if err > 0.0 {
            hi = x;
        } else {
            lo = x;
        }
        let step = x - err / chi2_pdf(x, dof);
        x = if step.is_finite() && step > lo && step < hi {
            step
        } else {
            0.5 * (lo + hi)
        };
        if hi - lo <= 1e-15 * hi {
            break;
        }
    }
    Ok(x)
}

/// Volume of the unit ball in `ℝᵐ`, `π^{m/2} / Γ(m/2 + 1)`.
pub fn unit_ball_volume(m: usize) -> f64 {
    let h = m as f64 / 2.0;
    std::f64::consts::PI.powf(h) / gamma(h + 1.0)
}
