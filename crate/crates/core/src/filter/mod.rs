//! The LG-IPDAF cycle for a single track.
//!
//! One scan is processed as
//!
//! 1. [`Ipdaf::predict`] — propagate the belief and the track likelihood;
//! 2. [`Ipdaf::make_gate`] and [`Gate::validate`] — keep measurements inside
//!    the validation region;
//! 3. [`Ipdaf::association_probabilities`] — weights `β₀ … βₘ` of the
//!    association events;
//! 4. [`Ipdaf::fuse_and_update`] — fuse the split-track updates in the tangent
//!    space, reset the error mean onto the estimate, and update `ε`.

mod association;
mod chi2;
mod gate;
mod update;

pub use association::{event_priors, poisson_pmf, AssociationResult};
pub use chi2::{chi2_cdf, chi2_inv_cdf, chi2_pdf, unit_ball_volume};
pub use gate::Gate;

use crate::error::{Error, Result};
use crate::gaussian::{symmetrize, ConcentratedGaussian};
use crate::lie::LieGroup;
use crate::motion::ConstantVelocity;
use crate::track::Track;
use serde::{Deserialize, Serialize};

/// Lower and upper clamp of the track likelihood.
pub const EPS_FLOOR: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FilterParams {
    /// Probability of detection `P_D`.
    pub p_d: f64,
    /// Gate probability `P_G`.
    pub p_g: f64,
    /// Spatial density of false measurements `λ`.
    pub lambda: f64,
    /// Confirmation threshold on `ε`.
    pub tau_ct: f64,
    /// Rejection threshold on `ε`.
    pub tau_rt: f64,
}

impl Default for FilterParams {
    fn default() -> Self {
        Self {
            p_d: 0.9,
            p_g: 0.9,
            lambda: 0.01,
            tau_ct: 0.7,
            tau_rt: 0.1,
        }
    }
}

impl FilterParams {
    pub fn validate(&self) -> Result<()> {
        for p in [self.p_d, self.tau_ct, self.tau_rt] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidProbability(p));
            }
        }
        if !(self.p_g > 0.0 && self.p_g < 1.0) {
            return Err(Error::InvalidProbability(self.p_g));
        }
        if !(self.lambda > 0.0) {
            return Err(Error::Config(format!(
                "clutter density must be positive, got {}",
                self.lambda
            )));
        }
        if self.tau_rt >= self.tau_ct {
            return Err(Error::Config(format!(
                "rejection threshold {} must be below confirmation threshold {}",
                self.tau_rt, self.tau_ct
            )));
        }
        Ok(())
    }
}

/// A motion model together with the association parameters and the gate
/// constants derived from them.
#[derive(Clone, Debug)]
pub struct Ipdaf<G, const N: usize> {
    pub model: ConstantVelocity<G, N>,
    pub params: FilterParams,
    tau_g: f64,
    c_m: f64,
}

impl<G: LieGroup<N>, const N: usize> Ipdaf<G, N> {
    pub fn new(model: ConstantVelocity<G, N>, params: FilterParams) -> Result<Self> {
        params.validate()?;
        Ok(Self {
            model,
            params,
            tau_g: chi2_inv_cdf(params.p_g, N)?,
            c_m: unit_ball_volume(N),
        })
    }

    /// Gate threshold `τ_G` with `χ²_N(τ_G) = P_G`.
    pub fn gate_threshold(&self) -> f64 {
        self.tau_g
    }

    /// `x̂' = f(x̂, 0, Δt)`, `P' = F P Fᵀ + G Q(Δt) Gᵀ`, `ε' = σ ε`.
    pub fn predict(&self, mut track: Track<G, N>, dt: f64) -> Result<Track<G, N>> {
        if dt < 0.0 {
            return Err(Error::NegativeTimeStep(dt));
        }
        let x = &track.belief.mean;
        let (f, g) = ConstantVelocity::<G, N>::jacobians_f(x, dt);
        let q = self.model.process_noise(dt);
        let p = &f * &track.belief.cov * f.transpose() + &g * q * g.transpose();
        let mean = ConstantVelocity::<G, N>::propagate_mean(x, dt);
        track.belief = ConcentratedGaussian::new_unchecked(mean, symmetrize(p));
        track.eps = clamp_eps(self.model.survival * track.eps);
        Ok(track)
    }

    /// `ẑ = h(x̂, 0)`, `S = V R Vᵀ + H P Hᵀ` and the validation region.
    pub fn make_gate(&self, track: &Track<G, N>) -> Result<Gate<G, N>> {
        let p = &track.belief.cov;
        let mut s = self.model.r;
        for r in 0..N {
            for c in 0..N {
                s[(r, c)] += p[(r, c)];
            }
        }
        Gate::new(track.belief.mean.pose, s, self.tau_g, self.c_m, self.params.p_g)
    }

    /// Runs one complete cycle on `scan` and returns the updated track along
    /// with the indices of the validated measurements.
    pub fn step(&self, track: Track<G, N>, dt: f64, scan: &[G]) -> Result<(Track<G, N>, Vec<usize>)> {
        let track = self.predict(track, dt)?;
        let gate = self.make_gate(&track)?;
        let idx = gate.validate_indices(scan);
        let validated: Vec<G> = idx.iter().map(|&i| scan[i]).collect();
        let assoc = self.association_probabilities(&gate, &validated);
        Ok((self.fuse_and_update(track, &gate, &assoc)?, idx))
    }
}

pub(crate) fn clamp_eps(eps: f64) -> f64 {
    eps.clamp(EPS_FLOOR, 1.0 - EPS_FLOOR)
}
