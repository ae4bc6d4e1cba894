use crate::error::{Error, Result};
use crate::lie::{LieGroup, Mat, Tangent};

/// Validation region of one track for one scan.
#[derive(Clone, Debug)]
pub struct Gate<G, const N: usize> {
    /// Estimated measurement `ẑ`.
    pub z_hat: G,
    /// Innovation covariance.
    pub s: Mat<N>,
    pub tau_g: f64,
    /// `c_m |τ_G S|^{1/2}`.
    pub volume: f64,
    pub p_g: f64,
    s_inv: Mat<N>,
    log_norm: f64,
    radius: f64,
}

impl<G: LieGroup<N>, const N: usize> Gate<G, N> {
    pub fn new(z_hat: G, s: Mat<N>, tau_g: f64, c_m: f64, p_g: f64) -> Result<Self> {
        let chol = s.cholesky().ok_or(Error::InnovationNotPositiveDefinite)?;
        let log_det: f64 = chol.l_dirty().diagonal().iter().map(|d| 2.0 * d.ln()).sum();
        let s_inv = chol.inverse();
        let det = log_det.exp();
        // Cheap upper bounds on λ_max(S): the trace, and Gershgorin's row sums.
        let gershgorin = (0..N).map(|r| s.row(r).abs().sum()).fold(0.0, f64::max);
        let lambda_max = s.trace().min(gershgorin);
        Ok(Self {
            z_hat,
            s,
            tau_g,
            volume: c_m * (tau_g.powi(N as i32) * det).sqrt(),
            p_g,
            s_inv,
            log_norm: -0.5 * (N as f64 * std::f64::consts::TAU.ln() + log_det),
            radius: (tau_g * lambda_max).sqrt(),
        })
    }

    /// `ν = Log(ẑ⁻¹ z)`.
    pub fn innovation(&self, z: &G) -> Tangent<N> {
        z.ominus(&self.z_hat)
    }

    /// Squared Mahalanobis distance `d_V = νᵀ S⁻¹ ν`.
    pub fn distance(&self, nu: &Tangent<N>) -> f64 {
        (nu.transpose() * self.s_inv * nu)[(0, 0)]
    }

    pub fn contains(&self, z: &G) -> bool {
        self.distance(&self.innovation(z)) <= self.tau_g
    }

    /// `N(ν; 0, S)`.
    pub fn innovation_density(&self, nu: &Tangent<N>) -> f64 {
        (self.log_norm - 0.5 * self.distance(nu)).exp()
    }

    /// Any innovation with Euclidean norm above this radius is outside the
    /// gate, since `νᵀ S⁻¹ ν ≥ |ν|² / λ_max(S)`. For groups where `|Log(a⁻¹b)|`
    /// bounds the planar distance (SE(2), ℝ²) it also bounds positions.
    pub fn bounding_radius(&self) -> f64 {
        self.radius
    }

    /// The measurements inside the gate, in scan order.
    pub fn validate(&self, scan: &[G]) -> Vec<G> {
        scan.iter().filter(|z| self.contains(z)).copied().collect()
    }

    pub fn validate_indices(&self, scan: &[G]) -> Vec<usize> {
        (0..scan.len()).filter(|&i| self.contains(&scan[i])).collect()
    }
}
