//! Concentrated Gaussian distributions on Lie groups.
//!
//! A random element `x = μ · Exp(ξ)` with `ξ ~ N(0, P)` in the tangent space
//! at `μ`. The density is the ordinary Gaussian density of the tangent error
//! `Log(μ⁻¹ x)`, which is only meaningful while `P` is small enough that the
//! mass stays well inside the injectivity radius of `Exp`.

use crate::error::{Error, Result};
use crate::lie::Manifold;
use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_distr::StandardNormal;

const SYMMETRY_TOL: f64 = 1e-12;
const PSD_TOL: f64 = 1e-10;

#[derive(Clone, Debug)]
pub struct ConcentratedGaussian<M> {
    pub mean: M,
    pub cov: DMatrix<f64>,
}

impl<M: Manifold> ConcentratedGaussian<M> {
    /// Validates the covariance: square of the right size, symmetric, and
    /// positive semidefinite up to `-1e-10`, with tiny negative eigenvalues
    /// clamped to zero.
    pub fn new(mean: M, cov: DMatrix<f64>) -> Result<Self> {
        let n = M::DIM;
        if cov.nrows() != n || cov.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: cov.nrows().max(cov.ncols()),
            });
        }
        let scale = cov.amax().max(1.0);
        if (&cov - cov.transpose()).amax() > SYMMETRY_TOL * scale {
            return Err(Error::Config("covariance is not symmetric".into()));
        }
        let cov = symmetrize(cov);
        let eig = cov.clone().symmetric_eigen();
        let min = eig.eigenvalues.min();
        if min < -PSD_TOL * scale {
            return Err(Error::NotPositiveSemidefinite(min));
        }
        let cov = if min < 0.0 {
            let clamped = eig.eigenvalues.map(|l| l.max(0.0));
            symmetrize(&eig.eigenvectors * DMatrix::from_diagonal(&clamped) * eig.eigenvectors.transpose())
        } else {
            cov
        };
        Ok(Self { mean, cov })
    }

    /// Skips validation; for callers that maintain the invariants themselves.
    pub fn new_unchecked(mean: M, cov: DMatrix<f64>) -> Self {
        Self { mean, cov }
    }

    pub fn dim(&self) -> usize {
        M::DIM
    }

    pub fn density(&self, x: &M) -> Result<f64> {
        let n = M::DIM;
        let chol = self.cov.clone().cholesky().ok_or(Error::SingularCovariance)?;
        let nu = self.mean.local(x);
        let maha = nu.dot(&chol.solve(&nu));
        let log_det: f64 = chol.l_dirty().diagonal().iter().take(n).map(|d| 2.0 * d.ln()).sum();
        if !log_det.is_finite() {
            return Err(Error::SingularCovariance);
        }
        let log_eta = -0.5 * (n as f64 * std::f64::consts::TAU.ln() + log_det);
        Ok((log_eta - 0.5 * maha).exp())
    }

    /// `mean · Exp(L ξ)` with `ξ` standard normal and `L Lᵀ = cov`.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<M> {
        let l = factor(&self.cov)?;
        let xi = DVector::<f64>::from_iterator(M::DIM, (0..M::DIM).map(|_| rng.sample(StandardNormal)));
        self.mean.retract(&(l * xi))
    }

    /// Re-centres the distribution at `mean · Exp(mu)`, transporting the
    /// covariance with the right Jacobian.
    pub fn reset_mean(&self, mu: &DVector<f64>) -> Result<Self> {
        let mean = self.mean.retract(mu)?;
        let j = M::right_jacobian_at(mu)?;
        let cov = symmetrize(&j * &self.cov * j.transpose());
        Ok(Self { mean, cov })
    }
}

pub fn symmetrize(p: DMatrix<f64>) -> DMatrix<f64> {
    (&p + p.transpose()) * 0.5
}

/// A square-root factor `L` with `L Lᵀ = P`: Cholesky when it succeeds, the
/// symmetric eigendecomposition otherwise.
pub fn factor(p: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    if let Some(c) = p.clone().cholesky() {
        return Ok(c.unpack());
    }
    let scale = p.amax().max(1.0);
    let eig = p.clone().symmetric_eigen();
    let min = eig.eigenvalues.min();
    if min < -PSD_TOL * scale {
        return Err(Error::NotPositiveSemidefinite(min));
    }
    let root = eig.eigenvalues.map(|l| l.max(0.0).sqrt());
    Ok(&eig.eigenvectors * DMatrix::from_diagonal(&root))
}
