use super::{AssociationResult, Gate, Ipdaf};
use crate::error::{Error, Result};
use crate::gaussian::{symmetrize, ConcentratedGaussian};
use crate::lie::{LieGroup, Tangent};
use crate::track::Track;
use nalgebra::{DMatrix, DVector};

/// Kalman gain `K = P Hᵀ S⁻¹` and the contracted covariance `(I − K H) P`.
///
/// With `H = [I 0]`, `H P` is the first `N` rows of `P`; `K` is obtained from
/// `S Kᵀ = H P` with a Cholesky solve.
fn gain<G: LieGroup<N>, const N: usize>(p: &DMatrix<f64>, gate: &Gate<G, N>) -> Result<(DMatrix<f64>, DMatrix<f64>)> {
    let hp = p.rows(0, N).clone_owned();
    let s = DMatrix::from_column_slice(N, N, gate.s.as_slice());
    let chol = s.cholesky().ok_or(Error::InnovationNotPositiveDefinite)?;
    let k = chol.solve(&hp).transpose();
    let pc = symmetrize(p - &k * hp);
    Ok((k, pc))
}

fn to_dvector<const N: usize>(v: &Tangent<N>) -> DVector<f64> {
    DVector::from_column_slice(v.as_slice())
}

impl<G: LieGroup<N>, const N: usize> Ipdaf<G, N> {
    /// Update of the split track for one association event, before the mean
    /// reset: `(μ⁻, P^{c−}) = (K ν, (I − K H) P)`, or `(0, P)` when `nu` is
    /// `None` (event `j = 0`).
    pub fn split_update(
        &self,
        track: &Track<G, N>,
        gate: &Gate<G, N>,
        nu: Option<&Tangent<N>>,
    ) -> Result<(DVector<f64>, DMatrix<f64>)> {
        let p = &track.belief.cov;
        match nu {
            None => Ok((DVector::zeros(2 * N), p.clone())),
            Some(nu) => {
                let (k, pc) = gain(p, gate)?;
                Ok((k * to_dvector(nu), pc))
            }
        }
    }

    /// Fuses the split tracks, resets the fused error mean onto the estimate
    /// and updates the track likelihood.
    pub fn fuse_and_update(
        &self,
        mut track: Track<G, N>,
        gate: &Gate<G, N>,
        assoc: &AssociationResult<N>,
    ) -> Result<Track<G, N>> {
        track.eps = self.track_likelihood_update(track.eps, assoc);
        if assoc.is_empty() {
            return Ok(track);
        }
        let b0 = assoc.betas[0];
        let betas = &assoc.betas[1..];
        let nu_bar: Tangent<N> = assoc
            .innovations
            .iter()
            .zip(betas)
            .fold(Tangent::<N>::zeros(), |acc, (nu, b)| acc + nu * *b);
        // Σ βⱼ νⱼ νⱼᵀ − ν̄ ν̄ᵀ, written as a sum of outer products with
        // nonnegative weights so it stays PSD in floating point.
        let mut spread = nu_bar * nu_bar.transpose() * b0;
        for (nu, b) in assoc.innovations.iter().zip(betas) {
            let d = nu - nu_bar;
            spread += d * d.transpose() * *b;
        }
        let spread = DMatrix::from_column_slice(N, N, spread.as_slice());

        let p = &track.belief.cov;
        let (k, pc) = gain(p, gate)?;
        let p_minus = p * b0 + pc * (1.0 - b0) + &k * spread * k.transpose();
        let mu = k * to_dvector(&nu_bar);

        let fused = ConcentratedGaussian::new_unchecked(track.belief.mean, symmetrize(p_minus));
        track.belief = fused.reset_mean(&mu)?;
        Ok(track)
    }
}
