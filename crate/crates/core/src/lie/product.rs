//! Direct product `G × ℝⁿ` of a pose group with its own tangent space.
//!
//! This is the state group of the constant-velocity model: the pose evolves
//! on `G` and the body velocity is an element of the Cartesian algebraic space
//! of `G`, under addition. Tangent vectors of the product are stacked as
//! `[pose; velocity]` and have `2N` entries.

use super::{LieGroup, Tangent};
use crate::error::{Error, Result};
use nalgebra::{DMatrix, DVector};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct State<G, const N: usize> {
    pub pose: G,
    pub vel: Tangent<N>,
}

impl<G: LieGroup<N>, const N: usize> State<G, N> {
    pub const DIM: usize = 2 * N;

    pub fn new(pose: G, vel: Tangent<N>) -> Self {
        Self { pose, vel }
    }

    pub fn identity() -> Self {
        Self {
            pose: G::identity(),
            vel: Tangent::<N>::zeros(),
        }
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self {
            pose: self.pose.compose(&other.pose),
            vel: self.vel + other.vel,
        }
    }

    pub fn inverse(&self) -> Self {
        Self {
            pose: self.pose.inverse(),
            vel: -self.vel,
        }
    }

    /// `(Exp_G(u_g), u_v)`.
    pub fn exp(u: &DVector<f64>) -> Result<Self> {
        let (g, v) = split(u)?;
        Ok(Self {
            pose: G::exp(&g),
            vel: v,
        })
    }

    /// `(Log_G(g), v)`, stacked.
    pub fn log(&self) -> DVector<f64> {
        stack(&self.pose.log(), &self.vel)
    }

    /// `blkdiag(J_r^G(u_g), I)`.
    pub fn right_jacobian(u: &DVector<f64>) -> Result<DMatrix<f64>> {
        let (g, _) = split::<N>(u)?;
        let mut j = DMatrix::<f64>::identity(2 * N, 2 * N);
        j.view_mut((0, 0), (N, N)).copy_from(&G::right_jacobian(&g));
        Ok(j)
    }

    /// `self · Exp(u)`.
    pub fn oplus(&self, u: &DVector<f64>) -> Result<Self> {
        Ok(self.compose(&Self::exp(u)?))
    }

    /// `Log(other⁻¹ · self)`.
    pub fn ominus(&self, other: &Self) -> DVector<f64> {
        other.inverse().compose(self).log()
    }
}

/// Splits a stacked product-tangent vector into its pose and velocity parts.
pub fn split<const N: usize>(u: &DVector<f64>) -> Result<(Tangent<N>, Tangent<N>)> {
    if u.len() != 2 * N {
        return Err(Error::DimensionMismatch {
            expected: 2 * N,
            got: u.len(),
        });
    }
    Ok((
        Tangent::<N>::from_iterator(u.iter().take(N).copied()),
        Tangent::<N>::from_iterator(u.iter().skip(N).copied()),
    ))
}

pub fn stack<const N: usize>(g: &Tangent<N>, v: &Tangent<N>) -> DVector<f64> {
    DVector::from_iterator(2 * N, g.iter().chain(v.iter()).copied())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{Rn, Se2};
    use nalgebra::Vector3;

    type X = State<Se2, 3>;

    #[test]
    fn exp_of_zero_is_identity() {
        let x = X::exp(&DVector::zeros(6)).unwrap();
        assert_eq!(x, X::identity());
    }

    #[test]
    fn log_is_componentwise() {
        let g = Se2::new(0.4, 1.0, -3.0);
        let w = Vector3::new(0.1, 0.2, 0.3);
        let x = X::new(g, w);
        assert_eq!(x.log(), stack(&g.log(), &w));
    }

    #[test]
    fn right_jacobian_is_block_diagonal() {
        let u = DVector::from_vec(vec![0.3, -0.2, 0.9, 5.0, 6.0, 7.0]);
        let j = X::right_jacobian(&u).unwrap();
        let jg = Se2::right_jacobian(&Vector3::new(0.3, -0.2, 0.9));
        for r in 0..6 {
            for c in 0..6 {
                let expected = match (r < 3, c < 3) {
                    (true, true) => jg[(r, c)],
                    (false, false) if r == c => 1.0,
                    _ => 0.0,
                };
                assert_eq!(j[(r, c)], expected);
            }
        }
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let u = DVector::zeros(5);
        assert_eq!(
            X::exp(&u).unwrap_err(),
            Error::DimensionMismatch { expected: 6, got: 5 }
        );
        assert!(X::right_jacobian(&u).is_err());
        assert!(State::<Rn<2>, 2>::exp(&DVector::zeros(6)).is_err());
    }

    #[test]
    fn compose_with_inverse_is_identity() {
        let x = X::new(Se2::new(-2.0, 4.0, 1.0), Vector3::new(1.0, 2.0, 3.0));
        let e = x.compose(&x.inverse());
        assert!(e.log().norm() < 1e-12);
    }
}
