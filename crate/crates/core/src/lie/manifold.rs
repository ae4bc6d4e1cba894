use super::{LieGroup, Rn, Se2, So2, State, Tangent};
use crate::error::{Error, Result};
use nalgebra::{DMatrix, DVector};
use std::fmt::Debug;

/// Dynamically-sized view of a Lie group, used where tangent dimensions are
/// only known at run time (covariances over product states, the filter).
pub trait Manifold: Clone + Debug + Send + Sync {
    const DIM: usize;

    /// `self · Exp(u)`.
    fn retract(&self, u: &DVector<f64>) -> Result<Self>;

    /// `Log(self⁻¹ · other)`.
    fn local(&self, other: &Self) -> DVector<f64>;

    fn right_jacobian_at(u: &DVector<f64>) -> Result<DMatrix<f64>>;
}

fn check_len(u: &DVector<f64>, n: usize) -> Result<()> {
    if u.len() == n {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            expected: n,
            got: u.len(),
        })
    }
}

fn to_static<const N: usize>(u: &DVector<f64>) -> Result<Tangent<N>> {
    check_len(u, N)?;
    Ok(Tangent::<N>::from_iterator(u.iter().copied()))
}

macro_rules! lie_manifold {
    ($ty:ty, $n:literal) => {
        impl Manifold for $ty {
            const DIM: usize = $n;

            fn retract(&self, u: &DVector<f64>) -> Result<Self> {
                Ok(self.oplus(&to_static::<$n>(u)?))
            }

            fn local(&self, other: &Self) -> DVector<f64> {
                let v = other.ominus(self);
                DVector::from_column_slice(v.as_slice())
            }

            fn right_jacobian_at(u: &DVector<f64>) -> Result<DMatrix<f64>> {
                let j = <$ty as LieGroup<$n>>::right_jacobian(&to_static::<$n>(u)?);
                Ok(DMatrix::from_column_slice($n, $n, j.as_slice()))
            }
        }
    };
}

lie_manifold!(Se2, 3);
lie_manifold!(So2, 1);

impl<const N: usize> Manifold for Rn<N> {
    const DIM: usize = N;

    fn retract(&self, u: &DVector<f64>) -> Result<Self> {
        Ok(self.oplus(&to_static::<N>(u)?))
    }

    fn local(&self, other: &Self) -> DVector<f64> {
        DVector::from_column_slice((other.0 - self.0).as_slice())
    }

    fn right_jacobian_at(u: &DVector<f64>) -> Result<DMatrix<f64>> {
        check_len(u, N)?;
        Ok(DMatrix::identity(N, N))
    }
}

impl<G: LieGroup<N>, const N: usize> Manifold for State<G, N> {
    const DIM: usize = 2 * N;

    fn retract(&self, u: &DVector<f64>) -> Result<Self> {
        self.oplus(u)
    }

    fn local(&self, other: &Self) -> DVector<f64> {
        other.ominus(self)
    }

    fn right_jacobian_at(u: &DVector<f64>) -> Result<DMatrix<f64>> {
        State::<G, N>::right_jacobian(u)
    }
}
