//! ℝⁿ under addition. Exp and Log are the identity map, Ad and the Jacobians
//! are the identity and `ad` vanishes.

use super::{LieGroup, Mat, Planar, Tangent};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Rn<const N: usize>(pub Tangent<N>);

impl<const N: usize> Rn<N> {
    pub fn new(v: Tangent<N>) -> Self {
        Self(v)
    }

    pub fn from_slice(v: &[f64]) -> Self {
        Self(Tangent::<N>::from_column_slice(v))
    }

    pub fn coords(&self) -> &Tangent<N> {
        &self.0
    }
}

impl<const N: usize> LieGroup<N> for Rn<N> {
    fn identity() -> Self {
        Self(Tangent::<N>::zeros())
    }

    fn compose(&self, other: &Self) -> Self {
        Self(self.0 + other.0)
    }

    fn inverse(&self) -> Self {
        Self(-self.0)
    }

    fn exp(v: &Tangent<N>) -> Self {
        Self(*v)
    }

    fn log(&self) -> Tangent<N> {
        self.0
    }

    fn adjoint(&self) -> Mat<N> {
        Mat::<N>::identity()
    }

    fn ad(_v: &Tangent<N>) -> Mat<N> {
        Mat::<N>::zeros()
    }

    fn right_jacobian(_v: &Tangent<N>) -> Mat<N> {
        Mat::<N>::identity()
    }

    fn right_jacobian_inv(_v: &Tangent<N>) -> Mat<N> {
        Mat::<N>::identity()
    }
}

impl Planar for Rn<2> {
    fn position(&self) -> [f64; 2] {
        [self.0[0], self.0[1]]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::Vector3;

    #[test]
    fn abelian_structure_is_exact() {
        let a = Rn::new(Vector3::new(1.0, -2.0, 0.5));
        let b = Rn::new(Vector3::new(0.25, 4.0, -1.0));
        assert_eq!(a.compose(&b), b.compose(&a));
        assert_eq!(Rn::exp(&a.log()), a);
        assert_eq!(a.adjoint(), Mat::<3>::identity());
        assert_eq!(Rn::<3>::ad(a.coords()), Mat::<3>::zeros());
        assert_eq!(Rn::<3>::right_jacobian(a.coords()), Mat::<3>::identity());
        assert_eq!(Rn::<3>::left_jacobian_inv(a.coords()), Mat::<3>::identity());
    }

    #[test]
    fn generic_series_defaults_reduce_to_identity() {
        // ad = 0, so the default series collapse to I exactly.
        let a = Mat::<2>::zeros();
        assert_eq!(super::super::exp_series(&a), Mat::<2>::identity());
        assert_eq!(super::super::bernoulli_series(&a), Mat::<2>::identity());
    }
}
