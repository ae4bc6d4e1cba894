//! SO(2): planar rotations, stored as an angle in `(-π, π]`.

use super::se2::wrap_angle;
use super::{LieGroup, Mat, Tangent};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct So2 {
    theta: f64,
}

impl So2 {
    pub fn new(theta: f64) -> Self {
        Self {
            theta: wrap_angle(theta),
        }
    }

    pub fn angle(&self) -> f64 {
        self.theta
    }
}

impl LieGroup<1> for So2 {
    fn identity() -> Self {
        Self { theta: 0.0 }
    }

    fn compose(&self, other: &Self) -> Self {
        Self::new(self.theta + other.theta)
    }

    fn inverse(&self) -> Self {
        Self::new(-self.theta)
    }

    fn exp(v: &Tangent<1>) -> Self {
        Self::new(v[0])
    }

    fn log(&self) -> Tangent<1> {
        Tangent::<1>::new(self.theta)
    }

    fn adjoint(&self) -> Mat<1> {
        Mat::<1>::identity()
    }

    fn ad(_v: &Tangent<1>) -> Mat<1> {
        Mat::<1>::zeros()
    }

    fn right_jacobian(_v: &Tangent<1>) -> Mat<1> {
        Mat::<1>::identity()
    }

    fn right_jacobian_inv(_v: &Tangent<1>) -> Mat<1> {
        Mat::<1>::identity()
    }
}
