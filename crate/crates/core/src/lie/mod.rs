//! Lie-group algebra for filtering on connected unimodular groups.
//!
//! Tangent vectors are coordinates in the Cartesian algebraic space of the
//! group (the Lie algebra identified with ℝⁿ through an orthonormal basis).
//! For SE(2) the coordinate order is `[ρx, ρy, ω]`.
//!
//! Every group implements [`LieGroup`]; the direct product of a group with its
//! own tangent space, used as the constant-velocity state, lives in
//! [`product`].

use nalgebra::{SMatrix, SVector};
use std::fmt::Debug;

pub mod manifold;
pub mod product;
pub mod rn;
pub mod se2;
pub mod so2;

pub use manifold::Manifold;
pub use product::State;
pub use rn::Rn;
pub use se2::Se2;
pub use so2::So2;

/// Tangent coordinates of an `N`-dimensional group.
pub type Tangent<const N: usize> = SVector<f64, N>;

/// Square operator on the tangent space (adjoints, Jacobians, covariances).
pub type Mat<const N: usize> = SMatrix<f64, N, N>;

/// Terms of the generic Jacobian series stop once their norm drops below this.
pub const SERIES_TOLERANCE: f64 = 1e-14;
/// Hard cap on the number of series terms.
pub const SERIES_MAX_TERMS: usize = 40;

/// A matrix Lie group with `N`-dimensional tangent space.
///
/// The exponential and logarithm are taken at the identity; `g.oplus(v)` is
/// the left-trivialised exponential `g · Exp(v)` and `g.ominus(h)` is
/// `Log(h⁻¹ · g)`.
///
/// The Jacobians default to the truncated `ad` series, which is correct for
/// any group where the series converge; groups with closed forms override
/// them.
pub trait LieGroup<const N: usize>: Copy + Debug + PartialEq + Send + Sync + 'static {
    fn identity() -> Self;

    fn compose(&self, other: &Self) -> Self;

    fn inverse(&self) -> Self;

    fn exp(v: &Tangent<N>) -> Self;

    /// Principal-branch logarithm.
    fn log(&self) -> Tangent<N>;

    /// Matrix adjoint `Ad_g`, satisfying `g · Exp(v) = Exp(Ad_g v) · g`.
    fn adjoint(&self) -> Mat<N>;

    /// Matrix adjoint of the algebra, `ad_v w = [v, w]`.
    fn ad(v: &Tangent<N>) -> Mat<N>;

    fn right_jacobian(v: &Tangent<N>) -> Mat<N> {
        exp_series(&(-Self::ad(v)))
    }

    fn right_jacobian_inv(v: &Tangent<N>) -> Mat<N> {
        bernoulli_series(&(-Self::ad(v)))
    }

    fn left_jacobian(v: &Tangent<N>) -> Mat<N> {
        Self::right_jacobian(&(-v))
    }

    fn left_jacobian_inv(v: &Tangent<N>) -> Mat<N> {
        Self::right_jacobian_inv(&(-v))
    }

    /// `self · Exp(v)`.
    fn oplus(&self, v: &Tangent<N>) -> Self {
        self.compose(&Self::exp(v))
    }

    /// `Log(other⁻¹ · self)`, the tangent vector carrying `other` to `self`.
    fn ominus(&self, other: &Self) -> Tangent<N> {
        other.inverse().compose(self).log()
    }
}

/// Groups whose elements carry a planar position, used for spatial gating of
/// track initialisation and for position-error metrics.
pub trait Planar {
    fn position(&self) -> [f64; 2];

    fn planar_distance(&self, other: &Self) -> f64 {
        let a = self.position();
        let b = other.position();
        (a[0] - b[0]).hypot(a[1] - b[1])
    }
}

/// `Σ Aⁿ / (n+1)!`, the series of the right Jacobian when `A = -ad_v`.
pub fn exp_series<const N: usize>(a: &Mat<N>) -> Mat<N> {
    let mut sum = Mat::<N>::identity();
    let mut term = Mat::<N>::identity();
    for n in 1..SERIES_MAX_TERMS {
        term = term * a / (n as f64 + 1.0);
        sum += term;
        if term.norm() < SERIES_TOLERANCE {
            break;
        }
    }
    sum
}

/// `Σ Bₙ Aⁿ / n!` with Bernoulli numbers `Bₙ` (`B₁ = -1/2`): the inverse right
/// Jacobian when `A = -ad_v`. Converges for spectral radius below `2π`.
pub fn bernoulli_series<const N: usize>(a: &Mat<N>) -> Mat<N> {
    let b = bernoulli_numbers();
    let mut sum = Mat::<N>::identity();
    let mut power = Mat::<N>::identity();
    let mut factorial = 1.0;
    for (n, bn) in b.iter().enumerate().skip(1) {
        power *= a;
        factorial *= n as f64;
        let term = power * (*bn / factorial);
        sum += term;
        if *bn != 0.0 && term.norm() < SERIES_TOLERANCE {
            break;
        }
    }
    sum
}

/// Bernoulli numbers `B₀ … B₃₉` with the `B₁ = -1/2` convention.
fn bernoulli_numbers() -> [f64; SERIES_MAX_TERMS] {
    // Even entries from B₂ₖ = (-1)^(k+1) 2 (2k)! ζ(2k) / (2π)^(2k); the
    // textbook recurrences lose all precision in f64 long before n = 40.
    let mut b = [0.0; SERIES_MAX_TERMS];
    b[0] = 1.0;
    b[1] = -0.5;
    let mut factorial = 2.0;
    for n in (2..SERIES_MAX_TERMS).step_by(2) {
        if n > 2 {
            factorial *= (n - 1) as f64 * n as f64;
        }
        let sign = if (n / 2) % 2 == 1 { 1.0 } else { -1.0 };
        b[n] = sign * 2.0 * factorial * zeta_even(n) / std::f64::consts::TAU.powi(n as i32);
    }
    b
}

/// Riemann zeta at an even integer `s >= 2`.
fn zeta_even(s: usize) -> f64 {
    if s == 2 {
        return std::f64::consts::PI * std::f64::consts::PI / 6.0;
    }
    const TERMS: usize = 64;
    let head: f64 = (1..=TERMS).map(|j| (j as f64).powi(-(s as i32))).sum();
    // Euler–Maclaurin tail.
    let n = TERMS as f64;
    let s_f = s as f64;
    let tail = n.powf(1.0 - s_f) / (s_f - 1.0) - 0.5 * n.powf(-s_f) + s_f / 12.0 * n.powf(-s_f - 1.0);
    head + tail
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bernoulli_values() {
        let b = bernoulli_numbers();
        assert_eq!(b[0], 1.0);
        assert_eq!(b[1], -0.5);
        assert!((b[2] - 1.0 / 6.0).abs() < 1e-15);
        assert!(b[3].abs() < 1e-15);
        assert!((b[4] + 1.0 / 30.0).abs() < 1e-14);
        assert!((b[6] - 1.0 / 42.0).abs() < 1e-14);
        assert!((b[12] + 691.0 / 2730.0).abs() < 1e-10);
    }

    #[test]
    fn series_are_mutual_inverses() {
        let a = Mat::<2>::new(0.0, -0.7, 0.7, 0.0);
        let prod = exp_series(&a) * bernoulli_series(&a);
        assert!((prod - Mat::<2>::identity()).norm() < 1e-12);
    }
}
