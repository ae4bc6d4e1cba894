//! SE(2): planar rigid-body motions.
//!
//! Elements store the heading as a scalar angle normalised to `(-π, π]` and
//! the position in the inertial frame. Tangent coordinates are `[ρx, ρy, ω]`
//! with `ρ` the body-frame translational velocity and `ω` the angular rate.

use super::{LieGroup, Mat, Planar, Tangent};
use nalgebra::{Matrix2, Matrix3, Vector2, Vector3};
use std::f64::consts::{PI, TAU};

/// Below this angle the closed forms switch to their Taylor expansions.
pub const SMALL_ANGLE: f64 = 1e-4;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Se2 {
    theta: f64,
    p: Vector2<f64>,
}

/// Wraps an angle into `(-π, π]`.
pub fn wrap_angle(theta: f64) -> f64 {
    if theta > -PI && theta <= PI {
        return theta;
    }
    let a = (theta + PI).rem_euclid(TAU) - PI;
    if a <= -PI {
        a + TAU
    } else {
        a
    }
}

/// `a I + b [1]ₓ`, where `[1]ₓ` is the planar skew matrix of a unit rate.
fn rot_like(a: f64, b: f64) -> Matrix2<f64> {
    Matrix2::new(a, -b, b, a)
}

/// `1 - cos w` without the cancellation of the direct form.
fn one_minus_cos(w: f64) -> f64 {
    let h = (w / 2.0).sin();
    2.0 * h * h
}

/// `(w - sin w) / w²`; the difference cancels badly for small `w`, so the
/// odd series is used well past [`SMALL_ANGLE`].
fn w_minus_sin_over_w2(w: f64) -> f64 {
    if w.abs() < 1e-2 {
        let w2 = w * w;
        w / 6.0 * (1.0 - w2 / 20.0 * (1.0 - w2 / 42.0))
    } else {
        (w - w.sin()) / (w * w)
    }
}

/// Coefficients `(sin ω / ω, (1 - cos ω) / ω)` of `D(ω)`.
fn d_coeffs(w: f64) -> (f64, f64) {
    if w.abs() < SMALL_ANGLE {
        let w2 = w * w;
        (1.0 - w2 / 6.0, w / 2.0 - w * w2 / 24.0)
    } else {
        (w.sin() / w, one_minus_cos(w) / w)
    }
}

/// `D(ω) = sin ω/ω · I + (1 - cos ω)/ω · [1]ₓ`, mapping `ρ` to position in `Exp`.
pub fn d_matrix(w: f64) -> Matrix2<f64> {
    let (a, b) = d_coeffs(w);
    rot_like(a, b)
}

/// `D⁻¹(θ) = θ sin θ / (2(1 - cos θ)) · I - θ/2 · [1]ₓ`.
pub fn d_inv_matrix(theta: f64) -> Matrix2<f64> {
    let a = if theta.abs() < SMALL_ANGLE {
        1.0 - theta * theta / 12.0
    } else {
        let h = theta / 2.0;
        h / h.tan()
    };
    rot_like(a, -theta / 2.0)
}

/// `(W_r(ω), D_r(ω))` blocks of the closed-form right Jacobian.
fn right_jacobian_blocks(w: f64) -> (Matrix2<f64>, Matrix2<f64>) {
    let (wa, wb, da, db) = if w.abs() < SMALL_ANGLE {
        let w2 = w * w;
        (
            1.0 - w2 / 6.0,
            -w / 2.0 + w * w2 / 24.0,
            w / 6.0 - w * w2 / 120.0,
            0.5 - w2 / 24.0,
        )
    } else {
        let s = w.sin();
        let w2 = w * w;
        let omc = one_minus_cos(w);
        (s / w, -omc / w, w_minus_sin_over_w2(w), omc / w2)
    };
    (rot_like(wa, wb), rot_like(da, db))
}

impl Se2 {
    pub fn new(theta: f64, x: f64, y: f64) -> Self {
        Self {
            theta: wrap_angle(theta),
            p: Vector2::new(x, y),
        }
    }

    pub fn from_parts(theta: f64, p: Vector2<f64>) -> Self {
        Self {
            theta: wrap_angle(theta),
            p,
        }
    }

    pub fn angle(&self) -> f64 {
        self.theta
    }

    pub fn translation(&self) -> Vector2<f64> {
        self.p
    }

    pub fn rotation(&self) -> Matrix2<f64> {
        let (s, c) = self.theta.sin_cos();
        Matrix2::new(c, -s, s, c)
    }

    /// Homogeneous 3×3 matrix representation.
    pub fn to_matrix(&self) -> Matrix3<f64> {
        let r = self.rotation();
        Matrix3::new(
            r[(0, 0)],
            r[(0, 1)],
            self.p.x,
            r[(1, 0)],
            r[(1, 1)],
            self.p.y,
            0.0,
            0.0,
            1.0,
        )
    }

    /// Inverse of [`Se2::to_matrix`]; the rotation block is read with `atan2`.
    pub fn from_matrix(m: &Matrix3<f64>) -> Self {
        Self::new(m[(1, 0)].atan2(m[(0, 0)]), m[(0, 2)], m[(1, 2)])
    }
}

impl LieGroup<3> for Se2 {
    fn identity() -> Self {
        Self {
            theta: 0.0,
            p: Vector2::zeros(),
        }
    }

    fn compose(&self, other: &Self) -> Self {
        Self {
            theta: wrap_angle(self.theta + other.theta),
            p: self.p + self.rotation() * other.p,
        }
    }

    fn inverse(&self) -> Self {
        Self {
            theta: wrap_angle(-self.theta),
            p: -(self.rotation().transpose() * self.p),
        }
    }

    fn exp(v: &Tangent<3>) -> Self {
        let rho = Vector2::new(v[0], v[1]);
        Self {
            theta: wrap_angle(v[2]),
            p: d_matrix(v[2]) * rho,
        }
    }

    fn log(&self) -> Tangent<3> {
        let rho = d_inv_matrix(self.theta) * self.p;
        Vector3::new(rho.x, rho.y, self.theta)
    }

    fn adjoint(&self) -> Mat<3> {
        let r = self.rotation();
        // -[1]ₓ p
        let t = Vector2::new(self.p.y, -self.p.x);
        Matrix3::new(r[(0, 0)], r[(0, 1)], t.x, r[(1, 0)], r[(1, 1)], t.y, 0.0, 0.0, 1.0)
    }

    fn ad(v: &Tangent<3>) -> Mat<3> {
        let w = v[2];
        Matrix3::new(0.0, -w, v[1], w, 0.0, -v[0], 0.0, 0.0, 0.0)
    }

    fn right_jacobian(v: &Tangent<3>) -> Mat<3> {
        let (wr, dr) = right_jacobian_blocks(v[2]);
        let t = dr * Vector2::new(v[0], v[1]);
        Matrix3::new(wr[(0, 0)], wr[(0, 1)], t.x, wr[(1, 0)], wr[(1, 1)], t.y, 0.0, 0.0, 1.0)
    }

    fn right_jacobian_inv(v: &Tangent<3>) -> Mat<3> {
        // [[W, Dρ], [0, 1]]⁻¹ = [[W⁻¹, -W⁻¹Dρ], [0, 1]], with W = aI + b[1]ₓ.
        let (wr, dr) = right_jacobian_blocks(v[2]);
        let (a, b) = (wr[(0, 0)], wr[(1, 0)]);
        let w_inv = rot_like(a, -b) / (a * a + b * b);
        let t = -(w_inv * dr * Vector2::new(v[0], v[1]));
        Matrix3::new(
            w_inv[(0, 0)],
            w_inv[(0, 1)],
            t.x,
            w_inv[(1, 0)],
            w_inv[(1, 1)],
            t.y,
            0.0,
            0.0,
            1.0,
        )
    }
}

impl Planar for Se2 {
    fn position(&self) -> [f64; 2] {
        [self.p.x, self.p.y]
    }
}
