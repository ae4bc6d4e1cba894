//! White-noise-driven constant-velocity model on `G × ℝⁿ`.
//!
//! The pose is propagated by integrating the body velocity over the step,
//! `g' = g · Exp(Δt·v + q_g)`, and the velocity is a random walk,
//! `v' = v + q_v`. The sensor observes the pose directly: `z = g · Exp(r)`.
//! The state-space process noise over a step is `Q(Δt) = Q_rate · Δt`.

use crate::error::{Error, Result};
use crate::lie::product::split;
use crate::lie::{LieGroup, Mat, Rn, Se2, State, Tangent};
use nalgebra::{DMatrix, DVector};
use std::marker::PhantomData;

#[derive(Clone, Debug)]
pub struct ConstantVelocity<G, const N: usize> {
    /// Spectral density of the `2N`-dimensional process noise.
    pub q_rate: DMatrix<f64>,
    /// Measurement noise covariance on the pose tangent space.
    pub r: Mat<N>,
    /// Track survival probability between scans, `σ(Δt)`; treated as constant.
    pub survival: f64,
    _group: PhantomData<G>,
}

impl<G: LieGroup<N>, const N: usize> ConstantVelocity<G, N> {
    pub fn new(q_rate: DMatrix<f64>, r: Mat<N>, survival: f64) -> Result<Self> {
        if q_rate.nrows() != 2 * N || q_rate.ncols() != 2 * N {
            return Err(Error::DimensionMismatch {
                expected: 2 * N,
                got: q_rate.nrows(),
            });
        }
        if !(0.0..=1.0).contains(&survival) {
            return Err(Error::InvalidProbability(survival));
        }
        check_psd(&q_rate, "process noise")?;
        check_psd(&DMatrix::from_column_slice(N, N, r.as_slice()), "measurement noise")?;
        Ok(Self {
            q_rate,
            r,
            survival,
            _group: PhantomData,
        })
    }

    pub fn process_noise(&self, dt: f64) -> DMatrix<f64> {
        &self.q_rate * dt
    }

    /// `f(x, q, Δt)`.
    pub fn transition(x: &State<G, N>, q: &DVector<f64>, dt: f64) -> Result<State<G, N>> {
        if dt < 0.0 {
            return Err(Error::NegativeTimeStep(dt));
        }
        let (qg, qv) = split::<N>(q)?;
        Ok(State::new(x.pose.oplus(&(x.vel * dt + qg)), x.vel + qv))
    }

    /// `f(x, 0, Δt)`.
    pub fn propagate_mean(x: &State<G, N>, dt: f64) -> State<G, N> {
        State::new(x.pose.oplus(&(x.vel * dt)), x.vel)
    }

    /// `h(x, r)`.
    pub fn observe(x: &State<G, N>, r: &Tangent<N>) -> G {
        x.pose.oplus(r)
    }

    /// `(F, G)`, the Jacobians of `f` with respect to the state error and the
    /// process noise at `(x̂, 0, Δt)`.
    pub fn jacobians_f(x: &State<G, N>, dt: f64) -> (DMatrix<f64>, DMatrix<f64>) {
        let u = x.vel * dt;
        let jr = G::right_jacobian(&u);
        let ad = G::exp(&u).inverse().adjoint();
        let mut f = DMatrix::identity(2 * N, 2 * N);
        let mut g = DMatrix::identity(2 * N, 2 * N);
        for r in 0..N {
            for c in 0..N {
                f[(r, c)] = ad[(r, c)];
                f[(r, N + c)] = jr[(r, c)] * dt;
                g[(r, c)] = jr[(r, c)];
            }
        }
        (f, g)
    }

    /// `(H, V) = ([I 0], I)`.
    pub fn jacobians_h() -> (DMatrix<f64>, DMatrix<f64>) {
        let mut h = DMatrix::zeros(N, 2 * N);
        h.view_mut((0, 0), (N, N)).fill_with_identity();
        (h, DMatrix::identity(N, N))
    }
}

fn check_psd(m: &DMatrix<f64>, what: &str) -> Result<()> {
    let scale = m.amax().max(1.0);
    if (m - m.transpose()).amax() > 1e-12 * scale {
        return Err(Error::Config(format!("{what} covariance is not symmetric")));
    }
    let min = m.clone().symmetric_eigen().eigenvalues.min();
    if min < -1e-10 * scale {
        return Err(Error::NotPositiveSemidefinite(min));
    }
    Ok(())
}

/// Constant velocity on SE(2) with the benchmark's noise levels.
pub fn se2_cv() -> ConstantVelocity<Se2, 3> {
    let q = DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, 1.0, 0.1, 1.0, 1.0, 0.1]));
    let r = Mat::<3>::from_diagonal(&nalgebra::Vector3::new(0.1, 0.1, 0.01));
    ConstantVelocity::new(q, r, 1.0).expect("valid constants")
}

/// Linear constant velocity on the plane observing position only.
pub fn lti_cv() -> ConstantVelocity<Rn<2>, 2> {
    let q = DMatrix::identity(4, 4);
    let r = Mat::<2>::from_diagonal(&nalgebra::Vector2::new(0.1, 0.1));
    ConstantVelocity::new(q, r, 1.0).expect("valid constants")
}
