//! Fast numerical checks exposed through the `selftest` subcommand.

use crate::filter::{chi2_cdf, chi2_inv_cdf, event_priors, FilterParams, Ipdaf};
use crate::lie::{exp_series, LieGroup, Se2, State};
use crate::motion::{se2_cv, ConstantVelocity};
use crate::track::Track;
use nalgebra::{DMatrix, DVector, Vector3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, worst: f64, tol: f64) -> Check {
    Check {
        name,
        passed: worst <= tol,
        detail: format!("max error {worst:.2e} (tolerance {tol:.0e})"),
    }
}

fn random_tangent(rng: &mut impl Rng, rho: f64, w: f64) -> Vector3<f64> {
    Vector3::new(
        rng.random_range(-rho..rho),
        rng.random_range(-rho..rho),
        rng.random_range(-w..w),
    )
}

pub fn run() -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut out = Vec::new();

    let worst = (0..10_000)
        .map(|_| {
            let v = random_tangent(&mut rng, 10.0, PI - 1e-3);
            (Se2::exp(&v).log() - v).amax()
        })
        .fold(0.0, f64::max);
    out.push(check("se2 exp/log roundtrip", worst, 1e-9));

    let worst = (0..1000)
        .map(|_| {
            let g = Se2::exp(&random_tangent(&mut rng, 10.0, PI));
            let v = random_tangent(&mut rng, 2.0, 2.0);
            let lhs = g.compose(&Se2::exp(&v));
            let rhs = Se2::exp(&(g.adjoint() * v)).compose(&g);
            lhs.ominus(&rhs).amax()
        })
        .fold(0.0, f64::max);
    out.push(check("se2 adjoint relation", worst, 1e-9));

    let worst = (0..1000)
        .map(|_| {
            let v = random_tangent(&mut rng, 3.0, 3.0);
            (Se2::right_jacobian(&v) - exp_series(&(-Se2::ad(&v)))).amax()
        })
        .fold(0.0, f64::max);
    out.push(check("se2 right jacobian series", worst, 1e-10));

    let worst = (0..100)
        .map(|_| {
            let x = State::new(
                Se2::exp(&random_tangent(&mut rng, 5.0, 3.0)),
                random_tangent(&mut rng, 5.0, 1.0),
            );
            let dt = 0.1;
            let (f, _) = ConstantVelocity::<Se2, 3>::jacobians_f(&x, dt);
            let base = ConstantVelocity::<Se2, 3>::propagate_mean(&x, dt);
            let h = 1e-6;
            let mut err: f64 = 0.0;
            for i in 0..6 {
                let mut e = DVector::zeros(6);
                e[i] = h;
                let plus = ConstantVelocity::<Se2, 3>::propagate_mean(&x.oplus(&e).expect("6-vector"), dt);
                let minus = ConstantVelocity::<Se2, 3>::propagate_mean(&x.oplus(&-e).expect("6-vector"), dt);
                let col = (plus.ominus(&base) - minus.ominus(&base)) / (2.0 * h);
                err = err.max((col - f.column(i)).amax() / f.column(i).amax().max(1.0));
            }
            err
        })
        .fold(0.0, f64::max);
    out.push(check("state jacobian F", worst, 1e-5));

    let worst = [(1, 0.5), (2, 0.9), (3, 0.9), (3, 0.99), (6, 0.1)]
        .iter()
        .map(|&(dof, p)| (chi2_cdf(chi2_inv_cdf(p, dof).expect("valid"), dof) - p).abs())
        .fold(0.0, f64::max);
    out.push(check("chi-square quantiles", worst, 1e-10));

    let filter = Ipdaf::new(se2_cv(), FilterParams::default()).expect("default parameters");
    let worst = (0..2000)
        .map(|_| {
            let x = State::new(
                Se2::exp(&random_tangent(&mut rng, 20.0, PI)),
                random_tangent(&mut rng, 10.0, 1.0),
            );
            let t = Track::new(x, DMatrix::identity(6, 6) * rng.random_range(0.01..5.0), 0.5);
            let gate = filter.make_gate(&t).expect("positive definite");
            let zs: Vec<Se2> = (0..rng.random_range(0..8))
                .map(|_| x.pose.oplus(&random_tangent(&mut rng, 3.0, 1.0)))
                .collect();
            let a = filter.association_probabilities(&gate, &zs);
            (a.betas.iter().sum::<f64>() - 1.0).abs()
        })
        .fold(0.0, f64::max);
    out.push(check("association weights sum", worst, 1e-12));

    let worst = (0..10)
        .flat_map(|m| [0.5, 2.0, 10.0].map(|mu| (event_priors(m, mu, 0.9, 0.9).iter().sum::<f64>() - 1.0).abs()))
        .fold(0.0, f64::max);
    out.push(check("event priors sum", worst, 1e-12));

    out
}
