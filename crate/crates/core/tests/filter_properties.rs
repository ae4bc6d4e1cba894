use lgipdaf::filter::{event_priors, FilterParams, Ipdaf};
use lgipdaf::lie::{LieGroup, Rn, Se2, State};
use lgipdaf::motion::{lti_cv, se2_cv};
use lgipdaf::track::Track;
use nalgebra::{DMatrix, Vector2, Vector3};
use proptest::prelude::*;

fn params() -> impl Strategy<Value = FilterParams> {
    (0.05f64..1.0, 0.5f64..0.999, 1e-4f64..1.0).prop_map(|(p_d, p_g, lambda)| FilterParams {
        p_d,
        p_g,
        lambda,
        ..FilterParams::default()
    })
}

fn covariance(n: usize) -> impl Strategy<Value = DMatrix<f64>> {
    prop::collection::vec(-1.0f64..1.0, n * n).prop_map(move |a| {
        let a = DMatrix::from_vec(n, n, a);
        &a * a.transpose() + DMatrix::identity(n, n) * 0.05
    })
}

fn se2_track(cov: DMatrix<f64>, eps: f64) -> Track<Se2, 3> {
    Track::new(
        State::new(Se2::new(0.5, 10.0, -4.0), Vector3::new(8.0, 0.0, 0.7)),
        cov,
        eps,
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn betas_are_a_distribution(
        params in params(),
        cov in covariance(6),
        offsets in prop::collection::vec((-3.0f64..3.0, -3.0f64..3.0, -1.0f64..1.0), 0..12),
    ) {
        let f = Ipdaf::new(se2_cv(), params).unwrap();
        let track = se2_track(cov, 0.5);
        let gate = f.make_gate(&track).unwrap();
        let zs: Vec<Se2> = offsets.iter().map(|o| gate.z_hat.oplus(&Vector3::new(o.0, o.1, o.2))).collect();
        let a = f.association_probabilities(&gate, &zs);
        prop_assert_eq!(a.betas.len(), zs.len() + 1);
        prop_assert!(a.betas.iter().all(|&b| b >= 0.0));
        prop_assert!((a.betas.iter().sum::<f64>() - 1.0).abs() <= 1e-12);
        let eps = f.track_likelihood_update(0.5, &a);
        prop_assert!((0.0..=1.0).contains(&eps));
    }

    #[test]
    fn planar_betas_are_a_distribution(
        params in params(),
        cov in covariance(4),
        offsets in prop::collection::vec((-3.0f64..3.0, -3.0f64..3.0), 0..12),
    ) {
        let f = Ipdaf::new(lti_cv(), params).unwrap();
        let track = Track::new(State::new(Rn::from_slice(&[1.0, 2.0]), Vector2::new(3.0, 4.0)), cov, 0.5);
        let gate = f.make_gate(&track).unwrap();
        let zs: Vec<Rn<2>> = offsets.iter().map(|o| gate.z_hat.oplus(&Vector2::new(o.0, o.1))).collect();
        let a = f.association_probabilities(&gate, &zs);
        prop_assert!(a.betas.iter().all(|&b| b >= 0.0));
        prop_assert!((a.betas.iter().sum::<f64>() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn a_miss_lowers_the_likelihood_and_keeps_the_covariance(
        params in params(),
        cov in covariance(6),
        eps in 0.01f64..0.99,
    ) {
        let f = Ipdaf::new(se2_cv(), params).unwrap();
        let track = se2_track(cov, eps);
        let gate = f.make_gate(&track).unwrap();
        let a = f.association_probabilities(&gate, &[]);
        prop_assert!(a.alpha(params.p_d, params.p_g) > 0.0);
        let out = f.fuse_and_update(track.clone(), &gate, &a).unwrap();
        prop_assert!(out.eps < eps);
        prop_assert_eq!(&out.belief.cov, &track.belief.cov);
        prop_assert_eq!(out.belief.mean, track.belief.mean);
    }

    #[test]
    fn event_priors_sum_to_one(m in 0usize..40, expected_false in 0.0f64..50.0, p_d in 0.0f64..1.0, p_g in 0.01f64..0.999) {
        let priors = event_priors(m, expected_false, p_d, p_g);
        prop_assert_eq!(priors.len(), m + 1);
        prop_assert!(priors.iter().all(|&p| p >= 0.0));
        prop_assert!((priors.iter().sum::<f64>() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn updated_covariance_stays_symmetric_psd(
        cov in covariance(6),
        offsets in prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0, -0.5f64..0.5), 1..8),
    ) {
        let f = Ipdaf::new(se2_cv(), FilterParams::default()).unwrap();
        let track = se2_track(cov, 0.5);
        let gate = f.make_gate(&track).unwrap();
        let zs: Vec<Se2> = offsets.iter().map(|o| gate.z_hat.oplus(&Vector3::new(o.0, o.1, o.2))).collect();
        let a = f.association_probabilities(&gate, &zs);
        let out = f.fuse_and_update(track, &gate, &a).unwrap();
        let p = &out.belief.cov;
        prop_assert_eq!(p, &p.transpose());
        prop_assert!(p.clone().symmetric_eigen().eigenvalues.min() > -1e-9);
    }
}
