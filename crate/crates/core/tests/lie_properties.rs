use lgipdaf::lie::{exp_series, LieGroup, Mat, Rn, Se2, So2, State, Tangent};
use nalgebra::{DVector, Vector1, Vector2, Vector3};
use proptest::prelude::*;
use std::f64::consts::PI;

fn tangent(max_omega: f64) -> impl Strategy<Value = Vector3<f64>> {
    (-20.0f64..20.0, -20.0f64..20.0, -max_omega..max_omega).prop_map(|(x, y, w)| Vector3::new(x, y, w))
}

fn pose() -> impl Strategy<Value = Se2> {
    (-PI..PI, -50.0f64..50.0, -50.0f64..50.0).prop_map(|(t, x, y)| Se2::new(t, x, y))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn log_inverts_exp(v in tangent(PI - 1e-3)) {
        let back = Se2::exp(&v).log();
        prop_assert!((back - v).amax() <= 1e-9, "{v} -> {back}");
    }

    #[test]
    fn adjoint_moves_exp_across(g in pose(), v in tangent(3.0)) {
        let lhs = g.compose(&Se2::exp(&v));
        let rhs = Se2::exp(&(g.adjoint() * v)).compose(&g);
        prop_assert!(lhs.ominus(&rhs).amax() <= 1e-9);
    }

    #[test]
    fn right_jacobian_is_first_order(v in tangent(3.0), d in (-1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0)) {
        let d = Vector3::new(d.0, d.1, d.2);
        prop_assume!(d.norm() > 1e-3);
        let d = d.normalize() * 1e-5;
        let lhs = Se2::exp(&(v + d)).ominus(&Se2::exp(&v));
        prop_assert!((lhs - Se2::right_jacobian(&v) * d).norm() <= 1e-8);
    }

    #[test]
    fn closed_form_jacobians_match_series(v in tangent(3.0)) {
        let series = exp_series(&(-Se2::ad(&v)));
        prop_assert!((Se2::right_jacobian(&v) - series).amax() <= 1e-10);
        let inv = Se2::right_jacobian_inv(&v);
        prop_assert!((inv * Se2::right_jacobian(&v) - Mat::<3>::identity()).amax() <= 1e-9);
        prop_assert!((Se2::left_jacobian(&v) - Se2::exp(&v).adjoint() * Se2::right_jacobian(&v)).amax() <= 1e-9);
    }

    #[test]
    fn group_axioms(a in pose(), b in pose(), c in pose()) {
        let lhs = a.compose(&b).compose(&c);
        let rhs = a.compose(&b.compose(&c));
        prop_assert!(lhs.ominus(&rhs).amax() <= 1e-9);
        prop_assert!(a.compose(&a.inverse()).log().amax() <= 1e-12);
        prop_assert!((a.compose(&b).adjoint() - a.adjoint() * b.adjoint()).amax() <= 1e-9);
    }

    #[test]
    fn oplus_ominus_roundtrip(g in pose(), v in tangent(3.0)) {
        prop_assert!((g.oplus(&v).ominus(&g) - v).amax() <= 1e-9);
    }

    #[test]
    fn so2_is_the_rotation_block(w in -3.0f64..3.0) {
        let r = So2::exp(&Vector1::new(w));
        prop_assert!((r.log()[0] - w).abs() <= 1e-12);
        prop_assert_eq!(So2::right_jacobian(&Vector1::new(w)), Mat::<1>::identity());
    }

    #[test]
    fn vector_space_is_trivial(a in (-9.0f64..9.0, -9.0f64..9.0), b in (-9.0f64..9.0, -9.0f64..9.0)) {
        let v = Vector2::new(a.0, a.1);
        let g = Rn::<2>::exp(&v);
        prop_assert_eq!(g.coords(), &v);
        prop_assert_eq!(g.log(), v);
        prop_assert_eq!(g.adjoint(), Mat::<2>::identity());
        prop_assert_eq!(Rn::<2>::right_jacobian(&v), Mat::<2>::identity());
        prop_assert_eq!(Rn::<2>::right_jacobian_inv(&v), Mat::<2>::identity());
        let h = Rn::<2>::exp(&Vector2::new(b.0, b.1));
        prop_assert_eq!(*g.compose(&h).coords(), v + Vector2::new(b.0, b.1));
    }

    #[test]
    fn product_exp_log_roundtrip(v in tangent(3.0), w in tangent(5.0)) {
        let mut u = DVector::zeros(6);
        u.rows_mut(0, 3).copy_from(&v);
        u.rows_mut(3, 3).copy_from(&w);
        let x = State::<Se2, 3>::exp(&u).unwrap();
        prop_assert!((x.vel - w).amax() == 0.0);
        prop_assert!((x.log() - &u).amax() <= 1e-9);
        let x0 = State::new(Se2::new(0.3, 1.0, 2.0), Tangent::<3>::new(1.0, 0.0, 0.2));
        prop_assert!((x0.oplus(&u).unwrap().ominus(&x0) - &u).amax() <= 1e-9);
    }
}
