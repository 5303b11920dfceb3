use chernlab_core::fixtures::rng;
use chernlab_core::gauge::{
    adjoint_action, as_connection_theta, covariant_derivative, gauge_action, horizontal_projection, loop_su2,
    Algebra, GaugeField, Group, GroupMap, LoopFamily,
};
use chernlab_core::CMat;
use proptest::prelude::*;

fn based(x: &GaugeField) -> GaugeField {
    let x0 = x.sample(0).clone();
    x.sub(&GaugeField::from_fn(x.algebra(), x.grid_size(), |_| x0.clone()).unwrap()).unwrap()
}

fn det2(m: &CMat) -> chernlab_core::c64 {
    m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn right_action_composes_for_u1(seed in any::<u64>(), n1 in -3i64..=3, n2 in -3i64..=3) {
        let a = GaugeField::random(Algebra::U1, 3, 64, 1.0, &mut rng(seed)).unwrap();
        let (h1, h2) = (GroupMap::u1_winding(n1, 64).unwrap(), GroupMap::u1_winding(n2, 64).unwrap());
        let lhs = gauge_action(&gauge_action(&a, &h1).unwrap(), &h2).unwrap();
        let rhs = gauge_action(&a, &h1.mul(&h2).unwrap()).unwrap();
        prop_assert!(lhs.max_abs_diff(&rhs).unwrap() <= 1e-10);
    }

    #[test]
    fn right_action_composes_for_su2(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = GaugeField::random(Algebra::Su2, 3, 64, 1.0, &mut r).unwrap();
        let h1 = GroupMap::random_su2(2, 64, &mut r).unwrap();
        let h2 = GroupMap::random_su2(2, 64, &mut r).unwrap();
        let lhs = gauge_action(&gauge_action(&a, &h1).unwrap(), &h2).unwrap();
        let rhs = gauge_action(&a, &h1.mul(&h2).unwrap()).unwrap();
        prop_assert!(lhs.max_abs_diff(&rhs).unwrap() <= 1e-10);
    }

    #[test]
    fn connection_form_splits_tangent_vectors(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = GaugeField::random(Algebra::Su2, 3, 128, 0.8, &mut r).unwrap();
        let x = based(&GaugeField::random(Algebra::Su2, 3, 128, 0.8, &mut r).unwrap());
        let vertical = covariant_derivative(&a, &x).unwrap();
        prop_assert!(as_connection_theta(&a, &vertical).unwrap().max_abs_diff(&x).unwrap() <= 1e-8);
        let b = GaugeField::random(Algebra::Su2, 3, 128, 0.8, &mut r).unwrap();
        let hor = horizontal_projection(&a, &b).unwrap();
        prop_assert!(as_connection_theta(&a, &hor).unwrap().max_abs() <= 1e-8);
    }

    #[test]
    fn connection_form_is_equivariant(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = GaugeField::random(Algebra::Su2, 2, 128, 0.8, &mut r).unwrap();
        let x = based(&GaugeField::random(Algebra::Su2, 2, 128, 0.8, &mut r).unwrap());
        let hor = horizontal_projection(&a, &GaugeField::random(Algebra::Su2, 2, 128, 0.8, &mut r).unwrap()).unwrap();
        let b = covariant_derivative(&a, &x).unwrap().add(&hor).unwrap();
        let h = GroupMap::random_su2(2, 128, &mut r).unwrap();
        prop_assert!(h.is_based());
        let moved = as_connection_theta(&gauge_action(&a, &h).unwrap(), &adjoint_action(&b, &h).unwrap()).unwrap();
        let want = adjoint_action(&x, &h).unwrap();
        prop_assert!(moved.max_abs_diff(&want).unwrap() <= 1e-8);
    }

    #[test]
    fn loops_lie_in_su2(theta in 0.0f64..std::f64::consts::PI, psi in 0.0f64..std::f64::consts::TAU, n in -3i64..=3, odd in any::<bool>()) {
        let fam = if odd { LoopFamily::odd(n) } else { LoopFamily::standard(n) };
        let pt = [theta.sin() * psi.cos(), theta.sin() * psi.sin(), theta.cos()];
        let g = loop_su2(&fam, &pt, 32).unwrap();
        for j in 0..32 {
            let s = g.sample(j);
            prop_assert!((s.adjoint() * s - CMat::identity(2, 2)).norm_max() <= 1e-12);
            prop_assert!((det2(s) - chernlab_core::c64::new(1.0, 0.0)).norm() <= 1e-12);
        }
    }

    #[test]
    fn json_round_trip_is_exact(seed in any::<u64>(), su2 in any::<bool>()) {
        let mut r = rng(seed);
        let (alg, grp) = if su2 { (Algebra::Su2, Group::SU2) } else { (Algebra::U1, Group::U1) };
        let a = GaugeField::random(alg, 3, 32, 1.0, &mut r).unwrap();
        let back = GaugeField::from_json(&a.to_json().unwrap()).unwrap();
        prop_assert_eq!(back.max_abs_diff(&a).unwrap(), 0.0);
        let h = if su2 { GroupMap::random_su2(2, 32, &mut r).unwrap() } else { GroupMap::u1_winding(2, 32).unwrap() };
        prop_assert_eq!(h.group(), grp);
        let back = GroupMap::from_json(&h.to_json().unwrap()).unwrap();
        prop_assert_eq!(back.max_abs_diff(&h).unwrap(), 0.0);
        prop_assert_eq!(back.is_based(), h.is_based());
    }
}

#[test]
fn non_antihermitian_values_are_rejected() {
    let bad = GaugeField::from_fn(Algebra::U1, 8, |_| CMat::identity(1, 1));
    assert!(bad.is_err());
    let not_unitary = GroupMap::from_fn(Group::U1, 8, |_| CMat::identity(1, 1) + CMat::identity(1, 1));
    assert!(not_unitary.is_err());
}
