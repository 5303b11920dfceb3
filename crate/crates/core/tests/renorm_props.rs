use chernlab_core::fixtures::{random_hermitian_symbol, random_matrix, rng};
use chernlab_core::renorm::{leading_identity_check, lemma1_step, renorm_flow, FlowParams};
use chernlab_core::{c64, make_dirac, make_polarization, mult_op, TruncOp, TruncationContext};
use proptest::prelude::*;

fn hermitian(ctx: TruncationContext, seed: u64, scale: f64) -> TruncOp {
    let g = random_matrix(ctx.dim(), &mut rng(seed));
    TruncOp::new(ctx, faer::Scale(c64::new(0.5 * scale, 0.0)) * (&g + g.adjoint())).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn leading_identity_holds_for_matrix_symbols(seed in any::<u64>(), band in 1usize..6, lambda in prop_oneof![Just(0.0), 0.01f64..4.0]) {
        let ctx = TruncationContext::half_integer(16, 2).unwrap();
        let a = mult_op(&random_hermitian_symbol(2, band, &mut rng(seed)), &ctx).unwrap();
        let (d0, eps) = (make_dirac(&ctx), make_polarization(&ctx));
        let scale = eps.commutator(&a).unwrap().op_norm();
        prop_assert!(leading_identity_check(&d0, &a, &eps, lambda).unwrap() <= 1e-10 * scale);
    }

    #[test]
    fn leading_identity_holds_for_arbitrary_hermitian_input(seed in any::<u64>(), lambda in prop_oneof![Just(0.0), 0.01f64..4.0]) {
        let ctx = TruncationContext::half_integer(10, 1).unwrap();
        let a = hermitian(ctx, seed, 1.0);
        let (d0, eps) = (make_dirac(&ctx), make_polarization(&ctx));
        let scale = eps.commutator(&a).unwrap().op_norm();
        prop_assert!(leading_identity_check(&d0, &a, &eps, lambda).unwrap() <= 1e-10 * scale);
    }

    #[test]
    fn step_is_a_unitary_conjugation(seed in any::<u64>(), amp in 0.05f64..2.0) {
        let ctx = TruncationContext::half_integer(12, 1).unwrap();
        let a = hermitian(ctx, seed, amp);
        let (d0, eps) = (make_dirac(&ctx), make_polarization(&ctx));
        let (t, next) = lemma1_step(&d0, &a, &eps, 0.0).unwrap();
        prop_assert!(t.unitary_residual() <= 1e-10);
        let full = d0.try_add(&a).unwrap();
        let conj = t.adjoint().try_mul(&full).unwrap().try_mul(&t).unwrap();
        let diff = conj.try_sub(&d0.try_add(&next).unwrap()).unwrap().op_norm();
        prop_assert!(diff <= 1e-10 * full.op_norm());
    }

    #[test]
    fn flow_is_deterministic_and_associative(seed in any::<u64>(), depth in 1usize..4) {
        let ctx = TruncationContext::half_integer(12, 1).unwrap();
        let a = mult_op(&random_hermitian_symbol(1, 4, &mut rng(seed)), &ctx).unwrap();
        let (d0, eps) = (make_dirac(&ctx), make_polarization(&ctx));
        let p = FlowParams::new(depth);
        let f1 = renorm_flow(&d0, &a, &eps, &p).unwrap();
        let f2 = renorm_flow(&d0, &a, &eps, &p).unwrap();
        prop_assert_eq!(&f1.total, &f2.total);
        prop_assert_eq!(&f1.interactions, &f2.interactions);
        prop_assert_eq!(&f1.diagnostics, &f2.diagnostics);

        let mut cur = a.clone();
        let mut total: Option<TruncOp> = None;
        for _ in 0..depth {
            let step = renorm_flow(&d0, &cur, &eps, &FlowParams::new(1)).unwrap();
            total = Some(match total {
                None => step.total.clone(),
                Some(acc) => acc.try_mul(&step.total).unwrap(),
            });
            cur = step.interactions[1].clone();
        }
        prop_assert_eq!(total.unwrap(), f1.total.clone());
        prop_assert_eq!(&cur, f1.interactions.last().unwrap());

        let s0 = d0.try_add(&a).unwrap().hermitian_eigenvalues().unwrap();
        for ak in &f1.interactions[1..] {
            let sk = d0.try_add(ak).unwrap().hermitian_eigenvalues().unwrap();
            let drift = s0.iter().zip(&sk).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
            prop_assert!(drift <= 1e-8);
        }
    }

    #[test]
    fn depth_zero_is_identity(seed in any::<u64>()) {
        let ctx = TruncationContext::half_integer(6, 1).unwrap();
        let a = hermitian(ctx, seed, 1.0);
        let f = renorm_flow(&make_dirac(&ctx), &a, &make_polarization(&ctx), &FlowParams::new(0)).unwrap();
        prop_assert_eq!(f.total, TruncOp::identity(ctx));
    }
}
