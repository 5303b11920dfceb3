use chernlab_core::cocycle::{
    cocycle_residual, lemma2_residual, omega, omega_regularized, CocycleValue, ConstantFamily, EvenCaseFixture,
};
use chernlab_core::fixtures::{random_antihermitian, random_unitary, rng};
use chernlab_core::gauge::{gauge_action, Algebra, GaugeField, Group, GroupMap};
use chernlab_core::renorm::FlowParams;
use chernlab_core::{c64, expm_mat, TruncOp, TruncationContext};
use proptest::prelude::*;

fn small_unitary(dim: usize, seed: u64) -> TruncOp {
    let ctx = TruncationContext::half_integer(dim / 2, 1).unwrap();
    let x = faer::Scale(c64::new(0.3, 0.0)) * random_antihermitian(dim, &mut rng(seed));
    TruncOp::new(ctx, expm_mat(&x).unwrap()).unwrap()
}

fn gram_defect(x: &TruncOp) -> f64 {
    x.adjoint().try_mul(x).unwrap().try_sub(&TruncOp::identity(*x.ctx())).unwrap().op_norm()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn identity_gauge_gives_identity(seed in any::<u64>(), depth in 0usize..4) {
        let ctx = TruncationContext::half_integer(12, 1).unwrap();
        let a = GaugeField::random(Algebra::U1, 3, 64, 0.7, &mut rng(seed)).unwrap();
        let one = GroupMap::identity(Group::U1, 64).unwrap();
        let om = omega(&ctx, &a, &one, &FlowParams::new(depth)).unwrap();
        prop_assert!(om.op.try_sub(&TruncOp::identity(ctx)).unwrap().op_norm() <= 1e-10);
    }

    #[test]
    fn depth_zero_cocycle_holds_on_interior(n1 in -3i64..=3, n2 in -3i64..=3, seed in any::<u64>()) {
        let ctx = TruncationContext::half_integer(16, 1).unwrap();
        let a = GaugeField::random(Algebra::U1, 2, 64, 0.5, &mut rng(seed)).unwrap();
        let (h1, h2) = (GroupMap::u1_winding(n1, 64).unwrap(), GroupMap::u1_winding(n2, 64).unwrap());
        let window = 16 - (n1.abs() + n2.abs()) as usize - 1;
        prop_assert!(cocycle_residual(&ctx, &a, &h1, &h2, &FlowParams::new(0), window).unwrap() <= 1e-12);
    }

    #[test]
    fn constant_regularization_conjugates_everything(seed in any::<u64>(), n1 in -2i64..=2, n2 in -2i64..=2) {
        let ctx = TruncationContext::half_integer(12, 1).unwrap();
        let a = GaugeField::random(Algebra::U1, 2, 64, 0.5, &mut rng(seed)).unwrap();
        let (h1, h2) = (GroupMap::u1_winding(n1, 64).unwrap(), GroupMap::u1_winding(n2, 64).unwrap());
        let p = FlowParams::new(2);
        let fam = ConstantFamily(small_unitary(ctx.dim(), seed ^ 0x5a5a));

        let base = omega(&ctx, &a, &h1, &p).unwrap();
        let changed = omega_regularized(&ctx, &a, &h1, &p, &fam).unwrap();
        prop_assert!((gram_defect(&changed.op) - gram_defect(&base.op)).abs() <= 1e-10);

        let ah1 = gauge_action(&a, &h1).unwrap();
        let h12 = h1.mul(&h2).unwrap();
        let defect = |f: &dyn Fn(&GaugeField, &GroupMap) -> TruncOp| {
            f(&a, &h1).try_mul(&f(&ah1, &h2)).unwrap().try_sub(&f(&a, &h12)).unwrap().op_norm()
        };
        let plain = defect(&|x, h| omega(&ctx, x, h, &p).unwrap().op);
        let reg = defect(&|x, h| omega_regularized(&ctx, x, h, &p, &fam).unwrap().op);
        prop_assert!((plain - reg).abs() <= 1e-10 * (1.0 + plain));
    }

    #[test]
    fn doubled_values_preserve_chirality(seed in any::<u64>(), n in -2i64..=2) {
        let base = TruncationContext::half_integer(8, 1).unwrap();
        let fixture = EvenCaseFixture::doubled(&base).unwrap();
        prop_assert!(fixture.structure_residual() <= 1e-14);
        let a = GaugeField::random(Algebra::U1, 2, 64, 0.5, &mut rng(seed)).unwrap();
        let om = omega(&base, &a, &GroupMap::u1_winding(n, 64).unwrap(), &FlowParams::new(1)).unwrap();
        let doubled = fixture.doubled_value(&om).unwrap();
        prop_assert_eq!(fixture.grading_defect(&doubled.op).unwrap(), 0.0);
        prop_assert!(fixture.gamma().commutator(&doubled.op).unwrap().max_abs() == 0.0);
    }

    #[test]
    fn compatible_values_satisfy_the_even_relation(seed in any::<u64>(), modes in 2usize..6) {
        let base = TruncationContext::half_integer(modes, 1).unwrap();
        let fixture = EvenCaseFixture::random(&base, &mut rng(seed)).unwrap();
        prop_assert!(fixture.structure_residual() <= 1e-12);
        let minus = random_unitary(fixture.num_modes(), &mut rng(seed.wrapping_add(1)));
        let op = fixture.compatible(&minus).unwrap();
        prop_assert!(fixture.eps().commutator(&op).unwrap().max_abs() <= 1e-12);
        prop_assert!(lemma2_residual(&CocycleValue::new(op, FlowParams::new(0)), &fixture).unwrap() <= 1e-12);
    }
}
