use chernlab_core::fixtures::{random_antihermitian, random_hermitian_symbol, random_matrix, rng};
use chernlab_core::gauge::GroupMap;
use chernlab_core::{
    c64, conditional_supertrace, corner_profile, fredholm_index, make_dirac, make_grading, make_polarization,
    matrix_exp, mult_op, schatten_norm, CMat, Error, MatrixSymbol, ModeConvention, TruncOp, TruncationContext,
};
use proptest::prelude::*;

fn convention() -> impl Strategy<Value = ModeConvention> {
    prop_oneof![Just(ModeConvention::HalfInteger), Just(ModeConvention::IntegerNonnegPlus)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn basis_size_matches_convention(n in 1usize..40, d in 1usize..4, conv in convention()) {
        let ctx = TruncationContext::new(n, d, conv).unwrap();
        let want = match conv {
            ModeConvention::HalfInteger => d * 2 * n,
            ModeConvention::IntegerNonnegPlus => d * (2 * n + 1),
        };
        prop_assert_eq!(ctx.dim(), want);
        prop_assert_eq!(make_dirac(&ctx).dim(), want);
    }

    #[test]
    fn polarization_is_exact_involution(n in 1usize..24, d in 1usize..3, conv in convention()) {
        let ctx = TruncationContext::new(n, d, conv).unwrap();
        let eps = make_polarization(&ctx);
        let d0 = make_dirac(&ctx);
        prop_assert_eq!(&eps * &eps, TruncOp::identity(ctx));
        prop_assert_eq!(eps.adjoint(), eps.clone());
        let abs = d0.spectral_map(f64::abs).unwrap();
        prop_assert_eq!(&eps * &d0, abs.clone());
        prop_assert_eq!(&d0 * &eps, abs);
    }

    #[test]
    fn exponential_of_antihermitian_is_unitary(seed in any::<u64>(), n in 1usize..8, amp in 0.01f64..6.0) {
        let ctx = TruncationContext::half_integer(n, 1).unwrap();
        let x = random_antihermitian(ctx.dim(), &mut rng(seed));
        let x = TruncOp::new(ctx, faer::Scale(c64::new(amp, 0.0)) * &x).unwrap();
        let u = matrix_exp(&x).unwrap();
        prop_assert!(u.unitary_residual() <= 1e-10);
        let v = matrix_exp(&x.scale_real(-1.0)).unwrap();
        prop_assert!((&(&u * &v) - &TruncOp::identity(ctx)).op_norm() <= 1e-10);
    }

    #[test]
    fn trace_norm_bounds_trace(seed in any::<u64>(), n in 1usize..10) {
        let ctx = TruncationContext::integer(n, 1).unwrap();
        let x = TruncOp::new(ctx, random_matrix(ctx.dim(), &mut rng(seed))).unwrap();
        prop_assert!(schatten_norm(&x, 1.0).unwrap() + 1e-12 >= x.trace().norm());
    }

    #[test]
    fn supertrace_reduces_to_graded_trace(seed in any::<u64>(), n in 1usize..8) {
        let ctx = TruncationContext::half_integer(n, 2).unwrap().with_grading().unwrap();
        let eps = make_polarization(&ctx);
        let gamma = make_grading(&ctx).unwrap();
        let raw = random_matrix(ctx.dim(), &mut rng(seed));
        let x = TruncOp::from_fn(ctx, |i, j| {
            if eps.get(i, i) == eps.get(j, j) { raw[(i, j)] } else { c64::new(0.0, 0.0) }
        });
        prop_assert!(eps.commutator(&x).unwrap().max_abs() == 0.0);
        let s = conditional_supertrace(&x, &eps, &gamma).unwrap();
        prop_assert!((s - (&gamma * &x).trace()).norm() <= 1e-12);
    }

    #[test]
    fn index_of_winding_is_minus_n(n in -4i64..=4, extra in 0usize..12, conv in convention()) {
        let window = 6 + extra;
        let ctx = TruncationContext::new(n.unsigned_abs() as usize + window + 1, 1, conv).unwrap();
        let g = mult_op(&GroupMap::u1_winding(n, 32).unwrap(), &ctx).unwrap();
        prop_assert_eq!(fredholm_index(&g, &make_polarization(&ctx), window).unwrap(), -n);
    }

    #[test]
    fn corner_profile_vanishes_beyond_band(seed in any::<u64>(), band in 1usize..8) {
        let ctx = TruncationContext::half_integer(32, 1).unwrap();
        let eps = make_polarization(&ctx);
        let a = mult_op(&random_hermitian_symbol(1, band, &mut rng(seed)), &ctx).unwrap();
        let prof = corner_profile(&eps.commutator(&a).unwrap(), &eps).unwrap();
        prop_assert_eq!(prof.radii.len(), prof.block_norms.len());
        prop_assert!(prof.radii.windows(2).all(|w| w[0] < w[1]));
        for (r, v) in prof.radii.iter().zip(&prof.block_norms) {
            if *r > band {
                prop_assert_eq!(*v, 0.0);
            }
        }
    }

    #[test]
    fn grid_round_trip_of_band_limited_symbol(seed in any::<u64>(), band in 0usize..6, d in 1usize..3) {
        let sym = random_hermitian_symbol(d, band, &mut rng(seed));
        let back = sym.to_grid(16).unwrap().symbol_full();
        for k in -(band as i64)..=band as i64 {
            prop_assert!((back.coeff(k) - sym.coeff(k)).norm_max() <= 1e-13);
        }
    }
}

#[test]
fn mixed_contexts_are_rejected() {
    let a = TruncOp::identity(TruncationContext::half_integer(3, 1).unwrap());
    let b = TruncOp::identity(TruncationContext::integer(3, 1).unwrap());
    assert!(matches!(a.try_mul(&b), Err(Error::ContextMismatch)));
    let m = MatrixSymbol::constant(CMat::identity(2, 2));
    assert!(mult_op(&m, &TruncationContext::half_integer(3, 1).unwrap()).is_err());
}
