use std::f64::consts::TAU;
use std::sync::Arc;

use chernlab_core::fixtures::{random_antihermitian, random_matrix, random_unitary, rng};
use chernlab_core::gauge::pauli;
use chernlab_core::superchern::{
    cech_pairing, chern_simons, delta_apply, example1_index_form, increasing_tuples, sort_with_sign, sphere_overlap_samples,
    sphere_samples, supercurvature, trace_identity_probe, Axis, BaseGrid, BigradedForm, ChartComplex, PointFn,
    SuperConn,
};
use chernlab_core::{c64, expm_mat, make_polarization, CMat, MatrixSymbol, TruncOp, TruncationContext};
use proptest::prelude::*;
use rand::Rng;

fn re(x: f64) -> c64 {
    c64::new(x, 0.0)
}

fn three_axis_grid() -> Arc<BaseGrid> {
    BaseGrid::shared(vec![
        Axis::periodic(0.0, TAU, 5).unwrap(),
        Axis::periodic(0.0, TAU, 4).unwrap(),
        Axis::interval(0.0, 1.0, 5).unwrap(),
    ])
}

fn random_form(grid: &Arc<BaseGrid>, ctx: TruncationContext, k: usize, l: usize, seed: u64) -> BigradedForm {
    let tuples = increasing_tuples(grid.num_axes(), l);
    let mut r = rng(seed);
    let mats: Vec<CMat> = (0..grid.num_points() * tuples.len()).map(|_| random_matrix(ctx.dim(), &mut r)).collect();
    BigradedForm::from_fn(grid.clone(), ctx, k, l, 0, |p, t| {
        let ti = tuples.iter().position(|u| u.as_slice() == t).unwrap();
        mats[p * tuples.len() + ti].clone()
    })
    .unwrap()
}

fn random_symbol_fn(d: usize, band: usize, grid: usize, seed: u64) -> chernlab_core::GridFunction {
    let mut r = rng(seed);
    let coeffs = (0..=2 * band).map(|_| random_matrix(d, &mut r)).collect();
    MatrixSymbol::new(d, band, coeffs).unwrap().to_grid(grid).unwrap()
}

/// Pointwise `g(x) = U·diag(e^{i(p_j x₀ + q_j x₁)})` with its two partials.
struct PeriodicGauge {
    u: CMat,
    p: Vec<f64>,
    q: Vec<f64>,
}

impl PeriodicGauge {
    fn phases(&self, x: &[f64]) -> Vec<c64> {
        self.p.iter().zip(&self.q).map(|(p, q)| c64::from_polar(1.0, p * x[0] + q * x[1])).collect()
    }

    fn value(&self, x: &[f64]) -> CMat {
        let ph = self.phases(x);
        &self.u * CMat::from_fn(ph.len(), ph.len(), |i, j| if i == j { ph[i] } else { re(0.0) })
    }

    fn partial(&self, x: &[f64], axis: usize) -> CMat {
        let ph = self.phases(x);
        let w = if axis == 0 { &self.p } else { &self.q };
        &self.u * CMat::from_fn(ph.len(), ph.len(), |i, j| if i == j { ph[i] * c64::new(0.0, w[i]) } else { re(0.0) })
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn delta_squares_to_zero_and_anticommutes_with_d(seed in any::<u64>(), k in 0usize..3, l in 0usize..3) {
        let ctx = TruncationContext::half_integer(2, 1).unwrap();
        let eps = make_polarization(&ctx);
        let grid = three_axis_grid();
        let phi = random_form(&grid, ctx, k, l, seed);
        prop_assert!(delta_apply(&delta_apply(&phi, &eps).unwrap(), &eps).unwrap().max_abs() <= 1e-12);
        let a = delta_apply(&phi.exterior_derivative().unwrap(), &eps).unwrap();
        let b = delta_apply(&phi, &eps).unwrap().exterior_derivative().unwrap();
        prop_assert!(a.try_add(&b).unwrap().max_abs() <= 1e-8 * (1.0 + a.max_abs()));
    }

    #[test]
    fn wedge_adds_bidegrees_and_respects_order(seed in any::<u64>(), k1 in 0usize..2, l1 in 0usize..2, k2 in 0usize..2, l2 in 1usize..3) {
        let ctx = TruncationContext::half_integer(1, 1).unwrap();
        let grid = three_axis_grid();
        let a = random_form(&grid, ctx, k1, l1, seed);
        let b = random_form(&grid, ctx, k2, l2, seed.wrapping_add(7));
        let w = a.wedge(&b).unwrap();
        prop_assert_eq!((w.delta_degree(), w.base_degree()), (k1 + k2, l1 + l2));
        let p = (seed % grid.num_points() as u64) as usize;
        for t in w.tuples().to_vec() {
            let mut rev = t.clone();
            rev.reverse();
            let (sorted, sign) = sort_with_sign(&rev).unwrap();
            prop_assert_eq!(&sorted, &t);
            prop_assert_eq!(w.get(p, &rev), w.get(p, &t).scale_real(sign));
        }
        if l1 + l2 <= 3 {
            let mut rep = w.tuples().first().cloned().unwrap_or_default();
            if let Some(&x) = rep.first() {
                rep.push(x);
                prop_assert_eq!(w.get(p, &rep).max_abs(), 0.0);
            }
        }
    }

    #[test]
    fn first_chern_simons_form_is_the_trace(seed in any::<u64>(), window in prop::option::of(1usize..3)) {
        let ctx = TruncationContext::half_integer(3, 1).unwrap();
        let a = random_form(&three_axis_grid(), ctx, 0, 1, seed);
        let cs = chern_simons(&a, 1, window).unwrap();
        let tr = a.trace(window).unwrap();
        prop_assert_eq!(cs.degree, 1);
        prop_assert_eq!(cs.coeffs, tr.coeffs);
    }

    #[test]
    fn supercurvature_is_covariant_under_transitions(seed in any::<u64>()) {
        let ctx = TruncationContext::half_integer(2, 1).unwrap();
        let dim = ctx.dim();
        let eps = make_polarization(&ctx);
        let grid = BaseGrid::shared(vec![Axis::periodic(0.0, TAU, 16).unwrap(), Axis::periodic(0.0, TAU, 16).unwrap()]);
        let mut r = rng(seed);
        let bm: Vec<CMat> = (0..3).map(|_| random_matrix(dim, &mut r)).collect();
        let tm: Vec<CMat> = (0..6).map(|_| random_antihermitian(dim, &mut r)).collect();
        let gauge = PeriodicGauge {
            u: random_unitary(dim, &mut r),
            p: (0..dim).map(|_| r.gen_range(-1..=1) as f64).collect(),
            q: (0..dim).map(|_| r.gen_range(-1..=1) as f64).collect(),
        };
        let b_of = |x: &[f64]| {
            faer::Scale(re(x[0].cos())) * &bm[0] + faer::Scale(re(x[1].sin())) * &bm[1] + &bm[2]
        };
        let th_of = |x: &[f64], i: usize| {
            faer::Scale(re((x[0] + x[1]).cos())) * &tm[3 * i] + faer::Scale(re(x[0].sin())) * &tm[3 * i + 1]
                + faer::Scale(re(x[1].cos())) * &tm[3 * i + 2]
        };
        let b = BigradedForm::from_fn(grid.clone(), ctx, 1, 0, 0, |p, _| b_of(&grid.coords(p))).unwrap();
        let th = BigradedForm::from_fn(grid.clone(), ctx, 0, 1, 0, |p, t| th_of(&grid.coords(p), t[0])).unwrap();
        let eps_m = eps.mat().clone();
        let b2 = BigradedForm::from_fn(grid.clone(), ctx, 1, 0, 0, |p, _| {
            let x = grid.coords(p);
            let g = gauge.value(&x);
            let gi = g.adjoint();
            &gi * b_of(&x) * &g + &gi * (&eps_m * &g - &g * &eps_m)
        })
        .unwrap();
        let th2 = BigradedForm::from_fn(grid.clone(), ctx, 0, 1, 0, |p, t| {
            let x = grid.coords(p);
            let g = gauge.value(&x);
            let gi = g.adjoint();
            &gi * th_of(&x, t[0]) * &g + &gi * gauge.partial(&x, t[0])
        })
        .unwrap();
        let f1 = supercurvature(&SuperConn::new(eps.clone(), b, th).unwrap()).unwrap();
        let f2 = supercurvature(&SuperConn::new(eps, b2, th2).unwrap()).unwrap();
        let mut worst = 0.0f64;
        for p in 0..grid.num_points() {
            let g = TruncOp::new(ctx, gauge.value(&grid.coords(p))).unwrap();
            let gi = g.adjoint();
            for (x, y, n) in [(&f1.f20, &f2.f20, 1), (&f1.f11, &f2.f11, 2), (&f1.f02, &f2.f02, 1)] {
                for c in 0..n {
                    let pred = gi.try_mul(x.component(p, c)).unwrap().try_mul(&g).unwrap();
                    worst = worst.max(pred.try_sub(y.component(p, c)).unwrap().max_abs());
                }
            }
        }
        prop_assert!(worst <= 1e-9, "worst {worst}");
    }

    #[test]
    fn pairing_is_additive_under_splitting(seed in any::<u64>(), m in -2i64..=2) {
        let mut r = rng(seed);
        let (c1, c2) = (r.gen_range(0.1..0.6), r.gen_range(0.1..0.6));
        let [sx, _, sz] = pauli();
        let g: PointFn<CMat> = Arc::new(move |x: &[f64]| {
            let (th, ps) = (x[0], x[1]);
            let gen = faer::Scale(c64::new(0.0, c1 * ps.cos())) * &sx
                + faer::Scale(c64::new(0.0, c2 * th.sin() * (2.0 * ps).sin())) * &sz;
            let mut d = CMat::identity(2, 2);
            d[(0, 0)] = c64::from_polar(1.0, m as f64 * ps + c2 * ps.sin());
            expm_mat(&gen).unwrap() * d
        });
        let cc = ChartComplex::two_chart_sphere(2, g);
        let whole = cech_pairing(&cc, &cc.faces, 1).unwrap();
        let mut cuts: Vec<f64> = (0..2).map(|_| r.gen_range(0.2..TAU - 0.2)).collect();
        cuts.sort_by(f64::total_cmp);
        prop_assume!(cuts[1] - cuts[0] > 0.1);
        let (a, rest) = cc.faces[0].split(0, cuts[0]).unwrap();
        let (b, c) = rest.split(0, cuts[1]).unwrap();
        let pieces = cech_pairing(&cc, &[a, b, c], 1).unwrap();
        prop_assert!((whole - pieces).norm() <= 1e-8);
        prop_assert!((whole - c64::new(0.0, -TAU * m as f64)).norm() <= 1e-6);
    }

    #[test]
    fn circle_index_form_is_minus_twice_the_index(n in -4i64..=4, extra in 0usize..8) {
        let cutoff = 2 * n.unsigned_abs() as usize + 16 + extra;
        let ctx = TruncationContext::integer(cutoff, 1).unwrap();
        let window = cutoff - n.unsigned_abs() as usize - 1;
        let ex = example1_index_form(n, &ctx, window).unwrap();
        prop_assert_eq!(ex.index, -n);
        prop_assert!((ex.integral + 2.0 * ex.index as f64).abs() <= 1e-9);
        prop_assert!(ex.integral_im.abs() <= 1e-9);
    }

    #[test]
    fn trace_formula_constant_is_two(seed in any::<u64>(), d in 1usize..3) {
        let ctx = TruncationContext::integer(24, d).unwrap();
        let x = random_symbol_fn(d, 3, 32, seed);
        let y = random_symbol_fn(d, 3, 32, seed.wrapping_add(1));
        let probe = trace_identity_probe(&x, &y, &ctx, 12).unwrap();
        prop_assume!(probe.rhs.norm() > 1e-3);
        prop_assert!((probe.ratio.unwrap() - re(2.0)).norm() <= 1e-8);
    }

    #[test]
    fn sphere_partition_and_cocycle_conditions(m in -3i64..=3, dim in 1usize..4) {
        let cc = ChartComplex::winding_sphere(m, dim).unwrap();
        prop_assert!(cc.partition_residual(&sphere_samples(16)).unwrap() <= 1e-12);
        prop_assert!(cc.cocycle_residual(&sphere_overlap_samples(8)).unwrap() <= 1e-10);
    }
}
