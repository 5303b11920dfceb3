//! The circle index form, the SU(2) loop-group winding integral, and the
//! regularization and base-point invariance checks.

use std::f64::consts::{PI, TAU};
use std::sync::Arc;

use faer::c64;
use rand::Rng;
use rayon::prelude::*;

use super::curvature::{supercurvature, SuperConn};
use super::descent::{cech_pairing, ChartComplex, PointFn};
use super::forms::BigradedForm;
use super::grid::{gauss_legendre, pairwise_sum, Axis, BaseGrid};
use crate::error::{Error, Result};
use crate::fixtures::random_matrix;
use crate::gauge::{loop_su2, mat2_adjoint, mat2_mul, GroupMap, LoopFamily};
use crate::opcore::{fredholm_index, make_polarization, matrix_exp, mult_op, CMat, GridFunction, TruncOp, TruncationContext};

fn re(x: f64) -> c64 {
    c64::new(x, 0.0)
}

fn windowed_trace(x: &TruncOp, window: usize) -> Result<c64> {
    x.trace_window(window)
}

/// Grid size for sampling `e^{inφ}` without aliasing.
fn winding_grid(n: i64) -> usize {
    (4 * n.unsigned_abs() as usize + 8).next_power_of_two()
}

/// Result of the circle index computation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CircleIndexForm {
    /// `∫₀^{2π} tr_W F^{(1,1)}` for `B(t) = (t/2π) g⁻¹[ε, g]`.
    pub integral: f64,
    /// Imaginary part of the same integral (zero up to rounding).
    pub integral_im: f64,
    /// Fredholm index of the `P₊gP₊` block.
    pub index: i64,
}

fn check_circle_window(n: i64, ctx: &TruncationContext, window: usize) -> Result<()> {
    if ctx.internal_dim() != 1 {
        return Err(Error::InvalidParameter("the circle index form uses a scalar context".into()));
    }
    let need = n.unsigned_abs() as usize + window + 1;
    if ctx.cutoff() < need {
        return Err(Error::WindowTooLarge { window, limit: ctx.cutoff().saturating_sub(n.unsigned_abs() as usize + 1) });
    }
    Ok(())
}

/// `∫ tr_W F^{(1,1)}` for the superconnection `δ + d + (t/2π) g⁻¹[ε,g]`
/// on `t ∈ [0, 2π]`, evaluated through [`supercurvature`].
pub fn index_form_integral(g: &TruncOp, g_inv: &TruncOp, eps: &TruncOp, window: usize) -> Result<c64> {
    let ctx = *g.ctx();
    let beta = g_inv.try_mul(&eps.commutator(g)?)?;
    let axis = Axis::interval(0.0, TAU, 5)?;
    let grid = BaseGrid::shared(vec![axis]);
    let b = BigradedForm::from_fn(grid.clone(), ctx, 1, 0, 0, |p, _| {
        beta.mat() * faer::Scale(re(axis.coord(p) / TAU))
    })?;
    let theta = BigradedForm::zeros(grid.clone(), ctx, 0, 1, 0);
    let f = supercurvature(&SuperConn::new(eps.clone(), b, theta)?)?;
    let tr = f.f11.trace(Some(window))?;
    let h = axis.step();
    let n = axis.points;
    let vals: Vec<c64> = (0..n).map(|p| tr.get(p, 0) * if p == 0 || p == n - 1 { 0.5 * h } else { h }).collect();
    Ok(pairwise_sum(&vals))
}

/// Circle index form for `g = e^{inφ}` at cutoff `ctx`.
pub fn example1_index_form(n: i64, ctx: &TruncationContext, window: usize) -> Result<CircleIndexForm> {
    check_circle_window(n, ctx, window)?;
    let m = winding_grid(n);
    let g = mult_op(&GroupMap::u1_winding(n, m)?, ctx)?;
    let g_inv = mult_op(&GroupMap::u1_winding(-n, m)?, ctx)?;
    let eps = make_polarization(ctx);
    let integral = index_form_integral(&g, &g_inv, &eps, window)?;
    let index = fredholm_index(&g, &eps, window)?;
    Ok(CircleIndexForm { integral: integral.re, integral_im: integral.im, index })
}

/// Descent route for the circle: the endpoint face `t = 2π` of the single
/// chart glued to `t = 0` by `g̃ = g⁻¹`. Returns `tr_W B(2π) − tr_W B′(0)`
/// with `B′(0) = g̃⁻¹B(2π)g̃ + g̃⁻¹[ε, g̃]`, together with `‖B′(0)‖_W`
/// (which vanishes when the transition law holds).
pub fn circle_descent_pairing(n: i64, ctx: &TruncationContext, window: usize) -> Result<(c64, f64)> {
    check_circle_window(n, ctx, window)?;
    let m = winding_grid(n);
    let g = mult_op(&GroupMap::u1_winding(n, m)?, ctx)?;
    let g_inv = mult_op(&GroupMap::u1_winding(-n, m)?, ctx)?;
    let eps = make_polarization(ctx);
    let end = g_inv.try_mul(&eps.commutator(&g)?)?;
    let (gt, gt_inv) = (&g_inv, &g);
    let start = gt_inv.try_mul(&end)?.try_mul(gt)?.try_add(&gt_inv.try_mul(&eps.commutator(gt)?)?)?;
    let idx = ctx.window_basis(window)?;
    let start_norm = crate::opcore::op_norm_of(&start.block(&idx, &idx));
    Ok((windowed_trace(&end, window)? - windowed_trace(&start, window)?, start_norm))
}

/// Result of the S³ winding quadrature.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Winding {
    /// `I = (i/4π) ∫_{S¹} ∫_{S²} tr (g′g⁻¹)(dg g⁻¹)²`.
    pub integral: c64,
    /// `I / 2πi`.
    pub winding: f64,
}

/// Quadrature sizes `(cos θ nodes, ψ points, φ points)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SphereGrid {
    pub polar: usize,
    pub azimuth: usize,
    pub loop_points: usize,
}

impl SphereGrid {
    pub fn new(polar: usize, azimuth: usize, loop_points: usize) -> Result<Self> {
        if polar == 0 || azimuth == 0 || loop_points == 0 {
            return Err(Error::InvalidParameter("quadrature sizes must be positive".into()));
        }
        Ok(Self { polar, azimuth, loop_points })
    }
}

fn unit(theta: f64, psi: f64) -> [f64; 3] {
    [theta.sin() * psi.cos(), theta.sin() * psi.sin(), theta.cos()]
}

fn d_theta(theta: f64, psi: f64) -> [f64; 3] {
    [theta.cos() * psi.cos(), theta.cos() * psi.sin(), -theta.sin()]
}

/// `∂_ψ n̂ / sin θ`.
fn d_psi_reduced(psi: f64) -> [f64; 3] {
    [-psi.sin(), psi.cos(), 0.0]
}

/// `tr(g′g⁻¹ [∂_θg g⁻¹, ∂_ψg g⁻¹]) / sin θ`.
fn winding_density(fam: &LoopFamily, theta: f64, psi: f64, phi: f64) -> c64 {
    let n = unit(theta, psi);
    let gi = mat2_adjoint(&fam.value2(&n, phi));
    let x0 = mat2_mul(&fam.d_phi2(&n, phi), &gi);
    let x1 = mat2_mul(&fam.d_sphere2(&d_theta(theta, psi), phi), &gi);
    let x2 = mat2_mul(&fam.d_sphere2(&d_psi_reduced(psi), phi), &gi);
    let (a, b) = (mat2_mul(&x1, &x2), mat2_mul(&x2, &x1));
    let mut comm = a;
    for i in 0..2 {
        for j in 0..2 {
            comm[i][j] -= b[i][j];
        }
    }
    let m = mat2_mul(&x0, &comm);
    m[0][0] + m[1][1]
}

/// Winding number of `(φ, n̂) ↦ g(n̂)(φ)` by tensor quadrature: Gauss–Legendre
/// in `cos θ`, trapezoid in `ψ` and `φ`. Orientation `dφ ∧ dθ ∧ dψ`.
pub fn example2_winding(fam: &LoopFamily, grid: SphereGrid) -> Result<Winding> {
    let polar = gauss_legendre(grid.polar, -1.0, 1.0)?;
    let (na, nl) = (grid.azimuth, grid.loop_points);
    let cols: Vec<c64> = (0..nl)
        .into_par_iter()
        .map(|j| {
            let phi = TAU * j as f64 / nl as f64;
            let mut terms = Vec::with_capacity(polar.len() * na);
            for &(u, w) in &polar {
                let theta = u.acos();
                for k in 0..na {
                    let psi = TAU * k as f64 / na as f64;
                    terms.push(winding_density(fam, theta, psi, phi) * w);
                }
            }
            pairwise_sum(&terms) * (TAU / na as f64) * (TAU / nl as f64)
        })
        .collect();
    let raw = pairwise_sum(&cols);
    let integral = raw * c64::new(0.0, 1.0 / (4.0 * PI));
    let winding = (integral / c64::new(0.0, TAU)).re;
    Ok(Winding { integral, winding })
}

/// Both sides of `tr_H([ε, X]Y) = κ·(1/2πi) ∮ tr(X′Y) dφ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TraceProbe {
    pub lhs: c64,
    pub rhs: c64,
    /// `lhs / rhs`, absent when `rhs` vanishes.
    pub ratio: Option<c64>,
}

/// Measures the circle trace formula on band-limited matrix functions.
pub fn trace_identity_probe(x: &GridFunction, y: &GridFunction, ctx: &TruncationContext, window: usize) -> Result<TraceProbe> {
    let (sx, sy) = (x.symbol(), y.symbol());
    let limit = ctx.cutoff().saturating_sub(sx.band() + sy.band());
    if window > limit || window == 0 {
        return Err(Error::WindowTooLarge { window, limit });
    }
    let eps = make_polarization(ctx);
    let xo = mult_op(x, ctx)?;
    let yo = mult_op(y, ctx)?;
    let lhs = eps.commutator(&xo)?.try_mul(&yo)?.trace_window(window)?;
    let dx = x.derivative();
    let terms: Vec<c64> = (0..x.len())
        .map(|j| {
            let m = dx.sample(j) * y.sample(j);
            (0..m.nrows()).map(|i| m[(i, i)]).sum::<c64>()
        })
        .collect();
    let rhs = pairwise_sum(&terms) / x.len() as f64 * c64::new(0.0, -1.0);
    let ratio = if rhs.norm() > 1e-12 * (1.0 + lhs.norm()) { Some(lhs / rhs) } else { None };
    Ok(TraceProbe { lhs, rhs, ratio })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Hemisphere {
    /// `B = 0 = θ̃`.
    North,
    South,
}

/// Operator and density evaluations of `tr_H g⁻¹[ε,g](g⁻¹dg)²` at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OperatorPathSample {
    pub theta: f64,
    pub psi: f64,
    /// Windowed operator trace of the `dθ∧dψ` coefficient.
    pub trace: c64,
    /// `(1/2πi) ∮ tr(g′ (g⁻¹dg)² g⁻¹) dφ`.
    pub density: c64,
    pub ratio: Option<c64>,
}

struct LoopOps {
    g: TruncOp,
    g_inv: TruncOp,
    mu: [TruncOp; 2],
    mu_fun: [GridFunction; 2],
    map: GroupMap,
}

fn loop_ops(fam: &LoopFamily, theta: f64, psi: f64, ctx: &TruncationContext, grid: usize) -> Result<LoopOps> {
    let n = unit(theta, psi);
    let map = loop_su2(fam, &n, grid)?;
    let tangents = [d_theta(theta, psi), {
        let r = d_psi_reduced(psi);
        [r[0] * theta.sin(), r[1] * theta.sin(), 0.0]
    }];
    let mu_fun = tangents.map(|t| {
        GridFunction::from_fn(grid, |phi| fam.value(&n, phi).adjoint() * fam.d_sphere(&t, phi)).expect("power-of-two grid")
    });
    let mu = [mult_op(&mu_fun[0], ctx)?, mult_op(&mu_fun[1], ctx)?];
    Ok(LoopOps { g: mult_op(&map, ctx)?, g_inv: mult_op(&map.inverse(), ctx)?, mu, mu_fun, map })
}

/// Operator path of the (1,3) curvature trace at sample points `(θ, ψ)`.
pub fn example2_operator_path(
    fam: &LoopFamily,
    points: &[[f64; 2]],
    hemisphere: Hemisphere,
    ctx: &TruncationContext,
    window: usize,
    grid: usize,
) -> Result<Vec<OperatorPathSample>> {
    if ctx.internal_dim() != 2 {
        return Err(Error::InvalidParameter("loop-group traces need internal dimension 2".into()));
    }
    let eps = make_polarization(ctx);
    points
        .iter()
        .map(|&[theta, psi]| {
            if hemisphere == Hemisphere::North {
                let z = c64::new(0.0, 0.0);
                return Ok(OperatorPathSample { theta, psi, trace: z, density: z, ratio: None });
            }
            let ops = loop_ops(fam, theta, psi, ctx, grid)?;
            let band = ops.g.band(1e-13).max(ops.mu[0].band(1e-13)).max(ops.mu[1].band(1e-13));
            if window + 4 * band > ctx.cutoff() {
                return Err(Error::BandTooWide { band, cutoff: ctx.cutoff() });
            }
            let beta = ops.g_inv.try_mul(&eps.commutator(&ops.g)?)?;
            let mu2 = ops.mu[0].try_mul(&ops.mu[1])?.try_sub(&ops.mu[1].try_mul(&ops.mu[0])?)?;
            let trace = beta.try_mul(&mu2)?.trace_window(window)?;
            let dg = ops.map.derivative();
            let terms: Vec<c64> = (0..grid)
                .map(|j| {
                    let (a, b) = (ops.mu_fun[0].sample(j), ops.mu_fun[1].sample(j));
                    let m = dg.sample(j) * (a * b - b * a) * ops.map.sample(j).adjoint();
                    m[(0, 0)] + m[(1, 1)]
                })
                .collect();
            let density = pairwise_sum(&terms) / grid as f64 * c64::new(0.0, -1.0);
            let ratio = if density.norm() > 1e-12 { Some(trace / density) } else { None };
            Ok(OperatorPathSample { theta, psi, trace, density, ratio })
        })
        .collect()
}

/// `tr_W (F²)^{(1,3)}` from the southern-chart superconnection
/// `B = (t/π) g⁻¹[ε,g]`, `θ̃ = (t/π) g⁻¹dg` at `(t, θ, ψ)`, returned with the
/// closed form `(1/π)(−t/π + (t/π)²) tr_W g⁻¹[ε,g](g⁻¹dg)²`; both are
/// coefficients of `dt∧dθ∧dψ`.
pub fn sphere_curvature_component(
    fam: &LoopFamily,
    point: [f64; 3],
    ctx: &TruncationContext,
    window: usize,
    grid: usize,
) -> Result<(c64, c64)> {
    let [t0, th0, ps0] = point;
    let h = 1e-3;
    let axes = vec![
        Axis::interval(t0 - 2.0 * h, t0 + 2.0 * h, 5)?,
        Axis::interval(th0 - 2.0 * h, th0 + 2.0 * h, 5)?,
        Axis::interval(ps0 - 2.0 * h, ps0 + 2.0 * h, 5)?,
    ];
    let base = BaseGrid::shared(axes);
    let eps = make_polarization(ctx);
    let np = base.num_points();
    let ops: Vec<LoopOps> = (0..np)
        .into_par_iter()
        .map(|p| {
            let x = base.coords(p);
            loop_ops(fam, x[1], x[2], ctx, grid)
        })
        .collect::<Result<_>>()?;
    let betas: Vec<TruncOp> =
        ops.iter().map(|o| o.g_inv.try_mul(&eps.commutator(&o.g)?)).collect::<Result<_>>()?;
    let b = BigradedForm::from_fn(base.clone(), *ctx, 1, 0, 0, |p, _| {
        betas[p].mat() * faer::Scale(re(base.coords(p)[0] / PI))
    })?;
    let theta = BigradedForm::from_fn(base.clone(), *ctx, 0, 1, 0, |p, tup| {
        let s = base.coords(p)[0] / PI;
        match tup[0] {
            0 => CMat::zeros(ctx.dim(), ctx.dim()),
            k => ops[p].mu[k - 1].mat() * faer::Scale(re(s)),
        }
    })?;
    let f = supercurvature(&SuperConn::new(eps, b, theta)?)?;
    let f13 = f.f11.wedge(&f.f02)?.try_add(&f.f02.wedge(&f.f11)?)?;
    let centre = base.point_index(&[2, 2, 2]);
    let lhs = f13.component(centre, 0).trace_window(window)?;
    let o = &ops[centre];
    let mu2 = o.mu[0].try_mul(&o.mu[1])?.try_sub(&o.mu[1].try_mul(&o.mu[0])?)?;
    let s = t0 / PI;
    let closed = betas[centre].try_mul(&mu2)?.trace_window(window)? * ((s * s - s) / PI);
    Ok((lhs, closed))
}

/// `exp(X)` with `X` a random anti-hermitian matrix supported on the modes
/// `|k| ≤ support`, scaled to operator norm `amplitude`: a unitary differing
/// from the identity by a finite-rank operator.
pub fn near_identity_unitary(ctx: &TruncationContext, support: usize, amplitude: f64, rng: &mut impl Rng) -> Result<TruncOp> {
    let idx = ctx.window_basis(support)?;
    let raw = random_matrix(idx.len(), rng);
    let ah = faer::Scale(re(0.5)) * (&raw - raw.adjoint());
    let norm = crate::opcore::op_norm_of(&ah).max(f64::MIN_POSITIVE);
    let mut full = CMat::zeros(ctx.dim(), ctx.dim());
    for (a, &i) in idx.iter().enumerate() {
        for (b, &j) in idx.iter().enumerate() {
            full[(i, j)] = ah[(a, b)] * (amplitude / norm);
        }
    }
    matrix_exp(&TruncOp::new(*ctx, full)?)
}

/// `exp(X)` with `X` anti-hermitian, nonzero only within `band` of the
/// diagonal in mode index, scaled to operator norm `amplitude`.
pub fn banded_unitary(ctx: &TruncationContext, band: usize, amplitude: f64, rng: &mut impl Rng) -> Result<TruncOp> {
    let d = ctx.internal_dim();
    let raw = random_matrix(ctx.dim(), rng);
    let mut x = faer::Scale(re(0.5)) * (&raw - raw.adjoint());
    for i in 0..ctx.dim() {
        for j in 0..ctx.dim() {
            if (i / d).abs_diff(j / d) > band {
                x[(i, j)] = c64::new(0.0, 0.0);
            }
        }
    }
    let norm = crate::opcore::op_norm_of(&x).max(f64::MIN_POSITIVE);
    matrix_exp(&TruncOp::new(*ctx, faer::Scale(re(amplitude / norm)) * x)?)
}

/// Changes applied in the invariance checks.
#[derive(Clone, Debug, Default)]
pub struct CircleChange {
    /// `(S₀, S₁)`: the regularization change acts on the transition as
    /// `g ↦ S₀⁻¹ g S₁`.
    pub regularization: Option<(TruncOp, TruncOp)>,
    /// `W`, replacing `ε` by `WεW⁻¹`.
    pub base_point: Option<TruncOp>,
}

/// `|I′ − I|` for the circle index form under a change of regularization
/// and/or base point.
pub fn circle_invariance_defect(n: i64, ctx: &TruncationContext, window: usize, change: &CircleChange) -> Result<f64> {
    check_circle_window(n, ctx, window)?;
    let m = winding_grid(n);
    let mut g = mult_op(&GroupMap::u1_winding(n, m)?, ctx)?;
    let mut g_inv = mult_op(&GroupMap::u1_winding(-n, m)?, ctx)?;
    let mut eps = make_polarization(ctx);
    let before = index_form_integral(&g, &g_inv, &eps, window)?;
    if let Some((s0, s1)) = &change.regularization {
        for s in [s0, s1] {
            if s.unitary_residual() > 1e-10 {
                return Err(Error::NotUnitary(s.unitary_residual()));
            }
        }
        g = s0.adjoint().try_mul(&g)?.try_mul(s1)?;
        g_inv = s1.adjoint().try_mul(&g_inv)?.try_mul(s0)?;
    }
    if let Some(w) = &change.base_point {
        if w.unitary_residual() > 1e-10 {
            return Err(Error::NotUnitary(w.unitary_residual()));
        }
        eps = w.try_mul(&eps)?.try_mul(&w.adjoint())?;
    }
    let after = index_form_integral(&g, &g_inv, &eps, window)?;
    Ok((after - before).norm())
}

/// `|P′ − P|` for the winding sphere's descent pairing when the transition
/// becomes `W S_N⁻¹ g_NS S_S W⁻¹`.
pub fn sphere_invariance_defect(
    winding: i64,
    dim: usize,
    s_north: PointFn<CMat>,
    s_south: PointFn<CMat>,
    base_point: Option<CMat>,
) -> Result<f64> {
    let cc = ChartComplex::winding_sphere(winding, dim)?;
    let before = cech_pairing(&cc, &cc.faces, 1)?;
    let orig = cc.clone();
    let w = base_point.unwrap_or_else(|| CMat::identity(dim, dim));
    let w_inv = w.adjoint().to_owned();
    let changed = ChartComplex::two_chart_sphere(
        dim,
        Arc::new(move |x: &[f64]| {
            let g = (orig.transition)(0, 1, x);
            &w * s_north(x).adjoint() * g * s_south(x) * &w_inv
        }),
    );
    let after = cech_pairing(&changed, &changed.faces, 1)?;
    Ok((after - before).norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::rng;

    #[test]
    fn circle_index_form_small() {
        let ctx = TruncationContext::half_integer(24, 1).unwrap();
        let e0 = example1_index_form(0, &ctx, 8).unwrap();
        assert_eq!(e0.index, 0);
        assert!(e0.integral.abs() < 1e-12);
        let e = example1_index_form(1, &ctx, 8).unwrap();
        assert_eq!(e.index, -1);
        assert!((e.integral.abs() - 2.0).abs() < 1e-12);
        let (p, start) = circle_descent_pairing(1, &ctx, 8).unwrap();
        assert!((p.re - e.integral).abs() < 1e-12 && start < 1e-12);
    }

    #[test]
    fn basic_trace_probe() {
        let ctx = TruncationContext::half_integer(12, 2).unwrap();
        let x = GridFunction::from_fn(16, |p| faer::Scale(c64::from_polar(1.0, p)) * CMat::identity(2, 2)).unwrap();
        let y = GridFunction::from_fn(16, |p| faer::Scale(c64::from_polar(1.0, -p)) * CMat::identity(2, 2)).unwrap();
        let pr = trace_identity_probe(&x, &y, &ctx, 6).unwrap();
        assert!((pr.rhs - c64::new(2.0, 0.0)).norm() < 1e-12);
        assert!((pr.lhs - c64::new(4.0, 0.0)).norm() < 1e-12);
        let c = GridFunction::from_fn(16, |_| CMat::identity(2, 2)).unwrap();
        let z = trace_identity_probe(&c, &y, &ctx, 6).unwrap();
        assert!(z.lhs.norm() < 1e-14 && z.rhs.norm() < 1e-14 && z.ratio.is_none());
    }

    #[test]
    fn trivial_loop_has_no_winding() {
        let w = example2_winding(&LoopFamily::standard(0), SphereGrid::new(8, 8, 8).unwrap()).unwrap();
        assert!(w.integral.norm() < 1e-14);
    }

    #[test]
    fn identity_change_is_neutral() {
        let ctx = TruncationContext::half_integer(20, 1).unwrap();
        let one = TruncOp::identity(ctx);
        let ch = CircleChange { regularization: Some((one.clone(), one.clone())), base_point: Some(one) };
        assert!(circle_invariance_defect(1, &ctx, 6, &ch).unwrap() < 1e-14);
        let u = near_identity_unitary(&ctx, 3, 0.2, &mut rng(1)).unwrap();
        assert!(u.unitary_residual() < 1e-12);
    }
}
