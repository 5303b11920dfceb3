//! Superconnection `Θ = δ + B + d + θ̃`, its graded curvature, and the
//! Chern–Simons transgression forms.

use faer::c64;
use rayon::prelude::*;

use super::forms::{delta_apply, increasing_tuples, BigradedForm, PointForm, ScalarForm};
use super::grid::gauss_legendre;
use crate::error::{Error, Result};
use crate::opcore::{CMat, TruncOp};

/// Nodes of the Chern–Simons `t`-quadrature; exact up to `n = 16`.
pub const CS_NODES: usize = 16;

/// Local superconnection data on one chart.
#[derive(Clone, Debug)]
pub struct SuperConn {
    pub eps: TruncOp,
    /// `δ`-degree one, base degree zero.
    pub b: BigradedForm,
    /// `δ`-degree zero, base degree one.
    pub theta: BigradedForm,
}

impl SuperConn {
    pub fn new(eps: TruncOp, b: BigradedForm, theta: BigradedForm) -> Result<Self> {
        if (b.delta_degree(), b.base_degree()) != (1, 0) || (theta.delta_degree(), theta.base_degree()) != (0, 1) {
            return Err(Error::InvalidParameter("B must have bidegree (1,0) and θ̃ bidegree (0,1)".into()));
        }
        if b.ctx() != eps.ctx() || theta.ctx() != eps.ctx() || b.grid() != theta.grid() {
            return Err(Error::ContextMismatch);
        }
        Ok(Self { eps, b, theta })
    }
}

/// Graded curvature components of `Θ²`.
#[derive(Clone, Debug)]
pub struct Supercurvature {
    /// `εB + Bε + B²`.
    pub f20: BigradedForm,
    /// Components `∂_iB − [ε, θ_i] − [B, θ_i]`.
    pub f11: BigradedForm,
    /// Components `∂_iθ_j − ∂_jθ_i + [θ_i, θ_j]`.
    pub f02: BigradedForm,
}

pub fn supercurvature(conn: &SuperConn) -> Result<Supercurvature> {
    let (b, th) = (&conn.b, &conn.theta);
    let f20 = delta_apply(b, &conn.eps)?.try_add(&b.wedge(b)?)?;
    let f11 = b
        .exterior_derivative()?
        .try_add(&delta_apply(th, &conn.eps)?)?
        .try_add(&b.wedge(th)?)?
        .try_add(&th.wedge(b)?)?;
    let f02 = th.exterior_derivative()?.try_add(&th.wedge(th)?)?;
    Ok(Supercurvature { f20, f11, f02 })
}

/// Curvature components at one point, read off from an explicit matrix
/// representation of `Θ` on `H ⊗ Λ(ℝ^L) ⊗ ℂ²`: the `δ`-part acts as
/// `(ε + B)σ` with `σ = (−1)^{deg} ⊗ σ_x`, one-forms by exterior
/// multiplication. Applying `Θ` twice to the constant identity section gives
/// `Θ²`, whose blocks are returned as `(F20, [F11_i], [F02_ij for i<j])`.
pub fn brute_force_curvature(conn: &SuperConn, points: &[usize]) -> Result<Vec<(CMat, Vec<CMat>, Vec<CMat>)>> {
    let grid = conn.b.grid().clone();
    let l = grid.num_axes();
    let np = grid.num_points();
    let n = conn.eps.dim();
    let bfield: Vec<CMat> = (0..np).map(|p| conn.b.component(p, 0).mat().clone()).collect();
    let db: Vec<Vec<CMat>> = (0..l).map(|ax| grid.derivative(&bfield, ax)).collect::<Result<_>>()?;
    let mut th = Vec::with_capacity(l);
    let mut dth = Vec::with_capacity(l);
    for j in 0..l {
        let f: Vec<CMat> = (0..np).map(|p| conn.theta.component(p, j).mat().clone()).collect();
        dth.push((0..l).map(|ax| grid.derivative(&f, ax)).collect::<Result<Vec<_>>>()?);
        th.push(f);
    }

    let lam = 1usize << l;
    let big = n * lam * 2;
    let at = |v: usize, s: usize, c: usize| v + n * (s + lam * c);
    let embed = |x: &CMat| CMat::from_fn(big, big, |r, c| {
        let (vr, sr, cr) = (r % n, (r / n) % lam, r / (n * lam));
        let (vc, sc, cc) = (c % n, (c / n) % lam, c / (n * lam));
        if sr == sc && cr == cc { x[(vr, vc)] } else { c64::new(0.0, 0.0) }
    });
    let sigma = CMat::from_fn(big, big, |r, c| {
        let (vr, sr, cr) = (r % n, (r / n) % lam, r / (n * lam));
        let (vc, sc, cc) = (c % n, (c / n) % lam, c / (n * lam));
        if vr == vc && sr == sc && cr != cc {
            c64::new(if sc.count_ones() % 2 == 0 { 1.0 } else { -1.0 }, 0.0)
        } else {
            c64::new(0.0, 0.0)
        }
    });
    let ext: Vec<CMat> = (0..l)
        .map(|i| {
            let mut m = CMat::zeros(big, big);
            for s in 0..lam {
                if s & (1 << i) != 0 {
                    continue;
                }
                let sign = if (s & ((1 << i) - 1)).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
                for c in 0..2 {
                    for v in 0..n {
                        m[(at(v, s | (1 << i), c), at(v, s, c))] = c64::new(sign, 0.0);
                    }
                }
            }
            m
        })
        .collect();

    let eps_big = embed(conn.eps.mat());
    points
        .par_iter()
        .map(|&p| {
            let odd = &(&eps_big + &embed(&bfield[p])) * &sigma;
            let mut m1 = odd.clone();
            for i in 0..l {
                m1 += &ext[i] * embed(&th[i][p]);
            }
            let mut m2 = &odd * &m1;
            for i in 0..l {
                let mut dm1 = &embed(&db[i][p]) * &sigma;
                for j in 0..l {
                    dm1 += &ext[j] * embed(&dth[j][i][p]);
                }
                m2 += &ext[i] * dm1;
                m2 += &ext[i] * (embed(&th[i][p]) * &m1);
            }
            let block = |s: usize, c: usize| CMat::from_fn(n, n, |r, q| m2[(at(r, s, c), at(q, 0, 0))]);
            let f20 = &block(0, 0) - CMat::identity(n, n);
            let f11 = (0..l).map(|i| block(1 << i, 1)).collect();
            let f02 = increasing_tuples(l, 2).iter().map(|t| block((1 << t[0]) | (1 << t[1]), 0)).collect();
            Ok((f20, f11, f02))
        })
        .collect()
}

/// `n ∫₀¹ tr(A_t F_t^{n−1}) dt` at a point, with `A_t = tA` and
/// `F_t = t dA + t² A∧A`; `trace_idx` restricts the trace.
pub fn chern_simons_point(a: &PointForm, da: &PointForm, n: usize, trace_idx: Option<&[usize]>) -> Result<Vec<c64>> {
    if n == 0 {
        return Err(Error::InvalidParameter("Chern–Simons degree must be at least 1".into()));
    }
    if n == 1 {
        return Ok(a.trace(trace_idx));
    }
    let a2 = a.wedge(a, 1.0);
    let mut acc: Option<Vec<c64>> = None;
    for (t, w) in gauss_legendre(CS_NODES, 0.0, 1.0)? {
        let ft = da.scale(c64::new(t, 0.0)).add(&a2.scale(c64::new(t * t, 0.0)));
        let mut prod = a.scale(c64::new(t, 0.0));
        for _ in 1..n {
            prod = prod.wedge(&ft, 1.0);
        }
        let tr = prod.trace(trace_idx);
        let scale = w * n as f64;
        acc = Some(match acc {
            None => tr.into_iter().map(|v| v * scale).collect(),
            Some(prev) => prev.into_iter().zip(tr).map(|(p, v)| p + v * scale).collect(),
        });
    }
    Ok(acc.unwrap_or_default())
}

/// Chern–Simons `(2n−1)`-form of an operator-valued one-form on a chart.
pub fn chern_simons(a: &BigradedForm, n: usize, window: Option<usize>) -> Result<ScalarForm> {
    if a.base_degree() != 1 || a.delta_degree() != 0 {
        return Err(Error::InvalidParameter("Chern–Simons input must be a (0,1) form".into()));
    }
    let idx = window.map(|w| a.ctx().window_basis(w)).transpose()?;
    let grid = a.grid().clone();
    let da = if n > 1 { Some(a.exterior_derivative()?) } else { None };
    let per_point = (0..grid.num_points())
        .into_par_iter()
        .map(|p| {
            let ap = a.point_form(p);
            let dap = da.as_ref().map_or_else(|| PointForm::zeros(grid.num_axes(), 2, ap.dim()), |d| d.point_form(p));
            chern_simons_point(&ap, &dap, n, idx.as_deref())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ScalarForm { grid, degree: 2 * n - 1, coeffs: per_point.into_iter().flatten().collect() })
}

/// Max residual of `B_β = g⁻¹B_αg + g⁻¹[ε,g]` and `θ_β = g⁻¹θ_αg + g⁻¹dg`
/// over the given points, with `g` and `dg` sampled there.
pub fn transition_residual(
    alpha: &SuperConn,
    beta: &SuperConn,
    g: &[TruncOp],
    g_inv: &[TruncOp],
    dg: &[Vec<TruncOp>],
    points: &[usize],
) -> Result<f64> {
    let mut worst = 0.0f64;
    for (q, &p) in points.iter().enumerate() {
        let (gq, gi) = (&g[q], &g_inv[q]);
        let b_pred = gi.try_mul(&alpha.b.component(p, 0).try_mul(gq)?)?.try_add(&gi.try_mul(&alpha.eps.commutator(gq)?)?)?;
        worst = worst.max(b_pred.try_sub(beta.b.component(p, 0))?.max_abs());
        for (i, dgi) in dg[q].iter().enumerate() {
            let t_pred = gi.try_mul(&alpha.theta.component(p, i).try_mul(gq)?)?.try_add(&gi.try_mul(dgi)?)?;
            worst = worst.max(t_pred.try_sub(beta.theta.component(p, i))?.max_abs());
        }
    }
    Ok(worst)
}
