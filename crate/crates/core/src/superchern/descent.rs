//! Chart complexes, the partition-of-unity connection and the Čech–de Rham
//! face-sum pairing of Chern–Simons forms.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::sync::Arc;

use faer::c64;
use rayon::prelude::*;

use super::curvature::chern_simons_point;
use super::forms::PointForm;
use super::grid::{gauss_legendre, pairwise_sum};
use crate::error::{Error, Result};
use crate::opcore::CMat;

pub type PointFn<T> = Arc<dyn Fn(&[f64]) -> T + Send + Sync>;
pub type TransitionFn = Arc<dyn Fn(usize, usize, &[f64]) -> CMat + Send + Sync>;

/// An open chart, given by a membership test and an optional partition weight.
#[derive(Clone)]
pub struct LocalChart {
    pub name: String,
    pub contains: PointFn<bool>,
    pub weight: Option<PointFn<f64>>,
}

/// A boundary face of a cycle box: fixed coordinates, integration ranges in
/// orientation order, and the chart pair `(from, to)` meeting there.
/// `orientation` is `+1` when the ranges' order is the boundary orientation
/// induced by the outward normal of the `from` box.
#[derive(Clone, Debug, PartialEq)]
pub struct Face {
    pub from: usize,
    pub to: usize,
    pub fixed: Vec<(usize, f64)>,
    pub ranges: Vec<(usize, f64, f64)>,
    pub orientation: f64,
}

impl Face {
    /// Splits the face along its `k`-th range at `at`.
    pub fn split(&self, k: usize, at: f64) -> Result<(Face, Face)> {
        let (ax, lo, hi) = *self
            .ranges
            .get(k)
            .ok_or_else(|| Error::InvalidParameter(format!("face has no range {k}")))?;
        if !(at > lo && at < hi) {
            return Err(Error::InvalidParameter(format!("{at} is not inside ({lo}, {hi})")));
        }
        let mut a = self.clone();
        let mut b = self.clone();
        a.ranges[k] = (ax, lo, at);
        b.ranges[k] = (ax, at, hi);
        Ok((a, b))
    }
}

/// Charts covering a cycle's parameter box, with transitions `g_{αβ}`
/// (so that `ψ_β = ψ_α g_{αβ}`) and optional partition weights.
#[derive(Clone)]
pub struct ChartComplex {
    pub dim: usize,
    pub num_axes: usize,
    pub charts: Vec<LocalChart>,
    pub transition: TransitionFn,
    pub faces: Vec<Face>,
    /// Gauss–Legendre nodes per face direction.
    pub quad_nodes: usize,
    /// Step of the fourth-order differences applied to transitions.
    pub fd_step: f64,
}

fn smooth_step(u: f64) -> f64 {
    if u <= 0.0 {
        0.0
    } else if u >= 1.0 {
        1.0
    } else {
        let a = (-1.0 / u).exp();
        let b = (-1.0 / (1.0 - u)).exp();
        a / (a + b)
    }
}

fn inverse(m: &CMat) -> Result<CMat> {
    use faer::linalg::solvers::DenseSolveCore;
    let inv = m.partial_piv_lu().inverse();
    if inv.norm_max().is_finite() {
        Ok(inv)
    } else {
        Err(Error::Singular)
    }
}

impl ChartComplex {
    pub fn new(dim: usize, num_axes: usize, charts: Vec<LocalChart>, transition: TransitionFn) -> Self {
        Self { dim, num_axes, charts, transition, faces: Vec::new(), quad_nodes: 48, fd_step: 1e-3 }
    }

    pub fn with_faces(mut self, faces: Vec<Face>) -> Self {
        self.faces = faces;
        self
    }

    /// Two-chart sphere in coordinates `(θ, ψ) ∈ [0, π] × [0, 2π)`; the
    /// northern chart is `θ < π/2 + 0.3`, the southern `θ > π/2 − 0.3`, and
    /// the transition `g_NS(θ, ψ)` is supplied. The cycle is split at the
    /// equator into two boxes; their common face carries the orientation `+dψ`.
    pub fn two_chart_sphere(dim: usize, g_ns: PointFn<CMat>) -> Self {
        let north = LocalChart {
            name: "north".into(),
            contains: Arc::new(|x: &[f64]| x[0] < FRAC_PI_2 + 0.3),
            weight: Some(Arc::new(|x: &[f64]| smooth_step((FRAC_PI_2 + 0.2 - x[0]) / 0.4))),
        };
        let south = LocalChart {
            name: "south".into(),
            contains: Arc::new(|x: &[f64]| x[0] > FRAC_PI_2 - 0.3),
            weight: Some(Arc::new(|x: &[f64]| 1.0 - smooth_step((FRAC_PI_2 + 0.2 - x[0]) / 0.4))),
        };
        let transition: TransitionFn = Arc::new(move |a: usize, b: usize, x: &[f64]| match (a, b) {
            (0, 1) => g_ns(x),
            (1, 0) => inverse(&g_ns(x)).expect("transition is invertible"),
            _ => CMat::identity(dim, dim),
        });
        let equator = Face { from: 0, to: 1, fixed: vec![(0, FRAC_PI_2)], ranges: vec![(1, 0.0, TAU)], orientation: 1.0 };
        Self::new(dim, 2, vec![north, south], transition).with_faces(vec![equator])
    }

    /// Sphere whose transition is `diag(e^{imψ}, 1, …, 1)`; its pairing is `−2πi m`.
    pub fn winding_sphere(m: i64, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidParameter("dimension must be positive".into()));
        }
        Ok(Self::two_chart_sphere(
            dim,
            Arc::new(move |x: &[f64]| {
                let mut g = CMat::identity(dim, dim);
                g[(0, 0)] = c64::from_polar(1.0, m as f64 * x[1]);
                g
            }),
        ))
    }

    pub fn contains(&self, chart: usize, x: &[f64]) -> bool {
        self.charts.get(chart).is_some_and(|c| (c.contains)(x))
    }

    pub fn transition_at(&self, a: usize, b: usize, x: &[f64]) -> Result<CMat> {
        for c in [a, b] {
            if !self.contains(c, x) {
                return Err(Error::FaceOutsideChart(c));
            }
        }
        if a == b {
            return Ok(CMat::identity(self.dim, self.dim));
        }
        Ok((self.transition)(a, b, x))
    }

    /// `∂_axis g_{ab}` by a fourth-order central difference.
    pub fn transition_derivative(&self, a: usize, b: usize, x: &[f64], axis: usize) -> CMat {
        if a == b {
            return CMat::zeros(self.dim, self.dim);
        }
        let h = self.fd_step;
        let at = |s: f64| {
            let mut y = x.to_vec();
            y[axis] += s * h;
            (self.transition)(a, b, &y)
        };
        let c = |w: f64| faer::Scale(c64::new(w / (12.0 * h), 0.0));
        c(1.0) * at(-2.0) + c(-8.0) * at(-1.0) + c(8.0) * at(1.0) + c(-1.0) * at(2.0)
    }

    /// Largest `|Σ_β ρ_β − 1|` over the sample points.
    pub fn partition_residual(&self, points: &[Vec<f64>]) -> Result<f64> {
        let mut worst = 0.0f64;
        for x in points {
            let mut s = 0.0;
            for c in &self.charts {
                let w = c.weight.as_ref().ok_or(Error::MissingPartition)?;
                if (c.contains)(x) {
                    s += w(x);
                } else if w(x) != 0.0 {
                    return Err(Error::InvalidParameter(format!("weight of {} is nonzero outside its chart", c.name)));
                }
            }
            worst = worst.max((s - 1.0).abs());
        }
        Ok(worst)
    }

    /// Largest `‖g_{αβ}g_{βγ} − g_{αγ}‖_max` over sample points in triple overlaps.
    pub fn cocycle_residual(&self, points: &[Vec<f64>]) -> Result<f64> {
        let k = self.charts.len();
        let mut worst = 0.0f64;
        for x in points {
            let inside: Vec<usize> = (0..k).filter(|&c| self.contains(c, x)).collect();
            for &a in &inside {
                for &b in &inside {
                    for &c in &inside {
                        let lhs = self.transition_at(a, b, x)? * self.transition_at(b, c, x)?;
                        worst = worst.max((lhs - self.transition_at(a, c, x)?).norm_max());
                    }
                }
            }
        }
        Ok(worst)
    }
}

/// `θ_α = −Σ_γ ρ_γ dg_{αγ} g_{αγ}⁻¹` at a point of chart `α`, one matrix per axis.
pub fn partition_connection_at(cc: &ChartComplex, alpha: usize, x: &[f64]) -> Result<Vec<CMat>> {
    if !cc.contains(alpha, x) {
        return Err(Error::FaceOutsideChart(alpha));
    }
    let mut out = vec![CMat::zeros(cc.dim, cc.dim); cc.num_axes];
    for (gamma, chart) in cc.charts.iter().enumerate() {
        let w = chart.weight.as_ref().ok_or(Error::MissingPartition)?;
        if gamma == alpha || !(chart.contains)(x) {
            continue;
        }
        let rho = w(x);
        if rho == 0.0 {
            continue;
        }
        let ginv = inverse(&cc.transition_at(alpha, gamma, x)?)?;
        for (axis, o) in out.iter_mut().enumerate() {
            *o -= faer::Scale(c64::new(rho, 0.0)) * (cc.transition_derivative(alpha, gamma, x, axis) * &ginv);
        }
    }
    Ok(out)
}

/// Partition connection of every chart sampled at the given points; `None`
/// where a point lies outside the chart.
pub fn partition_connection(cc: &ChartComplex, points: &[Vec<f64>]) -> Result<Vec<Vec<Option<Vec<CMat>>>>> {
    (0..cc.charts.len())
        .map(|a| {
            points
                .iter()
                .map(|x| if cc.contains(a, x) { partition_connection_at(cc, a, x).map(Some) } else { Ok(None) })
                .collect()
        })
        .collect()
}

/// Curvature `∂_iθ_j − ∂_jθ_i + [θ_i, θ_j]` of the partition connection on
/// chart `α`, for `i < j` in lexicographic order.
pub fn partition_curvature_at(cc: &ChartComplex, alpha: usize, x: &[f64]) -> Result<Vec<CMat>> {
    let th = partition_connection_at(cc, alpha, x)?;
    let grad = (0..cc.num_axes).map(|i| face_derivative(cc, alpha, x, i)).collect::<Result<Vec<_>>>()?;
    let mut out = Vec::new();
    for i in 0..cc.num_axes {
        for j in i + 1..cc.num_axes {
            out.push(&grad[i][j] - &grad[j][i] + &th[i] * &th[j] - &th[j] * &th[i]);
        }
    }
    Ok(out)
}

/// `∂_axis θ_α` (all components) by a fourth-order central difference.
fn face_derivative(cc: &ChartComplex, alpha: usize, x: &[f64], axis: usize) -> Result<Vec<CMat>> {
    let h = cc.fd_step;
    let at = |s: f64| {
        let mut y = x.to_vec();
        y[axis] += s * h;
        partition_connection_at(cc, alpha, &y)
    };
    let (m2, m1, p1, p2) = (at(-2.0)?, at(-1.0)?, at(1.0)?, at(2.0)?);
    let c = |w: f64| faer::Scale(c64::new(w / (12.0 * h), 0.0));
    Ok((0..cc.num_axes).map(|k| c(1.0) * &m2[k] + c(-8.0) * &m1[k] + c(8.0) * &p1[k] + c(-1.0) * &p2[k]).collect())
}

/// Top-degree Chern–Simons density of `θ_α` pulled back to a face.
fn face_density(cc: &ChartComplex, alpha: usize, face_axes: &[usize], x: &[f64], n: usize) -> Result<c64> {
    let th = partition_connection_at(cc, alpha, x)?;
    let a = PointForm::one_form(face_axes.iter().map(|&ax| th[ax].clone()).collect());
    let da = if n > 1 {
        let grad: Vec<Vec<CMat>> = face_axes
            .iter()
            .map(|&ax| face_derivative(cc, alpha, x, ax).map(|d| face_axes.iter().map(|&k| d[k].clone()).collect()))
            .collect::<Result<_>>()?;
        PointForm::exterior_of_gradient(&grad)
    } else {
        PointForm::zeros(face_axes.len(), 2, cc.dim)
    };
    let v = chern_simons_point(&a, &da, n, None)?;
    Ok(v.first().copied().unwrap_or(c64::new(0.0, 0.0)))
}

/// `Σ_faces ± ∫ (c^{2n−1}(θ_from) − c^{2n−1}(θ_to))` over the given faces.
pub fn cech_pairing(cc: &ChartComplex, faces: &[Face], n: usize) -> Result<c64> {
    if n == 0 {
        return Err(Error::InvalidParameter("Chern–Simons degree must be at least 1".into()));
    }
    let mut totals = Vec::with_capacity(faces.len());
    for face in faces {
        if face.ranges.len() != 2 * n - 1 {
            return Err(Error::InvalidParameter(format!(
                "face of dimension {} cannot carry a {}-form",
                face.ranges.len(),
                2 * n - 1
            )));
        }
        let rules = face
            .ranges
            .iter()
            .map(|&(_, lo, hi)| gauss_legendre(cc.quad_nodes, lo, hi))
            .collect::<Result<Vec<_>>>()?;
        let axes: Vec<usize> = face.ranges.iter().map(|r| r.0).collect();
        let count: usize = rules.iter().map(|r| r.len()).product();
        let terms = (0..count)
            .into_par_iter()
            .map(|mut idx| {
                let mut x = vec![0.0; cc.num_axes];
                for &(ax, v) in &face.fixed {
                    x[ax] = v;
                }
                let mut w = 1.0;
                for (k, rule) in rules.iter().enumerate().rev() {
                    let (node, weight) = rule[idx % rule.len()];
                    idx /= rule.len();
                    x[axes[k]] = node;
                    w *= weight;
                }
                let a = face_density(cc, face.from, &axes, &x, n)?;
                let b = face_density(cc, face.to, &axes, &x, n)?;
                Ok((a - b) * w)
            })
            .collect::<Result<Vec<_>>>()?;
        totals.push(pairwise_sum(&terms) * face.orientation);
    }
    Ok(pairwise_sum(&totals))
}

/// Grid of sample points covering the sphere's overlap band, for invariant checks.
pub fn sphere_overlap_samples(count: usize) -> Vec<Vec<f64>> {
    let mut out = Vec::with_capacity(count * count);
    for i in 0..count {
        let th = FRAC_PI_2 - 0.29 + 0.58 * (i as f64 + 0.5) / count as f64;
        for j in 0..count {
            out.push(vec![th, TAU * j as f64 / count as f64]);
        }
    }
    out
}

/// Midpoint samples of the sphere's parameter box.
pub fn sphere_samples(count: usize) -> Vec<Vec<f64>> {
    let mut out = Vec::with_capacity(count * count);
    for i in 0..count {
        for j in 0..count {
            out.push(vec![PI * (i as f64 + 0.5) / count as f64, TAU * j as f64 / count as f64]);
        }
    }
    out
}
