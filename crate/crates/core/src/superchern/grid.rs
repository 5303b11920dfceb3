//! Tensor-product coordinate grids on chart boxes, with spectral
//! derivatives on periodic axes and fourth-order differences on intervals.

use std::f64::consts::TAU;
use std::sync::Arc;

use faer::c64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::opcore::CMat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum AxisKind {
    /// Uniform samples on `[lo, hi)`, identified at the ends.
    Periodic,
    /// Uniform samples on `[lo, hi]`, endpoints included.
    Interval,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub kind: AxisKind,
    pub lo: f64,
    pub hi: f64,
    pub points: usize,
}

impl Axis {
    pub fn periodic(lo: f64, hi: f64, points: usize) -> Result<Self> {
        Self::new(AxisKind::Periodic, lo, hi, points)
    }

    pub fn interval(lo: f64, hi: f64, points: usize) -> Result<Self> {
        Self::new(AxisKind::Interval, lo, hi, points)
    }

    pub fn new(kind: AxisKind, lo: f64, hi: f64, points: usize) -> Result<Self> {
        let min = match kind {
            AxisKind::Periodic => 2,
            AxisKind::Interval => 5,
        };
        if points < min || !(hi > lo) || !lo.is_finite() || !hi.is_finite() {
            return Err(Error::InvalidParameter(format!("bad axis [{lo}, {hi}] with {points} points")));
        }
        Ok(Self { kind, lo, hi, points })
    }

    pub fn step(&self) -> f64 {
        match self.kind {
            AxisKind::Periodic => (self.hi - self.lo) / self.points as f64,
            AxisKind::Interval => (self.hi - self.lo) / (self.points - 1) as f64,
        }
    }

    pub fn coord(&self, j: usize) -> f64 {
        self.lo + self.step() * j as f64
    }
}

/// Row-major tensor grid; the last axis varies fastest.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BaseGrid {
    axes: Vec<Axis>,
}

impl BaseGrid {
    pub fn new(axes: Vec<Axis>) -> Self {
        Self { axes }
    }

    pub fn shared(axes: Vec<Axis>) -> Arc<Self> {
        Arc::new(Self::new(axes))
    }

    pub fn axes(&self) -> &[Axis] {
        &self.axes
    }

    pub fn num_axes(&self) -> usize {
        self.axes.len()
    }

    pub fn num_points(&self) -> usize {
        self.axes.iter().map(|a| a.points).product()
    }

    fn stride(&self, axis: usize) -> usize {
        self.axes[axis + 1..].iter().map(|a| a.points).product()
    }

    pub fn multi_index(&self, point: usize) -> Vec<usize> {
        let mut out = vec![0; self.axes.len()];
        let mut rest = point;
        for (k, a) in self.axes.iter().enumerate().rev() {
            out[k] = rest % a.points;
            rest /= a.points;
        }
        out
    }

    pub fn point_index(&self, multi: &[usize]) -> usize {
        multi.iter().zip(&self.axes).fold(0, |acc, (&j, a)| acc * a.points + j)
    }

    pub fn coords(&self, point: usize) -> Vec<f64> {
        self.multi_index(point).iter().zip(&self.axes).map(|(&j, a)| a.coord(j)).collect()
    }

    /// `∂/∂x_axis` of a matrix field sampled at every grid point.
    pub fn derivative(&self, field: &[CMat], axis: usize) -> Result<Vec<CMat>> {
        if field.len() != self.num_points() {
            return Err(Error::Shape(format!("field has {} samples, grid {}", field.len(), self.num_points())));
        }
        if axis >= self.axes.len() {
            return Err(Error::InvalidParameter(format!("axis {axis} out of range")));
        }
        let ax = self.axes[axis];
        let stride = self.stride(axis);
        let n = ax.points;
        let mut out = vec![CMat::zeros(0, 0); field.len()];
        let lines: Vec<usize> = (0..field.len()).filter(|p| (p / stride) % n == 0).collect();
        let (rows, cols) = (field[0].nrows(), field[0].ncols());
        let fft = match ax.kind {
            AxisKind::Periodic => {
                let mut planner = FftPlanner::<f64>::new();
                Some((planner.plan_fft_forward(n), planner.plan_fft_inverse(n)))
            }
            AxisKind::Interval => None,
        };
        for start in lines {
            let idx: Vec<usize> = (0..n).map(|j| start + j * stride).collect();
            let line: Vec<&CMat> = idx.iter().map(|&p| &field[p]).collect();
            let d = match &fft {
                Some((fwd, inv)) => spectral_line(&line, rows, cols, ax.hi - ax.lo, fwd.as_ref(), inv.as_ref()),
                None => fd4_line(&line, ax.step()),
            };
            for (p, m) in idx.into_iter().zip(d) {
                out[p] = m;
            }
        }
        Ok(out)
    }
}

fn spectral_line(
    line: &[&CMat],
    rows: usize,
    cols: usize,
    length: f64,
    fwd: &dyn rustfft::Fft<f64>,
    inv: &dyn rustfft::Fft<f64>,
) -> Vec<CMat> {
    let n = line.len();
    let mut out = vec![CMat::zeros(rows, cols); n];
    let mut buf = vec![c64::new(0.0, 0.0); n];
    let scale = TAU / length;
    for r in 0..rows {
        for c in 0..cols {
            for (j, m) in line.iter().enumerate() {
                buf[j] = m[(r, c)];
            }
            fwd.process(&mut buf);
            for (j, v) in buf.iter_mut().enumerate() {
                let k = if j <= n / 2 { j as f64 } else { j as f64 - n as f64 };
                *v = if n % 2 == 0 && j == n / 2 { c64::new(0.0, 0.0) } else { *v * c64::new(0.0, k * scale) };
            }
            inv.process(&mut buf);
            for (j, v) in buf.iter().enumerate() {
                out[j][(r, c)] = *v / n as f64;
            }
        }
    }
    out
}

fn combo(terms: &[(f64, &CMat)], h: f64) -> CMat {
    let mut acc = CMat::zeros(terms[0].1.nrows(), terms[0].1.ncols());
    for (w, m) in terms {
        acc += faer::Scale(c64::new(*w / (12.0 * h), 0.0)) * *m;
    }
    acc
}

fn fd4_line(f: &[&CMat], h: f64) -> Vec<CMat> {
    let n = f.len();
    (0..n)
        .map(|i| {
            if i >= 2 && i + 2 < n {
                combo(&[(1.0, f[i - 2]), (-8.0, f[i - 1]), (8.0, f[i + 1]), (-1.0, f[i + 2])], h)
            } else if i == 0 {
                combo(&[(-25.0, f[0]), (48.0, f[1]), (-36.0, f[2]), (16.0, f[3]), (-3.0, f[4])], h)
            } else if i == 1 {
                combo(&[(-3.0, f[0]), (-10.0, f[1]), (18.0, f[2]), (-6.0, f[3]), (1.0, f[4])], h)
            } else if i == n - 1 {
                combo(&[(25.0, f[n - 1]), (-48.0, f[n - 2]), (36.0, f[n - 3]), (-16.0, f[n - 4]), (3.0, f[n - 5])], h)
            } else {
                combo(&[(3.0, f[n - 1]), (10.0, f[n - 2]), (-18.0, f[n - 3]), (6.0, f[n - 4]), (-1.0, f[n - 5])], h)
            }
        })
        .collect()
}

/// Gauss–Legendre nodes and weights on `[a, b]`.
pub fn gauss_legendre(nodes: usize, a: f64, b: f64) -> Result<Vec<(f64, f64)>> {
    let deg = std::num::NonZeroUsize::new(nodes)
        .ok_or_else(|| Error::InvalidParameter("quadrature needs at least one node".into()))?;
    let rule = gauss_quad::GaussLegendre::new(deg);
    let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
    Ok(rule.as_node_weight_pairs().iter().map(|&(x, w)| (mid + half * x, half * w)).collect())
}

/// Pairwise summation; the association order depends only on the length.
pub fn pairwise_sum(v: &[c64]) -> c64 {
    if v.len() <= 8 {
        v.iter().fold(c64::new(0.0, 0.0), |a, b| a + b)
    } else {
        let (l, r) = v.split_at(v.len() / 2);
        pairwise_sum(l) + pairwise_sum(r)
    }
}
