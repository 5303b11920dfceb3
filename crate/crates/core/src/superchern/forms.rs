//! Operator-valued forms in the double complex of `δ`-degree and base degree.
//!
//! Components are stored on strictly increasing axis tuples only. Products
//! carry the super sign `(−1)^{k₁ l₂}` from moving the `δ`-degree of the left
//! factor past the base one-forms of the right factor.

use std::sync::Arc;

use faer::c64;
use rayon::prelude::*;

use super::grid::BaseGrid;
use crate::error::{Error, Result};
use crate::opcore::{CMat, TruncOp, TruncationContext};

/// All strictly increasing `degree`-tuples of `0..n`, in lexicographic order.
pub fn increasing_tuples(n: usize, degree: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if degree <= n {
        rec(0, n, degree, &mut Vec::new(), &mut out);
    }
    out
}

/// Sorts a tuple, returning the sign of the sorting permutation, or `None`
/// if an axis repeats.
pub fn sort_with_sign(tuple: &[usize]) -> Option<(Vec<usize>, f64)> {
    let mut t = tuple.to_vec();
    let mut sign = 1.0;
    for i in 0..t.len() {
        for j in 0..t.len() - 1 - i {
            if t[j] == t[j + 1] {
                return None;
            }
            if t[j] > t[j + 1] {
                t.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    if t.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((t, sign))
}

fn tuple_position(tuples: &[Vec<usize>], t: &[usize]) -> Option<usize> {
    tuples.iter().position(|u| u == t)
}

/// Matrix-valued form at a single point.
#[derive(Clone, Debug)]
pub struct PointForm {
    pub num_axes: usize,
    pub degree: usize,
    pub comps: Vec<CMat>,
}

impl PointForm {
    pub fn zeros(num_axes: usize, degree: usize, dim: usize) -> Self {
        let n = increasing_tuples(num_axes, degree).len();
        Self { num_axes, degree, comps: vec![CMat::zeros(dim, dim); n] }
    }

    pub fn scalar(num_axes: usize, m: CMat) -> Self {
        Self { num_axes, degree: 0, comps: vec![m] }
    }

    /// One-form from its components along each axis.
    pub fn one_form(comps: Vec<CMat>) -> Self {
        Self { num_axes: comps.len(), degree: 1, comps }
    }

    /// Two-form `Σ_{i<j} (∂_iA_j − ∂_jA_i) dx^i dx^j` from `grad[i][j] = ∂_iA_j`.
    pub fn exterior_of_gradient(grad: &[Vec<CMat>]) -> Self {
        let n = grad.len();
        let comps = increasing_tuples(n, 2).iter().map(|t| &grad[t[0]][t[1]] - &grad[t[1]][t[0]]).collect();
        Self { num_axes: n, degree: 2, comps }
    }

    pub fn dim(&self) -> usize {
        self.comps.first().map_or(0, |m| m.nrows())
    }

    pub fn scale(&self, c: c64) -> Self {
        Self { comps: self.comps.iter().map(|m| faer::Scale(c) * m).collect(), ..self.clone() }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree);
        Self { comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a + b).collect(), ..self.clone() }
    }

    /// `a ∧ b` with the extra sign `sign` applied to every term.
    pub fn wedge(&self, other: &Self, sign: f64) -> Self {
        let n = self.num_axes;
        let deg = self.degree + other.degree;
        let dim = self.dim().max(other.dim());
        let mut out = Self::zeros(n, deg, dim);
        if deg > n {
            return out;
        }
        let target = increasing_tuples(n, deg);
        let left = increasing_tuples(n, self.degree);
        let right = increasing_tuples(n, other.degree);
        for (i, ti) in left.iter().enumerate() {
            for (k, tk) in right.iter().enumerate() {
                let joined: Vec<usize> = ti.iter().chain(tk).copied().collect();
                if let Some((sorted, s)) = sort_with_sign(&joined) {
                    let pos = tuple_position(&target, &sorted).expect("sorted tuple exists");
                    out.comps[pos] += faer::Scale(c64::new(s * sign, 0.0)) * (&self.comps[i] * &other.comps[k]);
                }
            }
        }
        out
    }

    pub fn trace(&self, indices: Option<&[usize]>) -> Vec<c64> {
        self.comps
            .iter()
            .map(|m| match indices {
                Some(idx) => idx.iter().map(|&i| m[(i, i)]).sum(),
                None => (0..m.nrows()).map(|i| m[(i, i)]).sum(),
            })
            .collect()
    }
}

/// Operator-valued form of bidegree `(k, l)` sampled on a chart grid.
#[derive(Clone, Debug)]
pub struct BigradedForm {
    grid: Arc<BaseGrid>,
    ctx: TruncationContext,
    delta_degree: usize,
    base_degree: usize,
    chart: usize,
    tuples: Vec<Vec<usize>>,
    coeffs: Vec<TruncOp>,
}

impl BigradedForm {
    pub fn zeros(grid: Arc<BaseGrid>, ctx: TruncationContext, delta_degree: usize, base_degree: usize, chart: usize) -> Self {
        let tuples = increasing_tuples(grid.num_axes(), base_degree);
        let coeffs = vec![TruncOp::zeros(ctx); grid.num_points() * tuples.len()];
        Self { grid, ctx, delta_degree, base_degree, chart, tuples, coeffs }
    }

    /// Builds a form from `f(point, tuple)` on increasing tuples.
    pub fn from_fn(
        grid: Arc<BaseGrid>,
        ctx: TruncationContext,
        delta_degree: usize,
        base_degree: usize,
        chart: usize,
        f: impl Fn(usize, &[usize]) -> CMat + Sync,
    ) -> Result<Self> {
        let tuples = increasing_tuples(grid.num_axes(), base_degree);
        let nt = tuples.len();
        let coeffs = (0..grid.num_points() * nt)
            .into_par_iter()
            .map(|i| TruncOp::new(ctx, f(i / nt, &tuples[i % nt])))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { grid, ctx, delta_degree, base_degree, chart, tuples, coeffs })
    }

    fn from_point_forms(&self, delta_degree: usize, forms: Vec<PointForm>) -> Result<Self> {
        let base_degree = forms.first().map_or(self.base_degree, |f| f.degree);
        let tuples = increasing_tuples(self.grid.num_axes(), base_degree);
        let coeffs = forms
            .into_iter()
            .flat_map(|f| f.comps.into_iter())
            .map(|m| TruncOp::new(self.ctx, m))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { grid: self.grid.clone(), ctx: self.ctx, delta_degree, base_degree, chart: self.chart, tuples, coeffs })
    }

    pub fn grid(&self) -> &Arc<BaseGrid> {
        &self.grid
    }

    pub fn ctx(&self) -> &TruncationContext {
        &self.ctx
    }

    pub fn delta_degree(&self) -> usize {
        self.delta_degree
    }

    pub fn base_degree(&self) -> usize {
        self.base_degree
    }

    pub fn chart(&self) -> usize {
        self.chart
    }

    pub fn tuples(&self) -> &[Vec<usize>] {
        &self.tuples
    }

    /// Component on an arbitrary tuple, with the antisymmetry sign applied.
    pub fn get(&self, point: usize, tuple: &[usize]) -> TruncOp {
        match sort_with_sign(tuple) {
            Some((sorted, s)) => match tuple_position(&self.tuples, &sorted) {
                Some(t) => self.coeffs[point * self.tuples.len() + t].scale_real(s),
                None => TruncOp::zeros(self.ctx),
            },
            None => TruncOp::zeros(self.ctx),
        }
    }

    pub fn component(&self, point: usize, tuple_index: usize) -> &TruncOp {
        &self.coeffs[point * self.tuples.len() + tuple_index]
    }

    pub fn point_form(&self, point: usize) -> PointForm {
        let nt = self.tuples.len();
        PointForm {
            num_axes: self.grid.num_axes(),
            degree: self.base_degree,
            comps: self.coeffs[point * nt..(point + 1) * nt].iter().map(|t| t.mat().clone()).collect(),
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.ctx != other.ctx || self.grid != other.grid {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        if (self.delta_degree, self.base_degree) != (other.delta_degree, other.base_degree) {
            return Err(Error::InvalidParameter("adding forms of different bidegree".into()));
        }
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.try_add(b)).collect::<Result<Vec<_>>>()?;
        Ok(Self { coeffs, ..self.clone() })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.scale(c64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, c: c64) -> Self {
        Self { coeffs: self.coeffs.iter().map(|t| t.scale(c)).collect(), ..self.clone() }
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|t| t.max_abs()).fold(0.0, f64::max)
    }

    /// Exterior derivative along the base, `(dΦ)_J = Σ_r (−1)^r ∂_{j_r} Φ_{J∖j_r}`.
    pub fn exterior_derivative(&self) -> Result<Self> {
        let n = self.grid.num_axes();
        let np = self.grid.num_points();
        let nt = self.tuples.len();
        let mut partials: Vec<Vec<Vec<CMat>>> = Vec::with_capacity(nt);
        for t in 0..nt {
            let field: Vec<CMat> = (0..np).map(|p| self.coeffs[p * nt + t].mat().clone()).collect();
            partials.push((0..n).map(|ax| self.grid.derivative(&field, ax)).collect::<Result<Vec<_>>>()?);
        }
        let out_tuples = increasing_tuples(n, self.base_degree + 1);
        let dim = self.ctx.dim();
        let mut forms = Vec::with_capacity(np);
        for p in 0..np {
            let comps = out_tuples
                .iter()
                .map(|j| {
                    let mut acc = CMat::zeros(dim, dim);
                    for r in 0..j.len() {
                        let rest: Vec<usize> = j.iter().enumerate().filter(|&(q, _)| q != r).map(|(_, &a)| a).collect();
                        let t = tuple_position(&self.tuples, &rest).expect("increasing");
                        let s = if r % 2 == 0 { 1.0 } else { -1.0 };
                        acc += faer::Scale(c64::new(s, 0.0)) * &partials[t][j[r]][p];
                    }
                    acc
                })
                .collect();
            forms.push(PointForm { num_axes: n, degree: self.base_degree + 1, comps });
        }
        self.from_point_forms(self.delta_degree, forms)
    }

    /// Super-signed product, bidegree `(k₁+k₂, l₁+l₂)`.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let sign = if (self.delta_degree * other.base_degree) % 2 == 0 { 1.0 } else { -1.0 };
        let forms: Vec<PointForm> = (0..self.grid.num_points())
            .into_par_iter()
            .map(|p| self.point_form(p).wedge(&other.point_form(p), sign))
            .collect();
        let mut out = self.from_point_forms(self.delta_degree + other.delta_degree, forms)?;
        out.base_degree = self.base_degree + other.base_degree;
        out.tuples = increasing_tuples(self.grid.num_axes(), out.base_degree);
        Ok(out)
    }

    /// Component-wise trace, over an interior window if given.
    pub fn trace(&self, window: Option<usize>) -> Result<ScalarForm> {
        let idx = window.map(|w| self.ctx.window_basis(w)).transpose()?;
        let coeffs = self
            .coeffs
            .iter()
            .map(|t| match &idx {
                Some(idx) => idx.iter().map(|&i| t.get(i, i)).sum(),
                None => t.trace(),
            })
            .collect();
        Ok(ScalarForm { grid: self.grid.clone(), degree: self.base_degree, coeffs })
    }
}

/// `δΦ`: `εΦ + Φε` for odd `k`, `[ε, Φ]` for even `k`, times `(−1)^l`.
pub fn delta_apply(phi: &BigradedForm, eps: &TruncOp) -> Result<BigradedForm> {
    if eps.ctx() != phi.ctx() {
        return Err(Error::ContextMismatch);
    }
    let sign = if phi.base_degree % 2 == 0 { 1.0 } else { -1.0 };
    let odd = phi.delta_degree % 2 == 1;
    let coeffs = phi
        .coeffs
        .par_iter()
        .map(|x| {
            let v = if odd { eps.anticommutator(x)? } else { eps.commutator(x)? };
            Ok(v.scale_real(sign))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BigradedForm { delta_degree: phi.delta_degree + 1, coeffs, ..phi.clone() })
}

/// Scalar-valued form on a grid, e.g. the trace of an operator form.
#[derive(Clone, Debug)]
pub struct ScalarForm {
    pub grid: Arc<BaseGrid>,
    pub degree: usize,
    pub coeffs: Vec<c64>,
}

impl ScalarForm {
    pub fn tuples(&self) -> Vec<Vec<usize>> {
        increasing_tuples(self.grid.num_axes(), self.degree)
    }

    pub fn get(&self, point: usize, tuple_index: usize) -> c64 {
        let nt = self.tuples().len();
        self.coeffs[point * nt + tuple_index]
    }

    pub fn exterior_derivative(&self) -> Result<Self> {
        let n = self.grid.num_axes();
        let np = self.grid.num_points();
        let tuples = self.tuples();
        let nt = tuples.len();
        let mut partials = Vec::with_capacity(nt);
        for t in 0..nt {
            let field: Vec<CMat> = (0..np).map(|p| CMat::from_fn(1, 1, |_, _| self.coeffs[p * nt + t])).collect();
            partials.push((0..n).map(|ax| self.grid.derivative(&field, ax)).collect::<Result<Vec<_>>>()?);
        }
        let out = increasing_tuples(n, self.degree + 1);
        let mut coeffs = Vec::with_capacity(np * out.len());
        for p in 0..np {
            for j in &out {
                let mut acc = c64::new(0.0, 0.0);
                for r in 0..j.len() {
                    let rest: Vec<usize> = j.iter().enumerate().filter(|&(q, _)| q != r).map(|(_, &a)| a).collect();
                    let t = tuple_position(&tuples, &rest).expect("increasing");
                    let s = if r % 2 == 0 { 1.0 } else { -1.0 };
                    acc += partials[t][j[r]][p][(0, 0)] * s;
                }
                coeffs.push(acc);
            }
        }
        Ok(Self { grid: self.grid.clone(), degree: self.degree + 1, coeffs })
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{random_matrix, rng};
    use crate::opcore::make_polarization;
    use crate::superchern::grid::Axis;
    use std::f64::consts::TAU;

    #[test]
    fn tuples_and_signs() {
        assert_eq!(increasing_tuples(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(sort_with_sign(&[2, 0, 1]), Some((vec![0, 1, 2], 1.0)));
        assert_eq!(sort_with_sign(&[1, 0]), Some((vec![0, 1], -1.0)));
        assert_eq!(sort_with_sign(&[1, 1]), None);
    }

    #[test]
    fn delta_squares_to_zero() {
        let ctx = TruncationContext::half_integer(3, 1).unwrap();
        let grid = BaseGrid::shared(vec![Axis::periodic(0.0, TAU, 4).unwrap(), Axis::periodic(0.0, TAU, 4).unwrap()]);
        let eps = make_polarization(&ctx);
        for k in 0..2 {
            let mut r = rng(k as u64);
            let mats: Vec<CMat> = (0..16 * 2).map(|_| random_matrix(6, &mut r)).collect();
            let phi = BigradedForm::from_fn(grid.clone(), ctx, k, 1, 0, |p, t| mats[p * 2 + t[0]].clone()).unwrap();
            let dd = delta_apply(&delta_apply(&phi, &eps).unwrap(), &eps).unwrap();
            assert!(dd.max_abs() < 1e-12);
        }
    }

    #[test]
    fn antisymmetric_lookup() {
        let ctx = TruncationContext::half_integer(1, 1).unwrap();
        let grid = BaseGrid::shared(vec![Axis::periodic(0.0, 1.0, 2).unwrap(), Axis::periodic(0.0, 1.0, 2).unwrap()]);
        let f = BigradedForm::from_fn(grid, ctx, 0, 2, 0, |p, _| faer::Scale(c64::new(p as f64, 0.0)) * CMat::identity(2, 2)).unwrap();
        assert_eq!(f.get(3, &[1, 0]).get(0, 0), c64::new(-3.0, 0.0));
        assert_eq!(f.get(3, &[1, 1]).max_abs(), 0.0);
    }
}
