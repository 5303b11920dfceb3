use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use faer::{c64, Mat, Side};

use super::context::TruncationContext;
use crate::error::{Error, Result};

/// Tolerance used to certify the cached structural flags.
pub const FLAG_TOL: f64 = 1e-10;

pub type CMat = Mat<c64>;

/// A dense operator on a truncated Hilbert space.
#[derive(Clone, Debug)]
pub struct TruncOp {
    ctx: TruncationContext,
    mat: CMat,
    hermitian: OnceLock<bool>,
    antihermitian: OnceLock<bool>,
    unitary: OnceLock<bool>,
}

/// Largest singular value of a dense matrix.
pub fn op_norm_of(m: &CMat) -> f64 {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0.0;
    }
    let f = m.norm_l2();
    if f == 0.0 {
        return 0.0;
    }
    match m.singular_values() {
        Ok(s) => s[0],
        Err(_) => f,
    }
}

/// Operator-norm residual, short-circuited when the Frobenius bound already
/// certifies it below `tol`.
fn certify(m: &CMat, tol: f64) -> bool {
    let f = m.norm_l2();
    if !f.is_finite() {
        return false;
    }
    f <= tol || op_norm_of(m) <= tol
}

impl TruncOp {
    pub fn new(ctx: TruncationContext, mat: CMat) -> Result<Self> {
        let n = ctx.dim();
        if mat.nrows() != n || mat.ncols() != n {
            return Err(Error::Shape(format!(
                "expected {n}x{n}, got {}x{}",
                mat.nrows(),
                mat.ncols()
            )));
        }
        Ok(Self::from_parts(ctx, mat))
    }

    fn from_parts(ctx: TruncationContext, mat: CMat) -> Self {
        Self {
            ctx,
            mat,
            hermitian: OnceLock::new(),
            antihermitian: OnceLock::new(),
            unitary: OnceLock::new(),
        }
    }

    pub fn zeros(ctx: TruncationContext) -> Self {
        let n = ctx.dim();
        Self::from_parts(ctx, CMat::zeros(n, n))
    }

    pub fn identity(ctx: TruncationContext) -> Self {
        let n = ctx.dim();
        Self::from_parts(ctx, CMat::identity(n, n))
    }

    pub fn from_fn(ctx: TruncationContext, f: impl FnMut(usize, usize) -> c64) -> Self {
        let n = ctx.dim();
        Self::from_parts(ctx, CMat::from_fn(n, n, f))
    }

    /// Diagonal operator with entries `f(basis index)`.
    pub fn diagonal(ctx: TruncationContext, mut f: impl FnMut(usize) -> c64) -> Self {
        let n = ctx.dim();
        let mut m = CMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = f(i);
        }
        Self::from_parts(ctx, m)
    }

    pub fn ctx(&self) -> &TruncationContext {
        &self.ctx
    }

    pub fn mat(&self) -> &CMat {
        &self.mat
    }

    pub fn into_mat(self) -> CMat {
        self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn get(&self, i: usize, j: usize) -> c64 {
        self.mat[(i, j)]
    }

    fn same_ctx(&self, other: &Self) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    pub fn with_mat(&self, mat: CMat) -> Self {
        assert_eq!(mat.nrows(), self.dim());
        Self::from_parts(self.ctx, mat)
    }

    pub fn adjoint(&self) -> Self {
        self.with_mat(self.mat.adjoint().to_owned())
    }

    pub fn scale(&self, c: c64) -> Self {
        self.with_mat(faer::Scale(c) * &self.mat)
    }

    pub fn scale_real(&self, c: f64) -> Self {
        self.scale(c64::new(c, 0.0))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_ctx(other)?;
        Ok(self.with_mat(&self.mat + &other.mat))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.same_ctx(other)?;
        Ok(self.with_mat(&self.mat - &other.mat))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.same_ctx(other)?;
        Ok(self.with_mat(&self.mat * &other.mat))
    }

    /// `[self, other]`
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.same_ctx(other)?;
        Ok(self.with_mat(&self.mat * &other.mat - &other.mat * &self.mat))
    }

    /// `self·other + other·self`
    pub fn anticommutator(&self, other: &Self) -> Result<Self> {
        self.same_ctx(other)?;
        Ok(self.with_mat(&self.mat * &other.mat + &other.mat * &self.mat))
    }

    /// Trace, summed along the basis order.
    pub fn trace(&self) -> c64 {
        let mut s = c64::new(0.0, 0.0);
        for i in 0..self.dim() {
            s += self.mat[(i, i)];
        }
        s
    }

    /// Trace restricted to the interior mode window.
    pub fn trace_window(&self, window: usize) -> Result<c64> {
        let mut s = c64::new(0.0, 0.0);
        for i in self.ctx.window_basis(window)? {
            s += self.mat[(i, i)];
        }
        Ok(s)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.mat.norm_l2()
    }

    pub fn max_abs(&self) -> f64 {
        self.mat.norm_max()
    }

    pub fn op_norm(&self) -> f64 {
        op_norm_of(&self.mat)
    }

    pub fn is_finite(&self) -> bool {
        let n = self.dim();
        (0..n).all(|j| (0..n).all(|i| {
            let z = self.mat[(i, j)];
            z.re.is_finite() && z.im.is_finite()
        }))
    }

    pub fn hermitian_residual(&self) -> f64 {
        op_norm_of(&(&self.mat - self.mat.adjoint()))
    }

    pub fn antihermitian_residual(&self) -> f64 {
        op_norm_of(&(&self.mat + self.mat.adjoint()))
    }

    pub fn unitary_residual(&self) -> f64 {
        let n = self.dim();
        op_norm_of(&(self.mat.adjoint() * &self.mat - CMat::identity(n, n)))
    }

    pub fn is_hermitian(&self) -> bool {
        *self
            .hermitian
            .get_or_init(|| certify(&(&self.mat - self.mat.adjoint()), FLAG_TOL))
    }

    pub fn is_antihermitian(&self) -> bool {
        *self
            .antihermitian
            .get_or_init(|| certify(&(&self.mat + self.mat.adjoint()), FLAG_TOL))
    }

    pub fn is_unitary(&self) -> bool {
        *self.unitary.get_or_init(|| {
            let n = self.dim();
            certify(&(self.mat.adjoint() * &self.mat - CMat::identity(n, n)), FLAG_TOL)
        })
    }

    pub fn is_diagonal(&self) -> bool {
        let n = self.dim();
        (0..n).all(|j| (0..n).all(|i| i == j || self.mat[(i, j)] == c64::new(0.0, 0.0)))
    }

    /// Singular values, nonincreasing.
    pub fn singular_values(&self) -> Result<Vec<f64>> {
        self.mat
            .singular_values()
            .map_err(|e| Error::Linalg(format!("{e:?}")))
    }

    /// Eigenvalues (nondecreasing) of a hermitian operator.
    pub fn hermitian_eigenvalues(&self) -> Result<Vec<f64>> {
        self.require_hermitian()?;
        if self.is_diagonal() {
            let mut v: Vec<f64> = (0..self.dim()).map(|i| self.mat[(i, i)].re).collect();
            v.sort_by(|a, b| a.total_cmp(b));
            return Ok(v);
        }
        self.mat
            .self_adjoint_eigenvalues(Side::Lower)
            .map_err(|e| Error::Linalg(format!("{e:?}")))
    }

    fn require_hermitian(&self) -> Result<()> {
        if !self.is_hermitian() {
            return Err(Error::NotHermitian(self.hermitian_residual()));
        }
        Ok(())
    }

    /// Applies a real function to a hermitian operator by spectral calculus.
    pub fn spectral_map(&self, f: impl Fn(f64) -> f64) -> Result<Self> {
        self.require_hermitian()?;
        if self.is_diagonal() {
            return Ok(Self::diagonal(self.ctx, |i| {
                c64::new(f(self.mat[(i, i)].re), 0.0)
            }));
        }
        let eig = self
            .mat
            .self_adjoint_eigen(Side::Lower)
            .map_err(|e| Error::Linalg(format!("{e:?}")))?;
        let u = eig.U();
        let s = eig.S().column_vector();
        let n = self.dim();
        let scaled = CMat::from_fn(n, n, |i, j| u[(i, j)] * f(s[j].re));
        Ok(self.with_mat(&scaled * u.adjoint()))
    }

    /// Inverse via LU; errors when the result is not finite.
    pub fn inverse(&self) -> Result<Self> {
        use faer::linalg::solvers::DenseSolveCore;
        let inv = self.mat.partial_piv_lu().inverse();
        let out = self.with_mat(inv);
        if !out.is_finite() {
            return Err(Error::Singular);
        }
        Ok(out)
    }

    /// Dense sub-block with the given row and column basis indices.
    pub fn block(&self, rows: &[usize], cols: &[usize]) -> CMat {
        CMat::from_fn(rows.len(), cols.len(), |i, j| self.mat[(rows[i], cols[j])])
    }

    /// Largest Fourier-mode distance `|m − n|` carried by an entry above
    /// `rel_tol · max|entry|`.
    pub fn band(&self, rel_tol: f64) -> usize {
        let cut = rel_tol * self.max_abs();
        let n = self.dim();
        let mut band = 0usize;
        for j in 0..n {
            for i in 0..n {
                if self.mat[(i, j)].norm() > cut {
                    let (mi, mj) = (self.ctx.mode_of(i), self.ctx.mode_of(j));
                    band = band.max(mi.abs_diff(mj));
                }
            }
        }
        band
    }
}

impl PartialEq for TruncOp {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.mat == other.mat
    }
}

macro_rules! binop {
    ($tr:ident, $f:ident, $m:ident) => {
        impl $tr<&TruncOp> for &TruncOp {
            type Output = TruncOp;
            /// Panics on mismatched contexts; use the `try_` form to recover.
            fn $f(self, rhs: &TruncOp) -> TruncOp {
                self.$m(rhs).expect("operators on different truncation contexts")
            }
        }
    };
}
binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &TruncOp {
    type Output = TruncOp;
    fn neg(self) -> TruncOp {
        self.scale_real(-1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> TruncationContext {
        TruncationContext::integer(2, 1).unwrap()
    }

    #[test]
    fn mixed_contexts_rejected() {
        let a = TruncOp::identity(ctx());
        let b = TruncOp::identity(ctx());
        assert!(a.try_mul(&b).is_ok());
        let c = TruncOp::identity(TruncationContext::half_integer(2, 1).unwrap());
        assert!(matches!(a.try_mul(&c), Err(Error::ContextMismatch)));
    }

    #[test]
    fn flags_are_certified() {
        let h = TruncOp::from_fn(ctx(), |i, j| c64::new((i + j) as f64, i as f64 - j as f64));
        assert!(h.is_hermitian());
        assert!(!h.is_antihermitian());
        assert!(h.scale(c64::new(0.0, 1.0)).is_antihermitian());
        assert!(TruncOp::identity(ctx()).is_unitary());
    }

    #[test]
    fn spectral_map_matches_eigen() {
        let h = TruncOp::from_fn(ctx(), |i, j| c64::new((i + j) as f64, i as f64 - j as f64));
        let sq = h.spectral_map(|x| x * x).unwrap();
        let direct = &h * &h;
        assert!((&sq - &direct).max_abs() < 1e-10);
        assert!(TruncOp::from_fn(ctx(), |i, j| c64::new(i as f64, j as f64))
            .spectral_map(|x| x)
            .is_err());
    }

    #[test]
    fn band_detection() {
        let c = TruncationContext::integer(4, 2).unwrap();
        let op = TruncOp::from_fn(c, |i, j| {
            if c.mode_of(i).abs_diff(c.mode_of(j)) <= 2 { c64::new(1.0, 0.0) } else { c64::new(0.0, 0.0) }
        });
        assert_eq!(op.band(1e-14), 2);
    }
}
