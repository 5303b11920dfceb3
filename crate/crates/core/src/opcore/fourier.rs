//! Matrix-valued functions on the circle: grid samples, Fourier symbols and
//! their multiplication operators.

use std::f64::consts::PI;

use faer::c64;
use rustfft::FftPlanner;

use super::context::TruncationContext;
use super::op::{CMat, TruncOp};
use crate::error::{Error, Result};

/// Relative size below which a Fourier coefficient counts as zero.
pub const TRIM_TOL: f64 = 1e-13;

fn zero() -> c64 {
    c64::new(0.0, 0.0)
}

/// Fourier data `f(φ) = Σ_{|k| ≤ band} f̂(k) e^{ikφ}` with `d × d` coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixSymbol {
    dim: usize,
    band: usize,
    /// Coefficients for `k = −band..=band`.
    coeffs: Vec<CMat>,
}

impl MatrixSymbol {
    pub fn new(dim: usize, band: usize, coeffs: Vec<CMat>) -> Result<Self> {
        if coeffs.len() != 2 * band + 1 {
            return Err(Error::Shape("symbol needs 2·band+1 coefficients".into()));
        }
        if coeffs.iter().any(|c| c.nrows() != dim || c.ncols() != dim) {
            return Err(Error::Shape("coefficient blocks must be d×d".into()));
        }
        Ok(Self { dim, band, coeffs })
    }

    pub fn zero(dim: usize) -> Self {
        Self { dim, band: 0, coeffs: vec![CMat::zeros(dim, dim)] }
    }

    pub fn constant(m: CMat) -> Self {
        Self { dim: m.nrows(), band: 0, coeffs: vec![m] }
    }

    /// `m · e^{ikφ}`.
    pub fn monomial(k: i64, m: CMat) -> Self {
        let dim = m.nrows();
        let band = k.unsigned_abs() as usize;
        let mut coeffs = vec![CMat::zeros(dim, dim); 2 * band + 1];
        coeffs[(k + band as i64) as usize] = m;
        Self { dim, band, coeffs }
    }

    /// Scalar symbol from coefficients indexed `−band..=band`.
    pub fn scalar(coeffs: &[c64]) -> Result<Self> {
        if coeffs.len() % 2 == 0 {
            return Err(Error::Shape("scalar symbol needs an odd coefficient count".into()));
        }
        let band = coeffs.len() / 2;
        Ok(Self {
            dim: 1,
            band,
            coeffs: coeffs.iter().map(|&c| CMat::from_fn(1, 1, |_, _| c)).collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Nominal band (coefficients beyond it are zero).
    pub fn band(&self) -> usize {
        self.band
    }

    /// Coefficient of `e^{ikφ}`; zero outside the band.
    pub fn coeff(&self, k: i64) -> CMat {
        if k.unsigned_abs() as usize > self.band {
            return CMat::zeros(self.dim, self.dim);
        }
        self.coeffs[(k + self.band as i64) as usize].clone()
    }

    fn coeff_ref(&self, k: i64) -> Option<&CMat> {
        (k.unsigned_abs() as usize <= self.band).then(|| &self.coeffs[(k + self.band as i64) as usize])
    }

    /// Drops outer coefficients below `rel_tol` times the largest one.
    pub fn trimmed(&self, rel_tol: f64) -> Self {
        let peak = self.coeffs.iter().map(|c| c.norm_max()).fold(0.0, f64::max);
        let cut = rel_tol * peak;
        let mut band = 0;
        for k in (0..=self.band).rev() {
            let kk = k as i64;
            if self.coeff_ref(kk).unwrap().norm_max() > cut || self.coeff_ref(-kk).unwrap().norm_max() > cut {
                band = k;
                break;
            }
        }
        self.with_band(band)
    }

    /// Re-expresses the symbol with a new nominal band, truncating or padding.
    pub fn with_band(&self, band: usize) -> Self {
        let coeffs = (-(band as i64)..=band as i64).map(|k| self.coeff(k)).collect();
        Self { dim: self.dim, band, coeffs }
    }

    /// Effective band after trimming negligible coefficients.
    pub fn effective_band(&self) -> usize {
        self.trimmed(TRIM_TOL).band
    }

    pub fn eval(&self, phi: f64) -> CMat {
        let mut out = CMat::zeros(self.dim, self.dim);
        for (idx, c) in self.coeffs.iter().enumerate() {
            let k = idx as f64 - self.band as f64;
            out += faer::Scale(c64::from_polar(1.0, k * phi)) * c;
        }
        out
    }

    /// Samples on `M` equally spaced points `φ_j = 2πj/M`.
    pub fn to_grid(&self, m: usize) -> Result<GridFunction> {
        if !m.is_power_of_two() {
            return Err(Error::GridSize(m));
        }
        if 2 * self.band >= m {
            return Err(Error::InvalidParameter(format!(
                "grid of {m} points cannot resolve band {}",
                self.band
            )));
        }
        let mut planner = FftPlanner::<f64>::new();
        let ifft = planner.plan_fft_inverse(m);
        let mut samples = vec![CMat::zeros(self.dim, self.dim); m];
        let mut buf = vec![zero(); m];
        for a in 0..self.dim {
            for b in 0..self.dim {
                buf.iter_mut().for_each(|z| *z = zero());
                for k in -(self.band as i64)..=self.band as i64 {
                    buf[k.rem_euclid(m as i64) as usize] = self.coeff_ref(k).unwrap()[(a, b)];
                }
                ifft.process(&mut buf);
                for (j, s) in samples.iter_mut().enumerate() {
                    s[(a, b)] = buf[j];
                }
            }
        }
        GridFunction::new(samples)
    }

    /// Symbol of `f′`.
    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(idx, c)| {
                let k = idx as f64 - self.band as f64;
                faer::Scale(c64::new(0.0, k)) * c
            })
            .collect();
        Self { dim: self.dim, band: self.band, coeffs }
    }

    /// Pointwise adjoint `f(φ)*`.
    pub fn adjoint(&self) -> Self {
        let coeffs = (-(self.band as i64)..=self.band as i64)
            .map(|k| self.coeff_ref(-k).unwrap().adjoint().to_owned())
            .collect();
        Self { dim: self.dim, band: self.band, coeffs }
    }

    /// Pointwise product, computed by exact convolution.
    pub fn product(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::Shape("symbol dimensions differ".into()));
        }
        let band = self.band + other.band;
        let mut coeffs = vec![CMat::zeros(self.dim, self.dim); 2 * band + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                let k = i + j; // offset by self.band + other.band
                coeffs[k] += a * b;
            }
        }
        Ok(Self { dim: self.dim, band, coeffs })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::Shape("symbol dimensions differ".into()));
        }
        let band = self.band.max(other.band);
        let coeffs = (-(band as i64)..=band as i64)
            .map(|k| self.coeff(k) + other.coeff(k))
            .collect();
        Ok(Self { dim: self.dim, band, coeffs })
    }

    pub fn scale(&self, c: c64) -> Self {
        Self {
            dim: self.dim,
            band: self.band,
            coeffs: self.coeffs.iter().map(|m| faer::Scale(c) * m).collect(),
        }
    }
}

/// A `d × d` matrix-valued function sampled at `φ_j = 2πj/M`, `M = 2^m`.
#[derive(Clone, Debug, PartialEq)]
pub struct GridFunction {
    samples: Vec<CMat>,
}

impl GridFunction {
    pub fn new(samples: Vec<CMat>) -> Result<Self> {
        let m = samples.len();
        if m < 2 || !m.is_power_of_two() {
            return Err(Error::GridSize(m));
        }
        let d = samples[0].nrows();
        if samples.iter().any(|s| s.nrows() != d || s.ncols() != d) {
            return Err(Error::Shape("grid samples must share a square shape".into()));
        }
        Ok(Self { samples })
    }

    pub fn from_fn(m: usize, f: impl Fn(f64) -> CMat) -> Result<Self> {
        Self::new((0..m).map(|j| f(grid_phi(j, m))).collect())
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.samples[0].nrows()
    }

    pub fn samples(&self) -> &[CMat] {
        &self.samples
    }

    pub fn sample(&self, j: usize) -> &CMat {
        &self.samples[j]
    }

    pub fn phi(&self, j: usize) -> f64 {
        grid_phi(j, self.len())
    }

    /// Full discrete Fourier data; the Nyquist coefficient is split evenly
    /// between `±M/2`.
    pub fn symbol_full(&self) -> MatrixSymbol {
        let m = self.len();
        let d = self.dim();
        let half = m / 2;
        let mut planner = FftPlanner::<f64>::new();
        let fft = planner.plan_fft_forward(m);
        let mut coeffs = vec![CMat::zeros(d, d); 2 * half + 1];
        let mut buf = vec![zero(); m];
        let inv = 1.0 / m as f64;
        for a in 0..d {
            for b in 0..d {
                for (j, z) in buf.iter_mut().enumerate() {
                    *z = self.samples[j][(a, b)];
                }
                fft.process(&mut buf);
                for k in -(half as i64)..=half as i64 {
                    let mut v = buf[k.rem_euclid(m as i64) as usize] * inv;
                    if k.unsigned_abs() as usize == half {
                        v *= 0.5;
                    }
                    coeffs[(k + half as i64) as usize][(a, b)] = v;
                }
            }
        }
        MatrixSymbol { dim: d, band: half, coeffs }
    }

    /// Fourier data trimmed to its effective band.
    pub fn symbol(&self) -> MatrixSymbol {
        self.symbol_full().trimmed(TRIM_TOL)
    }

    /// Spectral derivative; the Nyquist mode is annihilated.
    pub fn derivative(&self) -> Self {
        let m = self.len();
        let sym = self.symbol_full();
        let half = (m / 2) as i64;
        let mut d = sym.derivative();
        let dim = self.dim();
        for k in [-half, half] {
            d.coeffs[(k + half) as usize] = CMat::zeros(dim, dim);
        }
        let d = d.with_band(m / 2 - 1);
        d.to_grid(m).expect("grid resolves its own band")
    }

    pub fn map(&self, f: impl Fn(&CMat) -> CMat) -> Self {
        Self { samples: self.samples.iter().map(f).collect() }
    }

    fn zip(&self, other: &Self, f: impl Fn(&CMat, &CMat) -> CMat) -> Result<Self> {
        if self.len() != other.len() || self.dim() != other.dim() {
            return Err(Error::Shape("grid functions differ in size".into()));
        }
        Ok(Self {
            samples: self.samples.iter().zip(&other.samples).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a * b)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a - b)
    }

    /// Pointwise commutator `[self, other]`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a * b - b * a)
    }

    pub fn scale(&self, c: c64) -> Self {
        self.map(|s| faer::Scale(c) * s)
    }

    pub fn adjoint(&self) -> Self {
        self.map(|s| s.adjoint().to_owned())
    }

    /// Largest entrywise deviation between two grid functions.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        let d = self.sub(other)?;
        Ok(d.max_abs())
    }

    pub fn max_abs(&self) -> f64 {
        self.samples.iter().map(|s| s.norm_max()).fold(0.0, f64::max)
    }

    /// `(1/2π)∮ f dφ` by the trapezoid rule.
    pub fn mean(&self) -> CMat {
        let d = self.dim();
        let mut acc = CMat::zeros(d, d);
        for s in &self.samples {
            acc += s;
        }
        faer::Scale(c64::new(1.0 / self.len() as f64, 0.0)) * &acc
    }
}

pub fn grid_phi(j: usize, m: usize) -> f64 {
    2.0 * PI * j as f64 / m as f64
}

/// Anything that can be turned into Fourier data for a multiplication operator.
pub trait Multiplier {
    fn to_symbol(&self) -> Result<MatrixSymbol>;
}

impl Multiplier for MatrixSymbol {
    fn to_symbol(&self) -> Result<MatrixSymbol> {
        Ok(self.trimmed(TRIM_TOL))
    }
}

impl Multiplier for GridFunction {
    fn to_symbol(&self) -> Result<MatrixSymbol> {
        Ok(self.symbol())
    }
}

/// Block-Toeplitz multiplication operator `T_{(m,a),(n,c)} = f̂(m−n)_{a,c}`.
pub fn mult_op<F: Multiplier + ?Sized>(f: &F, ctx: &TruncationContext) -> Result<TruncOp> {
    let sym = f.to_symbol()?;
    if sym.dim() != ctx.internal_dim() {
        return Err(Error::Shape(format!(
            "symbol is {}×{}, context has internal dimension {}",
            sym.dim(),
            sym.dim(),
            ctx.internal_dim()
        )));
    }
    let max_shift = ctx.num_modes() - 1;
    if sym.band() > 2 * ctx.cutoff() {
        return Err(Error::BandTooWide { band: sym.band(), cutoff: ctx.cutoff() });
    }
    let d = ctx.internal_dim();
    let nm = ctx.num_modes();
    let mut m = CMat::zeros(ctx.dim(), ctx.dim());
    for mi in 0..nm {
        for ni in 0..nm {
            let k = mi as i64 - ni as i64;
            if k.unsigned_abs() as usize > sym.band().min(max_shift) {
                continue;
            }
            let c = sym.coeff_ref(k).unwrap();
            for a in 0..d {
                for b in 0..d {
                    m[(mi * d + a, ni * d + b)] = c[(a, b)];
                }
            }
        }
    }
    TruncOp::new(*ctx, m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one() -> CMat {
        CMat::identity(1, 1)
    }

    #[test]
    fn shift_is_superdiagonal() {
        let ctx = TruncationContext::integer(3, 1).unwrap();
        let op = mult_op(&MatrixSymbol::monomial(1, one()), &ctx).unwrap();
        for i in 0..ctx.dim() {
            for j in 0..ctx.dim() {
                let want = if i == j + 1 { 1.0 } else { 0.0 };
                assert_eq!(op.get(i, j), c64::new(want, 0.0));
            }
        }
    }

    #[test]
    fn constant_is_block_diagonal() {
        let ctx = TruncationContext::half_integer(2, 2).unwrap();
        let c = CMat::from_fn(2, 2, |i, j| c64::new(i as f64 + 1.0, j as f64));
        let op = mult_op(&MatrixSymbol::constant(c.clone()), &ctx).unwrap();
        for i in 0..ctx.dim() {
            for j in 0..ctx.dim() {
                let want = if ctx.mode_of(i) == ctx.mode_of(j) {
                    c[(ctx.component_of(i), ctx.component_of(j))]
                } else {
                    zero()
                };
                assert_eq!(op.get(i, j), want);
            }
        }
    }

    #[test]
    fn band_too_wide() {
        let ctx = TruncationContext::integer(2, 1).unwrap();
        let err = mult_op(&MatrixSymbol::monomial(5, one()), &ctx).unwrap_err();
        assert!(matches!(err, Error::BandTooWide { .. }));
        assert!(err.to_string().contains("band too wide for context"));
    }

    #[test]
    fn grid_round_trip_is_exact() {
        let coeffs: Vec<c64> = (0..7).map(|k| c64::new(k as f64 - 3.0, 0.5 * k as f64)).collect();
        let s = MatrixSymbol::scalar(&coeffs).unwrap();
        let g = s.to_grid(32).unwrap();
        let back = g.symbol();
        assert_eq!(back.band(), 3);
        for k in -3..=3 {
            assert!((back.coeff(k)[(0, 0)] - s.coeff(k)[(0, 0)]).norm() < 1e-14);
        }
        for j in [0, 5, 17] {
            assert!((g.sample(j)[(0, 0)] - s.eval(g.phi(j))[(0, 0)]).norm() < 1e-13);
        }
    }

    #[test]
    fn spectral_derivative_of_sine() {
        let g = GridFunction::from_fn(64, |p| CMat::from_fn(1, 1, |_, _| c64::new(p.sin(), 0.0))).unwrap();
        let d = g.derivative();
        for j in 0..64 {
            assert!((d.sample(j)[(0, 0)] - c64::new(g.phi(j).cos(), 0.0)).norm() < 1e-13);
        }
    }

    #[test]
    fn product_matches_pointwise() {
        let a = MatrixSymbol::scalar(&[c64::new(1.0, 0.0), c64::new(0.0, 2.0), c64::new(0.5, 0.0)]).unwrap();
        let b = MatrixSymbol::scalar(&[c64::new(0.0, 1.0), c64::new(1.0, 0.0), c64::new(-1.0, 0.0)]).unwrap();
        let p = a.product(&b).unwrap();
        for phi in [0.1, 1.3, 4.0] {
            let want = a.eval(phi)[(0, 0)] * b.eval(phi)[(0, 0)];
            assert!((p.eval(phi)[(0, 0)] - want).norm() < 1e-14);
        }
    }
}
