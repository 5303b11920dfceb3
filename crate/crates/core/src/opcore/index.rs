//! Fredholm index of compressed multiplication operators and the smoothed
//! sign function.

use super::op::{CMat, TruncOp};
use crate::error::{Error, Result};

/// Singular values below this count towards a kernel.
pub const KERNEL_THRESHOLD: f64 = 1e-6;
/// Required ratio between the smallest kept and the largest counted value.
pub const KERNEL_GAP: f64 = 1e3;

/// Band tolerance used when deciding how far an operator reaches.
const BAND_TOL: f64 = 1e-13;

/// Counts singular values below the threshold, insisting on a clear gap.
pub fn kernel_dimension(block: &CMat) -> Result<usize> {
    let cols = block.ncols();
    if cols == 0 {
        return Ok(0);
    }
    let s = block
        .singular_values()
        .map_err(|e| Error::Linalg(format!("{e:?}")))?;
    let small: Vec<f64> = s.iter().copied().filter(|&v| v < KERNEL_THRESHOLD).collect();
    let large: Vec<f64> = s.iter().copied().filter(|&v| v >= KERNEL_THRESHOLD).collect();
    if let (Some(&kept), Some(counted)) = (
        large.iter().min_by(|a, b| a.total_cmp(b)),
        small.iter().copied().reduce(f64::max),
    ) {
        if kept < KERNEL_GAP * counted {
            return Err(Error::IllConditioned);
        }
    }
    // Missing singular values (wide blocks) are kernel directions too.
    Ok(small.len() + cols.saturating_sub(s.len()))
}

/// Index `dim ker − dim coker` of `P₊ g P₊` on the interior window.
///
/// `ε` must be diagonal; `P₊` is the span of basis vectors with `ε_ii > 0`.
pub fn fredholm_index(g: &TruncOp, eps: &TruncOp, window: usize) -> Result<i64> {
    if g.ctx() != eps.ctx() {
        return Err(Error::ContextMismatch);
    }
    if !eps.is_diagonal() {
        return Err(Error::InvalidParameter("index needs a diagonal polarization".into()));
    }
    let ctx = g.ctx();
    let band = g.band(BAND_TOL);
    let limit = ctx.cutoff().saturating_sub(band);
    if window > limit {
        return Err(Error::WindowTooLarge { window, limit });
    }
    let positive: Vec<usize> = (0..g.dim()).filter(|&i| eps.get(i, i).re > 0.0).collect();
    let inside = ctx.window_basis(window)?;
    let cols: Vec<usize> = inside.into_iter().filter(|&i| eps.get(i, i).re > 0.0).collect();
    let ker = kernel_dimension(&g.block(&positive, &cols))?;
    let coker = kernel_dimension(&g.adjoint().block(&positive, &cols))?;
    Ok(ker as i64 - coker as i64)
}

/// `D (|D| + e^{−D²})⁻¹` by spectral calculus.
pub fn approx_sign(d: &TruncOp) -> Result<TruncOp> {
    d.spectral_map(approx_sign_scalar)
}

pub fn approx_sign_scalar(x: f64) -> f64 {
    x / (x.abs() + (-x * x).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opcore::{make_polarization, mult_op, MatrixSymbol, TruncationContext};
    use faer::c64;

    fn shift(n: i64, ctx: &TruncationContext) -> TruncOp {
        mult_op(&MatrixSymbol::monomial(n, CMat::identity(1, 1)), ctx).unwrap()
    }

    #[test]
    fn shift_indices() {
        let ctx = TruncationContext::integer(32, 1).unwrap();
        let e = make_polarization(&ctx);
        assert_eq!(fredholm_index(&shift(1, &ctx), &e, 20).unwrap(), -1);
        assert_eq!(fredholm_index(&shift(-2, &ctx), &e, 20).unwrap(), 2);
        assert_eq!(fredholm_index(&TruncOp::identity(ctx), &e, 32).unwrap(), 0);
    }

    #[test]
    fn window_limit() {
        let ctx = TruncationContext::integer(8, 1).unwrap();
        let e = make_polarization(&ctx);
        assert!(matches!(
            fredholm_index(&shift(3, &ctx), &e, 6),
            Err(Error::WindowTooLarge { .. })
        ));
    }

    #[test]
    fn ill_conditioned_detected() {
        let m = CMat::from_fn(2, 2, |i, j| {
            if i == j { c64::new(if i == 0 { 1.0 } else { 1e-5 }, 0.0) } else { c64::new(0.0, 0.0) }
        });
        assert!(kernel_dimension(&m).is_ok());
        let m = CMat::from_fn(2, 2, |i, j| {
            if i == j { c64::new(if i == 0 { 1e-5 } else { 1e-7 }, 0.0) } else { c64::new(0.0, 0.0) }
        });
        assert!(matches!(kernel_dimension(&m), Err(Error::IllConditioned)));
    }

    #[test]
    fn sign_values() {
        assert_eq!(approx_sign_scalar(0.0), 0.0);
        assert!((approx_sign_scalar(1.0) - 0.731_058_578_630_004_9).abs() < 1e-12);
        assert!((approx_sign_scalar(10.0) - 1.0).abs() < 1e-12);
        assert!((approx_sign_scalar(-10.0) + 1.0).abs() < 1e-12);
    }
}
