//! Off-diagonal decay of the `ε`-corners of an operator.

use serde::{Deserialize, Serialize};

use super::op::TruncOp;
use crate::error::{Error, Result};

/// Smallest radius entering the slope fit.
pub const FIT_R_MIN: usize = 4;

/// Dyadic corner-block magnitudes and their log-log slope.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecayProfile {
    pub radii: Vec<usize>,
    /// RMS entry size of the corner block with `|m|, |n| ∈ [r, 2r)` and
    /// `sign(m) ≠ sign(n)`.
    pub block_norms: Vec<f64>,
    /// `None` when fewer than two nonzero blocks fall in the fit range.
    pub fitted_slope: Option<f64>,
}

/// Least-squares slope of `y` against `x`.
pub fn ls_slope(x: &[f64], y: &[f64]) -> Option<f64> {
    if x.len() < 2 || x.len() != y.len() {
        return None;
    }
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

pub fn corner_profile(x: &TruncOp, eps: &TruncOp) -> Result<DecayProfile> {
    let ctx = *x.ctx();
    if eps.ctx() != &ctx {
        return Err(Error::ContextMismatch);
    }
    let n = ctx.cutoff();
    if n < 32 {
        return Err(Error::InsufficientRange(n));
    }
    let sign: Vec<f64> = (0..x.dim()).map(|i| eps.get(i, i).re).collect();
    let radius: Vec<f64> = (0..x.dim()).map(|i| ctx.mode_value(ctx.mode_of(i)).abs()).collect();

    let mut radii = Vec::new();
    let mut r = 1usize;
    while 2 * r <= n {
        radii.push(r);
        r *= 2;
    }
    let block_norms: Vec<f64> = radii
        .iter()
        .map(|&r| {
            let inside = |i: usize| radius[i] >= r as f64 && radius[i] < 2.0 * r as f64;
            let mut sum = 0.0;
            let mut count = 0usize;
            for j in (0..x.dim()).filter(|&j| inside(j)) {
                for i in (0..x.dim()).filter(|&i| inside(i) && sign[i] != sign[j]) {
                    sum += x.get(i, j).norm_sqr();
                    count += 1;
                }
            }
            if count == 0 { 0.0 } else { (sum / count as f64).sqrt() }
        })
        .collect();

    let (lx, ly): (Vec<f64>, Vec<f64>) = radii
        .iter()
        .zip(&block_norms)
        .filter(|(&r, &b)| r >= FIT_R_MIN && r <= n / 4 && b > 0.0)
        .map(|(&r, &b)| ((r as f64).ln(), b.ln()))
        .unzip();
    Ok(DecayProfile { radii, block_norms, fitted_slope: ls_slope(&lx, &ly) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opcore::{make_dirac, make_polarization, TruncationContext};

    #[test]
    fn diagonal_is_empty() {
        let ctx = TruncationContext::half_integer(32, 1).unwrap();
        let p = corner_profile(&make_dirac(&ctx), &make_polarization(&ctx)).unwrap();
        assert!(p.block_norms.iter().all(|&b| b == 0.0));
        assert_eq!(p.fitted_slope, None);
        assert!(p.radii.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn small_cutoff_rejected() {
        let ctx = TruncationContext::half_integer(16, 1).unwrap();
        let e = make_polarization(&ctx);
        assert!(matches!(corner_profile(&e, &e), Err(Error::InsufficientRange(16))));
    }

    #[test]
    fn slope_of_exact_power() {
        let x = [1.0f64, 2.0, 3.0];
        let y: Vec<f64> = x.iter().map(|v| -1.5 * v + 0.2).collect();
        assert!((ls_slope(&x, &y).unwrap() + 1.5).abs() < 1e-14);
    }
}
