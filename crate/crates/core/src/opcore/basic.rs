//! Standard diagonal operators and trace-type functionals.

use faer::c64;

use super::context::TruncationContext;
use super::op::TruncOp;
use crate::error::{Error, Result};

fn re(x: f64) -> c64 {
    c64::new(x, 0.0)
}

/// The sign-of-mode involution `ε`.
pub fn make_polarization(ctx: &TruncationContext) -> TruncOp {
    TruncOp::diagonal(*ctx, |i| re(ctx.mode_sign(ctx.mode_of(i))))
}

/// The free Dirac operator `D₀ = −i d/dφ`, diagonal with the mode values.
pub fn make_dirac(ctx: &TruncationContext) -> TruncOp {
    TruncOp::diagonal(*ctx, |i| re(ctx.mode_value(ctx.mode_of(i))))
}

/// Whether the free Dirac operator of this context has a zero mode.
pub fn dirac_is_invertible(ctx: &TruncationContext) -> bool {
    matches!(ctx.convention(), super::context::ModeConvention::HalfInteger)
}

/// The chirality grading `Γ` of a graded context.
pub fn make_grading(ctx: &TruncationContext) -> Result<TruncOp> {
    if !ctx.is_graded() {
        return Err(Error::Ungraded);
    }
    Ok(TruncOp::diagonal(*ctx, |i| re(ctx.grading_sign(ctx.component_of(i)))))
}

/// Schatten `p`-norm `(Σ σᵢ^p)^{1/p}`.
pub fn schatten_norm(x: &TruncOp, p: f64) -> Result<f64> {
    if !(p >= 1.0) {
        return Err(Error::InvalidParameter(format!("Schatten exponent {p} < 1")));
    }
    if p == 2.0 {
        return Ok(x.frobenius_norm());
    }
    let s = x.singular_values()?;
    Ok(schatten_from_singular_values(&s, p))
}

pub fn schatten_from_singular_values(s: &[f64], p: f64) -> f64 {
    if p == 1.0 {
        return s.iter().sum();
    }
    let top = s.iter().copied().fold(0.0, f64::max);
    if top == 0.0 {
        return 0.0;
    }
    top * s.iter().map(|v| (v / top).powf(p)).sum::<f64>().powf(1.0 / p)
}

/// `½ tr(ΓX + εΓXε)`, summed along the basis order.
///
/// `ε` must commute or anticommute with `Γ` to `1e-12`.
pub fn conditional_supertrace(x: &TruncOp, eps: &TruncOp, gamma: &TruncOp) -> Result<c64> {
    if !x.ctx().is_graded() {
        return Err(Error::Ungraded);
    }
    let eg = eps.try_mul(gamma)?;
    let ge = gamma.try_mul(eps)?;
    let commuting = (&eg - &ge).max_abs() <= 1e-12;
    let anticommuting = (&eg + &ge).max_abs() <= 1e-12;
    if !commuting && !anticommuting {
        return Err(Error::InvalidParameter(
            "polarization must commute or anticommute with the grading".into(),
        ));
    }
    let gx = gamma.try_mul(x)?;
    let sandwiched = &(eps * &gx) * eps;
    let n = x.dim();
    let mut s = c64::new(0.0, 0.0);
    for i in 0..n {
        s += gx.get(i, i) + sandwiched.get(i, i);
    }
    Ok(s * 0.5)
}
