//! The renormalized cocycle `Ω(A;h) = T_A⁻¹ h T_{A^h}` and its diagnostics.

mod checks;
mod even;

pub use checks::{lemma3_check, omega_derivative, prop1_residual, ChartChangeSetup};
pub use even::{lemma2_residual, uu1_coordinates, EvenCaseFixture};

use faer::c64;

use crate::error::{Error, Result};
use crate::gauge::{gauge_action, GaugeField, GroupMap};
use crate::opcore::{make_polarization, matrix_exp, mult_op, op_norm_of, TruncOp, TruncationContext};
use crate::renorm::{field_conjugator, FlowParams};

/// A cocycle value together with how it was produced.
#[derive(Clone, Debug)]
pub struct CocycleValue {
    pub op: TruncOp,
    pub params: FlowParams,
    pub window: Option<usize>,
}

impl CocycleValue {
    pub fn new(op: TruncOp, params: FlowParams) -> Self {
        Self { op, params, window: None }
    }

    /// `‖Ω*Ω − 1‖` on the interior window. Truncated multiplication
    /// operators are only unitary away from the cutoff.
    pub fn unitarity_defect(&self, window: usize) -> Result<f64> {
        let gram = self.op.adjoint().try_mul(&self.op)?.try_sub(&TruncOp::identity(*self.op.ctx()))?;
        window_norm(&gram, window)
    }

    /// Diagonal blocks `(Ω₊, Ω₋)` with respect to a grading.
    pub fn blocks(&self, gamma: &TruncOp) -> Result<(TruncOp, TruncOp)> {
        let plus = gamma.try_add(&TruncOp::identity(*gamma.ctx()))?.scale_real(0.5);
        let minus = TruncOp::identity(*gamma.ctx()).try_sub(&plus)?;
        Ok((plus.try_mul(&self.op)?.try_mul(&plus)?, minus.try_mul(&self.op)?.try_mul(&minus)?))
    }
}

/// `T⁻¹` for a conjugator, using the adjoint when it is certified unitary.
pub fn unitary_inverse(t: &TruncOp) -> Result<TruncOp> {
    if t.is_unitary() {
        Ok(t.adjoint())
    } else {
        t.inverse()
    }
}

/// `Ω(A;h) = (T^p_A)⁻¹ · h · T^p_{A^h}`.
pub fn omega(ctx: &TruncationContext, a: &GaugeField, h: &GroupMap, params: &FlowParams) -> Result<CocycleValue> {
    let hop = mult_op(h, ctx)?;
    if params.depth == 0 {
        return Ok(CocycleValue::new(hop, *params));
    }
    let ah = gauge_action(a, h)?;
    let ta = field_conjugator(ctx, a, params)?;
    let tah = field_conjugator(ctx, &ah, params)?;
    let op = unitary_inverse(&ta)?.try_mul(&hop)?.try_mul(&tah)?;
    Ok(CocycleValue::new(op, *params))
}

/// Operator norm of the interior-window block of an operator.
pub fn window_norm(x: &TruncOp, window: usize) -> Result<f64> {
    let idx = x.ctx().window_basis(window)?;
    Ok(op_norm_of(&x.block(&idx, &idx)))
}

/// Default interior window `N − band − 8`.
pub fn default_window(ctx: &TruncationContext, band: usize) -> Result<usize> {
    ctx.cutoff()
        .checked_sub(band + 8)
        .filter(|&w| w > 0)
        .ok_or(Error::WindowTooLarge { window: band + 8, limit: ctx.cutoff() })
}

/// Windowed residual of `Ω(A;h₁)Ω(A^{h₁};h₂) = Ω(A;h₁h₂)`, with `h₁h₂`
/// formed pointwise before truncation.
pub fn cocycle_residual(
    ctx: &TruncationContext,
    a: &GaugeField,
    h1: &GroupMap,
    h2: &GroupMap,
    params: &FlowParams,
    window: usize,
) -> Result<f64> {
    let ah1 = gauge_action(a, h1)?;
    cocycle_residual_with_middle(ctx, a, &ah1, h1, h2, params, window)
}

/// Same as [`cocycle_residual`] but with an explicit field in the middle
/// factor; passing `A` instead of `A^{h₁}` gives a negative control.
pub fn cocycle_residual_with_middle(
    ctx: &TruncationContext,
    a: &GaugeField,
    middle: &GaugeField,
    h1: &GroupMap,
    h2: &GroupMap,
    params: &FlowParams,
    window: usize,
) -> Result<f64> {
    let h12 = h1.mul(h2)?;
    if h12.band() > 2 * ctx.cutoff() {
        return Err(Error::BandTooWide { band: h12.band(), cutoff: ctx.cutoff() });
    }
    let left = omega(ctx, a, h1, params)?.op.try_mul(&omega(ctx, middle, h2, params)?.op)?;
    let right = omega(ctx, a, &h12, params)?.op;
    window_norm(&left.try_sub(&right)?, window)
}

/// A family `A ↦ S_A` of unitaries used to change the regularization.
pub trait RegularizationFamily: Sync {
    fn at(&self, ctx: &TruncationContext, a: &GaugeField) -> Result<TruncOp>;
}

/// `S_A ≡ 1`.
#[derive(Clone, Copy, Debug, Default)]
pub struct IdentityFamily;

impl RegularizationFamily for IdentityFamily {
    fn at(&self, ctx: &TruncationContext, _a: &GaugeField) -> Result<TruncOp> {
        Ok(TruncOp::identity(*ctx))
    }
}

/// A fixed unitary, independent of `A`.
#[derive(Clone, Debug)]
pub struct ConstantFamily(pub TruncOp);

impl RegularizationFamily for ConstantFamily {
    fn at(&self, ctx: &TruncationContext, _a: &GaugeField) -> Result<TruncOp> {
        if self.0.ctx() != ctx {
            return Err(Error::ContextMismatch);
        }
        Ok(self.0.clone())
    }
}

/// `S_A = exp(s·[ε, H_A])`: unitary, near the identity, and generated by an
/// operator linear in the Fourier data of `A`.
#[derive(Clone, Copy, Debug)]
pub struct ExpLinearFamily {
    pub strength: f64,
}

impl RegularizationFamily for ExpLinearFamily {
    fn at(&self, ctx: &TruncationContext, a: &GaugeField) -> Result<TruncOp> {
        let eps = make_polarization(ctx);
        let gen = eps.commutator(&a.interaction(ctx)?)?.scale(c64::new(self.strength, 0.0));
        matrix_exp(&gen)
    }
}

/// `Ω′ = S_A⁻¹ Ω S_{A^h}`.
pub fn regularization_change(omega: &CocycleValue, s_a: &TruncOp, s_ah: &TruncOp) -> Result<CocycleValue> {
    for s in [s_a, s_ah] {
        if !s.is_unitary() {
            return Err(Error::NotUnitary(s.unitary_residual()));
        }
    }
    let op = s_a.adjoint().try_mul(&omega.op)?.try_mul(s_ah)?;
    Ok(CocycleValue { op, params: omega.params, window: omega.window })
}

/// Cocycle value after changing the regularization by a family.
pub fn omega_regularized(
    ctx: &TruncationContext,
    a: &GaugeField,
    h: &GroupMap,
    params: &FlowParams,
    family: &dyn RegularizationFamily,
) -> Result<CocycleValue> {
    let base = omega(ctx, a, h, params)?;
    let ah = gauge_action(a, h)?;
    regularization_change(&base, &family.at(ctx, a)?, &family.at(ctx, &ah)?)
}

/// Windowed cocycle residual of the regularization-changed cocycle.
pub fn regularized_cocycle_residual(
    ctx: &TruncationContext,
    a: &GaugeField,
    h1: &GroupMap,
    h2: &GroupMap,
    params: &FlowParams,
    family: &dyn RegularizationFamily,
    window: usize,
) -> Result<f64> {
    let ah1 = gauge_action(a, h1)?;
    let h12 = h1.mul(h2)?;
    let left = omega_regularized(ctx, a, h1, params, family)?
        .op
        .try_mul(&omega_regularized(ctx, &ah1, h2, params, family)?.op)?;
    let right = omega_regularized(ctx, a, &h12, params, family)?.op;
    window_norm(&left.try_sub(&right)?, window)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::rng;
    use crate::gauge::{Algebra, Group};

    fn setup() -> (TruncationContext, GaugeField) {
        let ctx = TruncationContext::half_integer(16, 1).unwrap();
        let a = GaugeField::random(Algebra::U1, 2, 64, 0.5, &mut rng(3)).unwrap();
        (ctx, a)
    }

    #[test]
    fn identity_map_gives_identity() {
        let (ctx, a) = setup();
        let one = GroupMap::identity(Group::U1, 64).unwrap();
        let om = omega(&ctx, &a, &one, &FlowParams::new(2)).unwrap();
        assert!(om.op.try_sub(&TruncOp::identity(ctx)).unwrap().op_norm() < 1e-10);
    }

    #[test]
    fn depth_zero_is_tautological() {
        let (ctx, a) = setup();
        let h = GroupMap::u1_winding(1, 64).unwrap();
        let om = omega(&ctx, &a, &h, &FlowParams::new(0)).unwrap();
        assert_eq!(om.op, mult_op(&h, &ctx).unwrap());
    }

    #[test]
    fn regularization_by_identity_is_neutral() {
        let (ctx, a) = setup();
        let h = GroupMap::u1_winding(1, 64).unwrap();
        let p = FlowParams::new(1);
        let base = omega(&ctx, &a, &h, &p).unwrap();
        let changed = omega_regularized(&ctx, &a, &h, &p, &IdentityFamily).unwrap();
        assert!(base.op.try_sub(&changed.op).unwrap().max_abs() < 1e-15);
    }
}
