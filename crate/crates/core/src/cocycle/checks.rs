//! Finite-difference checks of the infinitesimal cocycle identities.

use faer::c64;

use super::{omega, window_norm, RegularizationFamily};
use crate::error::{Error, Result};
use crate::gauge::{as_connection_theta, exp_field, gauge_action, Algebra, Chart, GaugeField, Group, GroupMap, U1ModuliModel};
use crate::opcore::{TruncOp, TruncationContext};
use crate::renorm::FlowParams;

fn group_of(algebra: Algebra) -> Group {
    match algebra {
        Algebra::U1 => Group::U1,
        Algebra::Su2 => Group::SU2,
    }
}

fn check_step(h: f64) -> Result<()> {
    if h > 0.0 && h.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter("finite-difference step must be positive".into()))
    }
}

fn central(plus: &TruncOp, minus: &TruncOp, h: f64) -> Result<TruncOp> {
    Ok(plus.try_sub(minus)?.scale(c64::new(1.0 / (2.0 * h), 0.0)))
}

fn exp_t(x: &GaugeField, t: f64) -> Result<GroupMap> {
    exp_field(&x.scale(t), group_of(x.algebra()))
}

/// `ω(A;X) ≈ (Ω(A;e^{hX}) − Ω(A;e^{−hX})) / 2h`.
pub fn omega_derivative(
    ctx: &TruncationContext,
    a: &GaugeField,
    x: &GaugeField,
    params: &FlowParams,
    h: f64,
) -> Result<TruncOp> {
    check_step(h)?;
    let plus = omega(ctx, a, &exp_t(x, h)?, params)?.op;
    let minus = omega(ctx, a, &exp_t(x, -h)?, params)?.op;
    central(&plus, &minus, h)
}

/// Residual of `d/dt Ω′(A;e^{tX})|₀ = S_A ω(A;X) S_A⁻¹ − (ℒ_X S_A) S_A⁻¹`
/// with `X = θ_A(v)` and `Ω′(A;h) = S_A Ω(A;h) S_{A^h}⁻¹`. Both sides use
/// central differences, so the residual is `O(h²)` (operator norm).
pub fn lemma3_check(
    ctx: &TruncationContext,
    a: &GaugeField,
    v: &GaugeField,
    family: &dyn RegularizationFamily,
    params: &FlowParams,
    h: f64,
) -> Result<f64> {
    check_step(h)?;
    let x = as_connection_theta(a, v)?;
    let s0 = family.at(ctx, a)?;
    let s0_inv = s0.adjoint();
    let mut primed = Vec::with_capacity(2);
    let mut omegas = Vec::with_capacity(2);
    let mut moved = Vec::with_capacity(2);
    for t in [h, -h] {
        let g = exp_t(&x, t)?;
        let om = omega(ctx, a, &g, params)?.op;
        let s_t = family.at(ctx, &gauge_action(a, &g)?)?;
        primed.push(s0.try_mul(&om)?.try_mul(&s_t.adjoint())?);
        omegas.push(om);
        moved.push(s_t);
    }
    let lhs = central(&primed[0], &primed[1], h)?;
    let om_dot = central(&omegas[0], &omegas[1], h)?;
    let lie = central(&moved[0], &moved[1], h)?;
    let rhs = s0.try_mul(&om_dot)?.try_mul(&s0_inv)?.try_sub(&lie.try_mul(&s0_inv)?)?;
    Ok(lhs.try_sub(&rhs)?.op_norm())
}

/// Discretization settings for [`prop1_residual`].
#[derive(Clone, Copy, Debug)]
pub struct ChartChangeSetup {
    pub ctx: TruncationContext,
    pub params: FlowParams,
    pub step: f64,
    pub window: usize,
}

/// Windowed residual of the change of the infinitesimal cocycle between the
/// two charts of the moduli model at `c_alpha`:
/// `ω(σ_β;X) = Ω⁻¹ω(σ_α;X)Ω + Ω⁻¹ ∂_t Ω(σ_α^{e^{tX}}; g)`,
/// with `Ω = Ω(σ_α; g)`, `g = g_{αβ}` and `X = θ_{σ_α}(v)`. The transition
/// is constant along the chart coordinate, so its own derivative drops out.
pub fn prop1_residual(model: &U1ModuliModel, setup: &ChartChangeSetup, c_alpha: f64, v: &GaugeField) -> Result<f64> {
    let ChartChangeSetup { ctx, params, step: h, window } = *setup;
    check_step(h)?;
    let a = model.section(Chart::Alpha, c_alpha)?;
    let b = model.section(Chart::Beta, U1ModuliModel::to_beta(c_alpha)?)?;
    let g = model.transition(c_alpha)?;
    let x = as_connection_theta(&a, v)?;

    let om = omega(&ctx, &a, &g, &params)?.op;
    let om_inv = om.adjoint();
    let w_alpha = omega_derivative(&ctx, &a, &x, &params, h)?;
    let w_beta = omega_derivative(&ctx, &b, &x, &params, h)?;
    let plus = omega(&ctx, &gauge_action(&a, &exp_t(&x, h)?)?, &g, &params)?.op;
    let minus = omega(&ctx, &gauge_action(&a, &exp_t(&x, -h)?)?, &g, &params)?.op;
    let transported = central(&plus, &minus, h)?;

    let rhs = om_inv.try_mul(&w_alpha)?.try_mul(&om)?.try_add(&om_inv.try_mul(&transported)?)?;
    window_norm(&w_beta.try_sub(&rhs)?, window)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycle::{ConstantFamily, ExpLinearFamily, IdentityFamily};
    use crate::fixtures::rng;

    fn ctx() -> TruncationContext {
        TruncationContext::half_integer(12, 1).unwrap()
    }

    #[test]
    fn zero_tangent_gives_zero() {
        let a = GaugeField::random(Algebra::U1, 2, 64, 0.4, &mut rng(1)).unwrap();
        let v = GaugeField::zero(Algebra::U1, 64).unwrap();
        let r = lemma3_check(&ctx(), &a, &v, &ExpLinearFamily { strength: 0.3 }, &FlowParams::new(1), 1e-3).unwrap();
        assert!(r < 1e-12);
    }

    #[test]
    fn constant_family_is_exact() {
        let c = ctx();
        let a = GaugeField::random(Algebra::U1, 2, 64, 0.4, &mut rng(2)).unwrap();
        let v = GaugeField::random(Algebra::U1, 2, 64, 0.4, &mut rng(3)).unwrap();
        let s = crate::opcore::matrix_exp(&TruncOp::from_fn(c, |i, j| {
            if i == j + 1 {
                c64::new(0.1, 0.0)
            } else if j == i + 1 {
                c64::new(-0.1, 0.0)
            } else {
                c64::new(0.0, 0.0)
            }
        }))
        .unwrap();
        let r = lemma3_check(&c, &a, &v, &ConstantFamily(s), &FlowParams::new(1), 1e-4).unwrap();
        assert!(r < 1e-6, "{r}");
        let r = lemma3_check(&c, &a, &v, &IdentityFamily, &FlowParams::new(1), 1e-4).unwrap();
        assert!(r < 1e-6, "{r}");
    }

    #[test]
    fn trivial_transition() {
        let model = U1ModuliModel::new(1, 0.3, 64).unwrap();
        let setup = ChartChangeSetup { ctx: ctx(), params: FlowParams::new(1), step: 1e-4, window: 4 };
        let v = model.section_tangent(0.4).unwrap();
        assert!(prop1_residual(&model, &setup, 0.4, &v).unwrap() < 1e-10);
    }
}
