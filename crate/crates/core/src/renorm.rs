//! Order-reducing unitary conjugation of `D₀ + A` and its iteration.

use faer::c64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gauge::GaugeField;
use crate::opcore::{
    corner_profile, make_dirac, make_polarization, matrix_exp, schatten_norm, TruncOp,
    TruncationContext,
};

/// Eigenvalues of the base operator below this are treated as zero.
const ZERO_MODE_TOL: f64 = 1e-12;

/// Parameters of the iterated conjugation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FlowParams {
    pub depth: usize,
    /// `0` selects `|D₀|⁻¹`; positive values select `|D₀|(D₀² + λ)⁻¹`.
    pub lambda: f64,
    /// Use `|R₀|` with `R₀` the pseudo-inverse of `D₀`.
    pub pseudo_inverse: bool,
}

impl FlowParams {
    pub fn new(depth: usize) -> Self {
        Self { depth, lambda: 0.0, pseudo_inverse: false }
    }

    pub fn with_lambda(mut self, lambda: f64) -> Self {
        self.lambda = lambda;
        self
    }

    pub fn with_pseudo_inverse(mut self) -> Self {
        self.pseudo_inverse = true;
        self
    }
}

/// Per-step commutator diagnostics.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StepDiagnostics {
    pub step: usize,
    pub schatten1: f64,
    pub schatten2: f64,
    /// Corner decay slope; `None` below cutoff 32 or for an empty profile.
    pub slope: Option<f64>,
}

#[derive(Clone, Debug)]
pub struct FlowResult {
    /// `T_{A₀}, …, T_{A_{p−1}}`.
    pub conjugators: Vec<TruncOp>,
    /// `T^p = T_{A₀} T_{A₁} ⋯ T_{A_{p−1}}`, so that `(T^p)⁻¹(D₀+A)T^p = D₀ + A_p`.
    pub total: TruncOp,
    /// `A₀ = A, A₁, …, A_p`.
    pub interactions: Vec<TruncOp>,
    pub diagnostics: Vec<StepDiagnostics>,
}

/// `R₀` with `R₀D₀` the projection off `ker D₀`.
pub fn pseudo_inverse_r0(d0: &TruncOp) -> Result<TruncOp> {
    let scale = d0.max_abs().max(1.0);
    d0.spectral_map(|x| if x.abs() <= ZERO_MODE_TOL * scale { 0.0 } else { 1.0 / x })
}

/// The weight `K` replacing `|D₀|⁻¹` in the conjugator.
fn weight(d0: &TruncOp, lambda: f64, pseudo_inverse: bool) -> Result<TruncOp> {
    if lambda < 0.0 || !lambda.is_finite() {
        return Err(Error::InvalidParameter(format!("λ = {lambda} must be nonnegative")));
    }
    if lambda > 0.0 {
        return d0.spectral_map(|x| x.abs() / (x * x + lambda));
    }
    if pseudo_inverse {
        return pseudo_inverse_r0(d0)?.spectral_map(f64::abs);
    }
    let scale = d0.max_abs().max(1.0);
    let eig = d0.hermitian_eigenvalues()?;
    if eig.iter().any(|x| x.abs() <= ZERO_MODE_TOL * scale) {
        return Err(Error::SingularBase);
    }
    d0.spectral_map(|x| 1.0 / x.abs())
}

/// `ε`-odd part `½(C − εCε)` of an operator.
pub fn eps_odd_part(c: &TruncOp, eps: &TruncOp) -> Result<TruncOp> {
    let sandwich = eps.try_mul(c)?.try_mul(eps)?;
    Ok(c.try_sub(&sandwich)?.scale_real(0.5))
}

/// `α = −⅛(K C + C K)` with `C` the `ε`-odd part of `[ε, A]`.
pub fn lemma1_alpha(d0: &TruncOp, a: &TruncOp, eps: &TruncOp, lambda: f64) -> Result<TruncOp> {
    alpha_with(d0, a, eps, lambda, false)
}

fn alpha_with(d0: &TruncOp, a: &TruncOp, eps: &TruncOp, lambda: f64, pinv: bool) -> Result<TruncOp> {
    let k = weight(d0, lambda, pinv)?;
    let c = eps_odd_part(&eps.commutator(a)?, eps)?;
    Ok(k.anticommutator(&c)?.scale_real(-0.125))
}

fn inverse_of_exp(t: &TruncOp, alpha: &TruncOp) -> Result<TruncOp> {
    if alpha.is_antihermitian() {
        Ok(t.adjoint())
    } else {
        matrix_exp(&alpha.scale_real(-1.0))
    }
}

/// One conjugation step: `T = e^α`, `A′ = T⁻¹(D₀+A)T − D₀`.
pub fn lemma1_step(d0: &TruncOp, a: &TruncOp, eps: &TruncOp, lambda: f64) -> Result<(TruncOp, TruncOp)> {
    step_with(d0, a, eps, lambda, false)
}

fn step_with(d0: &TruncOp, a: &TruncOp, eps: &TruncOp, lambda: f64, pinv: bool) -> Result<(TruncOp, TruncOp)> {
    let alpha = alpha_with(d0, a, eps, lambda, pinv)?;
    let t = matrix_exp(&alpha)?;
    let tinv = inverse_of_exp(&t, &alpha)?;
    let full = d0.try_add(a)?;
    let next = tinv.try_mul(&full)?.try_mul(&t)?.try_sub(d0)?;
    Ok((t, next))
}

/// Residual of `[ε, A + [D₀, α]] = ¼[K, [|D₀|, C]] + ½λ(QC + CQ)`, where
/// `Q = (D₀² + λ)⁻¹` and `K = |D₀| Q`.
pub fn leading_identity_check(d0: &TruncOp, a: &TruncOp, eps: &TruncOp, lambda: f64) -> Result<f64> {
    let alpha = lemma1_alpha(d0, a, eps, lambda)?;
    let a1 = a.try_add(&d0.commutator(&alpha)?)?;
    let lhs = eps.commutator(&a1)?;
    let c = eps_odd_part(&eps.commutator(a)?, eps)?;
    let k = weight(d0, lambda, false)?;
    let abs = d0.spectral_map(f64::abs)?;
    let mut rhs = k.commutator(&abs.commutator(&c)?)?.scale_real(0.25);
    if lambda > 0.0 {
        let q = d0.spectral_map(|x| 1.0 / (x * x + lambda))?;
        rhs = rhs.try_add(&q.anticommutator(&c)?.scale_real(0.5 * lambda))?;
    }
    Ok(lhs.try_sub(&rhs)?.op_norm())
}

fn diagnostics(step: usize, a: &TruncOp, eps: &TruncOp) -> Result<StepDiagnostics> {
    let c = eps.commutator(a)?;
    let slope = if a.ctx().cutoff() >= 32 { corner_profile(&c, eps)?.fitted_slope } else { None };
    Ok(StepDiagnostics { step, schatten1: schatten_norm(&c, 1.0)?, schatten2: schatten_norm(&c, 2.0)?, slope })
}

/// Iterates the conjugation `params.depth` times.
pub fn renorm_flow(d0: &TruncOp, a: &TruncOp, eps: &TruncOp, params: &FlowParams) -> Result<FlowResult> {
    flow_impl(d0, a, eps, params, true)
}

fn flow_impl(d0: &TruncOp, a: &TruncOp, eps: &TruncOp, params: &FlowParams, diag: bool) -> Result<FlowResult> {
    let mut conjugators = Vec::with_capacity(params.depth);
    let mut interactions = vec![a.clone()];
    let mut diagnostics_out = Vec::new();
    if diag {
        diagnostics_out.push(diagnostics(0, a, eps)?);
    }
    let mut total: Option<TruncOp> = None;
    for k in 0..params.depth {
        let (t, next) = step_with(d0, &interactions[k], eps, params.lambda, params.pseudo_inverse)?;
        total = Some(match total {
            None => t.clone(),
            Some(acc) => acc.try_mul(&t)?,
        });
        conjugators.push(t);
        if diag {
            diagnostics_out.push(diagnostics(k + 1, &next, eps)?);
        }
        interactions.push(next);
    }
    let total = total.unwrap_or_else(|| TruncOp::identity(*a.ctx()));
    Ok(FlowResult { conjugators, total, interactions, diagnostics: diagnostics_out })
}

/// Total conjugator `T^p_A` for a gauge field, with `D₀` and `ε` of `ctx`.
pub fn field_conjugator(ctx: &TruncationContext, a: &GaugeField, params: &FlowParams) -> Result<TruncOp> {
    if params.depth == 0 {
        return Ok(TruncOp::identity(*ctx));
    }
    let h = a.interaction(ctx)?;
    let d0 = make_dirac(ctx);
    let eps = make_polarization(ctx);
    Ok(flow_impl(&d0, &h, &eps, params, false)?.total)
}

/// Central difference `(T_{A+hB} − T_{A−hB}) / 2h` of the total conjugator.
pub fn flow_derivative(
    ctx: &TruncationContext,
    a: &GaugeField,
    b: &GaugeField,
    params: &FlowParams,
    h: f64,
) -> Result<TruncOp> {
    if !(h > 0.0) {
        return Err(Error::InvalidParameter("finite-difference step must be positive".into()));
    }
    if params.depth == 0 {
        return Ok(TruncOp::zeros(*ctx));
    }
    let plus = field_conjugator(ctx, &a.axpy(h, b)?, params)?;
    let minus = field_conjugator(ctx, &a.axpy(-h, b)?, params)?;
    Ok(plus.try_sub(&minus)?.scale(c64::new(1.0 / (2.0 * h), 0.0)))
}
