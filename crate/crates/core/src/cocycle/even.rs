//! Finite graded fixtures for the even-dimensional structures.
//!
//! The graded space is `ℓ²(modes) ⊗ ℂ²` with `Γ = diag(1, −1)` on the internal
//! factor. The polarization swaps chiralities through a reference unitary
//! `g₀`: `ε = [[0, g₀], [g₀*, 0]]`, so `ε² = Γ² = 1` and `εΓ = −Γε`.

use faer::c64;
use rand::Rng;

use super::CocycleValue;
use crate::error::{Error, Result};
use crate::fixtures::{random_antihermitian, random_unitary};
use crate::opcore::{
    expm_mat, make_grading, make_polarization, schatten_from_singular_values, CMat, TruncOp, TruncationContext,
};

fn singular_values(m: &CMat) -> Result<Vec<f64>> {
    m.singular_values().map_err(|e| Error::Linalg(format!("{e:?}")))
}

fn schatten1(m: &CMat) -> Result<f64> {
    Ok(schatten_from_singular_values(&singular_values(m)?, 1.0))
}

fn lu_inverse(m: &CMat) -> Result<CMat> {
    use faer::linalg::solvers::DenseSolveCore;
    let inv = m.partial_piv_lu().inverse();
    if inv.norm_max().is_finite() {
        Ok(inv)
    } else {
        Err(Error::Singular)
    }
}

/// A graded space with polarization `ε`, grading `Γ`, and reference
/// unitary `g₀` from the minus to the plus chirality block.
#[derive(Clone, Debug)]
pub struct EvenCaseFixture {
    ctx: TruncationContext,
    gamma: TruncOp,
    eps: TruncOp,
    g0: CMat,
}

impl EvenCaseFixture {
    /// Fixture with a given reference unitary on `num_modes(base)` modes.
    pub fn with_reference(base: &TruncationContext, g0: CMat) -> Result<Self> {
        if base.internal_dim() != 1 {
            return Err(Error::InvalidParameter("base context must be scalar".into()));
        }
        let m = base.num_modes();
        if g0.nrows() != m || g0.ncols() != m {
            return Err(Error::Shape(format!("reference unitary must be {m}×{m}")));
        }
        let res = (g0.adjoint() * &g0 - CMat::identity(m, m)).norm_max();
        if res > 1e-10 {
            return Err(Error::NotUnitary(res));
        }
        let ctx = TruncationContext::new(base.cutoff(), 2, base.convention())?.with_grading()?;
        let gamma = make_grading(&ctx)?;
        let eps = TruncOp::from_fn(ctx, |i, j| {
            let (mi, ai) = (ctx.mode_of(i), ctx.component_of(i));
            let (mj, aj) = (ctx.mode_of(j), ctx.component_of(j));
            match (ai, aj) {
                (0, 1) => g0[(mi, mj)],
                (1, 0) => g0[(mj, mi)].conj(),
                _ => c64::new(0.0, 0.0),
            }
        });
        Ok(Self { ctx, gamma, eps, g0 })
    }

    /// Two copies of a circle space with `g₀ = sign(D₀)`.
    pub fn doubled(base: &TruncationContext) -> Result<Self> {
        let eps_s = make_polarization(base);
        Self::with_reference(base, eps_s.mat().clone())
    }

    /// Random reference unitary on `num_modes(base)` modes.
    pub fn random(base: &TruncationContext, rng: &mut impl Rng) -> Result<Self> {
        Self::with_reference(base, random_unitary(base.num_modes(), rng))
    }

    pub fn ctx(&self) -> &TruncationContext {
        &self.ctx
    }

    pub fn gamma(&self) -> &TruncOp {
        &self.gamma
    }

    pub fn eps(&self) -> &TruncOp {
        &self.eps
    }

    pub fn reference(&self) -> &CMat {
        &self.g0
    }

    pub fn num_modes(&self) -> usize {
        self.g0.nrows()
    }

    /// Largest of `‖ε² − 1‖`, `‖Γ² − 1‖`, `‖εΓ + Γε‖` (max-abs).
    pub fn structure_residual(&self) -> f64 {
        let one = TruncOp::identity(self.ctx);
        let e2 = (&(&self.eps * &self.eps) - &one).max_abs();
        let g2 = (&(&self.gamma * &self.gamma) - &one).max_abs();
        let anti = self.eps.anticommutator(&self.gamma).map(|x| x.max_abs()).unwrap_or(f64::INFINITY);
        e2.max(g2).max(anti)
    }

    /// `diag(Ω₊, Ω₋)` in the chirality decomposition.
    pub fn block_diagonal(&self, plus: &CMat, minus: &CMat) -> Result<TruncOp> {
        let m = self.num_modes();
        for b in [plus, minus] {
            if b.nrows() != m || b.ncols() != m {
                return Err(Error::Shape(format!("chirality blocks must be {m}×{m}")));
            }
        }
        let ctx = self.ctx;
        Ok(TruncOp::from_fn(ctx, |i, j| {
            let (mi, ai) = (ctx.mode_of(i), ctx.component_of(i));
            let (mj, aj) = (ctx.mode_of(j), ctx.component_of(j));
            match (ai, aj) {
                (0, 0) => plus[(mi, mj)],
                (1, 1) => minus[(mi, mj)],
                _ => c64::new(0.0, 0.0),
            }
        }))
    }

    /// `(Ω₊, Ω₋)` as mode-space matrices.
    pub fn blocks(&self, op: &TruncOp) -> Result<(CMat, CMat)> {
        if op.ctx() != &self.ctx {
            return Err(Error::ContextMismatch);
        }
        let m = self.num_modes();
        let plus: Vec<usize> = (0..m).map(|k| self.ctx.basis_index(k, 0)).collect();
        let minus: Vec<usize> = (0..m).map(|k| self.ctx.basis_index(k, 1)).collect();
        Ok((op.block(&plus, &plus), op.block(&minus, &minus)))
    }

    /// Max-abs size of the chirality-changing blocks of `op`, i.e. of `[Γ, op]/2`.
    pub fn grading_defect(&self, op: &TruncOp) -> Result<f64> {
        Ok(self.gamma.commutator(op)?.max_abs() * 0.5)
    }

    /// `Ω_s ⊕ Ω_s` for a scalar circle operator on the base context.
    pub fn doubled_value(&self, omega_s: &CocycleValue) -> Result<CocycleValue> {
        let m = omega_s.op.mat().clone();
        let op = self.block_diagonal(&m, &m)?;
        Ok(CocycleValue { op, params: omega_s.params, window: omega_s.window })
    }

    /// Block-diagonal unitary with `Ω₊ = g₀Ω₋g₀⁻¹`, i.e. commuting with `ε`.
    pub fn compatible(&self, minus: &CMat) -> Result<TruncOp> {
        let plus = &self.g0 * minus * self.g0.adjoint();
        self.block_diagonal(&plus, minus)
    }

    /// Random unitary `Ω` with `Ω₊ = g₀Ω₋ z g₀⁻¹`, `z = exp(scale·X)` and `X`
    /// anti-hermitian of rank at most `rank`.
    pub fn random_uu1(&self, rank: usize, scale: f64, rng: &mut impl Rng) -> Result<TruncOp> {
        let m = self.num_modes();
        let minus = random_unitary(m, rng);
        let r = rank.min(m);
        let small = random_antihermitian(r, rng);
        let basis = random_unitary(m, rng);
        let v = basis.subcols(0, r);
        let x = v * &small * v.adjoint();
        let z = expm_mat(&(faer::Scale(c64::new(scale, 0.0)) * &x))?;
        let plus = &self.g0 * &minus * &z * self.g0.adjoint();
        self.block_diagonal(&plus, &minus)
    }
}

/// `‖Ω₊ − g₀Ω₋g₀⁻¹‖₁`.
pub fn lemma2_residual(omega: &CocycleValue, fixture: &EvenCaseFixture) -> Result<f64> {
    if !omega.op.ctx().is_graded() {
        return Err(Error::Ungraded);
    }
    let (plus, minus) = fixture.blocks(&omega.op)?;
    let g0 = fixture.reference();
    schatten1(&(plus - g0 * minus * g0.adjoint()))
}

/// `z = (g₀Ω₋)⁻¹Ω₊g₀` and `‖z − 1‖₁`.
pub fn uu1_coordinates(omega: &CocycleValue, fixture: &EvenCaseFixture) -> Result<(CMat, f64)> {
    if !omega.op.ctx().is_graded() {
        return Err(Error::Ungraded);
    }
    let (plus, minus) = fixture.blocks(&omega.op)?;
    let g0 = fixture.reference();
    let smin = singular_values(&minus)?;
    if smin.last().map_or(true, |&s| s <= 1e-12 * smin[0].max(1.0)) {
        return Err(Error::Singular);
    }
    let z = lu_inverse(&(g0 * &minus))? * plus * g0;
    let m = z.nrows();
    let dist = schatten1(&(&z - CMat::identity(m, m)))?;
    Ok((z, dist))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::rng;
    use crate::renorm::FlowParams;

    fn base() -> TruncationContext {
        TruncationContext::half_integer(6, 1).unwrap()
    }

    #[test]
    fn structure_holds() {
        let f = EvenCaseFixture::doubled(&base()).unwrap();
        assert!(f.structure_residual() < 1e-14);
        let g = EvenCaseFixture::random(&base(), &mut rng(1)).unwrap();
        assert!(g.structure_residual() < 1e-12);
    }

    #[test]
    fn identity_has_trivial_coordinates() {
        let f = EvenCaseFixture::random(&base(), &mut rng(2)).unwrap();
        let one = CocycleValue::new(TruncOp::identity(*f.ctx()), FlowParams::new(0));
        assert!(lemma2_residual(&one, &f).unwrap() < 1e-12);
        let (z, d) = uu1_coordinates(&one, &f).unwrap();
        assert!(d < 1e-12);
        assert!((z - CMat::identity(12, 12)).norm_max() < 1e-12);
    }

    #[test]
    fn compatible_values_commute_with_eps() {
        let f = EvenCaseFixture::random(&base(), &mut rng(3)).unwrap();
        let minus = random_unitary(12, &mut rng(4));
        let op = f.compatible(&minus).unwrap();
        assert!(f.eps().commutator(&op).unwrap().max_abs() < 1e-12);
        let v = CocycleValue::new(op, FlowParams::new(0));
        assert!(lemma2_residual(&v, &f).unwrap() < 1e-12);
    }

    #[test]
    fn uu1_distance_matches_svd() {
        let f = EvenCaseFixture::random(&base(), &mut rng(5)).unwrap();
        let op = f.random_uu1(2, 0.3, &mut rng(6)).unwrap();
        assert!(op.unitary_residual() < 1e-10);
        let v = CocycleValue::new(op, FlowParams::new(0));
        let (z, d) = uu1_coordinates(&v, &f).unwrap();
        let sv = (z - CMat::identity(12, 12)).singular_values().unwrap();
        let direct: f64 = sv.iter().sum();
        assert!((d - direct).abs() < 1e-10);
        // At most 4 singular values of a rank-4 perturbation.
        assert!(sv[4] < 1e-10);
    }
}
