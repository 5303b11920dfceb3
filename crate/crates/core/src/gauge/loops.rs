//! Loop families `g(n̂)(φ) = exp(i f(φ) n̂·σ)` in SU(2).

use std::f64::consts::{PI, TAU};

use faer::c64;
use serde::{Deserialize, Serialize};

use super::group::{Group, GroupMap};
use crate::error::{Error, Result};
use crate::opcore::CMat;

/// Profile `f(φ) = wφ + b sin φ`; `f(0) = 0` and `f(2π) = 2πw`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LoopProfile {
    pub winding: f64,
    pub wobble: f64,
}

impl LoopProfile {
    pub fn new(winding: f64, wobble: f64) -> Self {
        Self { winding, wobble }
    }

    pub fn linear(n: i64) -> Self {
        Self::new(n as f64, 0.0)
    }

    pub fn f(&self, phi: f64) -> f64 {
        self.winding * phi + self.wobble * phi.sin()
    }

    pub fn df(&self, phi: f64) -> f64 {
        self.winding + self.wobble * phi.cos()
    }

    /// Samples of `f` on `M` points of `[0, 2π)`.
    pub fn samples(&self, m: usize) -> Vec<f64> {
        (0..m).map(|j| self.f(TAU * j as f64 / m as f64)).collect()
    }

    fn integer_winding(&self) -> Option<i64> {
        let r = self.winding.round();
        ((self.winding - r).abs() <= 1e-12).then_some(r as i64)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LoopVariant {
    /// `g(n̂)(φ) = exp(i f(φ) n̂·σ)` on the whole circle.
    Standard,
    /// The profile runs over `[0, π]` only, reaching `±1` at `φ = π`; the
    /// loop closes along the fixed path `exp(i w (2π − φ) σ₃)`.
    OddPath,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LoopFamily {
    pub profile: LoopProfile,
    pub variant: LoopVariant,
}

/// Fixed-size 2×2 complex matrix, row-major.
pub type Mat2 = [[c64; 2]; 2];

pub fn mat2_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[c64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

pub fn mat2_adjoint(a: &Mat2) -> Mat2 {
    [[a[0][0].conj(), a[1][0].conj()], [a[0][1].conj(), a[1][1].conj()]]
}

pub fn mat2_to_cmat(a: &Mat2) -> CMat {
    CMat::from_fn(2, 2, |i, j| a[i][j])
}

/// `x·1 + i y (v·σ)`.
fn su2_combination(x: f64, y: f64, v: &[f64; 3]) -> Mat2 {
    [
        [c64::new(x, y * v[2]), c64::new(y * v[1], y * v[0])],
        [c64::new(-y * v[1], y * v[0]), c64::new(x, -y * v[2])],
    ]
}

fn closing_path(w: f64, phi: f64) -> Mat2 {
    let a = w * (TAU - phi);
    let z = c64::new(0.0, 0.0);
    [[c64::from_polar(1.0, a), z], [z, c64::from_polar(1.0, -a)]]
}

impl LoopFamily {
    /// Validates closure: the profile must end on a central element.
    pub fn new(profile: LoopProfile, variant: LoopVariant) -> Result<Self> {
        if profile.integer_winding().is_none() {
            let end = match variant {
                LoopVariant::Standard => profile.f(TAU),
                LoopVariant::OddPath => profile.f(PI),
            };
            return Err(Error::UnclosedLoop(end));
        }
        Ok(Self { profile, variant })
    }

    pub fn standard(n: i64) -> Self {
        Self { profile: LoopProfile::linear(n), variant: LoopVariant::Standard }
    }

    pub fn odd(n: i64) -> Self {
        Self { profile: LoopProfile::linear(n), variant: LoopVariant::OddPath }
    }

    pub fn winding(&self) -> i64 {
        self.profile.integer_winding().expect("validated on construction")
    }

    /// Whether `g` depends on `n̂` at this `φ`.
    pub fn on_profile(&self, phi: f64) -> bool {
        match self.variant {
            LoopVariant::Standard => true,
            LoopVariant::OddPath => phi <= PI,
        }
    }

    /// The angle entering `exp(i f n̂·σ)`; the odd variant runs the profile
    /// at double speed so that it covers `[0, π]`.
    fn angle(&self, phi: f64) -> (f64, f64) {
        match self.variant {
            LoopVariant::Standard => (self.profile.f(phi), self.profile.df(phi)),
            LoopVariant::OddPath => (0.5 * self.profile.f(2.0 * phi), self.profile.df(2.0 * phi)),
        }
    }

    /// `f(φ)` and `f′(φ)` on the profile part.
    pub fn profile_at(&self, phi: f64) -> (f64, f64) {
        self.angle(phi)
    }

    pub fn value(&self, n: &[f64; 3], phi: f64) -> CMat {
        mat2_to_cmat(&self.value2(n, phi))
    }

    /// `∂_φ g`.
    pub fn d_phi(&self, n: &[f64; 3], phi: f64) -> CMat {
        mat2_to_cmat(&self.d_phi2(n, phi))
    }

    /// Derivative of `g` along a tangent vector `t` of the unit sphere at `n̂`.
    pub fn d_sphere(&self, t: &[f64; 3], phi: f64) -> CMat {
        mat2_to_cmat(&self.d_sphere2(t, phi))
    }

    pub fn value2(&self, n: &[f64; 3], phi: f64) -> Mat2 {
        if self.on_profile(phi) {
            let f = self.angle(phi).0;
            su2_combination(f.cos(), f.sin(), n)
        } else {
            closing_path(self.profile.winding, phi)
        }
    }

    pub fn d_phi2(&self, n: &[f64; 3], phi: f64) -> Mat2 {
        if self.on_profile(phi) {
            let (f, df) = self.angle(phi);
            su2_combination(-df * f.sin(), df * f.cos(), n)
        } else {
            let mut h = closing_path(self.profile.winding, phi);
            let w = c64::new(0.0, -self.profile.winding);
            h[0][0] *= w;
            h[1][1] *= -w;
            h
        }
    }

    pub fn d_sphere2(&self, t: &[f64; 3], phi: f64) -> Mat2 {
        if !self.on_profile(phi) {
            return [[c64::new(0.0, 0.0); 2]; 2];
        }
        su2_combination(0.0, self.angle(phi).0.sin(), t)
    }
}

/// Samples `g(n̂)` as a loop in SU(2).
pub fn loop_su2(fam: &LoopFamily, n: &[f64; 3], grid: usize) -> Result<GroupMap> {
    let norm = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
    if (norm - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidParameter(format!("|n̂| = {norm} is not 1")));
    }
    GroupMap::from_fn(Group::SU2, grid, |p| fam.value(n, p))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_and_diagonal_loops() {
        let z = [0.0, 0.0, 1.0];
        let g = loop_su2(&LoopFamily::standard(0), &z, 16).unwrap();
        assert!(g.max_abs_diff(&GroupMap::identity(Group::SU2, 16).unwrap()).unwrap() < 1e-15);
        let g = loop_su2(&LoopFamily::standard(1), &z, 16).unwrap();
        for j in 0..16 {
            let p = TAU * j as f64 / 16.0;
            assert!((g.sample(j)[(0, 0)] - c64::from_polar(1.0, p)).norm() < 1e-14);
            assert!((g.sample(j)[(1, 1)] - c64::from_polar(1.0, -p)).norm() < 1e-14);
        }
        assert!(g.is_based());
    }

    #[test]
    fn closure_and_validation() {
        let n = [0.6, 0.0, 0.8];
        let fam = LoopFamily::new(LoopProfile::new(2.0, 0.3), LoopVariant::Standard).unwrap();
        assert!((fam.value(&n, TAU) - CMat::identity(2, 2)).norm_max() < 1e-12);
        assert!(matches!(
            LoopFamily::new(LoopProfile::new(1.5, 0.0), LoopVariant::Standard),
            Err(Error::UnclosedLoop(_))
        ));
        assert!(loop_su2(&fam, &[1.0, 1.0, 0.0], 8).is_err());
    }

    #[test]
    fn odd_path_endpoints() {
        let fam = LoopFamily::odd(1);
        let n = [0.0, 0.6, 0.8];
        let minus = faer::Scale(c64::new(-1.0, 0.0)) * CMat::identity(2, 2);
        assert!((fam.value(&n, PI) - &minus).norm_max() < 1e-12);
        assert!((fam.value(&n, PI + 1e-12) - &minus).norm_max() < 1e-10);
        assert!((fam.value(&n, TAU) - CMat::identity(2, 2)).norm_max() < 1e-12);
    }

    #[test]
    fn derivative_matches_difference() {
        let fam = LoopFamily::new(LoopProfile::new(1.0, 0.4), LoopVariant::Standard).unwrap();
        let n = [0.48, 0.64, 0.6];
        let h = 1e-5;
        let fd = faer::Scale(c64::new(0.5 / h, 0.0)) * (fam.value(&n, 1.0 + h) - fam.value(&n, 1.0 - h));
        assert!((fd - fam.d_phi(&n, 1.0)).norm_max() < 1e-8);
    }
}
