use faer::c64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::field::{Algebra, GaugeField};
use crate::error::{Error, Result};
use crate::fixtures::random_unitary;
use crate::opcore::{CMat, GridFunction, MatrixSymbol, Multiplier};

pub const GROUP_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Group {
    U1,
    SU2,
}

impl Group {
    pub fn dim(self) -> usize {
        match self {
            Group::U1 => 1,
            Group::SU2 => 2,
        }
    }

    pub fn algebra(self) -> Algebra {
        match self {
            Group::U1 => Algebra::U1,
            Group::SU2 => Algebra::Su2,
        }
    }
}

fn det2(m: &CMat) -> c64 {
    m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)]
}

/// A unitary-matrix-valued map on the circle, sampled on a grid.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupMap {
    group: Group,
    samples: GridFunction,
    band: usize,
    based: bool,
}

impl GroupMap {
    pub fn new(group: Group, samples: GridFunction) -> Result<Self> {
        let d = group.dim();
        if samples.dim() != d {
            return Err(Error::Shape(format!("{group:?} needs {d}x{d} samples")));
        }
        for s in samples.samples() {
            let r = (s.adjoint() * s - CMat::identity(d, d)).norm_max();
            if r > GROUP_TOL {
                return Err(Error::NotUnitary(r));
            }
            if group == Group::SU2 {
                let e = (det2(s) - c64::new(1.0, 0.0)).norm();
                if e > GROUP_TOL {
                    return Err(Error::InvalidParameter(format!("determinant off by {e:.3e}")));
                }
            }
        }
        let band = samples.symbol().band();
        let based = (samples.sample(0) - CMat::identity(d, d)).norm_max() <= GROUP_TOL;
        Ok(Self { group, samples, band, based })
    }

    pub fn from_fn(group: Group, grid: usize, f: impl Fn(f64) -> CMat) -> Result<Self> {
        Self::new(group, GridFunction::from_fn(grid, f)?)
    }

    pub fn identity(group: Group, grid: usize) -> Result<Self> {
        let d = group.dim();
        Self::from_fn(group, grid, |_| CMat::identity(d, d))
    }

    /// `e^{inφ}` in `U(1)`.
    pub fn u1_winding(n: i64, grid: usize) -> Result<Self> {
        Self::from_fn(Group::U1, grid, |p| CMat::from_fn(1, 1, |_, _| c64::from_polar(1.0, n as f64 * p)))
    }

    /// Constant map.
    pub fn constant(group: Group, grid: usize, g: CMat) -> Result<Self> {
        Self::from_fn(group, grid, |_| g.clone())
    }

    /// Random band-limited based loop in `SU(2)`: a product of `factors`
    /// conjugated one-parameter loops `V diag(e^{ikφ}, e^{−ikφ}) V*` with
    /// `|k| ≤ 1`, normalised to be the identity at `φ = 0`.
    pub fn random_su2(factors: usize, grid: usize, rng: &mut impl Rng) -> Result<Self> {
        let mut parts = Vec::with_capacity(factors);
        for _ in 0..factors {
            let v = random_unitary(2, rng);
            let k: i64 = if rng.gen_bool(0.5) { 1 } else { -1 };
            parts.push((v, k));
        }
        let raw = GridFunction::from_fn(grid, |p| {
            let mut acc = CMat::identity(2, 2);
            for (v, k) in &parts {
                let e = c64::from_polar(1.0, *k as f64 * p);
                let d = CMat::from_fn(2, 2, |i, j| {
                    if i != j { c64::new(0.0, 0.0) } else if i == 0 { e } else { e.conj() }
                });
                acc = &acc * &(v * &d * v.adjoint());
            }
            acc
        })?;
        let h0inv = raw.sample(0).adjoint().to_owned();
        Self::new(Group::SU2, raw.map(|s| s * &h0inv))
    }

    pub fn group(&self) -> Group {
        self.group
    }

    pub fn dim(&self) -> usize {
        self.group.dim()
    }

    pub fn grid_size(&self) -> usize {
        self.samples.len()
    }

    pub fn band(&self) -> usize {
        self.band
    }

    pub fn is_based(&self) -> bool {
        self.based
    }

    pub fn samples(&self) -> &GridFunction {
        &self.samples
    }

    pub fn sample(&self, j: usize) -> &CMat {
        self.samples.sample(j)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.group != other.group {
            return Err(Error::GroupMismatch(format!("{:?} vs {:?}", self.group, other.group)));
        }
        if self.grid_size() != other.grid_size() {
            return Err(Error::Shape("maps live on different grids".into()));
        }
        Ok(())
    }

    /// Pointwise product `(self·other)(φ)`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Self::new(self.group, self.samples.mul(&other.samples)?)
    }

    pub fn inverse(&self) -> Self {
        Self { group: self.group, samples: self.samples.adjoint(), band: self.band, based: self.based }
    }

    /// Spectral derivative `h′` on the grid.
    pub fn derivative(&self) -> GridFunction {
        self.samples.derivative()
    }

    /// Maurer–Cartan field `h⁻¹h′`.
    pub fn maurer_cartan(&self) -> Result<GaugeField> {
        GaugeField::projected(self.group.algebra(), &self.samples.adjoint().mul(&self.derivative())?)
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.check(other)?;
        self.samples.max_abs_diff(&other.samples)
    }
}

impl Multiplier for GroupMap {
    fn to_symbol(&self) -> Result<MatrixSymbol> {
        Ok(self.samples.symbol())
    }
}

/// `exp` of an algebra-valued field, pointwise.
pub fn exp_field(x: &GaugeField, group: Group) -> Result<GroupMap> {
    if x.algebra() != group.algebra() {
        return Err(Error::GroupMismatch(format!("{:?} vs {group:?}", x.algebra())));
    }
    let samples = x.values().samples().iter().map(crate::opcore::expm_mat).collect::<Result<Vec<_>>>()?;
    GroupMap::new(group, GridFunction::new(samples)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::rng;

    #[test]
    fn random_su2_is_based_and_band_limited() {
        let mut r = rng(9);
        let h = GroupMap::random_su2(3, 64, &mut r).unwrap();
        assert!(h.is_based());
        assert!(h.band() <= 3);
    }

    #[test]
    fn winding_maurer_cartan() {
        let h = GroupMap::u1_winding(3, 32).unwrap();
        let mc = h.maurer_cartan().unwrap();
        for j in 0..32 {
            assert!((mc.sample(j)[(0, 0)] - c64::new(0.0, 3.0)).norm() < 1e-12);
        }
        assert_eq!(h.band(), 3);
    }

    #[test]
    fn rejects_non_unitary() {
        let g = GridFunction::from_fn(8, |_| CMat::from_fn(1, 1, |_, _| c64::new(2.0, 0.0))).unwrap();
        assert!(matches!(GroupMap::new(Group::U1, g), Err(Error::NotUnitary(_))));
    }
}
