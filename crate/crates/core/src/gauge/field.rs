use faer::c64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fixtures::random_antihermitian;
use crate::opcore::{mult_op, CMat, GridFunction, MatrixSymbol, TruncOp, TruncationContext};

/// Tolerance for pointwise anti-hermiticity of stored samples.
pub const ALGEBRA_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algebra {
    U1,
    Su2,
}

impl Algebra {
    pub fn dim(self) -> usize {
        match self {
            Algebra::U1 => 1,
            Algebra::Su2 => 2,
        }
    }

    /// Real dimension of the Lie algebra.
    pub fn real_dim(self) -> usize {
        match self {
            Algebra::U1 => 1,
            Algebra::Su2 => 3,
        }
    }

    /// Basis `i` for `u(1)` and `iσ₁, iσ₂, iσ₃` for `su(2)`.
    pub fn basis(self) -> Vec<CMat> {
        let i = c64::new(0.0, 1.0);
        match self {
            Algebra::U1 => vec![CMat::from_fn(1, 1, |_, _| i)],
            Algebra::Su2 => pauli().iter().map(|s| faer::Scale(i) * s).collect(),
        }
    }

    /// Real coordinates of an algebra element in [`Algebra::basis`].
    pub fn coordinates(self, x: &CMat) -> Vec<f64> {
        match self {
            Algebra::U1 => vec![x[(0, 0)].im],
            // x = i Σ x_a σ_a  ⇒  x_a = tr(σ_a x) / 2i
            Algebra::Su2 => pauli()
                .iter()
                .map(|s| {
                    let t = (s * x)[(0, 0)] + (s * x)[(1, 1)];
                    (t / c64::new(0.0, 2.0)).re
                })
                .collect(),
        }
    }

    pub fn from_coordinates(self, coords: &[f64]) -> CMat {
        let d = self.dim();
        let mut out = CMat::zeros(d, d);
        for (b, &x) in self.basis().iter().zip(coords) {
            out += faer::Scale(c64::new(x, 0.0)) * b;
        }
        out
    }
}

/// The Pauli matrices `σ₁, σ₂, σ₃`.
pub fn pauli() -> [CMat; 3] {
    let z = c64::new(0.0, 0.0);
    let o = c64::new(1.0, 0.0);
    let i = c64::new(0.0, 1.0);
    let m = |a: [c64; 4]| CMat::from_fn(2, 2, |r, c| a[2 * r + c]);
    [m([z, o, o, z]), m([z, -i, i, z]), m([o, z, z, -o])]
}

/// A Lie-algebra-valued function on the circle, used both for connections
/// `A = a dφ` and for tangent vectors and infinitesimal gauge parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct GaugeField {
    algebra: Algebra,
    values: GridFunction,
}

fn antihermitian_residual(m: &CMat) -> f64 {
    (m + m.adjoint()).norm_max()
}

impl GaugeField {
    pub fn new(algebra: Algebra, values: GridFunction) -> Result<Self> {
        if values.dim() != algebra.dim() {
            return Err(Error::Shape(format!(
                "{algebra:?} needs {}x{} samples",
                algebra.dim(),
                algebra.dim()
            )));
        }
        for s in values.samples() {
            let r = antihermitian_residual(s);
            if r > ALGEBRA_TOL * (1.0 + s.norm_max()) {
                return Err(Error::InvalidParameter(format!(
                    "sample not anti-hermitian (residual {r:.3e})"
                )));
            }
            if algebra == Algebra::Su2 && (s[(0, 0)] + s[(1, 1)]).norm() > ALGEBRA_TOL * (1.0 + s.norm_max()) {
                return Err(Error::InvalidParameter("su(2) sample not traceless".into()));
            }
        }
        Ok(Self { algebra, values })
    }

    /// Projects arbitrary samples onto the algebra (anti-hermitian, traceless
    /// for `su(2)`). Used to clean roundoff after grid arithmetic.
    pub fn projected(algebra: Algebra, values: &GridFunction) -> Result<Self> {
        let values = values.map(|s| project(algebra, s));
        Self::new(algebra, values)
    }

    pub fn from_symbol(algebra: Algebra, sym: &MatrixSymbol, grid: usize) -> Result<Self> {
        Self::projected(algebra, &sym.to_grid(grid)?)
    }

    pub fn from_fn(algebra: Algebra, grid: usize, f: impl Fn(f64) -> CMat) -> Result<Self> {
        Self::new(algebra, GridFunction::from_fn(grid, f)?)
    }

    pub fn zero(algebra: Algebra, grid: usize) -> Result<Self> {
        let d = algebra.dim();
        Self::from_fn(algebra, grid, |_| CMat::zeros(d, d))
    }

    /// Random band-limited field `Σ_{1≤k≤b} (c_k e^{ikφ} − c_k* e^{−ikφ}) + c₀`.
    pub fn random(algebra: Algebra, band: usize, grid: usize, amplitude: f64, rng: &mut impl Rng) -> Result<Self> {
        let d = algebra.dim();
        let mut coeffs = vec![CMat::zeros(d, d); 2 * band + 1];
        coeffs[band] = project(algebra, &random_antihermitian(d, rng));
        for k in 1..=band {
            let c = project_free(algebra, &crate::fixtures::random_matrix(d, rng));
            coeffs[band - k] = faer::Scale(c64::new(-1.0, 0.0)) * c.adjoint();
            coeffs[band + k] = c;
        }
        let sym = MatrixSymbol::new(d, band, coeffs)?.scale(c64::new(amplitude, 0.0));
        Self::from_symbol(algebra, &sym, grid)
    }

    pub fn algebra(&self) -> Algebra {
        self.algebra
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn grid_size(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &GridFunction {
        &self.values
    }

    pub fn sample(&self, j: usize) -> &CMat {
        self.values.sample(j)
    }

    pub fn symbol(&self) -> MatrixSymbol {
        self.values.symbol()
    }

    /// Interaction operator `−i·a` on the truncated space, so that the
    /// coupled Dirac operator is `D₀ + H_A`. Fourier modes too high to
    /// connect two retained modes are dropped, which is exactly the
    /// compression of the multiplication operator.
    pub fn interaction(&self, ctx: &TruncationContext) -> Result<TruncOp> {
        let sym = self.values.symbol().scale(c64::new(0.0, -1.0));
        let reach = ctx.num_modes() - 1;
        mult_op(&sym.with_band(sym.band().min(reach)), ctx)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.algebra != other.algebra {
            return Err(Error::GroupMismatch(format!("{:?} vs {:?}", self.algebra, other.algebra)));
        }
        if self.grid_size() != other.grid_size() {
            return Err(Error::Shape("fields live on different grids".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Self::projected(self.algebra, &self.values.add(&other.values)?)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Self::projected(self.algebra, &self.values.sub(&other.values)?)
    }

    pub fn scale(&self, c: f64) -> Self {
        Self { algebra: self.algebra, values: self.values.scale(c64::new(c, 0.0)) }
    }

    /// `self + t·other`.
    pub fn axpy(&self, t: f64, other: &Self) -> Result<Self> {
        self.add(&other.scale(t))
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.check(other)?;
        self.values.max_abs_diff(&other.values)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.max_abs()
    }

    /// Real coordinates at each grid point, point-major.
    pub fn coordinates(&self) -> Vec<f64> {
        self.values
            .samples()
            .iter()
            .flat_map(|s| self.algebra.coordinates(s))
            .collect()
    }

    pub fn from_coordinates(algebra: Algebra, grid: usize, x: &[f64]) -> Result<Self> {
        let r = algebra.real_dim();
        if x.len() != r * grid {
            return Err(Error::Shape("coordinate vector has the wrong length".into()));
        }
        Self::new(
            algebra,
            GridFunction::new((0..grid).map(|j| algebra.from_coordinates(&x[j * r..(j + 1) * r])).collect())?,
        )
    }
}

/// Nearest algebra element: anti-hermitian part, traceless for `su(2)`.
pub fn project(algebra: Algebra, m: &CMat) -> CMat {
    let mut a = faer::Scale(c64::new(0.5, 0.0)) * (m - m.adjoint());
    if algebra == Algebra::Su2 {
        let t = (a[(0, 0)] + a[(1, 1)]) * 0.5;
        a[(0, 0)] -= t;
        a[(1, 1)] -= t;
    }
    a
}

/// Removes the trace for `su(2)`; leaves `u(1)` data untouched.
fn project_free(algebra: Algebra, m: &CMat) -> CMat {
    let mut a = m.clone();
    if algebra == Algebra::Su2 {
        let t = (a[(0, 0)] + a[(1, 1)]) * 0.5;
        a[(0, 0)] -= t;
        a[(1, 1)] -= t;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::rng;

    #[test]
    fn coordinates_round_trip() {
        let mut r = rng(2);
        for alg in [Algebra::U1, Algebra::Su2] {
            let f = GaugeField::random(alg, 3, 32, 1.0, &mut r).unwrap();
            let back = GaugeField::from_coordinates(alg, 32, &f.coordinates()).unwrap();
            assert!(f.max_abs_diff(&back).unwrap() < 1e-14);
        }
    }

    #[test]
    fn pauli_relations() {
        let [s1, s2, s3] = pauli();
        let i = c64::new(0.0, 1.0);
        assert!((&s1 * &s2 - faer::Scale(i) * &s3).norm_max() < 1e-15);
        assert!((&s3 * &s3 - CMat::identity(2, 2)).norm_max() < 1e-15);
    }

    #[test]
    fn random_field_is_in_algebra() {
        let mut r = rng(5);
        let f = GaugeField::random(Algebra::Su2, 4, 64, 0.5, &mut r).unwrap();
        assert_eq!(f.symbol().band(), 4);
    }
}
