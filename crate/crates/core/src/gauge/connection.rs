//! Gauge action, covariant derivative and the connection form on the space
//! of gauge fields.

use faer::linalg::solvers::SolveLstsq;
use faer::{c64, Mat};

use super::field::GaugeField;
use super::group::GroupMap;
use crate::error::{Error, Result};
use crate::opcore::{CMat, GridFunction};

/// Residual above which the connection solve is reported as failed.
pub const SOLVE_TOL: f64 = 1e-8;

fn check_compatible(a: &GaugeField, h: &GroupMap) -> Result<()> {
    if a.algebra() != h.group().algebra() {
        return Err(Error::GroupMismatch(format!("{:?} field vs {:?} map", a.algebra(), h.group())));
    }
    if a.grid_size() != h.grid_size() {
        return Err(Error::Shape("field and map live on different grids".into()));
    }
    Ok(())
}

/// Right action `A^h = h⁻¹ a h + h⁻¹ h′`.
pub fn gauge_action(a: &GaugeField, h: &GroupMap) -> Result<GaugeField> {
    check_compatible(a, h)?;
    let hinv = h.samples().adjoint();
    let conj = hinv.mul(a.values())?.mul(h.samples())?;
    let mc = hinv.mul(&h.derivative())?;
    GaugeField::projected(a.algebra(), &conj.add(&mc)?)
}

/// Adjoint action `h⁻¹ X h` on tangent vectors.
pub fn adjoint_action(x: &GaugeField, h: &GroupMap) -> Result<GaugeField> {
    check_compatible(x, h)?;
    let v = h.samples().adjoint().mul(x.values())?.mul(h.samples())?;
    GaugeField::projected(x.algebra(), &v)
}

/// `D^A X = X′ + [a, X]`.
pub fn covariant_derivative(a: &GaugeField, x: &GaugeField) -> Result<GaugeField> {
    if a.algebra() != x.algebra() || a.grid_size() != x.grid_size() {
        return Err(Error::GroupMismatch("field and argument differ".into()));
    }
    let v = x.values().derivative().add(&a.values().commutator(x.values())?)?;
    GaugeField::projected(a.algebra(), &v)
}

/// Fourth-order central differences on the periodic grid.
pub fn fd4_derivative(f: &GridFunction) -> GridFunction {
    let m = f.len();
    let h = 2.0 * std::f64::consts::PI / m as f64;
    let s = |j: isize| f.sample(j.rem_euclid(m as isize) as usize);
    let samples = (0..m as isize)
        .map(|j| {
            let num = s(j - 2) - s(j + 2) + faer::Scale(faer::c64::new(8.0, 0.0)) * (s(j + 1) - s(j - 1));
            faer::Scale(faer::c64::new(1.0 / (12.0 * h), 0.0)) * num
        })
        .collect();
    GridFunction::new(samples).expect("same grid")
}

/// Real matrix of `D^A` in pointwise Lie-algebra coordinates: the spectral
/// derivative on each coordinate plus the pointwise `ad(a)` blocks.
fn covariant_matrix(a: &GaugeField) -> Result<Mat<f64>> {
    let m = a.grid_size();
    let alg = a.algebra();
    let r = alg.real_dim();
    let mut out = Mat::<f64>::zeros(m * r, m * r);
    for k in 0..m {
        let unit = GridFunction::from_fn(m, |_| CMat::zeros(1, 1))?;
        let mut samples = unit.samples().to_vec();
        samples[k][(0, 0)] = c64::new(1.0, 0.0);
        let col = GridFunction::new(samples)?.derivative();
        for j in 0..m {
            let v = col.sample(j)[(0, 0)].re;
            for c in 0..r {
                out[(j * r + c, k * r + c)] = v;
            }
        }
    }
    let basis = alg.basis();
    for j in 0..m {
        let aj = a.sample(j);
        for (c, e) in basis.iter().enumerate() {
            let comm = aj * e - e * aj;
            for (row, v) in alg.coordinates(&comm).into_iter().enumerate() {
                out[(j * r + row, j * r + c)] += v;
            }
        }
    }
    Ok(out)
}

fn column(v: &[f64]) -> Mat<f64> {
    Mat::<f64>::from_fn(v.len(), 1, |i, _| v[i])
}

/// Minimum-norm least-squares solution via a truncated SVD.
fn lstsq_pinv(a: &Mat<f64>, b: &[f64]) -> Result<Vec<f64>> {
    let svd = a.thin_svd().map_err(|e| Error::Linalg(format!("{e:?}")))?;
    let s = svd.S().column_vector();
    let cut = 1e-12 * s[0].max(f64::MIN_POSITIVE);
    let mut coef = svd.U().transpose() * column(b);
    for k in 0..s.nrows() {
        coef[(k, 0)] = if s[k] > cut { coef[(k, 0)] / s[k] } else { 0.0 };
    }
    let x = svd.V() * coef;
    Ok((0..x.nrows()).map(|i| x[(i, 0)]).collect())
}

fn residual(a: &Mat<f64>, x: &[f64], b: &[f64]) -> f64 {
    let scale = b.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    let ax = a * column(x);
    let worst = (0..a.nrows()).map(|i| (ax[(i, 0)] - b[i]).abs()).fold(0.0, f64::max);
    worst / scale
}

/// Solves `(D^A)² X = D^A B`. With `based`, the unknowns at the base point
/// are removed so that `X(0) = 0`. Alternating-sign rows remove the
/// Nyquist mode, which the spectral derivative cannot see.
fn solve_laplace(a: &GaugeField, b: &GaugeField, based: bool) -> Result<(GaugeField, f64)> {
    let m = a.grid_size();
    let r = a.algebra().real_dim();
    let da = covariant_matrix(a)?;
    let lap = &da * &da;
    let rhs_full = covariant_derivative(a, b)?.coordinates();
    let first = if based { 1 } else { 0 };
    let cols: Vec<usize> = (first * r..m * r).collect();
    let rows = m * r + r;
    let mut sys = Mat::<f64>::zeros(rows, cols.len());
    for (c, &col) in cols.iter().enumerate() {
        for i in 0..m * r {
            sys[(i, c)] = lap[(i, col)];
        }
        let (j, comp) = (col / r, col % r);
        sys[(m * r + comp, c)] = if j % 2 == 0 { 1.0 } else { -1.0 };
    }
    let mut rhs = rhs_full;
    rhs.extend(std::iter::repeat(0.0).take(r));
    let x = if based {
        let rhs_mat = Mat::<f64>::from_fn(rows, 1, |i, _| rhs[i]);
        let sol = sys.qr().solve_lstsq(&rhs_mat);
        (0..cols.len()).map(|i| sol[(i, 0)]).collect::<Vec<_>>()
    } else {
        lstsq_pinv(&sys, &rhs)?
    };
    let res = residual(&sys, &x, &rhs);
    let mut full = vec![0.0; m * r];
    for (c, &col) in cols.iter().enumerate() {
        full[col] = x[c];
    }
    Ok((GaugeField::from_coordinates(a.algebra(), m, &full)?, res))
}

/// Connection form `θ_A(B) = Δ_A⁻¹ D^A B` on based gauge parameters.
pub fn as_connection_theta(a: &GaugeField, b: &GaugeField) -> Result<GaugeField> {
    let (x, res) = solve_laplace(a, b, true)?;
    if !(res <= SOLVE_TOL) {
        return Err(Error::ConnectionSolve(res));
    }
    Ok(x)
}

/// Horizontal part `B − D^A X` of a tangent vector, with `X` solving the
/// unconstrained normal equation; the result satisfies `D^A B_h = 0`.
pub fn horizontal_projection(a: &GaugeField, b: &GaugeField) -> Result<GaugeField> {
    let (x, res) = solve_laplace(a, b, false)?;
    if !(res <= SOLVE_TOL) {
        return Err(Error::ConnectionSolve(res));
    }
    b.sub(&covariant_derivative(a, &x)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::rng;
    use crate::gauge::field::{pauli, Algebra};
    use crate::gauge::group::Group;

    fn xi() -> CMat {
        faer::Scale(c64::new(0.0, 1.0)) * &pauli()[2]
    }

    #[test]
    fn constant_u1_gauge_is_trivial() {
        let mut r = rng(1);
        let a = GaugeField::random(Algebra::U1, 3, 32, 1.0, &mut r).unwrap();
        let h = GroupMap::constant(Group::U1, 32, CMat::from_fn(1, 1, |_, _| c64::from_polar(1.0, 0.7))).unwrap();
        assert!(gauge_action(&a, &h).unwrap().max_abs_diff(&a).unwrap() < 1e-13);
    }

    #[test]
    fn maurer_cartan_from_zero() {
        let a = GaugeField::zero(Algebra::U1, 32).unwrap();
        let h = GroupMap::u1_winding(2, 32).unwrap();
        let ah = gauge_action(&a, &h).unwrap();
        for j in 0..32 {
            assert!((ah.sample(j)[(0, 0)] - c64::new(0.0, 2.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn free_covariant_derivative() {
        let a = GaugeField::zero(Algebra::Su2, 64).unwrap();
        let x = GaugeField::from_fn(Algebra::Su2, 64, |p| faer::Scale(c64::new(p.sin(), 0.0)) * xi()).unwrap();
        let dx = covariant_derivative(&a, &x).unwrap();
        let want = GaugeField::from_fn(Algebra::Su2, 64, |p| faer::Scale(c64::new(p.cos(), 0.0)) * xi()).unwrap();
        assert!(dx.max_abs_diff(&want).unwrap() < 1e-12);
    }

    #[test]
    fn free_connection_inverts_fourier() {
        let a = GaugeField::zero(Algebra::Su2, 64).unwrap();
        let b = GaugeField::from_fn(Algebra::Su2, 64, |p| faer::Scale(c64::new(p.cos(), 0.0)) * xi()).unwrap();
        let x = as_connection_theta(&a, &b).unwrap();
        let want = GaugeField::from_fn(Algebra::Su2, 64, |p| faer::Scale(c64::new(p.sin(), 0.0)) * xi()).unwrap();
        assert!(x.max_abs_diff(&want).unwrap() < 1e-8);
    }
}
