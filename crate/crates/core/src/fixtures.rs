//! Seeded generators for test data: rough profiles, random band-limited
//! symbols and random unitaries.

use faer::c64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::gauge::{Algebra, GaugeField, Group, GroupMap};
use crate::opcore::{CMat, MatrixSymbol};

pub type Rng64 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian_c64(rng: &mut impl Rng) -> c64 {
    // Box–Muller; two normals make one complex sample.
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen();
    let r = (-2.0 * u1.ln()).sqrt();
    let t = std::f64::consts::TAU * u2;
    c64::new(r * t.cos(), r * t.sin()) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn random_matrix(d: usize, rng: &mut impl Rng) -> CMat {
    CMat::from_fn(d, d, |_, _| gaussian_c64(rng))
}

/// Real scalar profile `u_s` with `|û(k)| = (1+|k|)^{−s}` and random phases.
///
/// Phases are drawn in order of increasing `|k|`, so profiles with the same
/// seed agree on their common band.
pub fn rough_symbol(s: f64, band: usize, seed: u64) -> MatrixSymbol {
    let mut r = rng(seed);
    let mut coeffs = vec![c64::new(0.0, 0.0); 2 * band + 1];
    coeffs[band] = c64::new(1.0, 0.0);
    for k in 1..=band {
        let theta: f64 = r.gen_range(0.0..std::f64::consts::TAU);
        let c = c64::from_polar((1.0 + k as f64).powf(-s), theta);
        coeffs[band + k] = c;
        coeffs[band - k] = c.conj();
    }
    MatrixSymbol::scalar(&coeffs).expect("odd coefficient count")
}

/// Random symbol whose values are hermitian matrices, band `band`, with
/// coefficients decaying like `e^{−|k|/2}`.
pub fn random_hermitian_symbol(d: usize, band: usize, rng: &mut impl Rng) -> MatrixSymbol {
    let mut coeffs = vec![CMat::zeros(d, d); 2 * band + 1];
    let c0 = random_matrix(d, rng);
    coeffs[band] = faer::Scale(c64::new(0.5, 0.0)) * (&c0 + c0.adjoint());
    for k in 1..=band {
        let w = (-(k as f64) / 2.0).exp();
        let c = faer::Scale(c64::new(w, 0.0)) * random_matrix(d, rng);
        coeffs[band - k] = c.adjoint().to_owned();
        coeffs[band + k] = c;
    }
    MatrixSymbol::new(d, band, coeffs).expect("consistent shapes")
}

/// Haar-ish random unitary from the QR factor of a Gaussian matrix.
pub fn random_unitary(d: usize, rng: &mut impl Rng) -> CMat {
    let g = random_matrix(d, rng);
    let qr = g.qr();
    let q = qr.compute_Q();
    let r = qr.R();
    // Fix the phases so the distribution does not depend on QR conventions.
    CMat::from_fn(d, d, |i, j| {
        let rj = r[(j, j)];
        let ph = if rj.norm() > 0.0 { rj / rj.norm() } else { c64::new(1.0, 0.0) };
        q[(i, j)] * ph
    })
}

/// Random anti-hermitian matrix with entries of unit scale.
pub fn random_antihermitian(d: usize, rng: &mut impl Rng) -> CMat {
    let g = random_matrix(d, rng);
    faer::Scale(c64::new(0.5, 0.0)) * (&g - g.adjoint())
}

/// `u(1)` field `i·amp·Σ_{1≤k<grid/2} (1+k)^{−decay} cos(kφ + 0.7k²)`: smooth
/// but not band-limited, so the flow has work to do at every cutoff.
pub fn smooth_u1_field(grid: usize, decay: f64, amp: f64) -> Result<GaugeField> {
    GaugeField::from_fn(Algebra::U1, grid, |p| {
        let s: f64 = (1..grid / 2)
            .map(|k| {
                let kf = k as f64;
                (1.0 + kf).powf(-decay) * (kf * p + 0.7 * kf * kf).cos()
            })
            .sum();
        CMat::from_fn(1, 1, |_, _| c64::new(0.0, amp * s))
    })
}

/// Gauge maps `(e^{i(φ + ½cos 2φ)}, e^{½ i sin φ})` used in cocycle checks;
/// the first has a non-constant Maurer–Cartan form.
pub fn cocycle_maps(grid: usize) -> Result<(GroupMap, GroupMap)> {
    let h1 = GroupMap::from_fn(Group::U1, grid, |p| {
        CMat::from_fn(1, 1, |_, _| c64::from_polar(1.0, p + 0.5 * (2.0 * p).cos()))
    })?;
    let h2 = GroupMap::from_fn(Group::U1, grid, |p| CMat::from_fn(1, 1, |_, _| c64::from_polar(1.0, 0.5 * p.sin())))?;
    Ok((h1, h2))
}
