//! Matrix exponential by scaling and squaring with diagonal Padé approximants.

use faer::linalg::solvers::Solve;
use faer::{c64, Mat};

use super::op::{CMat, TruncOp};
use crate::error::{Error, Result};

const B3: [f64; 4] = [120.0, 60.0, 12.0, 1.0];
const B5: [f64; 6] = [30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0];
const B7: [f64; 8] = [17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0];
const B9: [f64; 10] = [
    17643225600.0, 8821612800.0, 2075673600.0, 302702400.0, 30270240.0, 2162160.0, 110880.0,
    3960.0, 90.0, 1.0,
];
const B13: [f64; 14] = [
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
    129060195264000.0, 10559470521600.0, 670442572800.0, 33522128640.0, 1323241920.0,
    40840800.0, 960960.0, 16380.0, 182.0, 1.0,
];
const THETA: [(usize, f64); 4] = [
    (3, 1.495585217958292e-2),
    (5, 2.539398330063230e-1),
    (7, 9.504178996162932e-1),
    (9, 2.097847961257068e0),
];
const THETA13: f64 = 5.371920351148152;

fn one_norm(m: &CMat) -> f64 {
    (0..m.ncols())
        .map(|j| (0..m.nrows()).map(|i| m[(i, j)].norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

fn scaled(c: f64, m: &CMat) -> CMat {
    faer::Scale(c64::new(c, 0.0)) * m
}

fn add_identity(m: &mut CMat, c: f64) {
    for i in 0..m.nrows() {
        m[(i, i)] += c64::new(c, 0.0);
    }
}

fn pade_low(a: &CMat, b: &[f64]) -> (CMat, CMat) {
    // Odd coefficients go to U (multiplied by A), even ones to V.
    let n = a.nrows();
    let a2 = a * a;
    let mut powers = vec![CMat::identity(n, n)];
    while powers.len() < b.len() / 2 {
        let next = powers.last().unwrap() * &a2;
        powers.push(next);
    }
    let mut u = CMat::zeros(n, n);
    let mut v = CMat::zeros(n, n);
    for (k, p) in powers.iter().enumerate() {
        v += scaled(b[2 * k], p);
        u += scaled(b[2 * k + 1], p);
    }
    (a * &u, v)
}

fn pade13(a: &CMat) -> (CMat, CMat) {
    let b = &B13;
    let a2 = a * a;
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;
    let mut inner_u = scaled(b[13], &a6) + scaled(b[11], &a4) + scaled(b[9], &a2);
    inner_u = &a6 * &inner_u;
    let mut u = inner_u + scaled(b[7], &a6) + scaled(b[5], &a4) + scaled(b[3], &a2);
    add_identity(&mut u, b[1]);
    let u = a * &u;
    let inner_v = &a6 * &(scaled(b[12], &a6) + scaled(b[10], &a4) + scaled(b[8], &a2));
    let mut v = inner_v + scaled(b[6], &a6) + scaled(b[4], &a4) + scaled(b[2], &a2);
    add_identity(&mut v, b[0]);
    (u, v)
}

/// `e^X` for a dense square matrix.
pub fn expm_mat(a: &CMat) -> Result<CMat> {
    let n = a.nrows();
    if a.ncols() != n {
        return Err(Error::Shape("expm needs a square matrix".into()));
    }
    let norm = one_norm(a);
    if !norm.is_finite() {
        return Err(Error::NonFinite);
    }
    if norm == 0.0 {
        return Ok(CMat::identity(n, n));
    }
    let (u, v, squarings) = if let Some(&(m, _)) = THETA.iter().find(|&&(_, t)| norm <= t) {
        let b: &[f64] = match m {
            3 => &B3,
            5 => &B5,
            7 => &B7,
            _ => &B9,
        };
        let (u, v) = pade_low(a, b);
        (u, v, 0)
    } else {
        let s = (norm / THETA13).log2().ceil().max(0.0) as i32;
        let a_s = scaled(0.5f64.powi(s), a);
        let (u, v) = pade13(&a_s);
        (u, v, s)
    };
    let p = &v + &u;
    let q = &v - &u;
    let mut r: Mat<c64> = q.partial_piv_lu().solve(&p);
    for _ in 0..squarings {
        r = &r * &r;
    }
    let finite = (0..n).all(|j| (0..n).all(|i| r[(i, j)].re.is_finite() && r[(i, j)].im.is_finite()));
    if !finite {
        return Err(Error::NonFinite);
    }
    Ok(r)
}

/// Operator exponential on a truncation.
pub fn matrix_exp(x: &TruncOp) -> Result<TruncOp> {
    if !x.is_finite() {
        return Err(Error::NonFinite);
    }
    Ok(x.with_mat(expm_mat(x.mat())?))
}
