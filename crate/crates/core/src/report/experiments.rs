use std::f64::consts::TAU;
use std::sync::Arc;

use serde_json::{Map, Value};

use super::config::{Command, InvarianceTarget, Profile, RunConfig, SweepAxis, Variant};
use super::table::{complex_cells, Cell, Check, Table};
use super::{Oracle, Report};
use crate::c64;
use crate::cocycle::{cocycle_residual, cocycle_residual_with_middle, default_window};
use crate::error::{Error, Result};
use crate::fixtures::{cocycle_maps, random_antihermitian, random_matrix, random_unitary, rng, rough_symbol, random_hermitian_symbol, smooth_u1_field};
use crate::gauge::{as_connection_theta, covariant_derivative, horizontal_projection, Algebra, GaugeField, LoopFamily};
use crate::opcore::{
    expm_mat, make_dirac, make_polarization, mult_op, CMat, GridFunction, MatrixSymbol, ModeConvention, TruncOp,
    TruncationContext,
};
use crate::renorm::{renorm_flow, FlowParams};
use crate::superchern::{
    cech_pairing, circle_descent_pairing, example1_index_form, example2_winding, near_identity_unitary,
    banded_unitary, circle_invariance_defect, sphere_invariance_defect, trace_identity_probe, ChartComplex,
    CircleChange, PointFn, SphereGrid,
};

/// Runs one experiment.
pub fn run(config: &RunConfig) -> Result<Report> {
    config.validate()?;
    match config.command {
        Command::Flow => flow(config),
        Command::Cocycle => cocycle(config),
        Command::IndexS1 => index_s1(config),
        Command::WindingS3 => winding_s3(config),
        Command::Connection => connection(config),
        Command::Descent => descent(config),
        Command::TraceId => trace_id(config),
        Command::Invariance => invariance(config),
    }
}

/// Runs `config` once per value of `axis`, one summary row per value.
pub fn sweep(config: &RunConfig, axis: SweepAxis, values: &[String]) -> Result<Report> {
    if values.is_empty() {
        return Err(Error::InvalidParameter("sweep needs at least one value".into()));
    }
    let mut table = Table::new(&[axis.key(), "value_re", "value_im", "oracle_re", "oracle_im", "residual", "checks"]);
    let mut checks = Vec::new();
    let mut residuals = Vec::new();
    let mut last = None;
    for v in values {
        let mut cfg = config.clone();
        cfg.set(axis.key(), v)?;
        let rep = run(&cfg)?;
        let mut row = vec![Cell::Text(v.clone())];
        row.extend(rep.sweep_cells());
        table.push(row);
        checks.extend(rep.checks.iter().map(|c| Check { name: format!("{}={v}: {}", axis.key(), c.name), ..c.clone() }));
        residuals.push(rep.residual);
        last = Some(rep);
    }
    let monotone = matches!(
        (config.command, axis),
        (Command::Cocycle, SweepAxis::Modes) | (Command::WindingS3, SweepAxis::Grid)
    );
    if monotone && residuals.len() > 1 {
        let worst = residuals.windows(2).map(|w| w[1] - (1.1 * w[0] + 1e-12)).fold(f64::NEG_INFINITY, f64::max);
        checks.push(Check::at_most("residual nonincreasing along the sweep (10% slack)", worst.max(0.0), 0.0));
    }
    let last = last.expect("nonempty sweep");
    let mut inputs = last.inputs.clone();
    inputs.insert("sweep_axis".into(), Value::from(axis.key()));
    inputs.insert("sweep_values".into(), Value::from(values.to_vec()));
    Ok(Report {
        command: config.command,
        table,
        inputs,
        grid: last.grid,
        window: last.window,
        value: last.value,
        oracle: last.oracle,
        residual: last.residual,
        extra: Map::new(),
        checks,
    })
}

fn seed(cfg: &RunConfig) -> Result<u64> {
    cfg.seed.ok_or_else(|| Error::InvalidParameter(format!("{} needs a seed", cfg.command)))
}

fn grid1(cfg: &RunConfig, default: usize) -> usize {
    cfg.grid.as_ref().map_or(default, |g| g[0])
}

fn convention_name(c: ModeConvention) -> &'static str {
    match c {
        ModeConvention::HalfInteger => "half-integer",
        ModeConvention::IntegerNonnegPlus => "integer",
    }
}

fn inputs(pairs: &[(&str, Value)]) -> Map<String, Value> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn interior_window(cfg: &RunConfig, ctx: &TruncationContext, band: usize) -> Result<usize> {
    match cfg.window {
        Some(w) => Ok(w),
        None => default_window(ctx, band),
    }
}

fn flow(cfg: &RunConfig) -> Result<Report> {
    let modes = cfg.modes.unwrap_or(64);
    let conv = cfg.convention_or(ModeConvention::HalfInteger);
    let ctx = TruncationContext::new(modes, 1, conv)?;
    let profile = cfg.profile.unwrap_or(Profile::Rough);
    let s = cfg.s.unwrap_or(0.7);
    let band = cfg.band.unwrap_or((modes / 2).max(1));
    let depth = cfg.depth.unwrap_or(2);
    let lambda = cfg.lambda.unwrap_or(0.0);
    let seed = seed(cfg)?;
    let sym = match profile {
        Profile::Rough => rough_symbol(s, band, seed),
        Profile::Smooth => random_hermitian_symbol(1, band, &mut rng(seed)),
    };
    let a = mult_op(&sym, &ctx)?;
    let d0 = make_dirac(&ctx);
    let eps = make_polarization(&ctx);
    let mut params = FlowParams::new(depth).with_lambda(lambda);
    if conv == ModeConvention::IntegerNonnegPlus && lambda == 0.0 {
        params = params.with_pseudo_inverse();
    }
    let res = renorm_flow(&d0, &a, &eps, &params)?;
    let mut table = Table::new(&["step", "schatten1", "schatten2", "slope"]);
    for d in &res.diagnostics {
        table.push(vec![d.step.into(), d.schatten1.into(), d.schatten2.into(), d.slope.into()]);
    }
    let unitarity = res.conjugators.iter().map(TruncOp::unitary_residual).fold(0.0, f64::max);
    let spec0 = d0.try_add(&a)?.hermitian_eigenvalues()?;
    let mut drift: f64 = 0.0;
    for ak in &res.interactions[1..] {
        let sk = d0.try_add(ak)?.hermitian_eigenvalues()?;
        drift = drift.max(spec0.iter().zip(&sk).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max));
    }
    let last = res.diagnostics.last().expect("step 0 is always reported");
    let mut extra = Map::new();
    extra.insert("schatten1_initial".into(), Value::from(res.diagnostics[0].schatten1));
    extra.insert("schatten1_final".into(), Value::from(last.schatten1));
    Ok(Report {
        command: cfg.command,
        table,
        inputs: inputs(&[
            ("modes", modes.into()),
            ("convention", convention_name(conv).into()),
            ("profile", serde_json::to_value(profile)?),
            ("s", s.into()),
            ("band", band.into()),
            ("depth", depth.into()),
            ("lambda", lambda.into()),
            ("seed", seed.into()),
        ]),
        grid: Value::Null,
        window: None,
        value: c64::new(last.schatten1, 0.0),
        oracle: Oracle::None,
        residual: drift,
        extra,
        checks: vec![
            Check::at_most("conjugator unitarity", unitarity, 1e-10),
            Check::at_most("spectrum drift along the flow", drift, 1e-8),
        ],
    })
}

fn cocycle(cfg: &RunConfig) -> Result<Report> {
    let modes = cfg.modes.unwrap_or(64);
    let conv = cfg.convention_or(ModeConvention::HalfInteger);
    let ctx = TruncationContext::new(modes, 1, conv)?;
    let grid = grid1(cfg, 1024);
    let depth = cfg.depth.unwrap_or(2);
    let lambda = cfg.lambda.unwrap_or(0.0);
    let mut params = FlowParams::new(depth).with_lambda(lambda);
    if conv == ModeConvention::IntegerNonnegPlus && lambda == 0.0 {
        params = params.with_pseudo_inverse();
    }
    let a = smooth_u1_field(grid, 2.0, 0.8)?;
    let (h1, h2) = cocycle_maps(grid)?;
    let window = interior_window(cfg, &ctx, h1.mul(&h2)?.band())?;
    let residual = cocycle_residual(&ctx, &a, &h1, &h2, &params, window)?;
    let control = if depth > 0 {
        Some(cocycle_residual_with_middle(&ctx, &a, &a, &h1, &h2, &params, window)?)
    } else {
        None
    };
    let mut table = Table::new(&["modes", "depth", "window", "residual", "negative_control"]);
    table.push(vec![modes.into(), depth.into(), window.into(), residual.into(), control.into()]);
    let mut checks = Vec::new();
    match control {
        None => checks.push(Check::at_most("tautological cocycle relation", residual, 1e-12)),
        Some(c) => {
            checks.push(Check::above("negative control detects the wrong middle field", c, 1e-3));
            checks.push(Check::at_most("residual below the negative control", residual, c));
        }
    }
    let mut extra = Map::new();
    extra.insert("negative_control".into(), control.map_or(Value::Null, Value::from));
    Ok(Report {
        command: cfg.command,
        table,
        inputs: inputs(&[
            ("modes", modes.into()),
            ("convention", convention_name(conv).into()),
            ("depth", depth.into()),
            ("lambda", lambda.into()),
        ]),
        grid: Value::from(grid),
        window: Some(window),
        value: c64::new(residual, 0.0),
        oracle: Oracle::Real(0.0),
        residual,
        extra,
        checks,
    })
}

fn index_s1(cfg: &RunConfig) -> Result<Report> {
    let n = cfg.n.unwrap_or(1);
    let modes = cfg.modes.unwrap_or(64);
    let conv = cfg.convention_or(ModeConvention::IntegerNonnegPlus);
    let ctx = TruncationContext::new(modes, 1, conv)?;
    let window = match cfg.window {
        Some(w) => w,
        None => default_window(&ctx, n.unsigned_abs() as usize)?,
    };
    let ex = example1_index_form(n, &ctx, window)?;
    let (pairing, _) = circle_descent_pairing(n, &ctx, window)?;
    let predicted = -2.0 * ex.index as f64;
    let residual = (ex.integral - predicted).abs();
    let mut table = Table::new(&["n", "modes", "window", "integral", "index", "descent_re", "descent_im"]);
    let mut row = vec![n.into(), modes.into(), window.into(), ex.integral.into(), ex.index.into()];
    row.extend(complex_cells(pairing));
    table.push(row);
    let main = Check::at_most("integral == -2*index", residual, 1e-12);
    let mut extra = Map::new();
    extra.insert("integral".into(), Value::from(ex.integral));
    extra.insert("index".into(), Value::from(ex.index));
    extra.insert("check".into(), Value::from(main.summary()));
    Ok(Report {
        command: cfg.command,
        table,
        inputs: inputs(&[("n", n.into()), ("modes", modes.into()), ("convention", convention_name(conv).into())]),
        grid: Value::Null,
        window: Some(window),
        value: c64::new(ex.integral, ex.integral_im),
        oracle: Oracle::Real(predicted),
        residual,
        extra,
        checks: vec![
            main,
            Check::at_most("descent route equals the curvature route", (pairing.re - ex.integral).abs() + pairing.im.abs(), 1e-12),
        ],
    })
}

fn winding_s3(cfg: &RunConfig) -> Result<Report> {
    let n = cfg.n.unwrap_or(1);
    let g = cfg.grid.clone().unwrap_or_else(|| vec![128, 128, 256]);
    let variant = cfg.variant.unwrap_or(Variant::Standard);
    let (fam, expected, tol) = match variant {
        Variant::Standard => (LoopFamily::standard(n), 2.0 * n as f64, 1e-3),
        Variant::Odd => (LoopFamily::odd(n), n as f64, 1e-2),
    };
    let w = example2_winding(&fam, SphereGrid::new(g[0], g[1], g[2])?)?;
    let err = (w.winding - expected).abs();
    let mut table = Table::new(&[
        "n", "variant", "polar", "azimuth", "loop_points", "integral_re", "integral_im", "w", "expected", "abs_error",
    ]);
    let vname = serde_json::to_value(variant)?.as_str().unwrap_or_default().to_string();
    let mut row = vec![n.into(), Cell::Text(vname.clone()), g[0].into(), g[1].into(), g[2].into()];
    row.extend(complex_cells(w.integral));
    row.extend([w.winding.into(), expected.into(), err.into()]);
    table.push(row);
    let mut extra = Map::new();
    extra.insert("w".into(), Value::from(w.winding));
    extra.insert("integral_re".into(), Value::from(w.integral.re));
    extra.insert("integral_im".into(), Value::from(w.integral.im));
    Ok(Report {
        command: cfg.command,
        table,
        inputs: inputs(&[("n", n.into()), ("variant", vname.into())]),
        grid: Value::from(g.clone()),
        window: None,
        value: c64::new(w.winding, 0.0),
        oracle: Oracle::Real(expected),
        residual: err,
        extra,
        checks: vec![Check::at_most("winding matches the expected degree", err, tol)],
    })
}

fn based(x: &GaugeField) -> Result<GaugeField> {
    let x0 = x.sample(0).clone();
    x.sub(&GaugeField::from_fn(x.algebra(), x.grid_size(), |_| x0.clone())?)
}

fn connection(cfg: &RunConfig) -> Result<Report> {
    let grid = grid1(cfg, 256);
    let band = cfg.band.unwrap_or(4);
    let samples = cfg.samples.unwrap_or(1);
    let amp = cfg.amplitude.unwrap_or(1.0);
    let seed = seed(cfg)?;
    let mut table = Table::new(&["case", "vertical", "horizontal"]);
    let (mut vmax, mut hmax) = (0.0f64, 0.0f64);
    for case in 0..samples {
        let mut r = rng(seed.wrapping_add(case as u64));
        let a = GaugeField::random(Algebra::Su2, band, grid, amp, &mut r)?;
        let x0 = based(&GaugeField::random(Algebra::Su2, band, grid, 1.0, &mut r)?)?;
        let v = as_connection_theta(&a, &covariant_derivative(&a, &x0)?)?.max_abs_diff(&x0)?;
        let b = GaugeField::random(Algebra::Su2, band, grid, 1.0, &mut r)?;
        let h = as_connection_theta(&a, &horizontal_projection(&a, &b)?)?.max_abs();
        vmax = vmax.max(v);
        hmax = hmax.max(h);
        table.push(vec![case.into(), v.into(), h.into()]);
    }
    Ok(Report {
        command: cfg.command,
        table,
        inputs: inputs(&[
            ("band", band.into()),
            ("samples", samples.into()),
            ("amplitude", amp.into()),
            ("seed", seed.into()),
        ]),
        grid: Value::from(grid),
        window: None,
        value: c64::new(vmax, 0.0),
        oracle: Oracle::Real(0.0),
        residual: vmax.max(hmax),
        extra: Map::new(),
        checks: vec![
            Check::at_most("vertical tautology", vmax, 1e-8),
            Check::at_most("horizontal vanishing", hmax, 1e-8),
        ],
    })
}

fn descent(cfg: &RunConfig) -> Result<Report> {
    let m = cfg.n.unwrap_or(1);
    let dim = cfg.modes.unwrap_or(2);
    let nodes = grid1(cfg, 48);
    let mut cc = ChartComplex::winding_sphere(m, dim)?;
    cc.quad_nodes = nodes;
    let pairing = cech_pairing(&cc, &cc.faces, 1)?;
    let (a, b) = cc.faces[0].split(0, 2.0)?;
    let split = cech_pairing(&cc, &[a, b], 1)?;
    let oracle = c64::new(0.0, -TAU * m as f64);
    let residual = (pairing - oracle).norm();
    let mut table = Table::new(&["m", "pairing_re", "pairing_im", "oracle_re", "oracle_im", "residual", "subdivided_re", "subdivided_im"]);
    let mut row = vec![m.into()];
    row.extend(complex_cells(pairing));
    row.extend(complex_cells(oracle));
    row.push(residual.into());
    row.extend(complex_cells(split));
    table.push(row);
    Ok(Report {
        command: cfg.command,
        table,
        inputs: inputs(&[("m", m.into()), ("dim", dim.into())]),
        grid: Value::from(nodes),
        window: None,
        value: pairing,
        oracle: Oracle::Complex(oracle),
        residual,
        extra: Map::new(),
        checks: vec![
            Check::at_most("pairing equals -2*pi*i*m", residual, 1e-6),
            Check::at_most("subdivision invariance", (split - pairing).norm(), 1e-8),
        ],
    })
}

/// Random matrix function with band `band` and coefficients decaying like `e^{−|k|/2}`.
fn random_band_function(d: usize, band: usize, grid: usize, r: &mut impl rand::Rng) -> Result<GridFunction> {
    let coeffs = (0..=2 * band)
        .map(|i| {
            let k = i as f64 - band as f64;
            faer::Scale(c64::new((-k.abs() / 2.0).exp(), 0.0)) * random_matrix(d, r)
        })
        .collect();
    MatrixSymbol::new(d, band, coeffs)?.to_grid(grid)
}

fn trace_id(cfg: &RunConfig) -> Result<Report> {
    let modes = cfg.modes.unwrap_or(32);
    let band = cfg.band.unwrap_or(3);
    let samples = cfg.samples.unwrap_or(10);
    let grid = grid1(cfg, 64);
    let conv = cfg.convention_or(ModeConvention::IntegerNonnegPlus);
    let seed = seed(cfg)?;
    let ctx = TruncationContext::new(modes, 2, conv)?;
    let window = interior_window(cfg, &ctx, 2 * band)?;
    let mut r = rng(seed);
    let mut table = Table::new(&["sample", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "kappa_re", "kappa_im"]);
    let mut kappas = Vec::new();
    for j in 0..samples {
        let x = random_band_function(2, band, grid, &mut r)?;
        let y = random_band_function(2, band, grid, &mut r)?;
        let p = trace_identity_probe(&x, &y, &ctx, window)?;
        let mut row = vec![j.into()];
        row.extend(complex_cells(p.lhs));
        row.extend(complex_cells(p.rhs));
        match p.ratio {
            Some(k) => {
                row.extend(complex_cells(k));
                kappas.push(k);
            }
            None => row.extend([Cell::Empty, Cell::Empty]),
        }
        table.push(row);
    }
    if kappas.is_empty() {
        return Err(Error::InvalidParameter("every sample had a vanishing right-hand side".into()));
    }
    let mean = kappas.iter().sum::<c64>() / kappas.len() as f64;
    let std = if kappas.len() > 1 {
        (kappas.iter().map(|k| (k - mean).norm_sqr()).sum::<f64>() / (kappas.len() - 1) as f64).sqrt()
    } else {
        0.0
    };
    let matches = |c: f64| (mean - c64::new(c, 0.0)).norm() <= 1e-8;
    let mut extra = Map::new();
    extra.insert("kappa_std".into(), Value::from(std));
    extra.insert("matches_kappa_1".into(), Value::from(matches(1.0)));
    extra.insert("matches_kappa_2".into(), Value::from(matches(2.0)));
    Ok(Report {
        command: cfg.command,
        table,
        inputs: inputs(&[
            ("modes", modes.into()),
            ("band", band.into()),
            ("samples", samples.into()),
            ("convention", convention_name(conv).into()),
            ("seed", seed.into()),
        ]),
        grid: Value::from(grid),
        window: Some(window),
        value: mean,
        oracle: Oracle::None,
        residual: std,
        extra,
        checks: vec![Check::at_most("kappa constant across samples", std, 1e-8)],
    })
}

/// `exp(Σ_j c_j(θ, ψ) X_j)` for fixed random anti-hermitian `X_j`.
fn smooth_unitary_field(dim: usize, amp: f64, r: &mut impl rand::Rng) -> PointFn<CMat> {
    let gens: Vec<CMat> = (0..3).map(|_| random_antihermitian(dim, r)).collect();
    let norm = gens.iter().map(|g| g.norm_l2()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    Arc::new(move |x: &[f64]| {
        let c = [x[0].cos(), x[0].sin() * x[1].cos(), x[0].sin() * (2.0 * x[1]).sin()];
        let mut s = CMat::zeros(dim, dim);
        for (cj, g) in c.iter().zip(&gens) {
            s += faer::Scale(c64::new(amp * cj / norm, 0.0)) * g;
        }
        expm_mat(&s).expect("finite anti-hermitian generator")
    })
}

fn invariance(cfg: &RunConfig) -> Result<Report> {
    let target = cfg.target.unwrap_or(InvarianceTarget::Circle);
    let n = cfg.n.unwrap_or(1);
    let amp = cfg.amplitude.unwrap_or(0.3);
    let seed = seed(cfg)?;
    let mut r = rng(seed);
    let mut table = Table::new(&["change", "difference", "tolerance"]);
    let (diffs, grid_v, window) = match target {
        InvarianceTarget::Circle => {
            let modes = cfg.modes.unwrap_or(64);
            let conv = cfg.convention_or(ModeConvention::IntegerNonnegPlus);
            let ctx = TruncationContext::new(modes, 1, conv)?;
            let window = match cfg.window {
                Some(w) => w,
                None => default_window(&ctx, n.unsigned_abs() as usize)?,
            };
            let support = cfg.band.unwrap_or(4);
            let s0 = near_identity_unitary(&ctx, support, amp, &mut r)?;
            let s1 = near_identity_unitary(&ctx, support, amp, &mut r)?;
            let w = banded_unitary(&ctx, 2, amp, &mut r)?;
            let reg = CircleChange { regularization: Some((s0.clone(), s1.clone())), base_point: None };
            let base = CircleChange { regularization: None, base_point: Some(w.clone()) };
            let both = CircleChange { regularization: Some((s0, s1)), base_point: Some(w) };
            (
                vec![
                    ("regularization", circle_invariance_defect(n, &ctx, window, &reg)?, 1e-6),
                    ("base-point", circle_invariance_defect(n, &ctx, window, &base)?, 1e-8),
                    ("both", circle_invariance_defect(n, &ctx, window, &both)?, 1e-6),
                ],
                Value::Null,
                Some(window),
            )
        }
        InvarianceTarget::Sphere => {
            let dim = cfg.modes.unwrap_or(2);
            let sn = smooth_unitary_field(dim, amp, &mut r);
            let ss = smooth_unitary_field(dim, amp, &mut r);
            let w = random_unitary(dim, &mut r);
            let one: PointFn<CMat> = Arc::new(move |_: &[f64]| CMat::identity(dim, dim));
            (
                vec![
                    ("regularization", sphere_invariance_defect(n, dim, sn.clone(), ss.clone(), None)?, 1e-6),
                    ("base-point", sphere_invariance_defect(n, dim, one.clone(), one, Some(w.clone()))?, 1e-6),
                    ("both", sphere_invariance_defect(n, dim, sn, ss, Some(w))?, 1e-6),
                ],
                Value::from(48),
                None,
            )
        }
    };
    let mut checks = Vec::new();
    let mut worst: f64 = 0.0;
    for (name, d, tol) in &diffs {
        table.push(vec![(*name).into(), (*d).into(), (*tol).into()]);
        checks.push(Check::at_most(&format!("{name} change leaves the pairing unchanged"), *d, *tol));
        worst = worst.max(*d);
    }
    Ok(Report {
        command: cfg.command,
        table,
        inputs: inputs(&[
            ("target", serde_json::to_value(target)?),
            ("n", n.into()),
            ("amplitude", amp.into()),
            ("seed", seed.into()),
        ]),
        grid: grid_v,
        window,
        value: c64::new(worst, 0.0),
        oracle: Oracle::Real(0.0),
        residual: worst,
        extra: Map::new(),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seedless_random_experiment_is_rejected() {
        assert!(matches!(run(&RunConfig::new(Command::Flow)), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn index_check_reports_the_measured_relation() {
        let mut cfg = RunConfig::new(Command::IndexS1);
        cfg.set("n", "2").unwrap();
        cfg.set("modes", "24").unwrap();
        let rep = run(&cfg).unwrap();
        assert_eq!(rep.extra["index"], Value::from(-2));
        assert_eq!(rep.extra["integral"], Value::from(4.0));
        assert!(rep.passed());
    }

    #[test]
    fn single_value_sweep_matches_plain_run() {
        let mut cfg = RunConfig::new(Command::Descent);
        cfg.set("grid", "24").unwrap();
        let plain = run(&cfg).unwrap();
        let sw = sweep(&cfg, SweepAxis::Grid, &["24".into()]).unwrap();
        assert_eq!(sw.value, plain.value);
        assert_eq!(sw.residual, plain.residual);
    }
}
