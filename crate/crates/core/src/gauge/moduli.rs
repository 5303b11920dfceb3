//! Two-chart model of the moduli space of `u(1)` connections on the circle.
//!
//! Constant connections `A_c = ic dφ` have holonomy `e^{2πic}`, so `c` lives
//! on a circle. Each chart carries a local section twisted by the gauge map
//! `k_c = exp(i s sin(2πc) sin φ)`, which makes the section's tangent
//! non-horizontal.

use std::f64::consts::TAU;

use faer::c64;
use serde::{Deserialize, Serialize};

use super::field::{Algebra, GaugeField};
use super::group::GroupMap;
use crate::error::{Error, Result};
use crate::opcore::CMat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Chart {
    Alpha,
    Beta,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct U1ModuliModel {
    /// Winding of the transition on the wrap-around overlap.
    pub winding: i64,
    /// Amplitude `s` of the section twist.
    pub twist: f64,
    pub grid: usize,
}

fn scalar(z: c64) -> CMat {
    CMat::from_fn(1, 1, |_, _| z)
}

impl U1ModuliModel {
    pub fn new(winding: i64, twist: f64, grid: usize) -> Result<Self> {
        if !grid.is_power_of_two() || grid < 8 {
            return Err(Error::GridSize(grid));
        }
        Ok(Self { winding, twist, grid })
    }

    /// Open coordinate interval of a chart.
    pub fn chart_range(chart: Chart) -> (f64, f64) {
        match chart {
            Chart::Alpha => (-0.25, 0.75),
            Chart::Beta => (0.25, 1.25),
        }
    }

    pub fn contains(chart: Chart, c: f64) -> bool {
        let (lo, hi) = Self::chart_range(chart);
        c > lo && c < hi
    }

    /// `β`-coordinate of a point given in `α`-coordinates on an overlap.
    pub fn to_beta(c_alpha: f64) -> Result<f64> {
        if c_alpha > 0.25 && c_alpha < 0.75 {
            Ok(c_alpha)
        } else if c_alpha > -0.25 && c_alpha < 0.25 {
            Ok(c_alpha + 1.0)
        } else {
            Err(Error::InvalidParameter(format!("{c_alpha} is not on a chart overlap")))
        }
    }

    /// Offset of the constant part of the `β` section.
    fn shift(&self, chart: Chart) -> f64 {
        match chart {
            Chart::Alpha => 0.0,
            Chart::Beta => (self.winding - 1) as f64,
        }
    }

    /// Twisting gauge map `k_c`.
    pub fn twist_map(&self, c: f64) -> Result<GroupMap> {
        let amp = self.twist * (TAU * c).sin();
        GroupMap::from_fn(super::group::Group::U1, self.grid, |p| scalar(c64::from_polar(1.0, amp * p.sin())))
    }

    /// Holonomy-`e^{2πic}` constant connection `A_c`.
    pub fn constant_connection(&self, c: f64) -> Result<GaugeField> {
        GaugeField::from_fn(Algebra::U1, self.grid, |_| scalar(c64::new(0.0, c)))
    }

    /// Local section `σ_chart(c)`.
    pub fn section(&self, chart: Chart, c: f64) -> Result<GaugeField> {
        if !Self::contains(chart, c) {
            return Err(Error::InvalidParameter(format!("{c} outside chart {chart:?}")));
        }
        let base = c + self.shift(chart);
        let amp = self.twist * (TAU * c).sin();
        // (A_c)^{k_c} = ic + k_c⁻¹k_c′
        GaugeField::from_fn(Algebra::U1, self.grid, |p| scalar(c64::new(0.0, base + amp * p.cos())))
    }

    /// `d/dc σ_chart(c)`.
    pub fn section_tangent(&self, c: f64) -> Result<GaugeField> {
        let amp = self.twist * TAU * (TAU * c).cos();
        GaugeField::from_fn(Algebra::U1, self.grid, |p| scalar(c64::new(0.0, 1.0 + amp * p.cos())))
    }

    /// Transition `g_{αβ}` at a point in `α`-coordinates, with
    /// `σ_β = σ_α^{g_{αβ}}`.
    pub fn transition(&self, c_alpha: f64) -> Result<GroupMap> {
        let beta = Self::to_beta(c_alpha)?;
        let n = if beta > 0.75 { self.winding } else { self.winding - 1 };
        GroupMap::u1_winding(n, self.grid)
    }

    /// Holonomy `exp ∮ a dφ` of a `u(1)` field.
    pub fn holonomy(a: &GaugeField) -> c64 {
        let mean = a.values().mean()[(0, 0)];
        (mean * TAU).exp()
    }
}
