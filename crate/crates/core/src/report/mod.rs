//! Batch experiments with tabular output, tolerance checks and a JSON
//! metadata sidecar. Output is a pure function of the [`RunConfig`].

mod config;
mod experiments;
mod table;

pub use config::{
    parse_convention, parse_grid, Command, InvarianceTarget, OutputFormat, Profile, RunConfig, SweepAxis, Variant,
    KEYS,
};
pub use experiments::{run, sweep};
pub use table::{complex_cells, format_real, real_json, Cell, Check, Table};

use serde_json::{Map, Value};

use crate::c64;

/// Reference value a result is compared against.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Oracle {
    None,
    Real(f64),
    Complex(c64),
}

impl Oracle {
    fn to_json(self) -> Value {
        match self {
            Oracle::None => Value::Null,
            Oracle::Real(x) => real_json(x),
            Oracle::Complex(z) => {
                let mut m = Map::new();
                m.insert("re".into(), real_json(z.re));
                m.insert("im".into(), real_json(z.im));
                Value::Object(m)
            }
        }
    }

    fn parts(self) -> (Cell, Cell) {
        match self {
            Oracle::None => (Cell::Empty, Cell::Empty),
            Oracle::Real(x) => (Cell::Real(x), Cell::Real(0.0)),
            Oracle::Complex(z) => (Cell::Real(z.re), Cell::Real(z.im)),
        }
    }
}

/// Result of one experiment.
#[derive(Clone, Debug)]
pub struct Report {
    pub command: Command,
    pub table: Table,
    /// Resolved parameters, defaults filled in.
    pub inputs: Map<String, Value>,
    pub grid: Value,
    pub window: Option<usize>,
    /// Headline value.
    pub value: c64,
    pub oracle: Oracle,
    pub residual: f64,
    /// Experiment-specific scalars.
    pub extra: Map<String, Value>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// The primary table in the requested format.
    pub fn primary(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => self.table.to_csv(),
            OutputFormat::Json => {
                let mut s = serde_json::to_string_pretty(&self.table.to_json_value()).expect("table serializes");
                s.push('\n');
                s
            }
        }
    }

    /// Scalar summary: `{inputs, grid, window, value_re, value_im,
    /// oracle_value, residual, ...extras, checks}`.
    pub fn summary(&self) -> Map<String, Value> {
        let mut m = Map::new();
        m.insert("command".into(), Value::from(self.command.name()));
        m.insert("inputs".into(), Value::Object(self.inputs.clone()));
        m.insert("grid".into(), self.grid.clone());
        m.insert("window".into(), self.window.map_or(Value::Null, Value::from));
        m.insert("value_re".into(), real_json(self.value.re));
        m.insert("value_im".into(), real_json(self.value.im));
        m.insert("oracle_value".into(), self.oracle.to_json());
        m.insert("residual".into(), real_json(self.residual));
        for (k, v) in &self.extra {
            m.insert(k.clone(), v.clone());
        }
        m.insert("checks".into(), Value::Array(self.checks.iter().map(Check::to_json).collect()));
        m.insert("pass".into(), Value::from(self.passed()));
        m
    }

    /// Metadata sidecar: tool version, config echo and the summary.
    pub fn sidecar(&self, config: &RunConfig) -> String {
        let mut m = Map::new();
        m.insert("tool".into(), Value::from("chernlab"));
        m.insert("version".into(), Value::from(env!("CARGO_PKG_VERSION")));
        m.insert("config".into(), serde_json::to_value(config).expect("config serializes"));
        m.insert("result".into(), Value::Object(self.summary()));
        let mut s = serde_json::to_string_pretty(&Value::Object(m)).expect("sidecar serializes");
        s.push('\n');
        s
    }

    fn sweep_cells(&self) -> Vec<Cell> {
        let (ore, oim) = self.oracle.parts();
        vec![
            Cell::Real(self.value.re),
            Cell::Real(self.value.im),
            ore,
            oim,
            Cell::Real(self.residual),
            Cell::Text(if self.passed() { "pass".into() } else { "fail".into() }),
        ]
    }
}
