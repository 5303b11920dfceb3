use serde::Serialize;
use serde_json::{Map, Value};

use crate::c64;

/// One table cell. Complex values occupy two columns (`_re`, `_im`).
#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(i64),
    Real(f64),
    Text(String),
    Empty,
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Real(v)
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Empty, Cell::Real)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

/// Shortest round-trip decimal, switching to exponent form for very large
/// or small magnitudes.
pub fn format_real(x: f64) -> String {
    if x.is_nan() {
        "NaN".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else if x == 0.0 || (1e-4..1e15).contains(&x.abs()) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Real(v) => format_real(*v),
            Cell::Text(t) => t.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => Value::from(*v),
            Cell::Real(v) => real_json(*v),
            Cell::Text(t) => Value::from(t.clone()),
            Cell::Empty => Value::Null,
        }
    }
}

/// Finite reals as JSON numbers; non-finite ones as strings.
pub fn real_json(x: f64) -> Value {
    if x.is_finite() {
        Value::from(x)
    } else {
        Value::from(format_real(x))
    }
}

/// Column-oriented result table.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    /// Appends a row; panics on a width mismatch, which is a programming error.
    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.header.len(), "row width differs from header");
        self.rows.push(row);
    }

    /// Comma-separated with a header row and LF line endings.
    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        w.write_record(&self.header).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv)).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("cells are UTF-8")
    }

    /// Array of row objects keyed by column name.
    pub fn to_json_value(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|row| {
                    let mut m = Map::new();
                    for (h, c) in self.header.iter().zip(row) {
                        m.insert(h.clone(), c.json());
                    }
                    Value::Object(m)
                })
                .collect(),
        )
    }
}

/// Complex value as a `(re, im)` cell pair.
pub fn complex_cells(z: c64) -> [Cell; 2] {
    [Cell::Real(z.re), Cell::Real(z.im)]
}

/// A tolerance check reported alongside the results.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    /// Passes when `value ≤ tolerance`.
    pub fn at_most(name: &str, value: f64, tolerance: f64) -> Self {
        Self { name: name.into(), value, tolerance, pass: value <= tolerance }
    }

    /// Passes when `value > threshold`.
    pub fn above(name: &str, value: f64, threshold: f64) -> Self {
        Self { name: name.into(), value, tolerance: threshold, pass: value > threshold }
    }

    pub fn summary(&self) -> String {
        format!("{}: {}", self.name, if self.pass { "pass" } else { "fail" })
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("name".into(), Value::from(self.name.clone()));
        m.insert("value".into(), real_json(self.value));
        m.insert("tolerance".into(), real_json(self.tolerance));
        m.insert("pass".into(), Value::from(self.pass));
        m.insert("check".into(), Value::from(self.summary()));
        Value::Object(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_dialect() {
        let mut t = Table::new(&["a", "b_re", "b_im", "c"]);
        t.push(vec![Cell::Int(-3), Cell::Real(0.5), Cell::Real(1e-12), Cell::Text("x,y".into())]);
        t.push(vec![Cell::Int(1), Cell::Real(1234567.0), Cell::Real(-0.0), Cell::Empty]);
        assert_eq!(t.to_csv(), "a,b_re,b_im,c\n-3,0.5,1e-12,\"x,y\"\n1,1234567,-0,\n");
    }

    #[test]
    fn reals_round_trip() {
        for x in [0.1, 1.0 / 3.0, 6.02e23, -2.5e-17, 1e15, 9.99e-5] {
            assert_eq!(format_real(x).parse::<f64>().unwrap(), x);
        }
    }
}
