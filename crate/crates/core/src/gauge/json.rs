//! JSON form `{group, grid_size, samples: [[re, im], …]}`; samples are the
//! row-major matrix entries of each grid point in turn.

use serde::{Deserialize, Serialize};

use super::field::{Algebra, GaugeField};
use super::group::{Group, GroupMap};
use crate::error::{Error, Result};
use crate::opcore::{CMat, GridFunction};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridJson {
    pub group: String,
    pub grid_size: usize,
    pub samples: Vec<[f64; 2]>,
}

fn flatten(g: &GridFunction) -> Vec<[f64; 2]> {
    let d = g.dim();
    g.samples()
        .iter()
        .flat_map(|s| (0..d * d).map(move |k| [s[(k / d, k % d)].re, s[(k / d, k % d)].im]))
        .collect()
}

fn unflatten(doc: &GridJson, d: usize) -> Result<GridFunction> {
    if doc.samples.len() != doc.grid_size * d * d {
        return Err(Error::Shape(format!(
            "expected {} entries, found {}",
            doc.grid_size * d * d,
            doc.samples.len()
        )));
    }
    let samples = (0..doc.grid_size)
        .map(|j| CMat::from_fn(d, d, |a, b| {
            let [re, im] = doc.samples[j * d * d + a * d + b];
            faer::c64::new(re, im)
        }))
        .collect();
    GridFunction::new(samples)
}

fn group_name(g: Group) -> &'static str {
    match g {
        Group::U1 => "U1",
        Group::SU2 => "SU2",
    }
}

fn algebra_name(a: Algebra) -> &'static str {
    match a {
        Algebra::U1 => "u1",
        Algebra::Su2 => "su2",
    }
}

impl GroupMap {
    pub fn to_json(&self) -> Result<String> {
        let doc = GridJson {
            group: group_name(self.group()).into(),
            grid_size: self.grid_size(),
            samples: flatten(self.samples()),
        };
        Ok(serde_json::to_string(&doc)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let doc: GridJson = serde_json::from_str(s)?;
        let group = match doc.group.as_str() {
            "U1" => Group::U1,
            "SU2" => Group::SU2,
            other => return Err(Error::GroupMismatch(format!("unknown group {other}"))),
        };
        GroupMap::new(group, unflatten(&doc, group.dim())?)
    }
}

impl GaugeField {
    pub fn to_json(&self) -> Result<String> {
        let doc = GridJson {
            group: algebra_name(self.algebra()).into(),
            grid_size: self.grid_size(),
            samples: flatten(self.values()),
        };
        Ok(serde_json::to_string(&doc)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let doc: GridJson = serde_json::from_str(s)?;
        let algebra = match doc.group.as_str() {
            "u1" => Algebra::U1,
            "su2" => Algebra::Su2,
            other => return Err(Error::GroupMismatch(format!("unknown algebra {other}"))),
        };
        GaugeField::new(algebra, unflatten(&doc, algebra.dim())?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::rng;

    #[test]
    fn exact_round_trip() {
        let mut r = rng(4);
        let h = GroupMap::random_su2(2, 32, &mut r).unwrap();
        assert_eq!(GroupMap::from_json(&h.to_json().unwrap()).unwrap(), h);
        let a = GaugeField::random(Algebra::Su2, 3, 32, 1.0, &mut r).unwrap();
        assert_eq!(GaugeField::from_json(&a.to_json().unwrap()).unwrap(), a);
    }

    #[test]
    fn schema_shape() {
        let h = GroupMap::u1_winding(1, 4).unwrap();
        let v: serde_json::Value = serde_json::from_str(&h.to_json().unwrap()).unwrap();
        assert_eq!(v["group"], "U1");
        assert_eq!(v["grid_size"], 4);
        assert_eq!(v["samples"].as_array().unwrap().len(), 4);
    }
}
