//! JSON formats for spaces, Boolean algebras and rings.
//!
//! ```json
//! {"points": ["a", "b"], "opens": [[], ["a"], ["a", "b"]]}
//! {"carrier": ["0", "1"], "join": [["0", "1"], ["1", "1"]], "meet": [["0", "0"], ["0", "1"]],
//!  "comp": ["1", "0"], "bot": "0", "top": "1"}
//! {"carrier": ["0", "1"], "add": [["0", "1"], ["1", "0"]], "mul": [["0", "0"], ["0", "1"]],
//!  "zero": "0", "one": "1"}
//! ```
//!
//! Table entries may be carrier labels or carrier indices. Everything is
//! validated on load.

use serde::{Deserialize, Serialize};

use crate::boolean::BooleanAlgebra;
use crate::error::{Error, Result};
use crate::ring::FiniteRing;
use crate::topology::{validate_topology, FiniteSpace};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceJson {
    pub points: Vec<String>,
    pub opens: Vec<Vec<String>>,
}

/// A table entry: a carrier label or a position in the carrier.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Index(usize),
    Label(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub carrier: Vec<String>,
    pub join: Vec<Vec<Entry>>,
    pub meet: Vec<Vec<Entry>>,
    pub comp: Vec<Entry>,
    pub bot: Entry,
    pub top: Entry,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub carrier: Vec<String>,
    pub add: Vec<Vec<Entry>>,
    pub mul: Vec<Vec<Entry>>,
    pub zero: Entry,
    pub one: Entry,
}

fn malformed(e: serde_json::Error) -> Error {
    Error::MalformedTable(e.to_string())
}

fn resolve(carrier: &[String], entry: &Entry) -> Result<usize> {
    match entry {
        Entry::Index(i) if *i < carrier.len() => Ok(*i),
        Entry::Index(i) => Err(Error::MalformedTable(format!(
            "index {i} out of range for a carrier of {}",
            carrier.len()
        ))),
        Entry::Label(l) => carrier
            .iter()
            .position(|c| c == l)
            .ok_or_else(|| Error::UnknownLabel(l.clone())),
    }
}

fn resolve_row(carrier: &[String], row: &[Entry]) -> Result<Vec<usize>> {
    row.iter().map(|e| resolve(carrier, e)).collect()
}

fn resolve_table(carrier: &[String], table: &[Vec<Entry>]) -> Result<Vec<Vec<usize>>> {
    table.iter().map(|row| resolve_row(carrier, row)).collect()
}

fn label_table(labels: &[String], n: usize, op: impl Fn(usize, usize) -> usize) -> Vec<Vec<Entry>> {
    (0..n)
        .map(|x| {
            (0..n)
                .map(|y| Entry::Label(labels[op(x, y)].clone()))
                .collect()
        })
        .collect()
}

pub fn parse_space(json: &str) -> Result<FiniteSpace> {
    let raw: SpaceJson = serde_json::from_str(json).map_err(malformed)?;
    validate_topology(&raw.points, &raw.opens)
}

pub fn space_to_json(space: &FiniteSpace) -> SpaceJson {
    SpaceJson {
        points: space.labels().to_vec(),
        opens: space
            .opens()
            .iter()
            .map(|&o| {
                crate::bits::iter(o)
                    .map(|i| space.label(i).to_string())
                    .collect()
            })
            .collect(),
    }
}

pub fn parse_algebra(json: &str) -> Result<BooleanAlgebra> {
    let raw: AlgebraJson = serde_json::from_str(json).map_err(malformed)?;
    let c = &raw.carrier;
    BooleanAlgebra::from_tables(
        c.clone(),
        resolve_table(c, &raw.join)?,
        resolve_table(c, &raw.meet)?,
        resolve_row(c, &raw.comp)?,
        resolve(c, &raw.bot)?,
        resolve(c, &raw.top)?,
    )
}

pub fn algebra_to_json(algebra: &BooleanAlgebra) -> AlgebraJson {
    let labels = algebra.labels();
    let n = algebra.len();
    AlgebraJson {
        carrier: labels.to_vec(),
        join: label_table(labels, n, |x, y| algebra.join(x, y)),
        meet: label_table(labels, n, |x, y| algebra.meet(x, y)),
        comp: (0..n)
            .map(|x| Entry::Label(labels[algebra.complement(x)].clone()))
            .collect(),
        bot: Entry::Label(labels[algebra.bottom()].clone()),
        top: Entry::Label(labels[algebra.top()].clone()),
    }
}

/// Parses a ring; `default_name` is used when the file has no `name`.
pub fn parse_ring(json: &str, default_name: &str) -> Result<FiniteRing> {
    let raw: RingJson = serde_json::from_str(json).map_err(malformed)?;
    let c = &raw.carrier;
    FiniteRing::from_tables(
        raw.name.clone().unwrap_or_else(|| default_name.to_string()),
        c.clone(),
        resolve_table(c, &raw.add)?,
        resolve_table(c, &raw.mul)?,
        resolve(c, &raw.zero)?,
        resolve(c, &raw.one)?,
    )
}

pub fn ring_to_json(ring: &FiniteRing) -> RingJson {
    let labels = ring.labels();
    let n = ring.len();
    RingJson {
        name: Some(ring.name().to_string()),
        carrier: labels.to_vec(),
        add: label_table(labels, n, |x, y| ring.add(x, y)),
        mul: label_table(labels, n, |x, y| ring.mul(x, y)),
        zero: Entry::Label(labels[ring.zero()].clone()),
        one: Entry::Label(labels[ring.one()].clone()),
    }
}
