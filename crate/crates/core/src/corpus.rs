//! Test corpora: every labeled topology up to a point bound, a family of
//! finite rings, and Boolean algebras.

use serde::Serialize;

use crate::bits::{self, Mask};
use crate::boolean::{powerset_algebra, BooleanAlgebra};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::ring::{product, zmod, FiniteRing};
use crate::topology::{default_labels, FiniteSpace};

/// Largest point count for exhaustive topology enumeration.
pub const MAX_ENUMERATED_POINTS: usize = 6;

/// Every labeled topology on `n` points, in lexicographic order of their
/// open families.
///
/// Masks are decided in ascending order. Including `m` requires `o ∩ m` to be
/// present already for each included `o < m`, and marks `o ∪ m` as required
/// later, so only families closed under both operations survive.
pub fn enumerate_topologies(n: usize) -> Result<Vec<FiniteSpace>> {
    if n > MAX_ENUMERATED_POINTS {
        return Err(Error::TooLarge {
            what: "points for topology enumeration",
            size: n,
            max: MAX_ENUMERATED_POINTS,
        });
    }
    let full = bits::full(n);
    if n == 0 {
        return Ok(vec![FiniteSpace::empty()]);
    }
    let mut state = Enumeration {
        full,
        included: vec![false; full as usize + 1],
        required: vec![0; full as usize + 1],
        chosen: vec![0],
        out: Vec::new(),
    };
    state.included[0] = true;
    state.search(1);
    let labels = default_labels(n);
    state
        .out
        .into_iter()
        .map(|opens| FiniteSpace::new(labels.clone(), opens))
        .collect()
}

struct Enumeration {
    full: Mask,
    included: Vec<bool>,
    required: Vec<u32>,
    chosen: Vec<Mask>,
    out: Vec<Vec<Mask>>,
}

impl Enumeration {
    fn search(&mut self, m: Mask) {
        if m == self.full {
            let mut opens = self.chosen.clone();
            opens.push(self.full);
            self.out.push(opens);
            return;
        }
        if self.required[m as usize] == 0 {
            self.search(m + 1);
        }
        if self.chosen.iter().all(|&o| self.included[(o & m) as usize]) {
            let unions: Vec<Mask> = self
                .chosen
                .iter()
                .map(|&o| o | m)
                .filter(|&u| u > m)
                .collect();
            for &u in &unions {
                self.required[u as usize] += 1;
            }
            self.included[m as usize] = true;
            self.chosen.push(m);
            self.search(m + 1);
            self.chosen.pop();
            self.included[m as usize] = false;
            for &u in &unions {
                self.required[u as usize] -= 1;
            }
        }
    }
}

/// Bounds for [`generate_corpus`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusConfig {
    /// Exhaustive topologies on `1..=max_points` points.
    pub max_points: usize,
    /// Rings `zmod(2..=max_ring)`.
    pub max_ring: usize,
    /// Products `zmod(a) × zmod(b)`, `2 ≤ a ≤ b`, with `ab ≤ max_product`.
    pub max_product: usize,
    /// Quotients by nonzero proper regular ideals of rings up to this size.
    pub max_quotient_source: usize,
    /// Powerset algebras on `0..=max_atoms` atoms.
    pub max_atoms: usize,
    /// Discrete targets on `1..=max_target` points for the adjunction check.
    pub max_target: usize,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        CorpusConfig {
            max_points: 4,
            max_ring: 60,
            max_product: 64,
            max_quotient_source: 16,
            max_atoms: 4,
            max_target: 3,
        }
    }
}

/// A named Boolean algebra.
#[derive(Clone, Debug)]
pub struct NamedAlgebra {
    pub name: String,
    pub algebra: BooleanAlgebra,
}

#[derive(Clone, Debug, Default)]
pub struct Corpus {
    pub spaces: Vec<FiniteSpace>,
    pub rings: Vec<FiniteRing>,
    pub algebras: Vec<NamedAlgebra>,
}

impl Corpus {
    /// Spaces with at most `n` points.
    pub fn spaces_up_to(&self, n: usize) -> impl Iterator<Item = &FiniteSpace> {
        self.spaces.iter().filter(move |s| s.len() <= n)
    }

    pub fn is_empty(&self) -> bool {
        self.spaces.is_empty() && self.rings.is_empty() && self.algebras.is_empty()
    }
}

/// Builds the corpus. The ring and algebra lists are deterministic; spaces
/// come out grouped by point count.
pub fn generate_corpus(config: &CorpusConfig, caps: &Caps) -> Result<Corpus> {
    let mut spaces = Vec::new();
    for n in 1..=config.max_points {
        spaces.extend(enumerate_topologies(n)?);
    }

    let mut rings = Vec::new();
    for n in 2..=config.max_ring {
        rings.push(zmod(n, caps)?);
    }
    for a in 2..=config.max_product {
        for b in a..=config.max_product / a {
            rings.push(product(&zmod(a, caps)?, &zmod(b, caps)?, caps)?);
        }
    }
    let mut quotients = Vec::new();
    for ring in rings
        .iter()
        .filter(|r| r.len() <= config.max_quotient_source)
    {
        for ideal in ring.regular_ideals() {
            if ideal != ring.zero_ideal() && ring.is_proper(ideal) {
                quotients.push(ring.quotient(ideal)?);
            }
        }
    }
    rings.extend(quotients);

    let mut algebras = Vec::new();
    for k in 0..=config.max_atoms {
        algebras.push(NamedAlgebra {
            name: format!("powerset({k})"),
            algebra: powerset_algebra(k, caps)?,
        });
    }
    for ring in &rings {
        algebras.push(NamedAlgebra {
            name: format!("I({})", ring.name()),
            algebra: ring.idempotent_algebra()?,
        });
    }
    Ok(Corpus {
        spaces,
        rings,
        algebras,
    })
}
