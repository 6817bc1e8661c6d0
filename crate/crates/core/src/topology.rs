//! Finite topological spaces.
//!
//! A [`FiniteSpace`] is an ordered list of point labels together with its
//! family of open sets, stored as a sorted, deduplicated list of bitmasks.
//! Everything else (closures, clopens, components, quotients) is computed
//! from that family exactly.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::bits::{self, Mask, MAX_BITS};
use crate::error::{Error, Result};
use crate::maps::ContinuousMap;

/// Upper bound on the number of opens a generated topology may have.
pub const MAX_OPENS: usize = 1 << 20;

/// A finite topological space with labelled points.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteSpace {
    labels: Vec<String>,
    opens: Vec<Mask>,
}

impl fmt::Debug for FiniteSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let opens: Vec<String> = self.opens.iter().map(|&o| self.format(o)).collect();
        f.debug_struct("FiniteSpace")
            .field("points", &self.labels)
            .field("opens", &opens)
            .finish()
    }
}

/// Labels `a`, `b`, ... for small spaces, `p26`, `p27`, ... beyond the alphabet.
pub fn default_labels(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| {
            if i < 26 {
                ((b'a' + i as u8) as char).to_string()
            } else {
                format!("p{i}")
            }
        })
        .collect()
}

fn check_labels(labels: &[String]) -> Result<()> {
    if labels.len() > MAX_BITS {
        return Err(Error::TooLarge {
            what: "point set",
            size: labels.len(),
            max: MAX_BITS,
        });
    }
    let mut seen = BTreeSet::new();
    for l in labels {
        if !seen.insert(l.as_str()) {
            return Err(Error::DuplicateLabel(l.clone()));
        }
    }
    Ok(())
}

/// Validates a candidate open family given by point labels.
///
/// Duplicate subsets in the input are merged. Each error names one witness.
pub fn validate_topology<S: AsRef<str>>(
    points: &[S],
    candidate_opens: &[Vec<S>],
) -> Result<FiniteSpace> {
    let labels: Vec<String> = points.iter().map(|p| p.as_ref().to_string()).collect();
    check_labels(&labels)?;
    let mut masks = Vec::with_capacity(candidate_opens.len());
    for open in candidate_opens {
        let mut m = 0;
        for p in open {
            let i = labels
                .iter()
                .position(|l| l == p.as_ref())
                .ok_or_else(|| Error::UnknownLabel(p.as_ref().to_string()))?;
            m |= bits::singleton(i);
        }
        masks.push(m);
    }
    FiniteSpace::new(labels, masks)
}

impl FiniteSpace {
    /// Validates `opens` as a topology on `labels`.
    pub fn new(labels: Vec<String>, opens: impl IntoIterator<Item = Mask>) -> Result<Self> {
        check_labels(&labels)?;
        let n = labels.len();
        let full = bits::full(n);
        let mut family: Vec<Mask> = opens.into_iter().collect();
        if let Some(&bad) = family.iter().find(|&&m| m & !full != 0) {
            let i = bits::lowest(bad & !full).unwrap_or(0);
            return Err(Error::UnknownLabel(format!("#{i}")));
        }
        family.sort_unstable();
        family.dedup();
        if family.binary_search(&0).is_err() {
            return Err(Error::MissingEmptyOrFull { missing: "empty" });
        }
        if family.binary_search(&full).is_err() {
            return Err(Error::MissingEmptyOrFull { missing: "full" });
        }
        let space = FiniteSpace {
            labels,
            opens: family,
        };
        for (i, &u) in space.opens.iter().enumerate() {
            for &v in &space.opens[i + 1..] {
                if !space.is_open(u | v) {
                    return Err(Error::NotClosedUnderUnion {
                        left: space.format(u),
                        right: space.format(v),
                    });
                }
                if !space.is_open(u & v) {
                    return Err(Error::NotClosedUnderIntersection {
                        left: space.format(u),
                        right: space.format(v),
                    });
                }
            }
        }
        Ok(space)
    }

    /// The topology generated by a subbasis: the coarsest one in which every
    /// member of `subbasis` is open.
    pub fn from_subbasis(
        labels: Vec<String>,
        subbasis: impl IntoIterator<Item = Mask>,
    ) -> Result<Self> {
        check_labels(&labels)?;
        let n = labels.len();
        let full = bits::full(n);
        let subbasis: Vec<Mask> = subbasis.into_iter().map(|m| m & full).collect();
        // Minimal neighbourhood of each point; every open is a union of these.
        let mut neighbourhoods: Vec<Mask> = (0..n)
            .map(|x| {
                subbasis
                    .iter()
                    .filter(|&&s| bits::contains(s, x))
                    .fold(full, |acc, &s| acc & s)
            })
            .collect();
        neighbourhoods.sort_unstable();
        neighbourhoods.dedup();
        let mut opens: BTreeSet<Mask> = BTreeSet::from([0]);
        for &u in &neighbourhoods {
            let extended: Vec<Mask> = opens.iter().map(|&o| o | u).collect();
            opens.extend(extended);
            if opens.len() > MAX_OPENS {
                return Err(Error::TooLarge {
                    what: "generated topology",
                    size: opens.len(),
                    max: MAX_OPENS,
                });
            }
        }
        opens.insert(full);
        Ok(FiniteSpace {
            labels,
            opens: opens.into_iter().collect(),
        })
    }

    pub fn empty() -> Self {
        FiniteSpace {
            labels: Vec::new(),
            opens: vec![0],
        }
    }

    pub fn discrete(n: usize) -> Self {
        Self::from_subbasis(default_labels(n), (0..n).map(bits::singleton))
            .expect("discrete space within size limits")
    }

    pub fn indiscrete(n: usize) -> Self {
        FiniteSpace::new(default_labels(n), [0, bits::full(n)])
            .expect("indiscrete topology is valid")
    }

    /// Two points `a`, `b` with opens `∅`, `{a}`, `{a,b}`.
    pub fn sierpinski() -> Self {
        FiniteSpace::new(default_labels(2), [0b00, 0b01, 0b11])
            .expect("Sierpiński topology is valid")
    }

    /// Disjoint union; labels of `other` are kept when distinct, otherwise
    /// both sides are suffixed with `.0` / `.1`.
    pub fn disjoint_union(&self, other: &FiniteSpace) -> Result<Self> {
        let clash = self.labels.iter().any(|l| other.labels.contains(l));
        let labels: Vec<String> = if clash {
            self.labels
                .iter()
                .map(|l| format!("{l}.0"))
                .chain(other.labels.iter().map(|l| format!("{l}.1")))
                .collect()
        } else {
            self.labels
                .iter()
                .chain(other.labels.iter())
                .cloned()
                .collect()
        };
        check_labels(&labels)?;
        let shift = self.len();
        let mut opens = Vec::with_capacity(self.opens.len() * other.opens.len());
        for &u in &self.opens {
            for &v in &other.opens {
                opens.push(u | v << shift);
            }
        }
        FiniteSpace::new(labels, opens)
    }

    /// Same topology with new point labels.
    pub fn relabel(&self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.len() {
            return Err(Error::MalformedTable(format!(
                "expected {} labels, got {}",
                self.len(),
                labels.len()
            )));
        }
        check_labels(&labels)?;
        Ok(FiniteSpace {
            labels,
            opens: self.opens.clone(),
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Opens in ascending bitmask order.
    pub fn opens(&self) -> &[Mask] {
        &self.opens
    }

    pub fn full_mask(&self) -> Mask {
        bits::full(self.len())
    }

    pub fn format(&self, mask: Mask) -> String {
        bits::format(mask, &self.labels)
    }

    pub fn is_open(&self, mask: Mask) -> bool {
        self.opens.binary_search(&mask).is_ok()
    }

    pub fn is_closed(&self, mask: Mask) -> bool {
        mask & !self.full_mask() == 0 && self.is_open(self.full_mask() & !mask)
    }

    /// Closed sets in ascending bitmask order.
    pub fn closed_sets(&self) -> Vec<Mask> {
        let full = self.full_mask();
        let mut closed: Vec<Mask> = self.opens.iter().map(|&o| full & !o).collect();
        closed.sort_unstable();
        closed
    }

    /// Largest open contained in `mask`.
    pub fn interior(&self, mask: Mask) -> Mask {
        self.opens
            .iter()
            .filter(|&&o| bits::is_subset(o, mask))
            .fold(0, |acc, &o| acc | o)
    }

    /// Smallest closed set containing `mask`.
    pub fn closure(&self, mask: Mask) -> Mask {
        let full = self.full_mask();
        full & !self.interior(full & !mask)
    }

    pub fn point_closure(&self, x: usize) -> Mask {
        self.closure(bits::singleton(x))
    }

    /// Smallest open containing `x`.
    pub fn minimal_open(&self, x: usize) -> Mask {
        self.opens
            .iter()
            .filter(|&&o| bits::contains(o, x))
            .fold(self.full_mask(), |acc, &o| acc & o)
    }

    /// `x` lies in the closure of `{y}`.
    pub fn specializes(&self, x: usize, y: usize) -> bool {
        bits::contains(self.point_closure(y), x)
    }

    /// All subsets that are both open and closed, ascending.
    pub fn clopens(&self) -> Vec<Mask> {
        let full = self.full_mask();
        self.opens
            .iter()
            .copied()
            .filter(|&o| self.is_open(full & !o))
            .collect()
    }

    /// Connected components, computed as quasi-components: the block of `x`
    /// is the intersection of every clopen containing `x`. For finite spaces
    /// the two notions agree.
    pub fn connected_components(&self) -> Partition {
        let clopens = self.clopens();
        let full = self.full_mask();
        let mut blocks = Vec::new();
        let mut covered: Mask = 0;
        for x in 0..self.len() {
            if bits::contains(covered, x) {
                continue;
            }
            let block = clopens
                .iter()
                .filter(|&&c| bits::contains(c, x))
                .fold(full, |acc, &c| acc & c);
            covered |= block;
            blocks.push(block);
        }
        Partition {
            size: self.len(),
            blocks,
        }
    }

    /// Exactly one component. The empty space has none and is not connected.
    pub fn is_connected(&self) -> bool {
        self.connected_components().len() == 1
    }

    /// The subspace topology on `mask`, with labels inherited.
    pub fn subspace(&self, mask: Mask) -> FiniteSpace {
        let members: Vec<usize> = bits::iter(mask & self.full_mask()).collect();
        let labels = members.iter().map(|&i| self.labels[i].clone()).collect();
        let compress = |o: Mask| {
            members
                .iter()
                .enumerate()
                .filter(|(_, &i)| bits::contains(o, i))
                .fold(0, |acc, (j, _)| acc | bits::singleton(j))
        };
        let opens: BTreeSet<Mask> = self.opens.iter().map(|&o| compress(o)).collect();
        FiniteSpace {
            labels,
            opens: opens.into_iter().collect(),
        }
    }

    /// A nonempty subset whose subspace topology is connected.
    pub fn is_connected_subset(&self, mask: Mask) -> bool {
        mask != 0 && self.subspace(mask).is_connected()
    }

    /// Quotient topology on the blocks of `partition`: a set of blocks is
    /// open iff the union of its blocks is open.
    pub fn quotient_topology(&self, partition: &Partition) -> Result<FiniteSpace> {
        if partition.size != self.len() {
            return Err(Error::InvalidPartition(format!(
                "partition of {} points applied to a {}-point space",
                partition.size,
                self.len()
            )));
        }
        let labels = partition.blocks.iter().map(|&b| self.format(b)).collect();
        let opens: Vec<Mask> = self
            .opens
            .iter()
            .filter(|&&o| partition.is_saturated(o))
            .map(|&o| partition.project(o))
            .collect();
        FiniteSpace::new(labels, opens)
    }

    /// The space of components with the topology generated by the images of
    /// clopens under the projection, together with that projection.
    ///
    /// This topology is always contained in the quotient topology.
    pub fn clopen_generated_component_space(self: &Arc<Self>) -> (Arc<FiniteSpace>, ContinuousMap) {
        let components = self.connected_components();
        let labels = components.blocks.iter().map(|&b| self.format(b)).collect();
        let generators: Vec<Mask> = self
            .clopens()
            .into_iter()
            .map(|c| components.project(c))
            .collect();
        let image = Arc::new(
            FiniteSpace::from_subbasis(labels, generators)
                .expect("component space is no larger than the base"),
        );
        let projection = ContinuousMap::new(self.clone(), image.clone(), components.assignment())
            .expect("projection onto clopen-generated components is continuous");
        (image, projection)
    }

    /// Every open is closed.
    pub fn is_discrete(&self) -> bool {
        (0..self.len()).all(|x| self.is_open(bits::singleton(x)))
    }

    /// Distinct points have disjoint open neighbourhoods. In a finite space
    /// it suffices to test minimal neighbourhoods.
    pub fn is_hausdorff(&self) -> bool {
        let minimal: Vec<Mask> = (0..self.len()).map(|x| self.minimal_open(x)).collect();
        (0..self.len()).all(|x| (x + 1..self.len()).all(|y| minimal[x] & minimal[y] == 0))
    }

    /// Every component is a single point.
    pub fn is_totally_disconnected(&self) -> bool {
        self.connected_components()
            .blocks
            .iter()
            .all(|b| b.count_ones() == 1)
    }

    /// Hausdorff and totally disconnected; compactness is automatic.
    pub fn is_profinite_finite(&self) -> bool {
        self.is_hausdorff() && self.is_totally_disconnected()
    }

    /// Specialization preorder as a Graphviz digraph: an edge `x -> y` for
    /// every `x != y` with `x` in the closure of `{y}`. Output order is fixed.
    pub fn specialization_dot(&self, name: &str) -> String {
        let mut out = format!("digraph \"{}\" {{\n", escape(name));
        for l in &self.labels {
            out.push_str(&format!("    \"{}\";\n", escape(l)));
        }
        for y in 0..self.len() {
            let closure = self.point_closure(y);
            for x in bits::iter(closure) {
                if x != y {
                    out.push_str(&format!(
                        "    \"{}\" -> \"{}\";\n",
                        escape(&self.labels[x]),
                        escape(&self.labels[y])
                    ));
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// A partition of `0..size` into nonempty disjoint blocks, ordered by their
/// smallest element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    size: usize,
    blocks: Vec<Mask>,
}

impl Partition {
    pub fn new(size: usize, blocks: impl IntoIterator<Item = Mask>) -> Result<Self> {
        if size > MAX_BITS {
            return Err(Error::TooLarge {
                what: "partitioned set",
                size,
                max: MAX_BITS,
            });
        }
        let full = bits::full(size);
        let mut blocks: Vec<Mask> = blocks.into_iter().collect();
        let mut seen: Mask = 0;
        for &b in &blocks {
            if b == 0 {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            if b & !full != 0 {
                return Err(Error::InvalidPartition(format!(
                    "block {b:#b} leaves the point set"
                )));
            }
            if b & seen != 0 {
                return Err(Error::InvalidPartition(format!(
                    "block {b:#b} overlaps another"
                )));
            }
            seen |= b;
        }
        if seen != full {
            return Err(Error::InvalidPartition(format!(
                "points {:#b} uncovered",
                full & !seen
            )));
        }
        blocks.sort_unstable_by_key(|&b| b.trailing_zeros());
        Ok(Partition { size, blocks })
    }

    pub fn blocks(&self) -> &[Mask] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Index of the block containing `x`.
    pub fn block_of(&self, x: usize) -> usize {
        self.blocks
            .iter()
            .position(|&b| bits::contains(b, x))
            .expect("partition covers every point")
    }

    /// Block index for every point.
    pub fn assignment(&self) -> Vec<usize> {
        (0..self.size).map(|x| self.block_of(x)).collect()
    }

    /// Blocks meeting `mask`, as a mask over block indices.
    pub fn project(&self, mask: Mask) -> Mask {
        self.blocks
            .iter()
            .enumerate()
            .filter(|(_, &b)| b & mask != 0)
            .fold(0, |acc, (i, _)| acc | bits::singleton(i))
    }

    /// Union of the blocks selected by `block_mask`.
    pub fn lift(&self, block_mask: Mask) -> Mask {
        bits::iter(block_mask).fold(0, |acc, i| acc | self.blocks[i])
    }

    /// `mask` is a union of blocks.
    pub fn is_saturated(&self, mask: Mask) -> bool {
        self.lift(self.project(mask)) == mask
    }

    /// Same blocks, ignoring order.
    pub fn same_blocks(&self, other: &Partition) -> bool {
        let a: BTreeSet<Mask> = self.blocks.iter().copied().collect();
        let b: BTreeSet<Mask> = other.blocks.iter().copied().collect();
        self.size == other.size && a == b
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_sierpinski() -> FiniteSpace {
        FiniteSpace::sierpinski()
            .disjoint_union(&FiniteSpace::sierpinski())
            .unwrap()
    }

    #[test]
    fn validate_examples() {
        let one = validate_topology(&["a"], &[vec![], vec!["a"]]).unwrap();
        assert_eq!(one.opens().len(), 2);
        let s = validate_topology(&["a", "b"], &[vec![], vec!["a"], vec!["a", "b"]]).unwrap();
        assert_eq!(s, FiniteSpace::sierpinski());
        let err = validate_topology(&["a", "b"], &[vec![], vec!["a"], vec!["b"]]).unwrap_err();
        assert_eq!(err, Error::MissingEmptyOrFull { missing: "full" });
    }

    #[test]
    fn validate_reports_witnesses() {
        let err = validate_topology(
            &["a", "b", "c"],
            &[vec![], vec!["a"], vec!["b"], vec!["a", "b", "c"]],
        )
        .unwrap_err();
        assert_eq!(
            err,
            Error::NotClosedUnderUnion {
                left: "{a}".into(),
                right: "{b}".into()
            }
        );
        let err = validate_topology(
            &["a", "b", "c"],
            &[vec![], vec!["a", "b"], vec!["b", "c"], vec!["a", "b", "c"]],
        )
        .unwrap_err();
        assert_eq!(
            err,
            Error::NotClosedUnderIntersection {
                left: "{a,b}".into(),
                right: "{b,c}".into()
            }
        );
        assert_eq!(
            validate_topology(&["a"], &[vec![], vec!["z"]]).unwrap_err(),
            Error::UnknownLabel("z".into())
        );
        assert_eq!(
            validate_topology(&["a", "a"], &[vec![]]).unwrap_err(),
            Error::DuplicateLabel("a".into())
        );
    }

    #[test]
    fn duplicates_are_merged() {
        let s = FiniteSpace::new(default_labels(1), [0, 1, 1, 0]).unwrap();
        assert_eq!(s.opens(), &[0, 1]);
    }

    #[test]
    fn empty_space() {
        let e = FiniteSpace::empty();
        assert!(e.connected_components().is_empty());
        assert!(e.is_profinite_finite());
        assert!(!e.is_connected());
        assert_eq!(FiniteSpace::new(vec![], [0]).unwrap(), e);
    }

    #[test]
    fn components_examples() {
        assert_eq!(FiniteSpace::discrete(3).connected_components().len(), 3);
        let s = FiniteSpace::sierpinski().connected_components();
        assert_eq!(s.blocks(), &[0b11]);
        let two = two_sierpinski().connected_components();
        assert_eq!(two.blocks(), &[0b0011, 0b1100]);
    }

    #[test]
    fn clopen_examples() {
        assert_eq!(FiniteSpace::sierpinski().clopens(), vec![0, 0b11]);
        assert_eq!(FiniteSpace::discrete(3).clopens().len(), 8);
        assert_eq!(FiniteSpace::discrete(1).clopens(), vec![0, 1]);
    }

    #[test]
    fn quotient_examples() {
        let d2 = FiniteSpace::discrete(2);
        let one_block = Partition::new(2, [0b11]).unwrap();
        assert_eq!(d2.quotient_topology(&one_block).unwrap().opens(), &[0, 1]);

        let s = FiniteSpace::sierpinski();
        let singletons = Partition::new(2, [0b01, 0b10]).unwrap();
        assert_eq!(s.quotient_topology(&singletons).unwrap().opens(), s.opens());

        let two = two_sierpinski();
        let q = two.quotient_topology(&two.connected_components()).unwrap();
        assert!(q.is_discrete());
        assert_eq!(q.len(), 2);
    }

    #[test]
    fn clopen_generated_examples() {
        let s = Arc::new(FiniteSpace::sierpinski());
        let (img, pi) = s.clopen_generated_component_space();
        assert_eq!(img.len(), 1);
        assert_eq!(pi.images(), &[0, 0]);

        let two = Arc::new(two_sierpinski());
        let (img, pi) = two.clopen_generated_component_space();
        assert!(img.is_discrete() && img.len() == 2);
        assert_eq!(pi.images(), &[0, 0, 1, 1]);

        let d3 = Arc::new(FiniteSpace::discrete(3));
        let (img, pi) = d3.clopen_generated_component_space();
        assert!(img.is_discrete() && img.len() == 3);
        assert_eq!(pi.images(), &[0, 1, 2]);
    }

    #[test]
    fn separation_predicates() {
        let d4 = FiniteSpace::discrete(4);
        assert!(d4.is_hausdorff() && d4.is_totally_disconnected() && d4.is_profinite_finite());
        for s in [FiniteSpace::sierpinski(), FiniteSpace::indiscrete(2)] {
            assert!(!s.is_hausdorff());
            assert!(!s.is_totally_disconnected());
            assert!(!s.is_profinite_finite());
        }
    }

    #[test]
    fn closure_and_specialization() {
        let s = FiniteSpace::sierpinski();
        assert_eq!(s.point_closure(0), 0b11);
        assert_eq!(s.point_closure(1), 0b10);
        assert!(s.specializes(1, 0));
        assert!(!s.specializes(0, 1));
        assert_eq!(s.minimal_open(1), 0b11);
        assert_eq!(s.interior(0b10), 0);
    }

    #[test]
    fn subspace_connectivity() {
        let two = two_sierpinski();
        assert!(two.is_connected_subset(0b0011));
        assert!(!two.is_connected_subset(0b0101));
        assert!(!two.is_connected_subset(0));
    }

    #[test]
    fn dot_is_sorted() {
        let dot = FiniteSpace::sierpinski().specialization_dot("S");
        assert_eq!(
            dot,
            "digraph \"S\" {\n    \"a\";\n    \"b\";\n    \"b\" -> \"a\";\n}\n"
        );
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::new(2, [0b01]).is_err());
        assert!(Partition::new(2, [0b11, 0b01]).is_err());
        assert!(Partition::new(2, [0, 0b11]).is_err());
        let p = Partition::new(3, [0b100, 0b011]).unwrap();
        assert_eq!(p.blocks(), &[0b011, 0b100]);
        assert_eq!(p.assignment(), vec![0, 0, 1]);
    }
}
