//! Finite Boolean algebras given by operation tables, their filters and
//! ultrafilters, and the Stone spectrum.
//!
//! Tables are accepted from arbitrary input and every axiom is checked by an
//! exhaustive scan, so the idempotents of a ring can be fed in directly.
//! [`powerset_algebra`] builds the canonical model without re-validating.

use std::collections::BTreeSet;

use crate::bits::{self, Mask};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::report::{claims, ensure, ClaimReport};
use crate::topology::FiniteSpace;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BooleanAlgebra {
    labels: Vec<String>,
    join: Vec<usize>,
    meet: Vec<usize>,
    comp: Vec<usize>,
    bottom: usize,
    top: usize,
}

impl BooleanAlgebra {
    /// Validates operation tables indexed by carrier order.
    pub fn from_tables(
        labels: Vec<String>,
        join: Vec<Vec<usize>>,
        meet: Vec<Vec<usize>>,
        comp: Vec<usize>,
        bottom: usize,
        top: usize,
    ) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::MalformedTable("empty carrier".into()));
        }
        let mut seen = BTreeSet::new();
        for l in &labels {
            if !seen.insert(l) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        let flatten = |name: &str, table: Vec<Vec<usize>>| -> Result<Vec<usize>> {
            if table.len() != n || table.iter().any(|row| row.len() != n) {
                return Err(Error::MalformedTable(format!(
                    "{name} table is not {n}x{n}"
                )));
            }
            let flat: Vec<usize> = table.into_iter().flatten().collect();
            if flat.iter().any(|&v| v >= n) {
                return Err(Error::MalformedTable(format!(
                    "{name} table has an out-of-range entry"
                )));
            }
            Ok(flat)
        };
        let join = flatten("join", join)?;
        let meet = flatten("meet", meet)?;
        if comp.len() != n || comp.iter().any(|&v| v >= n) {
            return Err(Error::MalformedTable("complement table malformed".into()));
        }
        if bottom >= n || top >= n {
            return Err(Error::MalformedTable("bottom or top out of range".into()));
        }
        let algebra = BooleanAlgebra {
            labels,
            join,
            meet,
            comp,
            bottom,
            top,
        };
        algebra.check_axioms()?;
        Ok(algebra)
    }

    fn axiom(&self, law: &'static str, elements: &[usize]) -> Error {
        let witness: Vec<&str> = elements.iter().map(|&i| self.labels[i].as_str()).collect();
        Error::Axiom {
            structure: "Boolean algebra",
            law,
            witness: format!("({})", witness.join(", ")),
        }
    }

    /// Exhaustive scan of every Boolean algebra law and of the agreement of
    /// the two descriptions of the order.
    pub fn check_axioms(&self) -> Result<()> {
        let n = self.len();
        let (j, m, c) = (
            |a, b| self.join(a, b),
            |a, b| self.meet(a, b),
            |a| self.complement(a),
        );
        for x in 0..n {
            for y in 0..n {
                if j(x, y) != j(y, x) {
                    return Err(self.axiom("commutativity of join", &[x, y]));
                }
                if m(x, y) != m(y, x) {
                    return Err(self.axiom("commutativity of meet", &[x, y]));
                }
                if j(x, m(x, y)) != x || m(x, j(x, y)) != x {
                    return Err(self.axiom("absorption", &[x, y]));
                }
                if (m(x, y) == x) != (j(x, y) == y) {
                    return Err(self.axiom("order agreement", &[x, y]));
                }
                for z in 0..n {
                    if j(j(x, y), z) != j(x, j(y, z)) {
                        return Err(self.axiom("associativity of join", &[x, y, z]));
                    }
                    if m(m(x, y), z) != m(x, m(y, z)) {
                        return Err(self.axiom("associativity of meet", &[x, y, z]));
                    }
                    if m(x, j(y, z)) != j(m(x, y), m(x, z)) {
                        return Err(self.axiom("meet distributes over join", &[x, y, z]));
                    }
                    if j(x, m(y, z)) != m(j(x, y), j(x, z)) {
                        return Err(self.axiom("join distributes over meet", &[x, y, z]));
                    }
                }
            }
            if j(x, c(x)) != self.top || m(x, c(x)) != self.bottom {
                return Err(self.axiom("complement", &[x]));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    /// Always false: a Boolean algebra has at least one element.
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

    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.len() + y]
    }

    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.len() + y]
    }

    pub fn complement(&self, x: usize) -> usize {
        self.comp[x]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// `x ≤ y`, i.e. `x ∧ y = x`.
    pub fn le(&self, x: usize, y: usize) -> bool {
        self.meet(x, y) == x
    }

    /// Minimal nonzero elements, in carrier order.
    pub fn atoms(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&a| a != self.bottom)
            .filter(|&a| (0..self.len()).all(|y| y == a || y == self.bottom || !self.le(y, a)))
            .collect()
    }

    /// `{y : x ≤ y}`.
    pub fn upset(&self, x: usize) -> Filter<'_> {
        Filter {
            algebra: self,
            members: (0..self.len()).map(|y| self.le(x, y)).collect(),
        }
    }

    /// Smallest filter containing `generators`: the up-set of their meet.
    pub fn generated_filter(&self, generators: impl IntoIterator<Item = usize>) -> Filter<'_> {
        let m = generators
            .into_iter()
            .fold(self.top, |acc, g| self.meet(acc, g));
        self.upset(m)
    }

    /// Every filter. In a finite algebra each filter is the up-set of the
    /// meet of its members, so these are the principal filters.
    pub fn all_filters(&self) -> Vec<Filter<'_>> {
        let mut seen = BTreeSet::new();
        (0..self.len())
            .map(|b| self.upset(b))
            .filter(|f| seen.insert(f.members.clone()))
            .collect()
    }

    /// Up-sets of the atoms, in atom order. Each is checked to be an
    /// ultrafilter.
    pub fn all_ultrafilters(&self) -> Vec<Filter<'_>> {
        let ultra: Vec<Filter<'_>> = self.atoms().into_iter().map(|a| self.upset(a)).collect();
        debug_assert!(ultra.iter().all(Filter::is_ultrafilter));
        ultra
    }

    /// `𝒪_b`: the ultrafilters (indexed as in [`Self::all_ultrafilters`]) not containing `b`.
    pub fn basic_open(&self, b: usize) -> Mask {
        self.all_ultrafilters()
            .iter()
            .enumerate()
            .filter(|(_, f)| !f.contains(b))
            .fold(0, |acc, (i, _)| acc | bits::singleton(i))
    }

    /// `𝒪_H`: the ultrafilters not containing the filter `h`.
    pub fn filter_open(&self, h: &Filter<'_>) -> Mask {
        self.all_ultrafilters()
            .iter()
            .enumerate()
            .filter(|(_, f)| !h.is_subset(f))
            .fold(0, |acc, (i, _)| acc | bits::singleton(i))
    }

    fn ultrafilter_labels(&self) -> Vec<String> {
        self.atoms()
            .iter()
            .map(|&a| format!("↑{}", self.labels[a]))
            .collect()
    }

    /// Ultrafilters with the Stone topology generated by the basis `𝒪_b`.
    pub fn stone_spectrum(&self) -> FiniteSpace {
        let basis: Vec<Mask> = (0..self.len()).map(|b| self.basic_open(b)).collect();
        FiniteSpace::from_subbasis(self.ultrafilter_labels(), basis)
            .expect("spectrum has one point per atom")
    }

    /// The same point set with the topology generated by every `𝒪_H`.
    pub fn stone_spectrum_from_filters(&self) -> FiniteSpace {
        let opens: Vec<Mask> = self
            .all_filters()
            .iter()
            .map(|h| self.filter_open(h))
            .collect();
        FiniteSpace::from_subbasis(self.ultrafilter_labels(), opens)
            .expect("spectrum has one point per atom")
    }

    /// The isomorphism onto the powerset of the atoms: `b` goes to the mask
    /// of atoms below it, which is also its index in the powerset algebra.
    pub fn stone_representation(&self) -> Vec<usize> {
        let atoms = self.atoms();
        (0..self.len())
            .map(|b| {
                atoms
                    .iter()
                    .enumerate()
                    .filter(|(_, &a)| self.le(a, b))
                    .fold(0usize, |acc, (i, _)| acc | 1 << i)
            })
            .collect()
    }
}

/// Powerset of `atoms` atoms; element `i` is the subset with bitmask `i`.
pub fn powerset_algebra(atoms: usize, caps: &Caps) -> Result<BooleanAlgebra> {
    let size = 1usize
        .checked_shl(atoms as u32)
        .filter(|&s| atoms < 63 && s > 0);
    let size = match size {
        Some(s) if s <= caps.algebra => s,
        _ => {
            return Err(Error::CapExceeded {
                what: "powerset algebra",
                required: 1u128.checked_shl(atoms as u32).unwrap_or(u128::MAX),
                cap: caps.algebra as u128,
            })
        }
    };
    let labels = (0..size)
        .map(|m| {
            let inner: Vec<String> = bits::iter(m as Mask).map(|i| i.to_string()).collect();
            format!("{{{}}}", inner.join(","))
        })
        .collect();
    let mut join = Vec::with_capacity(size * size);
    let mut meet = Vec::with_capacity(size * size);
    for x in 0..size {
        for y in 0..size {
            join.push(x | y);
            meet.push(x & y);
        }
    }
    let comp = (0..size).map(|x| !x & (size - 1)).collect();
    Ok(BooleanAlgebra {
        labels,
        join,
        meet,
        comp,
        bottom: 0,
        top: size - 1,
    })
}

/// Checks that `assignment` preserves join, meet and complement exhaustively.
pub fn is_homomorphism(
    source: &BooleanAlgebra,
    target: &BooleanAlgebra,
    assignment: &[usize],
) -> bool {
    if assignment.len() != source.len() || assignment.iter().any(|&y| y >= target.len()) {
        return false;
    }
    let f = |x: usize| assignment[x];
    (0..source.len()).all(|x| {
        f(source.complement(x)) == target.complement(f(x))
            && (0..source.len()).all(|y| {
                f(source.join(x, y)) == target.join(f(x), f(y))
                    && f(source.meet(x, y)) == target.meet(f(x), f(y))
            })
    })
}

/// Stone representation, profiniteness of the spectrum and the basis
/// arithmetic `𝒪_{b∧c} = 𝒪_b ∪ 𝒪_c`, `𝒪_{b∨c} = 𝒪_b ∩ 𝒪_c`.
pub fn check_stone(algebra: &BooleanAlgebra, subject: &str, caps: &Caps) -> Vec<ClaimReport> {
    let atoms = algebra.atoms();
    let representation = (|| -> Result<(), String> {
        ensure(algebra.len() == 1 << atoms.len(), || {
            format!(
                "|B| = {} but there are {} atoms",
                algebra.len(),
                atoms.len()
            )
        })?;
        let powerset = powerset_algebra(atoms.len(), caps).map_err(|e| e.to_string())?;
        let rep = algebra.stone_representation();
        let distinct: BTreeSet<usize> = rep.iter().copied().collect();
        ensure(distinct.len() == algebra.len(), || {
            "b ↦ atoms below b is not injective".into()
        })?;
        ensure(is_homomorphism(algebra, &powerset, &rep), || {
            "b ↦ atoms below b is not a homomorphism".into()
        })?;
        for (i, u) in algebra.all_ultrafilters().iter().enumerate() {
            ensure(
                u.atom() == Some(atoms[i]) && *u == algebra.upset(atoms[i]),
                || {
                    format!(
                        "ultrafilter {} does not match atom {}",
                        u.describe(),
                        algebra.label(atoms[i])
                    )
                },
            )?;
        }
        Ok(())
    })();
    let profinite = (|| -> Result<(), String> {
        algebra.check_axioms().map_err(|e| e.to_string())?;
        let spectrum = algebra.stone_spectrum();
        ensure(spectrum.len() == atoms.len(), || {
            format!(
                "spectrum has {} points for {} atoms",
                spectrum.len(),
                atoms.len()
            )
        })?;
        ensure(spectrum.is_discrete(), || "spectrum is not discrete".into())?;
        ensure(spectrum.is_profinite_finite(), || {
            "spectrum is not profinite".into()
        })
    })();
    let basis = (|| -> Result<(), String> {
        let opens: Vec<Mask> = (0..algebra.len()).map(|b| algebra.basic_open(b)).collect();
        for b in 0..algebra.len() {
            for c in 0..algebra.len() {
                ensure(opens[algebra.meet(b, c)] == opens[b] | opens[c], || {
                    format!(
                        "𝒪 of {} ∧ {} is not the union",
                        algebra.label(b),
                        algebra.label(c)
                    )
                })?;
                ensure(opens[algebra.join(b, c)] == opens[b] & opens[c], || {
                    format!(
                        "𝒪 of {} ∨ {} is not the intersection",
                        algebra.label(b),
                        algebra.label(c)
                    )
                })?;
            }
        }
        ensure(
            algebra.stone_spectrum_from_filters() == algebra.stone_spectrum(),
            || "filter opens 𝒪_H generate a different topology".into(),
        )
    })();
    vec![
        ClaimReport::from_outcome(claims::STONE_REPRESENTATION, subject, representation),
        ClaimReport::from_outcome(claims::BOOL_PROFINITE, subject, profinite),
        ClaimReport::from_outcome(claims::STONE_BASIS, subject, basis),
    ]
}

/// A subset of a Boolean algebra satisfying the filter axioms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Filter<'a> {
    algebra: &'a BooleanAlgebra,
    members: Vec<bool>,
}

impl<'a> Filter<'a> {
    /// Validates top membership, closure under meet and upward closure.
    pub fn new(
        algebra: &'a BooleanAlgebra,
        members: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let mut flags = vec![false; algebra.len()];
        for x in members {
            if x >= algebra.len() {
                return Err(Error::NotAFilter(format!("element index {x} out of range")));
            }
            flags[x] = true;
        }
        let filter = Filter {
            algebra,
            members: flags,
        };
        if !filter.contains(algebra.top()) {
            return Err(Error::NotAFilter("top is missing".into()));
        }
        for x in filter.iter() {
            for y in filter.iter() {
                if !filter.contains(algebra.meet(x, y)) {
                    return Err(Error::NotAFilter(format!(
                        "{} ∧ {} is missing",
                        algebra.label(x),
                        algebra.label(y)
                    )));
                }
            }
            for y in 0..algebra.len() {
                if algebra.le(x, y) && !filter.contains(y) {
                    return Err(Error::NotAFilter(format!(
                        "{} is above {} but missing",
                        algebra.label(y),
                        algebra.label(x)
                    )));
                }
            }
        }
        Ok(filter)
    }

    pub fn algebra(&self) -> &'a BooleanAlgebra {
        self.algebra
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members[x]
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members
            .iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(|(i, _)| i)
    }

    pub fn len(&self) -> usize {
        self.iter().count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_subset(&self, other: &Filter<'_>) -> bool {
        self.members
            .iter()
            .zip(&other.members)
            .all(|(&a, &b)| !a || b)
    }

    /// The bottom element is not a member.
    pub fn is_proper(&self) -> bool {
        !self.contains(self.algebra.bottom())
    }

    /// Proper, and adjoining any non-member yields an improper filter.
    pub fn is_ultrafilter(&self) -> bool {
        self.is_proper()
            && (0..self.algebra.len())
                .filter(|&x| !self.contains(x))
                .all(|x| {
                    !self
                        .algebra
                        .generated_filter(self.iter().chain([x]))
                        .is_proper()
                })
    }

    /// The unique atom in an ultrafilter.
    pub fn atom(&self) -> Option<usize> {
        let atoms: Vec<usize> = self
            .algebra
            .atoms()
            .into_iter()
            .filter(|&a| self.contains(a))
            .collect();
        (atoms.len() == 1).then(|| atoms[0])
    }

    pub fn describe(&self) -> String {
        let inner: Vec<&str> = self.iter().map(|i| self.algebra.label(i)).collect();
        format!("{{{}}}", inner.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pow(n: usize) -> BooleanAlgebra {
        powerset_algebra(n, &Caps::default()).unwrap()
    }

    #[test]
    fn powerset_sizes() {
        let p0 = pow(0);
        assert_eq!(p0.len(), 1);
        assert_eq!(p0.bottom(), p0.top());
        assert_eq!(pow(1).len(), 2);
        assert_eq!(pow(2).len(), 4);
        assert_eq!(pow(2).atoms(), vec![1, 2]);
        for n in 0..=4 {
            pow(n).check_axioms().unwrap();
        }
    }

    #[test]
    fn powerset_cap() {
        let caps = Caps {
            algebra: 8,
            ..Caps::default()
        };
        assert!(powerset_algebra(3, &caps).is_ok());
        assert!(matches!(
            powerset_algebra(4, &caps),
            Err(Error::CapExceeded { .. })
        ));
        assert!(powerset_algebra(200, &Caps::default()).is_err());
    }

    #[test]
    fn atoms_examples() {
        assert_eq!(pow(3).atoms(), vec![1, 2, 4]);
        assert_eq!(pow(1).atoms(), vec![1]);
    }

    #[test]
    fn rejects_broken_tables() {
        // two elements, complement is the identity
        let labels = vec!["0".to_string(), "1".to_string()];
        let join = vec![vec![0, 1], vec![1, 1]];
        let meet = vec![vec![0, 0], vec![0, 1]];
        let err = BooleanAlgebra::from_tables(
            labels.clone(),
            join.clone(),
            meet.clone(),
            vec![0, 1],
            0,
            1,
        )
        .unwrap_err();
        assert!(matches!(
            err,
            Error::Axiom {
                law: "complement",
                ..
            }
        ));
        let ok = BooleanAlgebra::from_tables(labels.clone(), join.clone(), meet, vec![1, 0], 0, 1)
            .unwrap();
        assert_eq!(ok, pow(1).clone_with_labels(labels.clone()));
        let bad_meet = vec![vec![0, 1], vec![0, 1]];
        let err =
            BooleanAlgebra::from_tables(labels, join, bad_meet, vec![1, 0], 0, 1).unwrap_err();
        assert!(matches!(err, Error::Axiom { .. }));
    }

    #[test]
    fn filter_examples() {
        let b = pow(2);
        let up = b.upset(1);
        assert!(up.is_proper());
        assert!(up.is_ultrafilter());
        let full = Filter::new(&b, 0..4).unwrap();
        assert!(!full.is_proper());
        assert!(!b.upset(3).is_ultrafilter());
        assert_eq!(pow(3).all_ultrafilters().len(), 3);
        assert!(Filter::new(&b, [1]).is_err());
        assert!(Filter::new(&b, [1, 2, 3]).is_err());
    }

    #[test]
    fn stone_spectrum_examples() {
        let s2 = pow(2).stone_spectrum();
        assert!(s2.is_discrete() && s2.len() == 2);
        assert_eq!(pow(1).stone_spectrum().len(), 1);
        let s3 = pow(3).stone_spectrum();
        assert!(s3.is_discrete() && s3.len() == 3);
        assert!(pow(0).stone_spectrum().is_empty());
    }

    #[test]
    fn homomorphism_examples() {
        let b = pow(2);
        assert!(is_homomorphism(&b, &b, &[0, 1, 2, 3]));
        assert!(!is_homomorphism(&b, &b, &[3, 3, 3, 3]));
        // swapping the two atoms
        assert!(is_homomorphism(&b, &b, &[0, 2, 1, 3]));
        assert!(!is_homomorphism(&b, &b, &[0, 1]));
    }

    #[test]
    fn stone_representation_is_identity_on_powersets() {
        let b = pow(3);
        assert_eq!(b.stone_representation(), (0..8).collect::<Vec<_>>());
    }

    impl BooleanAlgebra {
        fn clone_with_labels(&self, labels: Vec<String>) -> BooleanAlgebra {
            BooleanAlgebra {
                labels,
                ..self.clone()
            }
        }
    }

    #[test]
    fn stone_checks_pass_on_powersets() {
        for n in 0..=4 {
            let reports = check_stone(&pow(n), &format!("powerset({n})"), &Caps::default());
            assert_eq!(reports.len(), 3);
            assert!(reports.iter().all(|r| r.pass), "{reports:?}");
        }
    }
}
