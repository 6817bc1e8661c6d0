//! Finite commutative unital rings given by tables.
//!
//! Besides the constructors (`Z/n`, products, quotients) this module holds
//! the ideal-theoretic side: idempotents and their Boolean algebra, regular
//! and max-regular ideals, prime ideals, the Zariski spectrum, the space of
//! max-regular ideals and the comparison map from ultrafilters of
//! idempotents to max-regular ideals.
//!
//! Ring elements are indexed `0..n` with `n <= 64`, so subsets of a ring
//! (and in particular ideals) are single bitmasks.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::bits::{self, Mask, MAX_BITS};
use crate::boolean::{BooleanAlgebra, Filter};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::maps::ContinuousMap;
use crate::topology::FiniteSpace;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteRing {
    name: String,
    labels: Vec<String>,
    add: Vec<usize>,
    mul: Vec<usize>,
    neg: Vec<usize>,
    zero: usize,
    one: usize,
}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteRing({}, order {})", self.name, self.len())
    }
}

/// An ideal, identified by its member set. Only meaningful together with
/// the ring that produced it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ideal(Mask);

impl Ideal {
    pub fn members(self) -> Mask {
        self.0
    }

    pub fn contains(self, x: usize) -> bool {
        bits::contains(self.0, x)
    }

    pub fn is_subset(self, other: Ideal) -> bool {
        bits::is_subset(self.0, other.0)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// An ideal always contains zero.
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }
}

impl FiniteRing {
    /// Validates tables indexed by carrier order.
    pub fn from_tables(
        name: impl Into<String>,
        labels: Vec<String>,
        add: Vec<Vec<usize>>,
        mul: Vec<Vec<usize>>,
        zero: usize,
        one: usize,
    ) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::MalformedTable("empty carrier".into()));
        }
        if n > MAX_BITS {
            return Err(Error::TooLarge {
                what: "ring",
                size: n,
                max: MAX_BITS,
            });
        }
        let mut seen = BTreeSet::new();
        for l in &labels {
            if !seen.insert(l) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        let flatten = |table_name: &str, table: Vec<Vec<usize>>| -> Result<Vec<usize>> {
            if table.len() != n || table.iter().any(|row| row.len() != n) {
                return Err(Error::MalformedTable(format!(
                    "{table_name} table is not {n}x{n}"
                )));
            }
            let flat: Vec<usize> = table.into_iter().flatten().collect();
            if flat.iter().any(|&v| v >= n) {
                return Err(Error::MalformedTable(format!(
                    "{table_name} table has an out-of-range entry"
                )));
            }
            Ok(flat)
        };
        let add = flatten("add", add)?;
        let mul = flatten("mul", mul)?;
        if zero >= n || one >= n {
            return Err(Error::MalformedTable("zero or one out of range".into()));
        }
        let mut neg = vec![usize::MAX; n];
        for x in 0..n {
            if let Some(y) = (0..n).find(|&y| add[x * n + y] == zero) {
                neg[x] = y;
            }
        }
        let ring = FiniteRing {
            name: name.into(),
            labels,
            add,
            mul,
            neg,
            zero,
            one,
        };
        ring.check_axioms()?;
        Ok(ring)
    }

    fn axiom(&self, law: &'static str, elements: &[usize]) -> Error {
        let witness: Vec<&str> = elements.iter().map(|&i| self.labels[i].as_str()).collect();
        Error::Axiom {
            structure: "commutative ring",
            law,
            witness: format!("({})", witness.join(", ")),
        }
    }

    /// Exhaustive scan of the commutative unital ring axioms.
    pub fn check_axioms(&self) -> Result<()> {
        let n = self.len();
        let (a, m) = (|x, y| self.add(x, y), |x, y| self.mul(x, y));
        for x in 0..n {
            if a(x, self.zero) != x {
                return Err(self.axiom("additive identity", &[x]));
            }
            if self.neg[x] == usize::MAX {
                return Err(self.axiom("additive inverse", &[x]));
            }
            if m(x, self.one) != x {
                return Err(self.axiom("multiplicative identity", &[x]));
            }
            for y in 0..n {
                if a(x, y) != a(y, x) {
                    return Err(self.axiom("commutativity of addition", &[x, y]));
                }
                if m(x, y) != m(y, x) {
                    return Err(self.axiom("commutativity of multiplication", &[x, y]));
                }
                for z in 0..n {
                    if a(a(x, y), z) != a(x, a(y, z)) {
                        return Err(self.axiom("associativity of addition", &[x, y, z]));
                    }
                    if m(m(x, y), z) != m(x, m(y, z)) {
                        return Err(self.axiom("associativity of multiplication", &[x, y, z]));
                    }
                    if m(x, a(y, z)) != a(m(x, y), m(x, z)) {
                        return Err(self.axiom("distributivity", &[x, y, z]));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    /// Always false: a ring has at least one element.
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

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn add(&self, x: usize, y: usize) -> usize {
        self.add[x * self.len() + y]
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.len() + y]
    }

    pub fn neg(&self, x: usize) -> usize {
        self.neg[x]
    }

    pub fn sub(&self, x: usize, y: usize) -> usize {
        self.add(x, self.neg(y))
    }

    pub fn full_mask(&self) -> Mask {
        bits::full(self.len())
    }

    pub fn format(&self, mask: Mask) -> String {
        bits::format(mask, &self.labels)
    }

    /// `e·e = e`, in carrier order.
    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.len()).filter(|&e| self.mul(e, e) == e).collect()
    }

    pub fn is_idempotent(&self, e: usize) -> bool {
        e < self.len() && self.mul(e, e) == e
    }

    /// Exactly the two idempotents `0 ≠ 1`.
    pub fn has_trivial_idempotents(&self) -> bool {
        self.idempotents().len() == 2
    }

    /// The idempotents with `e ∨ e' = e + e' − ee'`, `e ∧ e' = ee'` and
    /// `eᶜ = 1 − e`, validated against every Boolean algebra law. Algebra
    /// element `i` is ring element `self.idempotents()[i]`, with its label.
    pub fn idempotent_algebra(&self) -> Result<BooleanAlgebra> {
        let idem = self.idempotents();
        let position = |x: usize| {
            idem.iter()
                .position(|&e| e == x)
                .expect("idempotents are closed under the Boolean operations")
        };
        let labels = idem.iter().map(|&e| self.labels[e].clone()).collect();
        let join = idem
            .iter()
            .map(|&e| {
                idem.iter()
                    .map(|&f| position(self.sub(self.add(e, f), self.mul(e, f))))
                    .collect()
            })
            .collect();
        let meet = idem
            .iter()
            .map(|&e| idem.iter().map(|&f| position(self.mul(e, f))).collect())
            .collect();
        let comp = idem
            .iter()
            .map(|&e| position(self.sub(self.one, e)))
            .collect();
        BooleanAlgebra::from_tables(
            labels,
            join,
            meet,
            comp,
            position(self.zero),
            position(self.one),
        )
    }

    /// Validates `mask` as an ideal.
    pub fn ideal(&self, mask: Mask) -> Result<Ideal> {
        if mask & !self.full_mask() != 0 {
            return Err(Error::NotAnIdeal("members outside the ring".into()));
        }
        if !bits::contains(mask, self.zero) {
            return Err(Error::NotAnIdeal("zero is missing".into()));
        }
        for a in bits::iter(mask) {
            for b in bits::iter(mask) {
                if !bits::contains(mask, self.add(a, b)) {
                    return Err(Error::NotAnIdeal(format!(
                        "{} + {} is missing",
                        self.labels[a], self.labels[b]
                    )));
                }
            }
            for r in 0..self.len() {
                if !bits::contains(mask, self.mul(r, a)) {
                    return Err(Error::NotAnIdeal(format!(
                        "{}·{} is missing",
                        self.labels[r], self.labels[a]
                    )));
                }
            }
        }
        Ok(Ideal(mask))
    }

    /// `aR`, which is already closed under addition.
    pub fn principal_ideal(&self, a: usize) -> Ideal {
        Ideal((0..self.len()).fold(0, |acc, r| acc | bits::singleton(self.mul(r, a))))
    }

    /// `I + J = {i + j}`.
    pub fn sum(&self, i: Ideal, j: Ideal) -> Ideal {
        let mut out: Mask = 0;
        for a in bits::iter(i.0) {
            for b in bits::iter(j.0) {
                out |= bits::singleton(self.add(a, b));
            }
        }
        Ideal(out)
    }

    pub fn zero_ideal(&self) -> Ideal {
        Ideal(bits::singleton(self.zero))
    }

    pub fn unit_ideal(&self) -> Ideal {
        Ideal(self.full_mask())
    }

    /// Least ideal containing `generators`.
    pub fn ideal_generated(&self, generators: Mask) -> Ideal {
        bits::iter(generators & self.full_mask()).fold(self.zero_ideal(), |acc, g| {
            if acc.contains(g) {
                acc
            } else {
                self.sum(acc, self.principal_ideal(g))
            }
        })
    }

    pub fn is_proper(&self, ideal: Ideal) -> bool {
        !ideal.contains(self.one)
    }

    /// Every `a ∈ I` satisfies `a = e·a` for some idempotent `e ∈ I`.
    pub fn is_regular_ideal(&self, ideal: Ideal) -> bool {
        let idem_inside: Vec<usize> = self
            .idempotents()
            .into_iter()
            .filter(|&e| ideal.contains(e))
            .collect();
        bits::iter(ideal.0).all(|a| idem_inside.iter().any(|&e| self.mul(e, a) == a))
    }

    /// Breadth-first closure of `{0}` under `I ↦ I + ⟨g⟩` for `g` in `steps`.
    fn ideal_closure(&self, steps: &[usize]) -> Vec<Ideal> {
        let principals: Vec<Ideal> = steps.iter().map(|&g| self.principal_ideal(g)).collect();
        let mut seen = BTreeSet::from([self.zero_ideal()]);
        let mut queue = VecDeque::from([self.zero_ideal()]);
        while let Some(i) = queue.pop_front() {
            for &p in &principals {
                if p.is_subset(i) {
                    continue;
                }
                let j = self.sum(i, p);
                if seen.insert(j) {
                    queue.push_back(j);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Every ideal, as sums of principal ideals, in ascending mask order.
    pub fn all_ideals(&self) -> Vec<Ideal> {
        let elements: Vec<usize> = (0..self.len()).collect();
        self.ideal_closure(&elements)
    }

    /// Ideals `⟨E⟩` for every set `E` of idempotents.
    pub fn regular_ideals(&self) -> Vec<Ideal> {
        self.ideal_closure(&self.idempotents())
    }

    /// Maximal proper regular ideals, ascending.
    pub fn max_regular_ideals(&self) -> Vec<Ideal> {
        let proper: Vec<Ideal> = self
            .regular_ideals()
            .into_iter()
            .filter(|&i| self.is_proper(i))
            .collect();
        proper
            .iter()
            .copied()
            .filter(|&i| !proper.iter().any(|&j| j != i && i.is_subset(j)))
            .collect()
    }

    /// Proper, and `ab ∈ 𝔭` forces `a ∈ 𝔭` or `b ∈ 𝔭`.
    pub fn is_prime(&self, ideal: Ideal) -> bool {
        self.is_proper(ideal)
            && (0..self.len()).filter(|&a| !ideal.contains(a)).all(|a| {
                (0..self.len())
                    .filter(|&b| !ideal.contains(b))
                    .all(|b| !ideal.contains(self.mul(a, b)))
            })
    }

    pub fn prime_ideals(&self) -> Vec<Ideal> {
        self.all_ideals()
            .into_iter()
            .filter(|&i| self.is_prime(i))
            .collect()
    }

    /// `⟨g⟩` for the first single generator if the ideal is principal,
    /// otherwise the member set.
    pub fn describe_ideal(&self, ideal: Ideal) -> String {
        match bits::iter(ideal.0).find(|&g| self.principal_ideal(g) == ideal) {
            Some(g) => format!("⟨{}⟩", self.labels[g]),
            None => self.format(ideal.0),
        }
    }

    /// Prime ideals with the Zariski topology generated by `D(f)`.
    pub fn zariski_spectrum(&self) -> ZariskiSpectrum {
        let primes = self.prime_ideals();
        let labels = primes.iter().map(|&p| self.describe_ideal(p)).collect();
        let basis: Vec<Mask> = (0..self.len())
            .map(|f| basic_mask(&primes, |p| !p.contains(f)))
            .collect();
        let space = FiniteSpace::from_subbasis(labels, basis).expect("at most 64 primes");
        ZariskiSpectrum {
            primes,
            space: Arc::new(space),
        }
    }

    /// Stone spectrum of the idempotent algebra.
    pub fn boolean_spectrum(&self) -> Result<FiniteSpace> {
        Ok(self.idempotent_algebra()?.stone_spectrum())
    }

    /// Max-regular ideals with the topology generated by
    /// `𝒪_e = {M : e ∉ M}` for idempotent `e`.
    pub fn mr_space(&self) -> MaxRegularSpace {
        let ideals = self.max_regular_ideals();
        let labels = ideals.iter().map(|&m| self.describe_ideal(m)).collect();
        let basis: Vec<Mask> = self
            .idempotents()
            .into_iter()
            .map(|e| basic_mask(&ideals, |m| !m.contains(e)))
            .collect();
        let space =
            FiniteSpace::from_subbasis(labels, basis).expect("at most 64 max-regular ideals");
        MaxRegularSpace {
            ideals,
            space: Arc::new(space),
        }
    }

    /// The same points with opens `𝒪_I = {M : I ⊄ M}` for every regular `I`.
    pub fn mr_space_from_regular_ideals(&self) -> FiniteSpace {
        let ideals = self.max_regular_ideals();
        let labels = ideals.iter().map(|&m| self.describe_ideal(m)).collect();
        let opens: Vec<Mask> = self
            .regular_ideals()
            .into_iter()
            .map(|i| basic_mask(&ideals, |m| !i.is_subset(m)))
            .collect();
        FiniteSpace::from_subbasis(labels, opens).expect("at most 64 max-regular ideals")
    }

    /// `φ(F) = ⟨e ∈ I(R) : 1 − e ∈ F⟩` for an ultrafilter `F` of the
    /// idempotent algebra.
    pub fn phi_ultrafilter_to_maxregular(&self, filter: &Filter<'_>) -> Result<Ideal> {
        let algebra = filter.algebra();
        if *algebra != self.idempotent_algebra()? {
            return Err(Error::NotUltrafilter(format!(
                "{} (not over the idempotents of {})",
                filter.describe(),
                self.name
            )));
        }
        if !filter.is_ultrafilter() {
            return Err(Error::NotUltrafilter(filter.describe()));
        }
        let idem = self.idempotents();
        let generators = (0..algebra.len())
            .filter(|&i| filter.contains(algebra.complement(i)))
            .fold(0, |acc, i| acc | bits::singleton(idem[i]));
        Ok(self.ideal_generated(generators))
    }

    /// `φ` as a map of spaces from the Stone spectrum of the idempotents to
    /// the max-regular space.
    pub fn phi_map(&self) -> Result<ContinuousMap> {
        let algebra = self.idempotent_algebra()?;
        let source = Arc::new(algebra.stone_spectrum());
        let mr = self.mr_space();
        let images = algebra
            .all_ultrafilters()
            .iter()
            .map(|f| {
                let m = self.phi_ultrafilter_to_maxregular(f)?;
                mr.index_of(m).ok_or_else(|| Error::Mismatch {
                    claim: "lemma-mrprofinite",
                    witness: format!(
                        "φ({}) = {} is not max-regular",
                        f.describe(),
                        self.describe_ideal(m)
                    ),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        ContinuousMap::new(source, mr.space.clone(), images)
    }

    /// `R/I` with cosets labelled `[a]` by their first element.
    pub fn quotient(&self, ideal: Ideal) -> Result<FiniteRing> {
        let ideal = self.ideal(ideal.0)?;
        let mut cosets: Vec<Mask> = Vec::new();
        let mut coset_of = vec![usize::MAX; self.len()];
        for a in 0..self.len() {
            if coset_of[a] != usize::MAX {
                continue;
            }
            let coset = bits::iter(ideal.0).fold(0, |acc, i| acc | bits::singleton(self.add(a, i)));
            for x in bits::iter(coset) {
                coset_of[x] = cosets.len();
            }
            cosets.push(coset);
        }
        let rep = |c: Mask| bits::lowest(c).expect("cosets are nonempty");
        let labels = cosets
            .iter()
            .map(|&c| format!("[{}]", self.labels[rep(c)]))
            .collect();
        let table = |op: &dyn Fn(usize, usize) -> usize| -> Vec<Vec<usize>> {
            cosets
                .iter()
                .map(|&c| {
                    cosets
                        .iter()
                        .map(|&d| coset_of[op(rep(c), rep(d))])
                        .collect()
                })
                .collect()
        };
        let add = table(&|x, y| self.add(x, y));
        let mul = table(&|x, y| self.mul(x, y));
        FiniteRing::from_tables(
            format!("{}/{}", self.name, self.describe_ideal(ideal)),
            labels,
            add,
            mul,
            coset_of[self.zero],
            coset_of[self.one],
        )
    }
}

fn basic_mask(points: &[Ideal], keep: impl Fn(Ideal) -> bool) -> Mask {
    points
        .iter()
        .enumerate()
        .filter(|(_, &p)| keep(p))
        .fold(0, |acc, (i, _)| acc | bits::singleton(i))
}

/// `Z/n` with residue labels `0..n-1`.
pub fn zmod(n: usize, caps: &Caps) -> Result<FiniteRing> {
    if n == 0 {
        return Err(Error::MalformedTable("Z/0 is infinite".into()));
    }
    if n > caps.ring.min(MAX_BITS) {
        return Err(Error::CapExceeded {
            what: "ring order",
            required: n as u128,
            cap: caps.ring.min(MAX_BITS) as u128,
        });
    }
    let labels = (0..n).map(|i| i.to_string()).collect();
    let add = (0..n)
        .map(|x| (0..n).map(|y| (x + y) % n).collect())
        .collect();
    let mul = (0..n)
        .map(|x| (0..n).map(|y| x * y % n).collect())
        .collect();
    FiniteRing::from_tables(format!("zmod({n})"), labels, add, mul, 0, 1 % n)
}

/// `R1 × R2` with pair labels `(a,b)`; element `(i, j)` has index `i·|R2| + j`.
pub fn product(r1: &FiniteRing, r2: &FiniteRing, caps: &Caps) -> Result<FiniteRing> {
    let (n1, n2) = (r1.len(), r2.len());
    let n = n1 * n2;
    if n > caps.ring.min(MAX_BITS) {
        return Err(Error::CapExceeded {
            what: "product ring order",
            required: n as u128,
            cap: caps.ring.min(MAX_BITS) as u128,
        });
    }
    let split = |x: usize| (x / n2, x % n2);
    let labels = (0..n)
        .map(|x| {
            let (a, b) = split(x);
            format!("({},{})", r1.label(a), r2.label(b))
        })
        .collect();
    let table = |op1: &dyn Fn(usize, usize) -> usize,
                 op2: &dyn Fn(usize, usize) -> usize|
     -> Vec<Vec<usize>> {
        (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| {
                        let ((a, b), (c, d)) = (split(x), split(y));
                        op1(a, c) * n2 + op2(b, d)
                    })
                    .collect()
            })
            .collect()
    };
    let add = table(&|a, c| r1.add(a, c), &|b, d| r2.add(b, d));
    let mul = table(&|a, c| r1.mul(a, c), &|b, d| r2.mul(b, d));
    FiniteRing::from_tables(
        format!("{}×{}", r1.name, r2.name),
        labels,
        add,
        mul,
        r1.zero * n2 + r2.zero,
        r1.one * n2 + r2.one,
    )
}

/// The Zariski spectrum: point `i` is `primes[i]`.
#[derive(Clone, Debug)]
pub struct ZariskiSpectrum {
    pub primes: Vec<Ideal>,
    pub space: Arc<FiniteSpace>,
}

impl ZariskiSpectrum {
    /// `D(f) = {𝔭 : f ∉ 𝔭}`.
    pub fn basic_open(&self, f: usize) -> Mask {
        basic_mask(&self.primes, |p| !p.contains(f))
    }

    /// `V(I) = {𝔭 : I ⊆ 𝔭}`.
    pub fn vanishing(&self, ideal: Ideal) -> Mask {
        basic_mask(&self.primes, |p| ideal.is_subset(p))
    }

    pub fn index_of(&self, prime: Ideal) -> Option<usize> {
        self.primes.iter().position(|&p| p == prime)
    }
}

/// The max-regular space: point `i` is `ideals[i]`.
#[derive(Clone, Debug)]
pub struct MaxRegularSpace {
    pub ideals: Vec<Ideal>,
    pub space: Arc<FiniteSpace>,
}

impl MaxRegularSpace {
    /// `𝒪_e = {M : e ∉ M}`.
    pub fn basic_open(&self, e: usize) -> Mask {
        basic_mask(&self.ideals, |m| !m.contains(e))
    }

    pub fn index_of(&self, ideal: Ideal) -> Option<usize> {
        self.ideals.iter().position(|&m| m == ideal)
    }
}
