//! Slow, independent reference implementations used to cross-check the fast
//! paths: naive component splitting, labeled topologies from preorders, and
//! exhaustive subset scans for filters, ideals and primes.

use std::collections::BTreeSet;

use crate::bits::{self, Mask};
use crate::boolean::BooleanAlgebra;
use crate::error::{Error, Result};
use crate::ring::FiniteRing;
use crate::topology::{default_labels, FiniteSpace, Partition};

/// Largest carrier the subset scans accept.
pub const SCAN_LIMIT: usize = 16;

fn scan_guard(what: &'static str, size: usize) -> Result<()> {
    if size > SCAN_LIMIT {
        return Err(Error::TooLarge {
            what,
            size,
            max: SCAN_LIMIT,
        });
    }
    Ok(())
}

/// `S` is open in the subspace `B` when `S = U ∩ B` for an open `U`.
fn open_in(space: &FiniteSpace, s: Mask, b: Mask) -> bool {
    space.opens().iter().any(|&u| u & b == s)
}

/// Connected components found by splitting blocks along separations until
/// none is left.
pub fn components_by_splitting(space: &FiniteSpace) -> Partition {
    let mut pending = vec![space.full_mask()];
    let mut done = Vec::new();
    while let Some(b) = pending.pop() {
        if b == 0 {
            continue;
        }
        // a proper nonempty S ⊂ B with S and B∖S both open in B
        let split = (1..b)
            .filter(|&s| s & !b == 0)
            .find(|&s| open_in(space, s, b) && open_in(space, b & !s, b));
        match split {
            Some(s) => {
                pending.push(s);
                pending.push(b & !s);
            }
            None => done.push(b),
        }
    }
    Partition::new(space.len(), done).expect("splitting yields a partition")
}

/// Every labeled topology on `n` points, built from the reflexive transitive
/// relations on `n` points (their up-sets are the opens).
pub fn topologies_by_preorder(n: usize) -> Result<Vec<FiniteSpace>> {
    if n > 5 {
        return Err(Error::TooLarge {
            what: "preorder enumeration points",
            size: n,
            max: 5,
        });
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (0..n).filter(move |&y| y != x).map(move |y| (x, y)))
        .collect();
    let mut spaces = Vec::new();
    for choice in 0u64..1 << pairs.len() {
        // above[x]: everything y with x ≤ y
        let mut above: Vec<Mask> = (0..n).map(bits::singleton).collect();
        for (k, &(x, y)) in pairs.iter().enumerate() {
            if choice >> k & 1 == 1 {
                above[x] |= bits::singleton(y);
            }
        }
        let transitive =
            (0..n).all(|x| bits::iter(above[x]).all(|y| bits::is_subset(above[y], above[x])));
        if !transitive {
            continue;
        }
        let opens =
            (0..=bits::full(n)).filter(|&u| bits::iter(u).all(|x| bits::is_subset(above[x], u)));
        spaces.push(FiniteSpace::new(default_labels(n), opens)?);
    }
    Ok(spaces)
}

/// Every filter of `algebra` (including the improper one), by testing each
/// subset of the carrier against the filter axioms.
pub fn filters_by_subset_scan(algebra: &BooleanAlgebra) -> Result<BTreeSet<Mask>> {
    scan_guard("filter scan carrier", algebra.len())?;
    let n = algebra.len();
    let filters = (1..=bits::full(n))
        .filter(|&f| {
            bits::iter(f).all(|x| {
                (0..n).all(|y| !algebra.le(x, y) || bits::contains(f, y))
                    && bits::iter(f).all(|y| bits::contains(f, algebra.meet(x, y)))
            })
        })
        .collect();
    Ok(filters)
}

/// Every ideal of `ring`, by testing each subset of the carrier.
pub fn ideals_by_subset_scan(ring: &FiniteRing) -> Result<BTreeSet<Mask>> {
    scan_guard("ideal scan carrier", ring.len())?;
    let n = ring.len();
    let ideals = (0..=ring.full_mask())
        .filter(|&i| {
            bits::contains(i, ring.zero())
                && bits::iter(i).all(|a| {
                    bits::iter(i).all(|b| bits::contains(i, ring.sub(a, b)))
                        && (0..n).all(|r| bits::contains(i, ring.mul(r, a)))
                })
        })
        .collect();
    Ok(ideals)
}

/// Prime ideals among the scanned ideals: proper, and `ab ∈ P` forces
/// `a ∈ P` or `b ∈ P`.
pub fn primes_by_subset_scan(ring: &FiniteRing) -> Result<BTreeSet<Mask>> {
    let n = ring.len();
    let full = ring.full_mask();
    Ok(ideals_by_subset_scan(ring)?
        .into_iter()
        .filter(|&p| {
            p != full
                && (0..n).all(|a| {
                    (0..n).all(|b| {
                        !bits::contains(p, ring.mul(a, b))
                            || bits::contains(p, a)
                            || bits::contains(p, b)
                    })
                })
        })
        .collect())
}

/// Ideals generated by each subset of the idempotents, scanned
/// exhaustively. Each generated ideal is the closure of the generators
/// under `R`-multiples and sums.
pub fn regular_ideals_by_subset_scan(ring: &FiniteRing) -> Result<BTreeSet<Mask>> {
    let idempotents = ring.idempotents();
    if idempotents.len() > SCAN_LIMIT {
        return Err(Error::TooLarge {
            what: "idempotent subset scan",
            size: idempotents.len(),
            max: SCAN_LIMIT,
        });
    }
    let n = ring.len();
    let mut out = BTreeSet::new();
    for choice in 0u64..1 << idempotents.len() {
        let mut ideal = bits::singleton(ring.zero());
        for e in bits::iter(choice).map(|k| idempotents[k]) {
            ideal |= (0..n).fold(0, |acc, r| acc | bits::singleton(ring.mul(r, e)));
        }
        loop {
            let grown = bits::iter(ideal).fold(ideal, |acc, a| {
                bits::iter(ideal).fold(acc, |acc, b| acc | bits::singleton(ring.add(a, b)))
            });
            if grown == ideal {
                break;
            }
            ideal = grown;
        }
        out.insert(ideal);
    }
    Ok(out)
}

/// Primes of `ℤ/n`: one ideal `pℤ/n` for each prime `p | n`, as a mask over
/// the residues `0..n`.
pub fn zmod_primes_by_divisors(n: usize) -> Vec<Mask> {
    (2..=n)
        .filter(|&p| n.is_multiple_of(p) && (2..p).all(|d| p % d != 0))
        .map(|p| {
            (0..n)
                .filter(|k| k % p == 0)
                .fold(0, |acc, k| acc | bits::singleton(k))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolean::powerset_algebra;
    use crate::caps::Caps;
    use crate::ring::{product, zmod};

    #[test]
    fn preorder_counts() {
        let counts: Vec<usize> = (0..=4)
            .map(|n| topologies_by_preorder(n).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 1, 4, 29, 355]);
    }

    #[test]
    fn splitting_matches_quasi_components() {
        for n in 0..=3 {
            for space in topologies_by_preorder(n).unwrap() {
                assert!(components_by_splitting(&space).same_blocks(&space.connected_components()));
            }
        }
    }

    #[test]
    fn filter_scan_finds_principal_filters() {
        let b = powerset_algebra(3, &Caps::default()).unwrap();
        let scanned = filters_by_subset_scan(&b).unwrap();
        assert_eq!(scanned.len(), 8);
    }

    #[test]
    fn ideal_scans_agree_with_divisors() {
        let caps = Caps::default();
        for n in 2..=16 {
            let r = zmod(n, &caps).unwrap();
            let divisors = (1..=n).filter(|d| n % d == 0).count();
            assert_eq!(ideals_by_subset_scan(&r).unwrap().len(), divisors);
            let primes: BTreeSet<Mask> = zmod_primes_by_divisors(n).into_iter().collect();
            assert_eq!(primes_by_subset_scan(&r).unwrap(), primes);
        }
        let r = product(&zmod(2, &caps).unwrap(), &zmod(2, &caps).unwrap(), &caps).unwrap();
        assert_eq!(regular_ideals_by_subset_scan(&r).unwrap().len(), 4);
        assert!(ideals_by_subset_scan(&zmod(17, &caps).unwrap()).is_err());
    }
}
