//! Idempotents, clopens of the Zariski spectrum, max-regular ideals and
//! connected components, tied together.
//!
//! The central facts checked here, for a finite commutative ring `R` with
//! `X = Spec R`:
//!
//! * `e ↦ D(e)` is a bijection from idempotents onto clopens of `X`, so `X`
//!   is connected exactly when `0` and `1` are the only idempotents;
//! * for a max-regular ideal `M`, `R/M` has only trivial idempotents and
//!   `V(M)` is connected;
//! * the connected components of `X` are exactly the sets `V(M)`, `M`
//!   max-regular, and the component set carries a profinite topology,
//!   coarser than the quotient topology, transported from the max-regular
//!   space.
//!
//! Each `check_*` function returns a [`ClaimReport`] with a witness on
//! failure rather than a bare boolean.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::bits::{self, Mask};
use crate::error::{Error, Result};
use crate::maps::ContinuousMap;
use crate::report::{claims, ensure, ClaimReport};
use crate::ring::{FiniteRing, Ideal, ZariskiSpectrum};
use crate::topology::{FiniteSpace, Partition};

/// `η(e) = D(e)`, a clopen of the spectrum.
pub fn eta_idempotent_to_clopen(
    ring: &FiniteRing,
    spectrum: &ZariskiSpectrum,
    e: usize,
) -> Result<Mask> {
    if !ring.is_idempotent(e) {
        let label = if e < ring.len() {
            ring.label(e).to_string()
        } else {
            format!("#{e}")
        };
        return Err(Error::NotIdempotent(label));
    }
    Ok(spectrum.basic_open(e))
}

/// `η` is injective, lands in clopens, and hits every clopen.
pub fn check_eta_bijective(ring: &FiniteRing) -> ClaimReport {
    let spectrum = ring.zariski_spectrum();
    let outcome = (|| -> Result<(), String> {
        let idem = ring.idempotents();
        let clopens: BTreeSet<Mask> = spectrum.space.clopens().into_iter().collect();
        let mut images = BTreeSet::new();
        for &e in &idem {
            let d = eta_idempotent_to_clopen(ring, &spectrum, e).map_err(|err| err.to_string())?;
            // D(e) = V(⟨1 − e⟩)
            let complement_vanishing =
                spectrum.vanishing(ring.principal_ideal(ring.sub(ring.one(), e)));
            ensure(d == complement_vanishing, || {
                format!("D({}) differs from V(⟨1−{}⟩)", ring.label(e), ring.label(e))
            })?;
            ensure(clopens.contains(&d), || {
                format!(
                    "D({}) = {} is not clopen",
                    ring.label(e),
                    spectrum.space.format(d)
                )
            })?;
            ensure(images.insert(d), || {
                format!("η not injective: D({}) repeats", ring.label(e))
            })?;
        }
        if let Some(missed) = clopens.difference(&images).next() {
            return Err(format!(
                "clopen {} is not D(e) for any idempotent",
                spectrum.space.format(*missed)
            ));
        }
        Ok(())
    })();
    ClaimReport::from_outcome(claims::CORRESPOND, ring.name(), outcome)
}

/// The spectrum is connected exactly when the only idempotents are `0 ≠ 1`.
pub fn check_connected_iff_trivial_idempotents(ring: &FiniteRing) -> ClaimReport {
    let connected = ring.zariski_spectrum().space.is_connected();
    let trivial = ring.has_trivial_idempotents();
    let outcome = ensure(connected == trivial, || {
        format!(
            "spectrum connected = {connected}, but {} idempotents",
            ring.idempotents().len()
        )
    });
    ClaimReport::from_outcome(claims::IDEMCONNECTED, ring.name(), outcome)
}

/// A proper regular ideal is max-regular exactly when the quotient has only
/// the two trivial idempotents.
pub fn check_goodlem(ring: &FiniteRing) -> ClaimReport {
    let outcome = (|| -> Result<(), String> {
        let max: BTreeSet<Ideal> = ring.max_regular_ideals().into_iter().collect();
        for i in ring
            .regular_ideals()
            .into_iter()
            .filter(|&i| ring.is_proper(i))
        {
            let quotient = ring.quotient(i).map_err(|e| e.to_string())?;
            let trivial = quotient.has_trivial_idempotents();
            ensure(trivial == max.contains(&i), || {
                format!(
                    "{}: max-regular = {}, but R/I has {} idempotents",
                    ring.describe_ideal(i),
                    max.contains(&i),
                    quotient.idempotents().len()
                )
            })?;
        }
        Ok(())
    })();
    ClaimReport::from_outcome(claims::GOODLEM, ring.name(), outcome)
}

/// `V(M)` is a connected subset of the spectrum for every max-regular `M`.
pub fn check_above(ring: &FiniteRing) -> ClaimReport {
    let spectrum = ring.zariski_spectrum();
    let outcome = ring.max_regular_ideals().into_iter().try_for_each(|m| {
        let v = spectrum.vanishing(m);
        ensure(spectrum.space.is_connected_subset(v), || {
            format!(
                "V({}) = {} is not connected",
                ring.describe_ideal(m),
                spectrum.space.format(v)
            )
        })
    });
    ClaimReport::from_outcome(claims::ABOVE, ring.name(), outcome)
}

/// `M ↦ V(M)` over max-regular ideals, checked to coincide with the
/// connected components of the spectrum. The `i`-th entry pairs the `i`-th
/// max-regular ideal with its vanishing set.
pub fn components_via_max_regular(ring: &FiniteRing) -> Result<Vec<(Ideal, Mask)>> {
    let spectrum = ring.zariski_spectrum();
    let components = spectrum.space.connected_components();
    let blocks: BTreeSet<Mask> = components.blocks().iter().copied().collect();
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for m in ring.max_regular_ideals() {
        let v = spectrum.vanishing(m);
        if !blocks.contains(&v) {
            return Err(Error::Mismatch {
                claim: claims::MAX_REG,
                witness: format!(
                    "V({}) = {} is not a component of {}",
                    ring.describe_ideal(m),
                    spectrum.space.format(v),
                    ring.name()
                ),
            });
        }
        if !seen.insert(v) {
            return Err(Error::Mismatch {
                claim: claims::MAX_REG,
                witness: format!(
                    "V({}) repeats another max-regular ideal",
                    ring.describe_ideal(m)
                ),
            });
        }
        out.push((m, v));
    }
    if let Some(block) = blocks.difference(&seen).next() {
        return Err(Error::Mismatch {
            claim: claims::MAX_REG,
            witness: format!(
                "component {} of {} is not V(M) for any max-regular M",
                spectrum.space.format(*block),
                ring.name()
            ),
        });
    }
    Ok(out)
}

pub fn check_max_reg(ring: &FiniteRing) -> ClaimReport {
    ClaimReport::from_outcome(
        claims::MAX_REG,
        ring.name(),
        components_via_max_regular(ring).map(|_| ()),
    )
}

/// `f(𝔭) = ⟨𝔭 ∩ I(R)⟩`, from the spectrum to the max-regular space.
pub fn prime_to_max_regular(ring: &FiniteRing) -> Result<ContinuousMap> {
    let spectrum = ring.zariski_spectrum();
    let mr = ring.mr_space();
    let idem = bits::from_indices(ring.idempotents());
    let images = spectrum
        .primes
        .iter()
        .map(|&p| {
            let image = ring.ideal_generated(p.members() & idem);
            mr.index_of(image).ok_or_else(|| Error::Mismatch {
                claim: claims::MAX_REG_MAP,
                witness: format!(
                    "f({}) = {} is not max-regular",
                    ring.describe_ideal(p),
                    ring.describe_ideal(image)
                ),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    ContinuousMap::new(spectrum.space.clone(), mr.space.clone(), images)
}

/// `f` is well defined, continuous, and `f⁻¹(𝒪_e) = D(e)`.
pub fn check_prime_to_max_regular(ring: &FiniteRing) -> ClaimReport {
    let outcome = (|| -> Result<(), String> {
        let f = prime_to_max_regular(ring).map_err(|e| e.to_string())?;
        let spectrum = ring.zariski_spectrum();
        let mr = ring.mr_space();
        for e in ring.idempotents() {
            ensure(
                f.preimage(mr.basic_open(e)) == spectrum.basic_open(e),
                || format!("f⁻¹(𝒪_{}) ≠ D({})", ring.label(e), ring.label(e)),
            )?;
        }
        Ok(())
    })();
    ClaimReport::from_outcome(claims::MAX_REG_MAP, ring.name(), outcome)
}

/// The component space of the spectrum with the topology transported from
/// the max-regular space along `V(M) ↦ M`.
#[derive(Clone, Debug)]
pub struct ComponentSpace {
    /// Components with the transported topology; point `i` is `components.blocks()[i]`.
    pub space: Arc<FiniteSpace>,
    /// Canonical projection from the spectrum.
    pub projection: ContinuousMap,
    /// `Φ`: component `i` goes to max-regular point `phi[i]`.
    pub phi: ContinuousMap,
    pub components: Partition,
}

/// Builds the component space and asserts that it is homeomorphic to the
/// max-regular space via `Φ`, coarser than the quotient topology, and
/// profinite.
pub fn component_space(ring: &FiniteRing) -> Result<ComponentSpace> {
    let spectrum = ring.zariski_spectrum();
    let mr = ring.mr_space();
    let components = spectrum.space.connected_components();
    let pairs = components_via_max_regular(ring)?;
    let mismatch = |witness: String| Error::Mismatch {
        claim: claims::COARSER,
        witness,
    };
    // Φ as an index map from components to max-regular points.
    let phi_images: Vec<usize> = components
        .blocks()
        .iter()
        .map(|&block| {
            let (m, _) = pairs
                .iter()
                .find(|(_, v)| *v == block)
                .expect("components_via_max_regular covers every block");
            mr.index_of(*m)
                .expect("pairs come from the max-regular list")
        })
        .collect();
    let labels = components
        .blocks()
        .iter()
        .map(|&b| spectrum.space.format(b))
        .collect();
    let transported: Vec<Mask> = ring
        .idempotents()
        .into_iter()
        .map(|e| {
            let open = mr.basic_open(e);
            phi_images
                .iter()
                .enumerate()
                .filter(|(_, &j)| bits::contains(open, j))
                .fold(0, |acc, (i, _)| acc | bits::singleton(i))
        })
        .collect();
    let space = Arc::new(FiniteSpace::from_subbasis(labels, transported)?);
    let projection = ContinuousMap::new(
        spectrum.space.clone(),
        space.clone(),
        components.assignment(),
    )
    .map_err(|e| mismatch(format!("projection is not continuous: {e}")))?;
    let phi = ContinuousMap::new(space.clone(), mr.space.clone(), phi_images)
        .map_err(|e| mismatch(format!("Φ is not continuous: {e}")))?;
    if !phi.is_homeomorphism() {
        return Err(mismatch(
            "Φ is not a homeomorphism onto the max-regular space".into(),
        ));
    }
    let quotient = spectrum.space.quotient_topology(&components)?;
    if let Some(&open) = space.opens().iter().find(|&&o| !quotient.is_open(o)) {
        return Err(mismatch(format!(
            "open {} is not open in the quotient topology",
            space.format(open)
        )));
    }
    if !space.is_profinite_finite() {
        return Err(mismatch(format!(
            "component space of {} is not profinite",
            ring.name()
        )));
    }
    Ok(ComponentSpace {
        space,
        projection,
        phi,
        components,
    })
}

/// The component space exists with all its asserted properties, and
/// `π⁻¹(Φ⁻¹(𝒪_e)) = D(e)` for every idempotent `e`.
pub fn check_coarser(ring: &FiniteRing) -> ClaimReport {
    let outcome = (|| -> Result<(), String> {
        let cs = component_space(ring).map_err(|e| e.to_string())?;
        let spectrum = ring.zariski_spectrum();
        let mr = ring.mr_space();
        for e in ring.idempotents() {
            let pulled = cs.projection.preimage(cs.phi.preimage(mr.basic_open(e)));
            ensure(pulled == spectrum.basic_open(e), || {
                format!("π⁻¹(Φ⁻¹(𝒪_{})) ≠ D({})", ring.label(e), ring.label(e))
            })?;
        }
        Ok(())
    })();
    ClaimReport::from_outcome(claims::COARSER, ring.name(), outcome)
}

/// `φ` is a homeomorphism from the Stone spectrum of the idempotents onto
/// the max-regular space.
pub fn check_mrprofinite(ring: &FiniteRing) -> ClaimReport {
    let outcome = (|| -> Result<(), String> {
        let phi = ring.phi_map().map_err(|e| e.to_string())?;
        ensure(phi.is_homeomorphism(), || {
            "φ is not a homeomorphism".to_string()
        })?;
        ensure(phi.target().is_profinite_finite(), || {
            "max-regular space is not profinite".to_string()
        })
    })();
    ClaimReport::from_outcome(claims::MRPROFINITE, ring.name(), outcome)
}

/// The basis `𝒪_e` and the family `𝒪_I` over regular ideals generate the
/// same topology on the max-regular ideals.
pub fn check_mr_basis(ring: &FiniteRing) -> ClaimReport {
    let by_idempotents = ring.mr_space();
    let by_ideals = ring.mr_space_from_regular_ideals();
    let outcome = ensure(*by_idempotents.space == by_ideals, || {
        format!(
            "{} opens from idempotents vs {} from regular ideals",
            by_idempotents.space.opens().len(),
            by_ideals.opens().len()
        )
    });
    ClaimReport::from_outcome(claims::MR_BASIS, ring.name(), outcome)
}

/// The idempotents form a Boolean algebra under the ring formulas.
pub fn check_idempotent_algebra(ring: &FiniteRing) -> ClaimReport {
    ClaimReport::from_outcome(
        claims::IDEMPOTENT_ALGEBRA,
        ring.name(),
        ring.idempotent_algebra().map(|_| ()),
    )
}

/// For every ideal: the element-wise criterion agrees with being generated
/// by the idempotents it contains, and the enumerated regular ideals are
/// exactly the ideals meeting the criterion.
pub fn check_regular_criterion(ring: &FiniteRing) -> ClaimReport {
    let outcome = (|| -> Result<(), String> {
        let idem = bits::from_indices(ring.idempotents());
        let regular: BTreeSet<Ideal> = ring.regular_ideals().into_iter().collect();
        for i in ring.all_ideals() {
            let criterion = ring.is_regular_ideal(i);
            let generated = ring.ideal_generated(i.members() & idem) == i;
            ensure(criterion == generated, || {
                format!(
                    "{}: criterion says {criterion}, regeneration says {generated}",
                    ring.describe_ideal(i)
                )
            })?;
            ensure(criterion == regular.contains(&i), || {
                format!(
                    "{}: enumeration disagrees with the criterion",
                    ring.describe_ideal(i)
                )
            })?;
        }
        Ok(())
    })();
    ClaimReport::from_outcome(claims::REGULARIDEM, ring.name(), outcome)
}

/// `D(fg) = D(f) ∩ D(g)` for all elements and `V(I) ∪ V(J) = V(I ∩ J)` for
/// all ideals.
pub fn check_zariski_arithmetic(ring: &FiniteRing) -> ClaimReport {
    let spectrum = ring.zariski_spectrum();
    let outcome = (|| -> Result<(), String> {
        for f in 0..ring.len() {
            for g in 0..ring.len() {
                ensure(
                    spectrum.basic_open(ring.mul(f, g))
                        == spectrum.basic_open(f) & spectrum.basic_open(g),
                    || {
                        format!(
                            "D({}·{}) ≠ D({}) ∩ D({})",
                            ring.label(f),
                            ring.label(g),
                            ring.label(f),
                            ring.label(g)
                        )
                    },
                )?;
            }
        }
        let ideals = ring.all_ideals();
        for &i in &ideals {
            for &j in &ideals {
                let meet = ring
                    .ideal(i.members() & j.members())
                    .map_err(|e| e.to_string())?;
                ensure(
                    spectrum.vanishing(i) | spectrum.vanishing(j) == spectrum.vanishing(meet),
                    || {
                        format!(
                            "V({}) ∪ V({}) ≠ V(I ∩ J)",
                            ring.describe_ideal(i),
                            ring.describe_ideal(j)
                        )
                    },
                )?;
            }
        }
        Ok(())
    })();
    ClaimReport::from_outcome(claims::ZARISKI_ARITHMETIC, ring.name(), outcome)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::caps::Caps;
    use crate::ring::{product, zmod};

    fn z(n: usize) -> FiniteRing {
        zmod(n, &Caps::default()).unwrap()
    }

    #[test]
    fn eta_examples() {
        let r = z(6);
        let s = r.zariski_spectrum();
        let two = s.index_of(r.principal_ideal(2)).unwrap();
        assert_eq!(
            eta_idempotent_to_clopen(&r, &s, 3).unwrap(),
            bits::singleton(two)
        );
        assert_eq!(
            eta_idempotent_to_clopen(&r, &s, 1).unwrap(),
            s.space.full_mask()
        );
        assert_eq!(eta_idempotent_to_clopen(&r, &s, 0).unwrap(), 0);
        assert_eq!(
            eta_idempotent_to_clopen(&r, &s, 2).unwrap_err(),
            Error::NotIdempotent("2".into())
        );
    }

    #[test]
    fn eta_counts() {
        for (n, count) in [(6, 4), (4, 2), (30, 8)] {
            let r = z(n);
            assert!(check_eta_bijective(&r).pass);
            assert_eq!(r.idempotents().len(), count);
            assert_eq!(r.zariski_spectrum().space.clopens().len(), count);
        }
    }

    #[test]
    fn connectedness_examples() {
        for n in [4, 6, 2] {
            assert!(check_connected_iff_trivial_idempotents(&z(n)).pass);
        }
        assert!(z(4).zariski_spectrum().space.is_connected());
        assert!(!z(6).zariski_spectrum().space.is_connected());
    }

    #[test]
    fn components_examples() {
        let r = z(6);
        let s = r.zariski_spectrum();
        let pairs = components_via_max_regular(&r).unwrap();
        let three = r.principal_ideal(3);
        let four = r.principal_ideal(4);
        let v3 = pairs.iter().find(|(m, _)| *m == three).unwrap().1;
        let v4 = pairs.iter().find(|(m, _)| *m == four).unwrap().1;
        assert_eq!(v3, bits::singleton(s.index_of(three).unwrap()));
        assert_eq!(
            v4,
            bits::singleton(s.index_of(r.principal_ideal(2)).unwrap())
        );

        let r4 = z(4);
        assert_eq!(
            components_via_max_regular(&r4).unwrap(),
            vec![(r4.zero_ideal(), 1)]
        );

        let p = product(&z(2), &z(3), &Caps::default()).unwrap();
        let pairs = components_via_max_regular(&p).unwrap();
        assert_eq!(pairs.len(), 2);
        assert!(pairs.iter().all(|(_, v)| v.count_ones() == 1));
    }

    #[test]
    fn component_space_examples() {
        let cs = component_space(&z(6)).unwrap();
        assert!(cs.space.is_discrete() && cs.space.len() == 2);
        let r = z(6);
        let s = r.zariski_spectrum();
        let p2 = s.index_of(r.principal_ideal(2)).unwrap();
        let block = cs.projection.apply(p2);
        // ⟨2⟩ projects to the block V(⟨4⟩), which Φ sends to ⟨4⟩
        let mr = r.mr_space();
        assert_eq!(mr.ideals[cs.phi.apply(block)], r.principal_ideal(4));

        assert_eq!(component_space(&z(4)).unwrap().space.len(), 1);
        let cs30 = component_space(&z(30)).unwrap();
        assert!(cs30.space.is_discrete() && cs30.space.len() == 3);
    }

    #[test]
    fn all_checks_pass_on_small_rings() {
        for n in 2..=24 {
            let r = z(n);
            for report in [
                check_eta_bijective(&r),
                check_connected_iff_trivial_idempotents(&r),
                check_goodlem(&r),
                check_above(&r),
                check_max_reg(&r),
                check_prime_to_max_regular(&r),
                check_coarser(&r),
                check_mrprofinite(&r),
                check_mr_basis(&r),
                check_idempotent_algebra(&r),
                check_regular_criterion(&r),
                check_zariski_arithmetic(&r),
            ] {
                assert!(report.pass, "{report:?}");
            }
        }
    }
}
