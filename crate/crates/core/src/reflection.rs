//! The component reflector `F` onto finite profinite spaces.
//!
//! At finite scale the profinite spaces are exactly the finite discrete
//! spaces. `F(X)` is the set of connected components of `X` with the
//! topology generated by images of clopens, and the unit is the projection
//! `π_X`. The literal construction only concerns compact Hausdorff spaces;
//! here it is applied with the same formula to every finite space, so the
//! finite Hausdorff spaces (the discrete ones) are a special case.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::bits;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::maps::{enumerate_continuous_maps, ContinuousMap};
use crate::report::{claims, ensure, ClaimReport};
use crate::topology::FiniteSpace;

/// `F(X)` together with the unit `π_X : X → F(X)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentFunctorImage {
    pub source: Arc<FiniteSpace>,
    pub image: Arc<FiniteSpace>,
    pub unit: ContinuousMap,
}

pub fn apply_f(space: &Arc<FiniteSpace>) -> ComponentFunctorImage {
    let (image, unit) = space.clopen_generated_component_space();
    ComponentFunctorImage {
        source: space.clone(),
        image,
        unit,
    }
}

/// `Ff` given precomputed images of source and target.
pub fn apply_f_morphism_between(
    fx: &ComponentFunctorImage,
    fy: &ComponentFunctorImage,
    map: &ContinuousMap,
) -> Result<ContinuousMap> {
    let mismatch = |witness: String| Error::Mismatch {
        claim: claims::FF_CONTINUOUS,
        witness,
    };
    if map.source() != &fx.source || map.target() != &fy.source {
        return Err(Error::MalformedMap(
            "Ff requested for mismatched spaces".into(),
        ));
    }
    let source_blocks: Vec<u64> = (0..fx.image.len())
        .map(|b| fx.unit.preimage(bits::singleton(b)))
        .collect();
    let images = source_blocks
        .iter()
        .map(|&block| {
            // a continuous image of a component sits inside one component
            let hit = fy.unit.image(map.image(block));
            if hit.count_ones() == 1 {
                Ok(hit.trailing_zeros() as usize)
            } else {
                Err(mismatch(format!(
                    "image of component {} meets {} components",
                    fx.source.format(block),
                    hit.count_ones()
                )))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let ff = ContinuousMap::new(fx.image.clone(), fy.image.clone(), images)
        .map_err(|e| mismatch(format!("Ff is not continuous: {e}")))?;
    let left = map.then(&fy.unit)?;
    let right = fx.unit.then(&ff)?;
    if left != right {
        return Err(mismatch(
            "naturality square π_Y ∘ f = Ff ∘ π_X fails".into(),
        ));
    }
    Ok(ff)
}

/// `Ff` sends each component of the source to the component of the target
/// containing its image.
pub fn apply_f_morphism(map: &ContinuousMap) -> Result<ContinuousMap> {
    apply_f_morphism_between(&apply_f(map.source()), &apply_f(map.target()), map)
}

/// Checks that `μ(g) = g ∘ π_X` is a bijection `Hom(F(X), P) → Hom(X, P)`
/// for a finite discrete `P`, and that the preimage of each `f` is the
/// map `π_P⁻¹ ∘ Ff`.
pub fn check_adjunction(
    x: &Arc<FiniteSpace>,
    p: &Arc<FiniteSpace>,
    caps: &Caps,
) -> Result<ClaimReport> {
    if !p.is_profinite_finite() {
        return Err(Error::NotProfiniteTarget(format!("{p:?}")));
    }
    let fx = apply_f(x);
    let fp = apply_f(p);
    let from_image = enumerate_continuous_maps(&fx.image, p, caps.maps)?;
    let from_source = enumerate_continuous_maps(x, p, caps.maps)?;
    let subject = format!("{} -> {}", describe(x), describe(p));
    let outcome = (|| -> Result<(), String> {
        let pi_p_inverse = fp
            .unit
            .inverse()
            .ok_or_else(|| "π_P is not a homeomorphism".to_string())?;
        let mut images = BTreeSet::new();
        for g in &from_image {
            let composite = fx.unit.then(g).map_err(|e| e.to_string())?;
            ensure(images.insert(composite.images().to_vec()), || {
                format!("μ not injective at g = {:?}", g.images())
            })?;
        }
        for f in &from_source {
            ensure(images.contains(f.images()), || {
                format!("f = {:?} does not factor through π_X", f.images())
            })?;
            let ff = apply_f_morphism_between(&fx, &fp, f).map_err(|e| e.to_string())?;
            let g = ff.then(&pi_p_inverse).map_err(|e| e.to_string())?;
            let back = fx.unit.then(&g).map_err(|e| e.to_string())?;
            ensure(back.images() == f.images(), || {
                format!("π_P⁻¹ ∘ Ff does not recover f = {:?}", f.images())
            })?;
        }
        ensure(from_image.len() == from_source.len(), || {
            format!(
                "|Hom(F(X),P)| = {} but |Hom(X,P)| = {}",
                from_image.len(),
                from_source.len()
            )
        })
    })();
    Ok(ClaimReport::from_outcome(
        claims::ALTERNATIVE,
        subject,
        outcome,
    ))
}

/// `F(X)` is profinite, `π_X` is a continuous surjection whose topology is
/// inside the quotient topology, `g₁ ∘ π = g₂ ∘ π` forces `g₁ = g₂`, and
/// `π_X` is a homeomorphism when `X` is already profinite.
pub fn check_unit(space: &Arc<FiniteSpace>) -> ClaimReport {
    let fx = apply_f(space);
    let outcome = (|| -> Result<(), String> {
        ensure(fx.image.is_profinite_finite(), || {
            "F(X) is not profinite".into()
        })?;
        ensure(fx.unit.is_surjective(), || "π_X is not surjective".into())?;
        let quotient = space
            .quotient_topology(&space.connected_components())
            .map_err(|e| e.to_string())?;
        ensure(
            fx.image.opens().iter().all(|&o| quotient.is_open(o)),
            || "topology of F(X) is not inside the quotient topology".into(),
        )?;
        // Uniqueness: distinct maps out of F(X) stay distinct after π_X. Two-point
        // discrete targets detect any difference between point maps.
        let two = Arc::new(FiniteSpace::discrete(2));
        let homs =
            enumerate_continuous_maps(&fx.image, &two, u64::MAX).map_err(|e| e.to_string())?;
        let composed: BTreeSet<Vec<usize>> = homs
            .iter()
            .map(|g| fx.unit.then(g).map(|c| c.images().to_vec()))
            .collect::<Result<_>>()
            .map_err(|e| e.to_string())?;
        ensure(composed.len() == homs.len(), || {
            "g ∘ π_X does not determine g".into()
        })?;
        if space.is_profinite_finite() {
            ensure(fx.unit.is_homeomorphism(), || {
                "π_X is not a homeomorphism on a profinite space".into()
            })?;
        }
        Ok(())
    })();
    ClaimReport::from_outcome(claims::REFLECTION_UNIT, describe(space), outcome)
}

type MapWithImage = (ContinuousMap, Option<ContinuousMap>);

/// Identity and composition laws for `F`, plus continuity and naturality of
/// every `Ff`, over all continuous maps between the given spaces. Maps
/// between Hausdorff spaces are also checked to be closed.
pub fn check_functor_laws(spaces: &[Arc<FiniteSpace>], caps: &Caps) -> Result<Vec<ClaimReport>> {
    let images: Vec<ComponentFunctorImage> = spaces.iter().map(apply_f).collect();
    let mut reports = Vec::new();
    // homs[i][j]: maps spaces[i] -> spaces[j] with their images under F
    let mut homs: Vec<Vec<Vec<MapWithImage>>> = Vec::with_capacity(spaces.len());
    for (i, x) in spaces.iter().enumerate() {
        let mut row = Vec::with_capacity(spaces.len());
        for (j, y) in spaces.iter().enumerate() {
            let maps = enumerate_continuous_maps(x, y, caps.maps)?;
            row.push(
                maps.into_iter()
                    .map(|f| {
                        let ff = apply_f_morphism_between(&images[i], &images[j], &f).ok();
                        (f, ff)
                    })
                    .collect(),
            );
        }
        homs.push(row);
    }

    for (i, x) in spaces.iter().enumerate() {
        let subject = describe(x);
        let id = ContinuousMap::identity(x.clone());
        let f_id = apply_f_morphism_between(&images[i], &images[i], &id);
        reports.push(ClaimReport::from_outcome(
            claims::FUNCTOR_LAWS,
            format!("identity on {subject}"),
            match f_id {
                Ok(m) => ensure(
                    m == ContinuousMap::identity(images[i].image.clone()),
                    || "F(id) ≠ id".into(),
                ),
                Err(e) => Err(e.to_string()),
            },
        ));

        for (j, y) in spaces.iter().enumerate() {
            let pair = format!("{subject} -> {}", describe(y));
            let mut ff_outcome = Ok(());
            let mut closed_outcome = Ok(());
            let both_hausdorff = x.is_hausdorff() && y.is_hausdorff();
            for (f, ff) in &homs[i][j] {
                if ff.is_none() && ff_outcome.is_ok() {
                    ff_outcome = apply_f_morphism_between(&images[i], &images[j], f)
                        .map(|_| ())
                        .map_err(|e| e.to_string());
                }
                if both_hausdorff && closed_outcome.is_ok() && !f.is_closed_map() {
                    closed_outcome = Err(format!("{:?} is not closed", f.images()));
                }
            }
            reports.push(ClaimReport::from_outcome(
                claims::FF_CONTINUOUS,
                pair.clone(),
                ff_outcome,
            ));
            if both_hausdorff {
                reports.push(ClaimReport::from_outcome(
                    claims::CLOSED_MAP,
                    pair.clone(),
                    closed_outcome,
                ));
            }

            // F(g ∘ f) = F(g) ∘ F(f) for f: x -> y and every g: y -> z
            let mut comp_outcome = Ok(());
            'outer: for k in 0..spaces.len() {
                for (f, ff) in &homs[i][j] {
                    for (g, fg) in &homs[j][k] {
                        let (Some(ff), Some(fg)) = (ff, fg) else {
                            continue;
                        };
                        let gf = f.then(g).map_err(|e| e.to_string());
                        let lhs = gf.and_then(|gf| {
                            apply_f_morphism_between(&images[i], &images[k], &gf)
                                .map_err(|e| e.to_string())
                        });
                        let rhs = ff.then(fg).map_err(|e| e.to_string());
                        match (lhs, rhs) {
                            (Ok(l), Ok(r)) if l == r => {}
                            (Ok(_), Ok(_)) => {
                                comp_outcome = Err(format!(
                                    "F(g∘f) ≠ F(g)∘F(f) for f = {:?}, g = {:?} into {}",
                                    f.images(),
                                    g.images(),
                                    describe(&spaces[k])
                                ));
                                break 'outer;
                            }
                            (Err(e), _) | (_, Err(e)) => {
                                comp_outcome = Err(e);
                                break 'outer;
                            }
                        }
                    }
                }
            }
            reports.push(ClaimReport::from_outcome(
                claims::FUNCTOR_LAWS,
                format!("composition through {pair}"),
                comp_outcome,
            ));
        }
    }
    Ok(reports)
}

/// The clopen-generated topology on the components sits inside the quotient
/// topology, and profiniteness coincides with discreteness. Also reports,
/// separately, that the two component topologies coincide.
pub fn check_component_topology(space: &Arc<FiniteSpace>) -> Vec<ClaimReport> {
    let subject = describe(space);
    let (clopen_generated, _) = space.clopen_generated_component_space();
    let quotient = space.quotient_topology(&space.connected_components());
    let inclusion = (|| -> Result<(), String> {
        let quotient = quotient.as_ref().map_err(|e| e.to_string())?;
        for &o in clopen_generated.opens() {
            ensure(quotient.is_open(o), || {
                format!(
                    "{} is not open in the quotient topology",
                    clopen_generated.format(o)
                )
            })?;
        }
        ensure(clopen_generated.is_totally_disconnected(), || {
            "clopen-generated component space is not totally disconnected".into()
        })?;
        ensure(space.is_profinite_finite() == space.is_discrete(), || {
            "profinite and discrete disagree".into()
        })
    })();
    let equality = match &quotient {
        Ok(q) => ensure(q.opens() == clopen_generated.opens(), || {
            "quotient topology is strictly finer".into()
        }),
        Err(e) => Err(e.to_string()),
    };
    vec![
        ClaimReport::from_outcome(claims::COMPONENT_TOPOLOGY, subject.clone(), inclusion),
        ClaimReport::from_outcome(claims::QUOTIENT_OBSERVATION, subject, equality),
    ]
}

/// Compact description `n:opens` used as a report subject, e.g.
/// `2:{},{a},{a,b}`.
pub fn describe(space: &FiniteSpace) -> String {
    let opens: Vec<String> = space.opens().iter().map(|&o| space.format(o)).collect();
    format!("{}:{}", space.len(), opens.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(s: FiniteSpace) -> Arc<FiniteSpace> {
        Arc::new(s)
    }

    fn two_sierpinski() -> Arc<FiniteSpace> {
        arc(FiniteSpace::sierpinski()
            .disjoint_union(&FiniteSpace::sierpinski())
            .unwrap())
    }

    #[test]
    fn apply_f_examples() {
        let s = apply_f(&arc(FiniteSpace::sierpinski()));
        assert_eq!(s.image.len(), 1);
        assert_eq!(s.unit.images(), &[0, 0]);
        let d = apply_f(&arc(FiniteSpace::discrete(3)));
        assert!(d.image.is_discrete() && d.image.len() == 3);
        assert!(d.unit.is_homeomorphism());
        let two = apply_f(&two_sierpinski());
        assert!(two.image.is_discrete() && two.image.len() == 2);
    }

    #[test]
    fn apply_f_morphism_examples() {
        let s = arc(FiniteSpace::sierpinski());
        let d2 = arc(FiniteSpace::discrete(2));
        let c = ContinuousMap::constant(s.clone(), d2.clone(), 1).unwrap();
        let fc = apply_f_morphism(&c).unwrap();
        assert_eq!(fc.images(), &[1]);

        let two = two_sierpinski();
        let id = ContinuousMap::identity(two.clone());
        let fid = apply_f_morphism(&id).unwrap();
        assert_eq!(fid, ContinuousMap::identity(apply_f(&two).image));

        // second copy of Sierpiński inside the two-copy space
        let inclusion = ContinuousMap::new(s.clone(), two.clone(), vec![2, 3]).unwrap();
        assert_eq!(apply_f_morphism(&inclusion).unwrap().images(), &[1]);
    }

    #[test]
    fn adjunction_examples() {
        let caps = Caps::default();
        let d2 = arc(FiniteSpace::discrete(2));
        let d3 = arc(FiniteSpace::discrete(3));
        let r = check_adjunction(&arc(FiniteSpace::sierpinski()), &d2, &caps).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(
            enumerate_continuous_maps(&arc(FiniteSpace::sierpinski()), &d2, caps.maps)
                .unwrap()
                .len(),
            2
        );
        assert!(check_adjunction(&d2, &d2, &caps).unwrap().pass);
        let two = two_sierpinski();
        assert!(check_adjunction(&two, &d3, &caps).unwrap().pass);
        assert_eq!(
            enumerate_continuous_maps(&two, &d3, caps.maps)
                .unwrap()
                .len(),
            9
        );
    }

    #[test]
    fn adjunction_rejects_non_profinite_targets() {
        let s = arc(FiniteSpace::sierpinski());
        let err = check_adjunction(&s, &s, &Caps::default()).unwrap_err();
        assert!(matches!(err, Error::NotProfiniteTarget(_)));
        let tight = Caps {
            maps: 2,
            ..Caps::default()
        };
        let err = check_adjunction(
            &arc(FiniteSpace::discrete(3)),
            &arc(FiniteSpace::discrete(3)),
            &tight,
        );
        assert!(matches!(err, Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn functor_laws_on_small_spaces() {
        let spaces = vec![
            arc(FiniteSpace::sierpinski()),
            arc(FiniteSpace::discrete(2)),
            arc(FiniteSpace::indiscrete(2)),
            arc(FiniteSpace::discrete(1)),
        ];
        let reports = check_functor_laws(&spaces, &Caps::default()).unwrap();
        assert!(
            reports.iter().all(|r| r.pass),
            "{:?}",
            reports.iter().find(|r| !r.pass)
        );
        assert!(reports.iter().any(|r| r.claim == claims::CLOSED_MAP));
    }

    #[test]
    fn unit_checks() {
        for s in [
            FiniteSpace::sierpinski(),
            FiniteSpace::discrete(3),
            FiniteSpace::empty(),
        ] {
            let r = check_unit(&arc(s));
            assert!(r.pass, "{r:?}");
        }
    }
}
