//! Soberification `t(X)`: the space of closed irreducible subsets.
//!
//! The closed sets of `t(X)` are the families `t(Y) = {Z : Z ⊆ Y}` for `Y`
//! closed in `X`. A continuous map `f` induces `t(f)(Z) = cl(f(Z))`, and
//! `α_X(x) = cl({x})` is the unit `X → t(X)`.
//!
//! In a finite space a closed set is irreducible exactly when it is the
//! closure of one of its points (it has a top element in the specialization
//! order). That is the fast path; [`is_irreducible_by_definition`] is the
//! definitional test, kept as an oracle.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::bits::{self, Mask};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::maps::{enumerate_continuous_maps, ContinuousMap};
use crate::reflection::describe;
use crate::report::{claims, ensure, ClaimReport};
use crate::topology::{FiniteSpace, Partition};

/// `t(X)` with its points (closed irreducible subsets of the base, in
/// ascending mask order) and topology.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SoberSpace {
    pub base: Arc<FiniteSpace>,
    pub points: Vec<Mask>,
    pub space: Arc<FiniteSpace>,
}

/// Closed, nonempty, and the closure of one of its points.
pub fn is_closed_irreducible(space: &FiniteSpace, z: Mask) -> bool {
    z != 0 && space.is_closed(z) && bits::iter(z).any(|x| space.point_closure(x) == z)
}

/// Nonempty, and whenever `Z ⊆ A ∪ B` for closed `A`, `B`, already `Z ⊆ A`
/// or `Z ⊆ B`.
pub fn is_irreducible_by_definition(space: &FiniteSpace, z: Mask) -> bool {
    if z == 0 {
        return false;
    }
    let closed = space.closed_sets();
    closed.iter().all(|&a| {
        closed.iter().all(|&b| {
            let covered = bits::is_subset(z, a | b);
            !covered || bits::is_subset(z, a) || bits::is_subset(z, b)
        })
    })
}

/// Closed irreducible subsets, ascending.
pub fn closed_irreducible_subsets(space: &FiniteSpace) -> Vec<Mask> {
    let set: BTreeSet<Mask> = (0..space.len()).map(|x| space.point_closure(x)).collect();
    set.into_iter().collect()
}

impl SoberSpace {
    /// Index of a closed irreducible subset among the points of `t(X)`.
    pub fn index_of(&self, z: Mask) -> Option<usize> {
        self.points.binary_search(&z).ok()
    }

    /// `t(Y) = {Z : Z ⊆ Y}` as a mask over the points of `t(X)`.
    pub fn t_of(&self, y: Mask) -> Mask {
        self.points
            .iter()
            .enumerate()
            .filter(|(_, &z)| bits::is_subset(z, y))
            .fold(0, |acc, (i, _)| acc | bits::singleton(i))
    }
}

/// Builds `t(X)` and validates its topology.
pub fn soberify(space: &Arc<FiniteSpace>) -> SoberSpace {
    let points = closed_irreducible_subsets(space);
    debug_assert!(points
        .iter()
        .all(|&z| is_irreducible_by_definition(space, z)));
    let labels = points.iter().map(|&z| space.format(z)).collect();
    let skeleton = SoberSpace {
        base: space.clone(),
        points,
        space: Arc::new(FiniteSpace::empty()),
    };
    let full = bits::full(skeleton.points.len());
    let opens: Vec<Mask> = space
        .closed_sets()
        .into_iter()
        .map(|y| full & !skeleton.t_of(y))
        .collect();
    let t = FiniteSpace::new(labels, opens).expect("closed sets t(Y) form a topology");
    SoberSpace {
        space: Arc::new(t),
        ..skeleton
    }
}

fn mismatch(claim: &'static str, witness: String) -> Error {
    Error::Mismatch { claim, witness }
}

/// `t(f)` given precomputed soberifications of source and target.
pub fn soberify_morphism_between(
    tx: &SoberSpace,
    ty: &SoberSpace,
    map: &ContinuousMap,
) -> Result<ContinuousMap> {
    if map.source() != &tx.base || map.target() != &ty.base {
        return Err(Error::MalformedMap(
            "t(f) requested for mismatched spaces".into(),
        ));
    }
    let images = tx
        .points
        .iter()
        .map(|&z| {
            let image = ty.base.closure(map.image(z));
            ty.index_of(image).ok_or_else(|| {
                mismatch(
                    claims::T_FUNCTOR,
                    format!("cl(f({})) is not closed irreducible", tx.base.format(z)),
                )
            })
        })
        .collect::<Result<Vec<_>>>()?;
    ContinuousMap::new(tx.space.clone(), ty.space.clone(), images)
        .map_err(|e| mismatch(claims::T_FUNCTOR, format!("t(f) is not continuous: {e}")))
}

/// `t(f)(Z) = cl(f(Z))`.
pub fn soberify_morphism(map: &ContinuousMap) -> Result<ContinuousMap> {
    soberify_morphism_between(&soberify(map.source()), &soberify(map.target()), map)
}

/// `α_X(x) = cl({x})` into a precomputed `t(X)`.
pub fn alpha_unit_into(tx: &SoberSpace) -> Result<ContinuousMap> {
    let base = &tx.base;
    let images = (0..base.len())
        .map(|x| {
            tx.index_of(base.point_closure(x))
                .expect("point closures are points of t(X)")
        })
        .collect();
    ContinuousMap::new(base.clone(), tx.space.clone(), images)
        .map_err(|e| mismatch(claims::SOBER_I, format!("α is not continuous: {e}")))
}

pub fn alpha_unit(space: &Arc<FiniteSpace>) -> Result<ContinuousMap> {
    alpha_unit_into(&soberify(space))
}

/// Points whose closure is exactly `z`.
pub fn generic_points(space: &FiniteSpace, z: Mask) -> Mask {
    (0..space.len())
        .filter(|&x| space.point_closure(x) == z)
        .fold(0, |acc, x| acc | bits::singleton(x))
}

/// Every closed irreducible subset has exactly one generic point.
pub fn is_sober(space: &FiniteSpace) -> bool {
    closed_irreducible_subsets(space)
        .into_iter()
        .all(|z| generic_points(space, z).count_ones() == 1)
}

/// Sobriety with a witness on failure.
pub fn check_sober(space: &FiniteSpace, claim: &str, subject: impl Into<String>) -> ClaimReport {
    let outcome = closed_irreducible_subsets(space)
        .into_iter()
        .try_for_each(|z| {
            let generic = generic_points(space, z);
            ensure(generic.count_ones() == 1, || {
                format!(
                    "{} has generic points {}",
                    space.format(z),
                    space.format(generic)
                )
            })
        });
    ClaimReport::from_outcome(claim, subject, outcome)
}

/// `E ↦ t(E)` is a bijection from closed sets of `X` onto closed sets of `t(X)`.
pub fn check_closed_set_bijection(tx: &SoberSpace, subject: impl Into<String>) -> ClaimReport {
    let outcome = (|| -> Result<(), String> {
        let base_closed = tx.base.closed_sets();
        let images: BTreeSet<Mask> = base_closed.iter().map(|&e| tx.t_of(e)).collect();
        ensure(images.len() == base_closed.len(), || {
            "E ↦ t(E) is not injective".into()
        })?;
        let target: BTreeSet<Mask> = tx.space.closed_sets().into_iter().collect();
        ensure(images == target, || {
            "E ↦ t(E) misses a closed set of t(X)".into()
        })
    })();
    ClaimReport::from_outcome(claims::SOBER_II, subject, outcome)
}

/// The map `Γ : t(X) → (X/∼, 𝒯)` sending `Z` to its component, checked
/// continuous for the clopen-generated topology, and the components of
/// `t(X)`, checked to be exactly the families `t(C)` for components `C`.
/// Returns those families in component order.
pub fn components_of_t(tx: &SoberSpace) -> Result<Vec<Mask>> {
    let base = &tx.base;
    let fail = |witness: String| mismatch(claims::CONN_COMPONENT, witness);
    let components = base.connected_components();
    let (quotient, _) = base.clopen_generated_component_space();
    if !quotient.is_totally_disconnected() {
        return Err(fail("(X/∼, 𝒯) is not totally disconnected".into()));
    }
    let gamma_images = tx
        .points
        .iter()
        .map(|&z| {
            let hit = components.project(z);
            if hit.count_ones() == 1 {
                Ok(hit.trailing_zeros() as usize)
            } else {
                Err(fail(format!("{} meets several components", base.format(z))))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let gamma = ContinuousMap::new(tx.space.clone(), quotient.clone(), gamma_images)
        .map_err(|e| fail(format!("Γ is not continuous: {e}")))?;
    // Γ⁻¹(ℰ) = t(π⁻¹(ℰ)) for closed ℰ
    for closed in quotient.closed_sets() {
        let lifted = components.lift(closed);
        if gamma.preimage(closed) != tx.t_of(lifted) {
            return Err(fail(format!(
                "Γ⁻¹({}) ≠ t(π⁻¹(·))",
                quotient.format(closed)
            )));
        }
    }
    let families: Vec<Mask> = components.blocks().iter().map(|&c| tx.t_of(c)).collect();
    for (&c, &family) in components.blocks().iter().zip(&families) {
        if !tx.space.is_connected_subset(family) {
            return Err(mismatch(
                claims::IMCONNECT,
                format!("t({}) is not connected in t(X)", base.format(c)),
            ));
        }
    }
    let expected = Partition::new(tx.points.len(), families.iter().copied())
        .map_err(|e| fail(format!("t(X) is not the disjoint union of the t(C): {e}")))?;
    if !tx.space.connected_components().same_blocks(&expected) {
        return Err(fail("components of t(X) differ from {t(C)}".into()));
    }
    Ok(families)
}

pub fn check_components_of_t(tx: &SoberSpace, subject: impl Into<String>) -> ClaimReport {
    ClaimReport::from_outcome(
        claims::CONN_COMPONENT,
        subject,
        components_of_t(tx).map(|_| ()),
    )
}

/// For every connected subset `C` of the base, `{Z : Z ⊆ C}` is connected in
/// `t(X)` (or empty). Exhaustive over subsets, so meant for small bases.
pub fn check_imconnect_subsets(tx: &SoberSpace, subject: impl Into<String>) -> ClaimReport {
    let base = &tx.base;
    let outcome = (1..=base.full_mask()).try_for_each(|c| {
        if !base.is_connected_subset(c) {
            return Ok(());
        }
        let family = tx.t_of(c);
        ensure(family == 0 || tx.space.is_connected_subset(family), || {
            format!("{{Z ⊆ {}}} is not connected", base.format(c))
        })
    });
    ClaimReport::from_outcome(claims::IMCONNECT, subject, outcome)
}

/// `X` is sober exactly when `α_X` is a homeomorphism.
pub fn check_sober_iff_alpha_homeomorphism(
    tx: &SoberSpace,
    subject: impl Into<String>,
) -> ClaimReport {
    let outcome = alpha_unit_into(tx)
        .map_err(|e| e.to_string())
        .and_then(|alpha| {
            let sober = is_sober(&tx.base);
            let homeo = alpha.is_homeomorphism();
            ensure(sober == homeo, || {
                format!("sober = {sober}, α homeomorphism = {homeo}")
            })
        });
    ClaimReport::from_outcome(claims::SOBER_ALPHA, subject, outcome)
}

type MapWithImage = (ContinuousMap, Result<ContinuousMap, String>);

/// Naturality `α_Y ∘ f = t(f) ∘ α_X` and the functor laws for `t` over every
/// continuous map between the given spaces. One report per space for the
/// identity law, and per ordered pair for naturality and for composition
/// with every map out of the target.
pub fn check_naturality_and_functor_laws(
    spaces: &[Arc<FiniteSpace>],
    caps: &Caps,
) -> Result<Vec<ClaimReport>> {
    let sober: Vec<SoberSpace> = spaces.iter().map(soberify).collect();
    let alphas = sober
        .iter()
        .map(alpha_unit_into)
        .collect::<Result<Vec<_>>>()?;
    let mut homs: Vec<Vec<Vec<MapWithImage>>> = Vec::with_capacity(spaces.len());
    for (i, x) in spaces.iter().enumerate() {
        let row = spaces
            .iter()
            .enumerate()
            .map(|(j, y)| {
                Ok(enumerate_continuous_maps(x, y, caps.maps)?
                    .into_iter()
                    .map(|f| {
                        let tf = soberify_morphism_between(&sober[i], &sober[j], &f)
                            .map_err(|e| e.to_string());
                        (f, tf)
                    })
                    .collect())
            })
            .collect::<Result<Vec<_>>>()?;
        homs.push(row);
    }

    let mut reports = Vec::new();
    for (i, x) in spaces.iter().enumerate() {
        let subject = describe(x);
        let id = ContinuousMap::identity(x.clone());
        let identity = soberify_morphism_between(&sober[i], &sober[i], &id)
            .map_err(|e| e.to_string())
            .and_then(|t| {
                ensure(t == ContinuousMap::identity(sober[i].space.clone()), || {
                    "t(id) ≠ id".into()
                })
            });
        reports.push(ClaimReport::from_outcome(
            claims::T_FUNCTOR,
            format!("identity on {subject}"),
            identity,
        ));

        for (j, y) in spaces.iter().enumerate() {
            let pair = format!("{subject} -> {}", describe(y));
            let naturality = homs[i][j].iter().try_for_each(|(f, tf)| {
                let tf = tf.as_ref().map_err(Clone::clone)?;
                let lhs = f.then(&alphas[j]).map_err(|e| e.to_string())?;
                let rhs = alphas[i].then(tf).map_err(|e| e.to_string())?;
                ensure(lhs == rhs, || {
                    format!("α ∘ f ≠ t(f) ∘ α for f = {:?}", f.images())
                })
            });
            reports.push(ClaimReport::from_outcome(
                claims::SOBER_I,
                pair.clone(),
                naturality,
            ));

            let composition = (0..spaces.len()).try_for_each(|k| {
                for (f, tf) in &homs[i][j] {
                    let tf = tf.as_ref().map_err(Clone::clone)?;
                    for (g, tg) in &homs[j][k] {
                        let tg = tg.as_ref().map_err(Clone::clone)?;
                        let gf = f.then(g).map_err(|e| e.to_string())?;
                        let lhs = soberify_morphism_between(&sober[i], &sober[k], &gf)
                            .map_err(|e| e.to_string())?;
                        let rhs = tf.then(tg).map_err(|e| e.to_string())?;
                        ensure(lhs == rhs, || {
                            format!(
                                "t(g∘f) ≠ t(g)∘t(f) for f = {:?}, g = {:?} into {}",
                                f.images(),
                                g.images(),
                                describe(&spaces[k])
                            )
                        })?;
                    }
                }
                Ok::<(), String>(())
            });
            reports.push(ClaimReport::from_outcome(
                claims::T_FUNCTOR,
                format!("composition through {pair}"),
                composition,
            ));
        }
    }
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::default_labels;

    fn arc(s: FiniteSpace) -> Arc<FiniteSpace> {
        Arc::new(s)
    }

    #[test]
    fn soberify_examples() {
        let s = arc(FiniteSpace::sierpinski());
        let t = soberify(&s);
        assert_eq!(t.points, vec![0b10, 0b11]);
        assert_eq!(t.space.labels(), &["{b}", "{a,b}"]);
        // {a,b} is the open point, as `a` is in the base
        assert_eq!(t.space.opens(), &[0b00, 0b10, 0b11]);

        let i2 = soberify(&arc(FiniteSpace::indiscrete(2)));
        assert_eq!(i2.points, vec![0b11]);

        let d3 = soberify(&arc(FiniteSpace::discrete(3)));
        assert_eq!(d3.points, vec![0b001, 0b010, 0b100]);
        assert!(d3.space.is_discrete());
    }

    #[test]
    fn soberify_morphism_examples() {
        let s = arc(FiniteSpace::sierpinski());
        let id = ContinuousMap::identity(s.clone());
        let t = soberify(&s);
        assert_eq!(
            soberify_morphism(&id).unwrap(),
            ContinuousMap::identity(t.space.clone())
        );

        let c = ContinuousMap::constant(s.clone(), s.clone(), 1).unwrap();
        let tc = soberify_morphism(&c).unwrap();
        assert!(tc.images().iter().all(|&i| t.points[i] == 0b10));

        let d2 = arc(FiniteSpace::discrete(2));
        let f = ContinuousMap::new(d2.clone(), s.clone(), vec![0, 1]).unwrap();
        let tf = soberify_morphism(&f).unwrap();
        let td = soberify(&d2);
        // {a} ↦ {a,b}, {b} ↦ {b}
        assert_eq!(t.points[tf.apply(td.index_of(0b01).unwrap())], 0b11);
        assert_eq!(t.points[tf.apply(td.index_of(0b10).unwrap())], 0b10);
    }

    #[test]
    fn alpha_examples() {
        assert!(alpha_unit(&arc(FiniteSpace::discrete(3)))
            .unwrap()
            .is_homeomorphism());
        let s = arc(FiniteSpace::sierpinski());
        let a = alpha_unit(&s).unwrap();
        let t = soberify(&s);
        assert_eq!(t.points[a.apply(0)], 0b11);
        assert_eq!(t.points[a.apply(1)], 0b10);
        assert!(a.is_bijective());
        let i2 = alpha_unit(&arc(FiniteSpace::indiscrete(2))).unwrap();
        assert_eq!(i2.images(), &[0, 0]);
    }

    #[test]
    fn closed_set_bijection_examples() {
        for (space, count) in [
            (FiniteSpace::sierpinski(), 3),
            (FiniteSpace::indiscrete(2), 2),
            (FiniteSpace::discrete(3), 8),
        ] {
            let t = soberify(&arc(space));
            assert_eq!(t.base.closed_sets().len(), count);
            assert_eq!(t.space.closed_sets().len(), count);
            assert!(check_closed_set_bijection(&t, "x").pass);
        }
    }

    #[test]
    fn sober_examples() {
        // η open and generic, s closed
        let chain = FiniteSpace::new(vec!["η".into(), "s".into()], [0b00, 0b01, 0b11]).unwrap();
        assert!(is_sober(&chain));
        assert_eq!(generic_points(&chain, chain.full_mask()), 0b01);
        let i2 = FiniteSpace::indiscrete(2);
        assert!(!is_sober(&i2));
        assert_eq!(generic_points(&i2, 0b11), 0b11);
        assert!(!check_sober(&i2, claims::SOBER_III, "x").pass);
        let t = soberify(&arc(i2));
        assert!(is_sober(&t.space));
    }

    #[test]
    fn components_of_t_examples() {
        let two = arc(FiniteSpace::sierpinski()
            .disjoint_union(&FiniteSpace::sierpinski())
            .unwrap());
        let t = soberify(&two);
        let families = components_of_t(&t).unwrap();
        assert_eq!(families.len(), 2);
        assert!(families.iter().all(|f| f.count_ones() == 2));

        let s = soberify(&arc(FiniteSpace::sierpinski()));
        assert_eq!(components_of_t(&s).unwrap(), vec![0b11]);
        let d3 = soberify(&arc(FiniteSpace::discrete(3)));
        assert_eq!(components_of_t(&d3).unwrap(), vec![0b001, 0b010, 0b100]);
    }

    #[test]
    fn irreducibility_routes_agree() {
        let spaces = [
            FiniteSpace::sierpinski(),
            FiniteSpace::indiscrete(3),
            FiniteSpace::discrete(3),
            FiniteSpace::sierpinski()
                .disjoint_union(&FiniteSpace::indiscrete(2))
                .unwrap(),
        ];
        for s in spaces {
            for z in 0..=s.full_mask() {
                let fast = is_closed_irreducible(&s, z);
                let slow = s.is_closed(z) && is_irreducible_by_definition(&s, z);
                assert_eq!(fast, slow, "{s:?} {z:#b}");
            }
        }
    }

    #[test]
    fn naturality_on_small_spaces() {
        let spaces = [
            FiniteSpace::sierpinski(),
            FiniteSpace::indiscrete(2),
            FiniteSpace::discrete(2),
            FiniteSpace::new(default_labels(3), [0, 0b001, 0b011, 0b111]).unwrap(),
        ]
        .map(arc);
        let reports = check_naturality_and_functor_laws(&spaces, &Caps::default()).unwrap();
        assert_eq!(reports.len(), 4 + 2 * 16);
        assert!(
            reports.iter().all(|r| r.pass),
            "{:?}",
            reports.iter().find(|r| !r.pass)
        );
    }
}
