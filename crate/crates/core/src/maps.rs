//! Continuous maps between finite spaces, hom-set enumeration and
//! homeomorphism search.

use std::sync::Arc;

use crate::bits::{self, Mask};
use crate::error::{Error, Result};
use crate::topology::FiniteSpace;

/// A point map between two finite spaces whose preimages of opens are open.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ContinuousMap {
    source: Arc<FiniteSpace>,
    target: Arc<FiniteSpace>,
    images: Vec<usize>,
}

impl ContinuousMap {
    /// Validates totality, range and continuity.
    pub fn new(
        source: Arc<FiniteSpace>,
        target: Arc<FiniteSpace>,
        images: Vec<usize>,
    ) -> Result<Self> {
        if images.len() != source.len() {
            return Err(Error::MalformedMap(format!(
                "{} images for {} source points",
                images.len(),
                source.len()
            )));
        }
        if let Some(&y) = images.iter().find(|&&y| y >= target.len()) {
            return Err(Error::MalformedMap(format!(
                "image index {y} outside a {}-point target",
                target.len()
            )));
        }
        let map = ContinuousMap {
            source,
            target,
            images,
        };
        if let Some(&open) = map
            .target
            .opens()
            .iter()
            .find(|&&v| !map.source.is_open(map.preimage(v)))
        {
            return Err(Error::NotContinuous {
                open: map.target.format(open),
            });
        }
        Ok(map)
    }

    /// Builds a map from label pairs `source label -> target label`.
    pub fn from_labels(
        source: Arc<FiniteSpace>,
        target: Arc<FiniteSpace>,
        assignment: &[(&str, &str)],
    ) -> Result<Self> {
        let mut images = vec![usize::MAX; source.len()];
        for &(x, y) in assignment {
            let xi = source
                .index_of(x)
                .ok_or_else(|| Error::UnknownLabel(x.into()))?;
            let yi = target
                .index_of(y)
                .ok_or_else(|| Error::UnknownLabel(y.into()))?;
            images[xi] = yi;
        }
        if let Some(x) = images.iter().position(|&y| y == usize::MAX) {
            return Err(Error::MalformedMap(format!(
                "no image for {}",
                source.label(x)
            )));
        }
        ContinuousMap::new(source, target, images)
    }

    pub fn identity(space: Arc<FiniteSpace>) -> Self {
        let images = (0..space.len()).collect();
        ContinuousMap {
            source: space.clone(),
            target: space,
            images,
        }
    }

    pub fn constant(
        source: Arc<FiniteSpace>,
        target: Arc<FiniteSpace>,
        value: usize,
    ) -> Result<Self> {
        let images = vec![value; source.len()];
        ContinuousMap::new(source, target, images)
    }

    pub fn source(&self) -> &Arc<FiniteSpace> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteSpace> {
        &self.target
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    /// Image of a subset of the source.
    pub fn image(&self, mask: Mask) -> Mask {
        bits::iter(mask).fold(0, |acc, x| acc | bits::singleton(self.images[x]))
    }

    /// Preimage of a subset of the target.
    pub fn preimage(&self, mask: Mask) -> Mask {
        self.images
            .iter()
            .enumerate()
            .filter(|(_, &y)| bits::contains(mask, y))
            .fold(0, |acc, (x, _)| acc | bits::singleton(x))
    }

    /// `then ∘ self`.
    pub fn then(&self, then: &ContinuousMap) -> Result<ContinuousMap> {
        if self.target != then.source {
            return Err(Error::MalformedMap(
                "composition of non-composable maps".into(),
            ));
        }
        Ok(ContinuousMap {
            source: self.source.clone(),
            target: then.target.clone(),
            images: self.images.iter().map(|&y| then.images[y]).collect(),
        })
    }

    pub fn is_injective(&self) -> bool {
        let mut seen: Mask = 0;
        self.images.iter().all(|&y| {
            let fresh = !bits::contains(seen, y);
            seen |= bits::singleton(y);
            fresh
        })
    }

    pub fn is_surjective(&self) -> bool {
        self.image(self.source.full_mask()) == self.target.full_mask()
    }

    pub fn is_bijective(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// The inverse map when `self` is a homeomorphism.
    pub fn inverse(&self) -> Option<ContinuousMap> {
        if !self.is_bijective() {
            return None;
        }
        let mut images = vec![0; self.target.len()];
        for (x, &y) in self.images.iter().enumerate() {
            images[y] = x;
        }
        ContinuousMap::new(self.target.clone(), self.source.clone(), images).ok()
    }

    pub fn is_homeomorphism(&self) -> bool {
        self.inverse().is_some()
    }

    /// Images of closed sets are closed.
    pub fn is_closed_map(&self) -> bool {
        self.source
            .closed_sets()
            .into_iter()
            .all(|c| self.target.is_closed(self.image(c)))
    }
}

/// Specialization preorder as a list of `(x, closure of {x})`; continuity of
/// a map of finite spaces is equivalent to preserving it.
fn closures(space: &FiniteSpace) -> Vec<Mask> {
    (0..space.len()).map(|x| space.point_closure(x)).collect()
}

/// Every continuous map `source -> target`, in lexicographic order of the
/// image vectors. Fails when `|target|^|source|` exceeds `cap`.
pub fn enumerate_continuous_maps(
    source: &Arc<FiniteSpace>,
    target: &Arc<FiniteSpace>,
    cap: u64,
) -> Result<Vec<ContinuousMap>> {
    let required = (target.len() as u128)
        .checked_pow(source.len() as u32)
        .unwrap_or(u128::MAX);
    if required > cap as u128 {
        return Err(Error::CapExceeded {
            what: "continuous map enumeration",
            required,
            cap: cap as u128,
        });
    }
    let src_closures = closures(source);
    let tgt_closures = closures(target);
    let n = source.len();
    let mut out = Vec::new();
    let mut images = vec![0usize; n];

    // Depth-first over assignments, pruning any partial assignment that
    // already breaks the specialization order between assigned points.
    fn consistent(x: usize, images: &[usize], src: &[Mask], tgt: &[Mask]) -> bool {
        (0..x).all(|w| {
            let w_below_x = bits::contains(src[x], w);
            let x_below_w = bits::contains(src[w], x);
            (!w_below_x || bits::contains(tgt[images[x]], images[w]))
                && (!x_below_w || bits::contains(tgt[images[w]], images[x]))
        })
    }

    fn descend(
        x: usize,
        images: &mut Vec<usize>,
        ctx: (&Arc<FiniteSpace>, &Arc<FiniteSpace>, &[Mask], &[Mask]),
        out: &mut Vec<ContinuousMap>,
    ) {
        let (source, target, src, tgt) = ctx;
        if x == images.len() {
            let map = ContinuousMap::new(source.clone(), target.clone(), images.clone())
                .expect("order-preserving maps of finite spaces are continuous");
            out.push(map);
            return;
        }
        for y in 0..target.len() {
            images[x] = y;
            if consistent(x, images, src, tgt) {
                descend(x + 1, images, ctx, out);
            }
        }
    }

    if n == 0 {
        out.push(ContinuousMap::new(
            source.clone(),
            target.clone(),
            Vec::new(),
        )?);
        return Ok(out);
    }
    descend(
        0,
        &mut images,
        (source, target, &src_closures, &tgt_closures),
        &mut out,
    );
    Ok(out)
}

/// Searches for a homeomorphism `x -> y`. Fails when `n!` exceeds `cap`.
pub fn homeomorphic(
    x: &Arc<FiniteSpace>,
    y: &Arc<FiniteSpace>,
    cap: u64,
) -> Result<Option<ContinuousMap>> {
    if x.len() != y.len() || x.opens().len() != y.opens().len() {
        return Ok(None);
    }
    let n = x.len();
    let required = (1..=n as u128)
        .try_fold(1u128, |acc, k| acc.checked_mul(k))
        .unwrap_or(u128::MAX);
    if required > cap as u128 {
        return Err(Error::CapExceeded {
            what: "homeomorphism search",
            required,
            cap: cap as u128,
        });
    }
    let xc = closures(x);
    let yc = closures(y);
    // Points can only correspond when their closures have equal size.
    let mut images = vec![0usize; n];
    let mut used: Mask = 0;

    fn search(
        i: usize,
        images: &mut Vec<usize>,
        used: &mut Mask,
        xc: &[Mask],
        yc: &[Mask],
        x: &Arc<FiniteSpace>,
        y: &Arc<FiniteSpace>,
    ) -> Option<ContinuousMap> {
        let n = images.len();
        if i == n {
            let map = ContinuousMap::new(x.clone(), y.clone(), images.clone()).ok()?;
            return map.is_homeomorphism().then_some(map);
        }
        for j in 0..n {
            if bits::contains(*used, j) || xc[i].count_ones() != yc[j].count_ones() {
                continue;
            }
            images[i] = j;
            let ok = (0..i).all(|w| {
                bits::contains(xc[i], w) == bits::contains(yc[j], images[w])
                    && bits::contains(xc[w], i) == bits::contains(yc[images[w]], j)
            });
            if ok {
                *used |= bits::singleton(j);
                if let Some(m) = search(i + 1, images, used, xc, yc, x, y) {
                    return Some(m);
                }
                *used &= !bits::singleton(j);
            }
        }
        None
    }

    Ok(search(0, &mut images, &mut used, &xc, &yc, x, y))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(s: FiniteSpace) -> Arc<FiniteSpace> {
        Arc::new(s)
    }

    #[test]
    fn rejects_discontinuous() {
        // identity from Sierpiński onto the discrete space is not continuous
        let err = ContinuousMap::new(
            arc(FiniteSpace::sierpinski()),
            arc(FiniteSpace::discrete(2)),
            vec![0, 1],
        )
        .unwrap_err();
        assert!(matches!(err, Error::NotContinuous { .. }));
        let err = ContinuousMap::new(
            arc(FiniteSpace::discrete(2)),
            arc(FiniteSpace::discrete(2)),
            vec![0],
        )
        .unwrap_err();
        assert!(matches!(err, Error::MalformedMap(_)));
    }

    #[test]
    fn enumeration_examples() {
        let s = arc(FiniteSpace::sierpinski());
        let d2 = arc(FiniteSpace::discrete(2));
        let maps = enumerate_continuous_maps(&s, &d2, 1_000_000).unwrap();
        assert_eq!(maps.len(), 2);
        assert!(maps.iter().all(|m| m.images()[0] == m.images()[1]));

        let p = arc(FiniteSpace::discrete(1));
        for y in [
            FiniteSpace::sierpinski(),
            FiniteSpace::discrete(3),
            FiniteSpace::indiscrete(4),
        ] {
            let n = y.len();
            assert_eq!(
                enumerate_continuous_maps(&p, &arc(y), 1_000_000)
                    .unwrap()
                    .len(),
                n
            );
        }
        assert_eq!(
            enumerate_continuous_maps(&d2, &d2, 1_000_000)
                .unwrap()
                .len(),
            4
        );
    }

    #[test]
    fn enumeration_cap() {
        let d = arc(FiniteSpace::discrete(5));
        let err = enumerate_continuous_maps(&d, &d, 100).unwrap_err();
        assert_eq!(
            err,
            Error::CapExceeded {
                what: "continuous map enumeration",
                required: 3125,
                cap: 100
            }
        );
    }

    #[test]
    fn empty_source_has_one_map() {
        let e = arc(FiniteSpace::empty());
        let d = arc(FiniteSpace::discrete(2));
        assert_eq!(enumerate_continuous_maps(&e, &d, 10).unwrap().len(), 1);
        assert_eq!(enumerate_continuous_maps(&d, &e, 10).unwrap().len(), 0);
    }

    #[test]
    fn homeomorphism_examples() {
        let s = arc(FiniteSpace::sierpinski());
        let swapped =
            arc(FiniteSpace::new(vec!["b".into(), "a".into()], [0b00, 0b10, 0b11]).unwrap());
        let h = homeomorphic(&s, &swapped, 1000)
            .unwrap()
            .expect("relabelled Sierpiński");
        assert_eq!(h.images(), &[1, 0]);
        assert!(homeomorphic(&s, &arc(FiniteSpace::discrete(2)), 1000)
            .unwrap()
            .is_none());
        let d4 = arc(FiniteSpace::discrete(4));
        assert!(homeomorphic(&d4, &d4, 1000).unwrap().is_some());
    }

    #[test]
    fn composition_and_identity() {
        let s = arc(FiniteSpace::sierpinski());
        let id = ContinuousMap::identity(s.clone());
        let c = ContinuousMap::constant(s.clone(), s.clone(), 1).unwrap();
        assert_eq!(id.then(&c).unwrap(), c);
        assert_eq!(c.then(&id).unwrap(), c);
        assert!(id.is_homeomorphism());
        assert!(!c.is_injective());
    }
}
