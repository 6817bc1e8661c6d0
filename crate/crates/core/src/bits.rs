//! Subsets of a small indexed set, encoded as `u64` bitmasks.
//!
//! Every finite carrier in this crate (points of a space, elements of a ring)
//! is indexed `0..n` with `n <= 64`, so a subset is a single machine word.

/// A subset of `0..n` as a bitmask; bit `i` set means element `i` is present.
pub type Mask = u64;

/// Largest carrier size representable by a [`Mask`].
pub const MAX_BITS: usize = 64;

/// The mask with the low `n` bits set.
#[inline]
pub fn full(n: usize) -> Mask {
    debug_assert!(n <= MAX_BITS);
    if n == MAX_BITS {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[inline]
pub fn singleton(i: usize) -> Mask {
    1u64 << i
}

#[inline]
pub fn contains(mask: Mask, i: usize) -> bool {
    mask >> i & 1 == 1
}

#[inline]
pub fn is_subset(a: Mask, b: Mask) -> bool {
    a & !b == 0
}

/// Indices of the set bits, ascending.
pub fn iter(mut mask: Mask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

/// Builds a mask from element indices.
pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Mask {
    indices.into_iter().fold(0, |m, i| m | singleton(i))
}

/// Index of the lowest set bit, if any.
#[inline]
pub fn lowest(mask: Mask) -> Option<usize> {
    (mask != 0).then(|| mask.trailing_zeros() as usize)
}

/// Renders a subset as `{a,b}` using the given labels.
pub fn format(mask: Mask, labels: &[String]) -> String {
    let inner: Vec<&str> = iter(mask).map(|i| labels[i].as_str()).collect();
    format!("{{{}}}", inner.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_masks() {
        assert_eq!(full(0), 0);
        assert_eq!(full(3), 0b111);
        assert_eq!(full(64), u64::MAX);
    }

    #[test]
    fn iter_round_trips() {
        let m = from_indices([0, 5, 63]);
        assert_eq!(iter(m).collect::<Vec<_>>(), vec![0, 5, 63]);
        assert_eq!(lowest(m), Some(0));
        assert_eq!(lowest(0), None);
    }

    #[test]
    fn formatting() {
        let labels: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        assert_eq!(format(0b101, &labels), "{a,c}");
        assert_eq!(format(0, &labels), "{}");
    }
}
