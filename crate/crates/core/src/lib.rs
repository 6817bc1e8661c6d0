//! Exact computations with finite topological spaces, finite Boolean
//! algebras and finite commutative rings: Stone spectra, Zariski spectra,
//! idempotents and max-regular ideals, connected components, the reflection
//! onto the space of components, and soberification.
//!
//! Subsets are `u64` bitmasks, so every carrier has at most 64 elements.
//! Each construction comes with `check_*` functions that return a
//! [`report::ClaimReport`], and [`suite`] runs them over a generated
//! [`corpus`]. Slow reference implementations live in [`oracle`].
//!
//! ```
//! use spectra::caps::Caps;
//! use spectra::ring::zmod;
//!
//! let r = zmod(30, &Caps::default()).unwrap();
//! assert_eq!(r.max_regular_ideals().len(), 3);
//! assert_eq!(r.zariski_spectrum().space.connected_components().len(), 3);
//! ```

pub mod bits;
pub mod boolean;
pub mod bridge;
pub mod caps;
pub mod corpus;
pub mod error;
pub mod io;
pub mod maps;
pub mod oracle;
pub mod reflection;
pub mod report;
pub mod ring;
pub mod sober;
pub mod suite;
pub mod topology;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/spaces.md")]
    mod spaces {}
    #[doc = include_str!("../../../book/src/stone.md")]
    mod stone {}
    #[doc = include_str!("../../../book/src/rings.md")]
    mod rings {}
    #[doc = include_str!("../../../book/src/reflection.md")]
    mod reflection {}
    #[doc = include_str!("../../../book/src/soberification.md")]
    mod soberification {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
}
