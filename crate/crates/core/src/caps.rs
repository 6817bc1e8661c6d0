//! Enumeration limits.
//!
//! Caps are configuration rather than constants. The `SPECTRA_CAPS`
//! environment variable overrides them with a comma-separated list such as
//! `maps=200000,algebra=256`.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Caps {
    /// Candidate assignments examined when enumerating a hom-set.
    pub maps: u64,
    /// Permutations examined by a homeomorphism search.
    pub permutations: u64,
    /// Largest Boolean algebra carrier built by `powerset_algebra`.
    pub algebra: usize,
    /// Largest ring carrier accepted by constructors (at most 64).
    pub ring: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            maps: 1_000_000,
            permutations: 1_000_000,
            algebra: 1 << 10,
            ring: 64,
        }
    }
}

impl Caps {
    /// Defaults, overridden by `SPECTRA_CAPS` when set.
    pub fn from_env() -> Result<Self> {
        match std::env::var("SPECTRA_CAPS") {
            Ok(spec) => Caps::default().with_overrides(&spec),
            Err(_) => Ok(Caps::default()),
        }
    }

    /// Applies `key=value` overrides.
    pub fn with_overrides(mut self, spec: &str) -> Result<Self> {
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item.split_once('=').ok_or_else(|| {
                Error::MalformedTable(format!("cap override `{item}` is not key=value"))
            })?;
            let parse = |v: &str| {
                v.trim().parse::<u64>().map_err(|_| {
                    Error::MalformedTable(format!("cap `{key}` has non-numeric value `{v}`"))
                })
            };
            match key.trim() {
                "maps" => self.maps = parse(value)?,
                "permutations" | "perms" => self.permutations = parse(value)?,
                "algebra" => self.algebra = parse(value)? as usize,
                "ring" => self.ring = (parse(value)? as usize).min(crate::bits::MAX_BITS),
                other => return Err(Error::UnknownLabel(format!("cap `{other}`"))),
            }
        }
        Ok(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides() {
        let caps = Caps::default().with_overrides("maps=10, ring=100").unwrap();
        assert_eq!(caps.maps, 10);
        assert_eq!(caps.ring, 64);
        assert_eq!(caps.algebra, 1024);
        assert!(Caps::default().with_overrides("bogus=1").is_err());
        assert!(Caps::default().with_overrides("maps").is_err());
        assert!(Caps::default().with_overrides("maps=x").is_err());
    }
}
