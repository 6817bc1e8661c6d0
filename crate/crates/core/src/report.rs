//! Structured pass/fail records for verified claims.

use serde::{Deserialize, Serialize};

/// Stable claim identifiers used in reports and by `spectra verify --suite`.
pub mod claims {
    pub const STONE_REPRESENTATION: &str = "stone-representation";
    pub const BOOL_PROFINITE: &str = "lemma-bool-profinite";
    pub const STONE_BASIS: &str = "def-stone-basis";
    pub const IDEMPOTENT_ALGEBRA: &str = "lemma-idempotent-algebra";
    pub const REGULARIDEM: &str = "lemma-regularidem";
    pub const MRPROFINITE: &str = "lemma-mrprofinite";
    pub const MR_BASIS: &str = "remark-fineremark";
    pub const ZARISKI_ARITHMETIC: &str = "def-zariski";
    pub const CORRESPOND: &str = "prop-correspond";
    pub const IDEMCONNECTED: &str = "cor-idemconnected";
    pub const GOODLEM: &str = "prop-goodlem";
    pub const ABOVE: &str = "cor-above";
    pub const MAX_REG: &str = "thm-max-reg";
    pub const MAX_REG_MAP: &str = "thm-max-reg-map";
    pub const COARSER: &str = "cor-coarser";
    pub const FF_CONTINUOUS: &str = "lemma-ff-continuous";
    pub const FUNCTOR_LAWS: &str = "functor-laws";
    pub const ALTERNATIVE: &str = "thm-alternative";
    pub const CLOSED_MAP: &str = "remark-dehghan";
    pub const REFLECTION_UNIT: &str = "reflection-unit";
    pub const SOBER_I: &str = "prop-sober-i";
    pub const SOBER_II: &str = "prop-sober-ii";
    pub const SOBER_III: &str = "prop-sober-iii";
    pub const T_FUNCTOR: &str = "def-tfunctor";
    pub const SOBER_ALPHA: &str = "def-sober";
    pub const IMCONNECT: &str = "lemma-imconnect";
    pub const CONN_COMPONENT: &str = "thm-conn-component";
    pub const COMPONENT_ORACLE: &str = "cross-oracle-components";
    pub const TOPOLOGY_COUNTS: &str = "cross-oracle-topology-counts";
    pub const COMPONENT_TOPOLOGY: &str = "component-topology";
    pub const QUOTIENT_OBSERVATION: &str = "observation-quotient-equals-clopen";
    pub const IDEAL_ORACLE: &str = "cross-oracle-ideals";
    pub const FILTER_ORACLE: &str = "cross-oracle-filters";

    /// Every identifier above, in declaration order.
    pub const ALL: &[&str] = &[
        STONE_REPRESENTATION,
        BOOL_PROFINITE,
        STONE_BASIS,
        IDEMPOTENT_ALGEBRA,
        REGULARIDEM,
        MRPROFINITE,
        MR_BASIS,
        ZARISKI_ARITHMETIC,
        CORRESPOND,
        IDEMCONNECTED,
        GOODLEM,
        ABOVE,
        MAX_REG,
        MAX_REG_MAP,
        COARSER,
        FF_CONTINUOUS,
        FUNCTOR_LAWS,
        ALTERNATIVE,
        CLOSED_MAP,
        REFLECTION_UNIT,
        SOBER_I,
        SOBER_II,
        SOBER_III,
        T_FUNCTOR,
        SOBER_ALPHA,
        IMCONNECT,
        CONN_COMPONENT,
        COMPONENT_ORACLE,
        TOPOLOGY_COUNTS,
        COMPONENT_TOPOLOGY,
        QUOTIENT_OBSERVATION,
        IDEAL_ORACLE,
        FILTER_ORACLE,
    ];
}

/// One verified (or refuted) claim about one subject.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ClaimReport {
    pub claim: String,
    pub subject: String,
    pub pass: bool,
    pub witness: Option<String>,
}

impl ClaimReport {
    pub fn pass(claim: &str, subject: impl Into<String>) -> Self {
        ClaimReport {
            claim: claim.to_string(),
            subject: subject.into(),
            pass: true,
            witness: None,
        }
    }

    pub fn fail(claim: &str, subject: impl Into<String>, witness: impl Into<String>) -> Self {
        ClaimReport {
            claim: claim.to_string(),
            subject: subject.into(),
            pass: false,
            witness: Some(witness.into()),
        }
    }

    /// Pass on `Ok`, fail with the error text as witness on `Err`.
    pub fn from_outcome<E: ToString>(
        claim: &str,
        subject: impl Into<String>,
        outcome: Result<(), E>,
    ) -> Self {
        match outcome {
            Ok(()) => ClaimReport::pass(claim, subject),
            Err(e) => ClaimReport::fail(claim, subject, e.to_string()),
        }
    }
}

/// `Err(witness)` unless `cond` holds.
pub(crate) fn ensure(cond: bool, witness: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(witness())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape() {
        let r = ClaimReport::pass(claims::MAX_REG, "zmod(12)");
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            r#"{"claim":"thm-max-reg","subject":"zmod(12)","pass":true,"witness":null}"#
        );
        let f = ClaimReport::from_outcome(claims::ABOVE, "x", Err::<(), _>("boom"));
        assert!(!f.pass);
        assert_eq!(f.witness.as_deref(), Some("boom"));
    }
}
