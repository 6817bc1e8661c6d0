use thiserror::Error;

/// Errors raised while validating or operating on finite structures.
///
/// Witness-carrying variants render the offending subsets or elements with
/// their labels, so a failed validation points at a concrete counterexample.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("open family is missing the {missing} set")]
    MissingEmptyOrFull { missing: &'static str },

    #[error("open family is not closed under union: {left} ∪ {right} is absent")]
    NotClosedUnderUnion { left: String, right: String },

    #[error("open family is not closed under intersection: {left} ∩ {right} is absent")]
    NotClosedUnderIntersection { left: String, right: String },

    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),

    #[error("unknown label `{0}`")]
    UnknownLabel(String),

    #[error("{what} has {size} elements, more than the supported {max}")]
    TooLarge {
        what: &'static str,
        size: usize,
        max: usize,
    },

    #[error("{what} needs {required} candidates, above the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        required: u128,
        cap: u128,
    },

    #[error("malformed map: {0}")]
    MalformedMap(String),

    #[error("map is not continuous: preimage of open {open} is not open")]
    NotContinuous { open: String },

    #[error("malformed table: {0}")]
    MalformedTable(String),

    #[error("{structure} violates {law} at {witness}")]
    Axiom {
        structure: &'static str,
        law: &'static str,
        witness: String,
    },

    #[error("not a filter: {0}")]
    NotAFilter(String),

    #[error("filter {0} is not an ultrafilter")]
    NotUltrafilter(String),

    #[error("not an ideal: {0}")]
    NotAnIdeal(String),

    #[error("element {0} is not idempotent")]
    NotIdempotent(String),

    #[error("not a partition: {0}")]
    InvalidPartition(String),

    #[error("target space {0} is not profinite (finite discrete)")]
    NotProfiniteTarget(String),

    #[error("{claim} mismatch: {witness}")]
    Mismatch {
        claim: &'static str,
        witness: String,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
