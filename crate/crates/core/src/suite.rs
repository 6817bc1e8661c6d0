//! Runs the claim checks over a corpus and assembles a deterministic report.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bits::{self, Mask};
use crate::boolean::check_stone;
use crate::bridge;
use crate::caps::Caps;
use crate::corpus::{enumerate_topologies, generate_corpus, Corpus, CorpusConfig};
use crate::error::{Error, Result};
use crate::oracle;
use crate::reflection::{self, describe};
use crate::report::{claims, ClaimReport};
use crate::ring::FiniteRing;
use crate::sober;
use crate::topology::{default_labels, FiniteSpace};

/// Named groups accepted by [`SuiteSelector::parse`] besides `all` and
/// single claim ids.
pub const GROUPS: &[(&str, &[&str])] = &[
    (
        "max-reg",
        &[
            claims::CORRESPOND,
            claims::IDEMCONNECTED,
            claims::GOODLEM,
            claims::ABOVE,
            claims::MAX_REG,
            claims::MAX_REG_MAP,
            claims::COARSER,
            claims::MRPROFINITE,
            claims::MR_BASIS,
            claims::IDEMPOTENT_ALGEBRA,
            claims::REGULARIDEM,
            claims::ZARISKI_ARITHMETIC,
            claims::IDEAL_ORACLE,
        ],
    ),
    (
        "stone",
        &[
            claims::STONE_REPRESENTATION,
            claims::BOOL_PROFINITE,
            claims::STONE_BASIS,
            claims::FILTER_ORACLE,
        ],
    ),
    (
        "adjunction",
        &[
            claims::ALTERNATIVE,
            claims::REFLECTION_UNIT,
            claims::FF_CONTINUOUS,
            claims::FUNCTOR_LAWS,
            claims::CLOSED_MAP,
            claims::COMPONENT_TOPOLOGY,
            claims::QUOTIENT_OBSERVATION,
        ],
    ),
    (
        "sober",
        &[
            claims::SOBER_I,
            claims::SOBER_II,
            claims::SOBER_III,
            claims::T_FUNCTOR,
            claims::SOBER_ALPHA,
            claims::IMCONNECT,
            claims::CONN_COMPONENT,
        ],
    ),
    (
        "cross-oracle",
        &[
            claims::COMPONENT_ORACLE,
            claims::TOPOLOGY_COUNTS,
            claims::IDEAL_ORACLE,
            claims::FILTER_ORACLE,
        ],
    ),
];

/// Point bound for checks quantified over all maps between spaces.
pub const MAP_CHECK_POINTS: usize = 3;

/// The set of claim ids a run should report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteSelector {
    name: String,
    claims: BTreeSet<&'static str>,
}

impl SuiteSelector {
    pub fn all() -> Self {
        SuiteSelector {
            name: "all".into(),
            claims: claims::ALL.iter().copied().collect(),
        }
    }

    /// `all`, a group name from [`GROUPS`], or a single claim id.
    pub fn parse(name: &str) -> Result<Self> {
        if name == "all" {
            return Ok(Self::all());
        }
        let claims: BTreeSet<&'static str> =
            if let Some((_, ids)) = GROUPS.iter().find(|(g, _)| *g == name) {
                ids.iter().copied().collect()
            } else if let Some(id) = claims::ALL.iter().find(|&&id| id == name) {
                [*id].into()
            } else {
                return Err(Error::UnknownLabel(format!("suite {name:?}")));
            };
        Ok(SuiteSelector {
            name: name.to_string(),
            claims,
        })
    }

    /// An explicit list of claim ids under a custom name.
    pub fn from_claims(name: &str, ids: &[&str]) -> Result<Self> {
        let claims = ids
            .iter()
            .map(|id| {
                claims::ALL
                    .iter()
                    .copied()
                    .find(|known| known == id)
                    .ok_or_else(|| Error::UnknownLabel(format!("claim {id:?}")))
            })
            .collect::<Result<_>>()?;
        Ok(SuiteSelector {
            name: name.to_string(),
            claims,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn includes(&self, claim: &str) -> bool {
        self.claims.contains(claim)
    }

    fn any(&self, ids: &[&str]) -> bool {
        ids.iter().any(|id| self.includes(id))
    }
}

/// Random extra spaces for the adjunction and soberification checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sampling {
    pub count: usize,
    pub points: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub config: serde_json::Value,
    pub caps: serde_json::Value,
    pub seed: u64,
    pub sampling: Option<Sampling>,
    pub summary: Summary,
    pub claims: Vec<ClaimReport>,
}

impl SuiteReport {
    pub fn all_pass(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &ClaimReport> {
        self.claims.iter().filter(|c| !c.pass)
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("report serializes");
        out.push('\n');
        out
    }
}

/// Options for [`run`].
#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub config: CorpusConfig,
    pub caps: Caps,
    pub seed: u64,
    pub sampling: Option<Sampling>,
}

/// Builds the corpus and runs the selected checks on it.
pub fn run(selector: &SuiteSelector, options: &RunOptions) -> Result<SuiteReport> {
    let corpus = generate_corpus(&options.config, &options.caps)?;
    let mut reports = run_suite(&corpus, selector, &options.config, &options.caps);
    if selector.includes(claims::TOPOLOGY_COUNTS) {
        reports.extend(topology_count_reports(options.config.max_points));
    }
    if let Some(sampling) = options.sampling {
        let spaces = sample_spaces(sampling, options.seed)?;
        let targets = discrete_targets(options.config.max_target);
        reports.extend(space_reports(
            &spaces,
            &targets,
            selector,
            &options.caps,
            false,
        ));
    }
    Ok(assemble(
        selector,
        serde_json::to_value(&options.config).expect("config serializes"),
        &options.caps,
        options.seed,
        options.sampling,
        reports,
    ))
}

/// Runs the selected checks over an existing corpus. Failures are data: a
/// check that errors is reported as failing with the error as witness.
pub fn run_suite(
    corpus: &Corpus,
    selector: &SuiteSelector,
    config: &CorpusConfig,
    caps: &Caps,
) -> Vec<ClaimReport> {
    let mut reports: Vec<ClaimReport> = corpus
        .rings
        .par_iter()
        .flat_map_iter(|ring| ring_reports(ring, selector))
        .collect();
    reports.extend(
        corpus
            .algebras
            .par_iter()
            .flat_map_iter(|named| algebra_reports(&named.name, &named.algebra, selector, caps))
            .collect::<Vec<_>>(),
    );
    let spaces: Vec<Arc<FiniteSpace>> = corpus.spaces.iter().cloned().map(Arc::new).collect();
    let targets = discrete_targets(config.max_target);
    reports.extend(space_reports(&spaces, &targets, selector, caps, true));
    reports.retain(|r| selector.includes(&r.claim));
    reports
}

fn assemble(
    selector: &SuiteSelector,
    config: serde_json::Value,
    caps: &Caps,
    seed: u64,
    sampling: Option<Sampling>,
    mut reports: Vec<ClaimReport>,
) -> SuiteReport {
    reports.retain(|r| selector.includes(&r.claim));
    reports.sort();
    reports.dedup();
    let passed = reports.iter().filter(|r| r.pass).count();
    SuiteReport {
        suite: selector.name().to_string(),
        config,
        caps: serde_json::to_value(caps).expect("caps serialize"),
        seed,
        sampling,
        summary: Summary {
            total: reports.len(),
            passed,
            failed: reports.len() - passed,
        },
        claims: reports,
    }
}

fn ring_reports(ring: &FiniteRing, selector: &SuiteSelector) -> Vec<ClaimReport> {
    type Check = fn(&FiniteRing) -> ClaimReport;
    let checks: [(&str, Check); 12] = [
        (claims::CORRESPOND, bridge::check_eta_bijective),
        (
            claims::IDEMCONNECTED,
            bridge::check_connected_iff_trivial_idempotents,
        ),
        (claims::GOODLEM, bridge::check_goodlem),
        (claims::ABOVE, bridge::check_above),
        (claims::MAX_REG, bridge::check_max_reg),
        (claims::MAX_REG_MAP, bridge::check_prime_to_max_regular),
        (claims::COARSER, bridge::check_coarser),
        (claims::MRPROFINITE, bridge::check_mrprofinite),
        (claims::MR_BASIS, bridge::check_mr_basis),
        (claims::IDEMPOTENT_ALGEBRA, bridge::check_idempotent_algebra),
        (claims::REGULARIDEM, bridge::check_regular_criterion),
        (claims::ZARISKI_ARITHMETIC, bridge::check_zariski_arithmetic),
    ];
    let mut out: Vec<ClaimReport> = checks
        .iter()
        .filter(|(id, _)| selector.includes(id))
        .map(|(_, check)| check(ring))
        .collect();
    if selector.includes(claims::IDEAL_ORACLE) {
        if let Some(report) = ideal_oracle_report(ring) {
            out.push(report);
        }
    }
    out
}

/// Fast ideal, prime and regular-ideal enumeration against subset scans
/// (small rings) and against divisors (`zmod`).
fn ideal_oracle_report(ring: &FiniteRing) -> Option<ClaimReport> {
    let masks = |ideals: Vec<crate::ring::Ideal>| -> BTreeSet<Mask> {
        ideals.into_iter().map(|i| i.members()).collect()
    };
    let primes = masks(ring.prime_ideals());
    let zmod_n = ring
        .name()
        .strip_prefix("zmod(")
        .and_then(|rest| rest.strip_suffix(')'))
        .and_then(|n| n.parse::<usize>().ok());
    let scanned = ring.len() <= oracle::SCAN_LIMIT;
    if !scanned && zmod_n.is_none() {
        return None;
    }
    let outcome = (|| -> Result<(), String> {
        if let Some(n) = zmod_n {
            let expected: BTreeSet<Mask> = oracle::zmod_primes_by_divisors(n).into_iter().collect();
            if primes != expected {
                return Err(format!("primes differ from divisor oracle for n = {n}"));
            }
        }
        if scanned {
            let ideals = oracle::ideals_by_subset_scan(ring).map_err(|e| e.to_string())?;
            if masks(ring.all_ideals()) != ideals {
                return Err("ideals differ from subset scan".into());
            }
            if primes != oracle::primes_by_subset_scan(ring).map_err(|e| e.to_string())? {
                return Err("primes differ from subset scan".into());
            }
            let regular = oracle::regular_ideals_by_subset_scan(ring).map_err(|e| e.to_string())?;
            if masks(ring.regular_ideals()) != regular {
                return Err("regular ideals differ from idempotent subset scan".into());
            }
        }
        Ok(())
    })();
    Some(ClaimReport::from_outcome(
        claims::IDEAL_ORACLE,
        ring.name(),
        outcome,
    ))
}

fn algebra_reports(
    name: &str,
    algebra: &crate::boolean::BooleanAlgebra,
    selector: &SuiteSelector,
    caps: &Caps,
) -> Vec<ClaimReport> {
    let mut out = Vec::new();
    if selector.any(&[
        claims::STONE_REPRESENTATION,
        claims::BOOL_PROFINITE,
        claims::STONE_BASIS,
    ]) {
        out.extend(check_stone(algebra, name, caps));
    }
    if selector.includes(claims::FILTER_ORACLE) && algebra.len() <= oracle::SCAN_LIMIT {
        let outcome = oracle::filters_by_subset_scan(algebra)
            .map_err(|e| e.to_string())
            .and_then(|scanned| {
                let fast: BTreeSet<Mask> = algebra
                    .all_filters()
                    .iter()
                    .map(|f| bits::from_indices(f.iter()))
                    .collect();
                if fast == scanned {
                    Ok(())
                } else {
                    Err(format!(
                        "{} filters found, subset scan finds {}",
                        fast.len(),
                        scanned.len()
                    ))
                }
            });
        out.push(ClaimReport::from_outcome(
            claims::FILTER_ORACLE,
            name,
            outcome,
        ));
    }
    out
}

fn discrete_targets(max_target: usize) -> Vec<Arc<FiniteSpace>> {
    (1..=max_target)
        .map(|n| Arc::new(FiniteSpace::discrete(n)))
        .collect()
}

fn error_report(claim: &str, subject: String, error: Error) -> ClaimReport {
    ClaimReport::fail(claim, subject, error.to_string())
}

/// Per-space checks, plus the all-maps checks over spaces with at most
/// [`MAP_CHECK_POINTS`] points when `with_map_checks` is set.
fn space_reports(
    spaces: &[Arc<FiniteSpace>],
    targets: &[Arc<FiniteSpace>],
    selector: &SuiteSelector,
    caps: &Caps,
    with_map_checks: bool,
) -> Vec<ClaimReport> {
    let mut out: Vec<ClaimReport> = spaces
        .par_iter()
        .flat_map_iter(|x| {
            let mut r = Vec::new();
            if selector.includes(claims::ALTERNATIVE) {
                for p in targets {
                    r.push(
                        reflection::check_adjunction(x, p, caps).unwrap_or_else(|e| {
                            error_report(
                                claims::ALTERNATIVE,
                                format!("{} -> {}", describe(x), describe(p)),
                                e,
                            )
                        }),
                    );
                }
            }
            if selector.includes(claims::REFLECTION_UNIT) {
                r.push(reflection::check_unit(x));
            }
            if selector.any(&[claims::COMPONENT_TOPOLOGY, claims::QUOTIENT_OBSERVATION]) {
                r.extend(reflection::check_component_topology(x));
            }
            if selector.includes(claims::COMPONENT_ORACLE) {
                let naive = oracle::components_by_splitting(x);
                r.push(ClaimReport::from_outcome(
                    claims::COMPONENT_ORACLE,
                    describe(x),
                    if naive.same_blocks(&x.connected_components()) {
                        Ok(())
                    } else {
                        Err("quasi-components differ from the splitting partition")
                    },
                ));
            }
            r.extend(sober_reports(x, selector));
            r
        })
        .collect();
    if !with_map_checks {
        return out;
    }
    let small: Vec<Arc<FiniteSpace>> = spaces
        .iter()
        .filter(|s| s.len() <= MAP_CHECK_POINTS)
        .cloned()
        .collect();
    if selector.any(&[
        claims::FUNCTOR_LAWS,
        claims::FF_CONTINUOUS,
        claims::CLOSED_MAP,
    ]) {
        match reflection::check_functor_laws(&small, caps) {
            Ok(r) => out.extend(r),
            Err(e) => out.push(error_report(claims::FUNCTOR_LAWS, "small spaces".into(), e)),
        }
    }
    if selector.any(&[claims::SOBER_I, claims::T_FUNCTOR]) {
        match sober::check_naturality_and_functor_laws(&small, caps) {
            Ok(r) => out.extend(r),
            Err(e) => out.push(error_report(claims::SOBER_I, "small spaces".into(), e)),
        }
    }
    out
}

fn sober_reports(x: &Arc<FiniteSpace>, selector: &SuiteSelector) -> Vec<ClaimReport> {
    if !selector.any(&[
        claims::SOBER_II,
        claims::SOBER_III,
        claims::SOBER_ALPHA,
        claims::IMCONNECT,
        claims::CONN_COMPONENT,
    ]) {
        return Vec::new();
    }
    let subject = describe(x);
    let tx = sober::soberify(x);
    let mut r = vec![
        sober::check_closed_set_bijection(&tx, subject.clone()),
        sober::check_sober(&tx.space, claims::SOBER_III, subject.clone()),
        sober::check_sober_iff_alpha_homeomorphism(&tx, subject.clone()),
    ];
    // components_of_t also covers t(C) connected for each component
    let components = sober::components_of_t(&tx);
    let imconnect_failure =
        matches!(&components, Err(Error::Mismatch { claim, .. }) if *claim == claims::IMCONNECT);
    r.push(ClaimReport::from_outcome(
        claims::CONN_COMPONENT,
        subject.clone(),
        components.as_ref().map(|_| ()).map_err(|e| e.to_string()),
    ));
    if x.len() <= MAP_CHECK_POINTS {
        let mut subsets = sober::check_imconnect_subsets(&tx, subject.clone());
        if imconnect_failure && subsets.pass {
            subsets = ClaimReport::fail(
                claims::IMCONNECT,
                subject,
                "t(C) is not connected for a component C",
            );
        }
        r.push(subsets);
    } else if imconnect_failure {
        r.push(ClaimReport::fail(
            claims::IMCONNECT,
            subject,
            "t(C) is not connected for a component C",
        ));
    } else {
        r.push(ClaimReport::pass(claims::IMCONNECT, subject));
    }
    r
}

/// Counts of labeled topologies on `1..=max_points` points from the
/// set-family enumerator against the preorder enumerator.
pub fn topology_count_reports(max_points: usize) -> Vec<ClaimReport> {
    (1..=max_points.min(5))
        .map(|n| {
            let subject = format!("{n} points");
            let outcome = (|| -> Result<(), String> {
                let families: BTreeSet<Vec<Mask>> = enumerate_topologies(n)
                    .map_err(|e| e.to_string())?
                    .iter()
                    .map(|s| s.opens().to_vec())
                    .collect();
                let preorders: BTreeSet<Vec<Mask>> = oracle::topologies_by_preorder(n)
                    .map_err(|e| e.to_string())?
                    .iter()
                    .map(|s| s.opens().to_vec())
                    .collect();
                if families == preorders {
                    Ok(())
                } else {
                    Err(format!(
                        "set-family enumeration finds {}, preorder enumeration finds {}",
                        families.len(),
                        preorders.len()
                    ))
                }
            })();
            ClaimReport::from_outcome(claims::TOPOLOGY_COUNTS, subject, outcome)
        })
        .collect()
}

/// Random topologies on `sampling.points` points, each generated by a few
/// random subsets, reproducible from `seed`.
pub fn sample_spaces(sampling: Sampling, seed: u64) -> Result<Vec<Arc<FiniteSpace>>> {
    if sampling.points == 0 || sampling.points > 12 {
        return Err(Error::TooLarge {
            what: "sampled space points",
            size: sampling.points,
            max: 12,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let full = bits::full(sampling.points);
    (0..sampling.count)
        .map(|_| {
            let generators: Vec<Mask> = (0..rng.gen_range(0..=sampling.points))
                .map(|_| rng.gen_range(0..=full))
                .collect();
            FiniteSpace::from_subbasis(default_labels(sampling.points), generators).map(Arc::new)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_options() -> RunOptions {
        RunOptions {
            config: CorpusConfig {
                max_points: 3,
                max_ring: 12,
                max_product: 12,
                max_quotient_source: 12,
                max_atoms: 3,
                max_target: 3,
            },
            ..RunOptions::default()
        }
    }

    #[test]
    fn selector_parsing() {
        assert_eq!(SuiteSelector::parse("all").unwrap(), SuiteSelector::all());
        assert!(SuiteSelector::parse("sober")
            .unwrap()
            .includes(claims::SOBER_III));
        let single = SuiteSelector::parse("thm-max-reg").unwrap();
        assert!(single.includes(claims::MAX_REG) && !single.includes(claims::GOODLEM));
        assert!(SuiteSelector::parse("nope").is_err());
        for (_, ids) in GROUPS {
            assert!(ids.iter().all(|id| claims::ALL.contains(id)));
        }
    }

    #[test]
    fn max_reg_group_passes() {
        let report = run(&SuiteSelector::parse("max-reg").unwrap(), &small_options()).unwrap();
        assert!(report.all_pass(), "{:?}", report.failures().next());
        assert!(report
            .claims
            .iter()
            .any(|c| c.claim == claims::MAX_REG && c.subject == "zmod(12)"));
    }

    #[test]
    fn sober_group_passes() {
        let report = run(&SuiteSelector::parse("sober").unwrap(), &small_options()).unwrap();
        assert!(report.all_pass(), "{:?}", report.failures().next());
        let per_space = report
            .claims
            .iter()
            .filter(|c| c.claim == claims::SOBER_III)
            .count();
        assert_eq!(per_space, 34);
    }

    #[test]
    fn empty_corpus_reports_nothing() {
        let reports = run_suite(
            &Corpus::default(),
            &SuiteSelector::all(),
            &CorpusConfig::default(),
            &Caps::default(),
        );
        assert!(reports.is_empty());
    }

    #[test]
    fn reports_are_sorted_and_deterministic() {
        let options = RunOptions {
            sampling: Some(Sampling {
                count: 5,
                points: 5,
            }),
            seed: 7,
            ..small_options()
        };
        let selector = SuiteSelector::parse("adjunction").unwrap();
        let a = run(&selector, &options).unwrap();
        let b = run(&selector, &options).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        assert!(a.claims.windows(2).all(|w| w[0] <= w[1]));
        assert!(a.all_pass(), "{:?}", a.failures().next());
    }
}
