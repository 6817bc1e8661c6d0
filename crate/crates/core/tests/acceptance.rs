//! Acceptance criteria, one line each: `PASS`/`FAIL`, a detail, and the
//! elapsed time against its pinned limit. Exits nonzero if any fails.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use spectra::caps::Caps;
use spectra::corpus::{enumerate_topologies, generate_corpus, Corpus, CorpusConfig};
use spectra::oracle::topologies_by_preorder;
use spectra::report::{claims, ClaimReport};
use spectra::suite::{run_suite, SuiteSelector};

struct Context {
    corpus: Corpus,
    config: CorpusConfig,
    caps: Caps,
}

impl Context {
    fn run(&self, ids: &[&str]) -> Vec<ClaimReport> {
        let selector = SuiteSelector::from_claims("acceptance", ids).expect("known claim ids");
        run_suite(&self.corpus, &selector, &self.config, &self.caps)
    }

    /// All selected claims pass, each id reported exactly `per_id` times.
    fn expect(&self, ids: &[&str], per_id: usize) -> Result<String, String> {
        let reports = self.run(ids);
        for id in ids {
            let count = reports.iter().filter(|r| r.claim == *id).count();
            if count != per_id {
                return Err(format!("{id}: {count} reports, expected {per_id}"));
            }
        }
        match reports.iter().find(|r| !r.pass) {
            Some(f) => Err(format!(
                "{} [{}]: {}",
                f.claim,
                f.subject,
                f.witness.as_deref().unwrap_or("")
            )),
            None => Ok(format!("{} checks over {per_id} subjects", reports.len())),
        }
    }
}

type Check = fn(&Context) -> Result<String, String>;

struct Criterion {
    label: &'static str,
    limit: Duration,
    check: Check,
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn criteria() -> Vec<Criterion> {
    vec![
        Criterion {
            label: "max-regular ideals cut out the components of Spec R",
            limit: secs(60),
            check: |cx| {
                cx.expect(
                    &[claims::MAX_REG, claims::MAX_REG_MAP],
                    cx.corpus.rings.len(),
                )
            },
        },
        Criterion {
            label: "idempotents match clopens; connected iff trivial idempotents",
            limit: secs(10),
            check: |cx| {
                cx.expect(
                    &[claims::CORRESPOND, claims::IDEMCONNECTED],
                    cx.corpus.rings.len(),
                )
            },
        },
        Criterion {
            label: "spectrum of I(R) is homeomorphic to mr(R) via phi",
            limit: secs(10),
            check: |cx| {
                cx.expect(
                    &[claims::MRPROFINITE, claims::MR_BASIS],
                    cx.corpus.rings.len(),
                )
            },
        },
        Criterion {
            label: "R/M has two idempotents and V(M) is connected",
            limit: secs(10),
            check: |cx| cx.expect(&[claims::GOODLEM, claims::ABOVE], cx.corpus.rings.len()),
        },
        Criterion {
            label: "component space is profinite and coarser than the quotient",
            limit: secs(10),
            check: |cx| cx.expect(&[claims::COARSER], cx.corpus.rings.len()),
        },
        Criterion {
            label: "mu is a bijection for 389 spaces against discrete targets",
            limit: secs(120),
            check: |cx| {
                if cx.corpus.spaces.len() != 389 {
                    return Err(format!("{} spaces, expected 389", cx.corpus.spaces.len()));
                }
                cx.expect(&[claims::ALTERNATIVE], 1167)
            },
        },
        Criterion {
            label: "Boolean algebras: 2^atoms elements, discrete spectrum, axioms",
            limit: secs(5),
            check: |cx| {
                cx.expect(
                    &[
                        claims::STONE_REPRESENTATION,
                        claims::BOOL_PROFINITE,
                        claims::STONE_BASIS,
                    ],
                    cx.corpus.algebras.len(),
                )
            },
        },
        Criterion {
            label: "soberification: naturality, closed sets, sobriety, components",
            limit: secs(120),
            check: |cx| {
                let spaces = cx.corpus.spaces.len();
                cx.expect(
                    &[
                        claims::SOBER_II,
                        claims::SOBER_III,
                        claims::CONN_COMPONENT,
                        claims::IMCONNECT,
                        claims::SOBER_ALPHA,
                    ],
                    spaces,
                )?;
                // ordered pairs of the 34 spaces with at most 3 points
                cx.expect(&[claims::SOBER_I], 34 * 34)?;
                let laws = cx.run(&[claims::T_FUNCTOR]);
                if laws.len() != 34 + 34 * 34 || laws.iter().any(|r| !r.pass) {
                    return Err(format!(
                        "t functor laws: {} reports, failures present or count off",
                        laws.len()
                    ));
                }
                Ok(format!("{spaces} spaces, {} map pairs", 34 * 34))
            },
        },
        Criterion {
            label: "quasi-components match splitting; topology counts 1, 4, 29, 355",
            limit: secs(60),
            check: |cx| {
                cx.expect(&[claims::COMPONENT_ORACLE], cx.corpus.spaces.len())?;
                let mut counts = Vec::new();
                for n in 1..=4 {
                    let a: BTreeSet<Vec<u64>> = enumerate_topologies(n)
                        .map_err(|e| e.to_string())?
                        .iter()
                        .map(|s| s.opens().to_vec())
                        .collect();
                    let b: BTreeSet<Vec<u64>> = topologies_by_preorder(n)
                        .map_err(|e| e.to_string())?
                        .iter()
                        .map(|s| s.opens().to_vec())
                        .collect();
                    if a != b {
                        return Err(format!("enumerators disagree on {n} points"));
                    }
                    counts.push(a.len());
                }
                if counts != [1, 4, 29, 355] {
                    return Err(format!("counts {counts:?}"));
                }
                Ok(format!("counts {counts:?}"))
            },
        },
        Criterion {
            label: "two `verify --suite all` runs give byte-identical JSON",
            limit: secs(180),
            check: |_| {
                let run = || -> Result<Vec<u8>, String> {
                    let out = Command::new(env!("CARGO_BIN_EXE_spectra"))
                        .args(["verify", "--suite", "all", "--json", "-"])
                        .env_remove("SPECTRA_CAPS")
                        .output()
                        .map_err(|e| e.to_string())?;
                    if !out.status.success() {
                        return Err(format!("exit status {}", out.status));
                    }
                    Ok(out.stdout)
                };
                let (a, b) = (run()?, run()?);
                if a.is_empty() || a != b {
                    return Err("reports differ".into());
                }
                Ok(format!("{} bytes", a.len()))
            },
        },
    ]
}

fn main() -> ExitCode {
    let start = Instant::now();
    let config = CorpusConfig::default();
    let caps = Caps::default();
    let corpus = generate_corpus(&config, &caps).expect("corpus generation");
    println!(
        "corpus: {} spaces, {} rings, {} algebras ({:.2} s)",
        corpus.spaces.len(),
        corpus.rings.len(),
        corpus.algebras.len(),
        start.elapsed().as_secs_f64()
    );
    let cx = Context {
        corpus,
        config,
        caps,
    };

    let mut failed = 0;
    for (i, criterion) in criteria().iter().enumerate() {
        let start = Instant::now();
        let outcome = (criterion.check)(&cx);
        let elapsed = start.elapsed();
        let (status, detail) = match outcome {
            Ok(detail) if elapsed <= criterion.limit => ("PASS", detail),
            Ok(detail) => ("FAIL", format!("{detail}; over time")),
            Err(witness) => ("FAIL", witness),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!(
            "criterion {:>2} {status}: {} ({detail}) [{:.2} s / limit {} s]",
            i + 1,
            criterion.label,
            elapsed.as_secs_f64(),
            criterion.limit.as_secs()
        );
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria().len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
