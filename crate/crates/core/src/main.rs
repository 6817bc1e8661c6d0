use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use spectra::bits;
use spectra::boolean::{powerset_algebra, BooleanAlgebra};
use spectra::bridge::components_via_max_regular;
use spectra::caps::Caps;
use spectra::corpus::CorpusConfig;
use spectra::io;
use spectra::reflection::apply_f;
use spectra::ring::{product, zmod, FiniteRing};
use spectra::sober::soberify;
use spectra::suite::{run, RunOptions, Sampling, SuiteSelector};
use spectra::topology::FiniteSpace;

#[derive(Parser)]
#[command(
    name = "spectra",
    version,
    about = "Finite spectra, components and their reflections"
)]
struct Cli {
    /// Cap overrides, e.g. `maps=100000,ring=32` (also read from SPECTRA_CAPS).
    #[arg(long, global = true)]
    caps: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect a finite commutative ring.
    Ring(RingArgs),
    /// Inspect a finite Boolean algebra.
    Algebra(AlgebraArgs),
    /// Inspect a finite space given as JSON.
    Topo(TopoArgs),
    /// Print F(X) and the unit X -> F(X).
    Reflect {
        #[arg(long)]
        space: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Print the soberification t(X).
    Soberify {
        #[arg(long)]
        space: PathBuf,
        #[arg(long, conflicts_with = "json")]
        dot: bool,
        #[arg(long)]
        json: bool,
    },
    /// Run the claim suite over the generated corpus.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct RingArgs {
    #[arg(long, group = "source")]
    zmod: Option<usize>,
    /// Comma-separated moduli, e.g. `2,3`.
    #[arg(long, group = "source", value_delimiter = ',')]
    product: Option<Vec<usize>>,
    #[arg(long, group = "source")]
    file: Option<PathBuf>,
    /// Pass to the quotient by the ideal generated by these elements
    /// (comma-separated labels); the ideal must be regular.
    #[arg(long, value_delimiter = ',')]
    quotient: Option<Vec<String>>,
    #[arg(value_enum)]
    view: RingView,
    #[arg(long, conflicts_with = "json")]
    dot: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum RingView {
    Primes,
    Idempotents,
    Mr,
    Components,
    Spec,
}

#[derive(Args)]
struct AlgebraArgs {
    #[arg(long, group = "source")]
    powerset: Option<usize>,
    #[arg(long, group = "source")]
    file: Option<PathBuf>,
    #[arg(value_enum)]
    view: AlgebraView,
    #[arg(long, conflicts_with = "json")]
    dot: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgebraView {
    Spec,
    Atoms,
    Ultrafilters,
}

#[derive(Args)]
struct TopoArgs {
    #[arg(long)]
    file: PathBuf,
    #[arg(value_enum)]
    view: TopoView,
    #[arg(long, conflicts_with = "json")]
    dot: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum TopoView {
    Components,
    Clopens,
    Reflect,
    Soberify,
}

#[derive(Args)]
struct VerifyArgs {
    /// `all`, a group (max-reg, stone, adjunction, sober, cross-oracle) or a claim id.
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, alias = "max-src", default_value_t = CorpusConfig::default().max_points)]
    max_points: usize,
    #[arg(long, default_value_t = CorpusConfig::default().max_ring)]
    max_ring: usize,
    #[arg(long, default_value_t = CorpusConfig::default().max_product)]
    max_product: usize,
    #[arg(long, default_value_t = CorpusConfig::default().max_quotient_source)]
    max_quotient_source: usize,
    #[arg(long, default_value_t = CorpusConfig::default().max_atoms)]
    max_atoms: usize,
    #[arg(long, alias = "max-tgt", default_value_t = CorpusConfig::default().max_target)]
    max_target: usize,
    /// Write the JSON report here (`-` for stdout).
    #[arg(long)]
    json: Option<PathBuf>,
    /// Also check this many random spaces.
    #[arg(long)]
    sample: Option<usize>,
    #[arg(long, default_value_t = 6)]
    sample_points: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// `Ok(false)` when a verified claim failed.
fn execute(cli: Cli) -> anyhow::Result<bool> {
    let mut caps = Caps::from_env()?;
    if let Some(spec) = &cli.caps {
        caps = caps.with_overrides(spec)?;
    }
    match cli.command {
        Command::Ring(args) => ring_command(args, &caps)?,
        Command::Algebra(args) => algebra_command(args, &caps)?,
        Command::Topo(args) => {
            let space = read_space(&args.file)?;
            match args.view {
                TopoView::Components => components(&space, args.json),
                TopoView::Clopens => clopens(&space, args.json),
                TopoView::Reflect => reflect(space, args.json, args.dot),
                TopoView::Soberify => soberify_command(space, args.json, args.dot),
            }
        }
        Command::Reflect { space, json } => reflect(read_space(&space)?, json, false),
        Command::Soberify { space, dot, json } => soberify_command(read_space(&space)?, json, dot),
        Command::Verify(args) => return verify(args, caps),
    }
    Ok(true)
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_space(path: &Path) -> anyhow::Result<FiniteSpace> {
    io::parse_space(&read(path)?).with_context(|| format!("loading {}", path.display()))
}

fn print_json<T: serde::Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("serializable")
    );
}

fn print_space(space: &FiniteSpace) {
    println!("points: {}", space.labels().join(", "));
    let opens: Vec<String> = space.opens().iter().map(|&o| space.format(o)).collect();
    println!("opens: {}", opens.join(", "));
}

fn show_space(space: &FiniteSpace, name: &str, json: bool, dot: bool) {
    if json {
        print_json(&io::space_to_json(space));
    } else if dot {
        print!("{}", space.specialization_dot(name));
    } else {
        print_space(space);
    }
}

fn load_ring(args: &RingArgs, caps: &Caps) -> anyhow::Result<FiniteRing> {
    let ring = match (&args.zmod, &args.product, &args.file) {
        (Some(n), _, _) => zmod(*n, caps)?,
        (_, Some(factors), _) => {
            let (first, rest) = factors
                .split_first()
                .ok_or_else(|| anyhow!("--product needs a factor"))?;
            rest.iter().try_fold(zmod(*first, caps)?, |acc, &n| {
                product(&acc, &zmod(n, caps)?, caps)
            })?
        }
        (_, _, Some(path)) => {
            let name = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            io::parse_ring(&read(path)?, &name)?
        }
        _ => bail!("one of --zmod, --product or --file is required"),
    };
    let Some(generators) = &args.quotient else {
        return Ok(ring);
    };
    let mut mask = 0;
    for g in generators {
        let x = ring
            .index_of(g)
            .ok_or_else(|| anyhow!("unknown element {g:?} of {}", ring.name()))?;
        mask |= bits::singleton(x);
    }
    let ideal = ring.ideal_generated(mask);
    if !ring.is_regular_ideal(ideal) {
        bail!(
            "{} is not a regular ideal of {}",
            ring.describe_ideal(ideal),
            ring.name()
        );
    }
    Ok(ring.quotient(ideal)?)
}

fn ring_command(args: RingArgs, caps: &Caps) -> anyhow::Result<()> {
    let ring = load_ring(&args, caps)?;
    let describe = |ideals: &[spectra::ring::Ideal]| -> Vec<String> {
        ideals.iter().map(|&i| ring.describe_ideal(i)).collect()
    };
    match args.view {
        RingView::Primes => {
            let primes = describe(&ring.prime_ideals());
            if args.json {
                print_json(&primes);
            } else {
                primes.iter().for_each(|p| println!("{p}"));
            }
        }
        RingView::Idempotents => {
            let idempotents: Vec<&str> = ring
                .idempotents()
                .into_iter()
                .map(|e| ring.label(e))
                .collect();
            if args.json {
                print_json(&idempotents);
            } else {
                println!("{}", idempotents.join(", "));
            }
        }
        RingView::Mr => {
            let mr = ring.mr_space();
            if args.json || args.dot {
                show_space(
                    &mr.space,
                    &format!("mr({})", ring.name()),
                    args.json,
                    args.dot,
                );
            } else {
                describe(&mr.ideals).iter().for_each(|m| println!("{m}"));
            }
        }
        RingView::Components => {
            let spectrum = ring.zariski_spectrum();
            let rows: Vec<(String, String)> = components_via_max_regular(&ring)?
                .into_iter()
                .map(|(m, component)| (ring.describe_ideal(m), spectrum.space.format(component)))
                .collect();
            if args.json {
                let value: Vec<serde_json::Value> = rows
                    .iter()
                    .map(|(m, c)| serde_json::json!({ "max_regular": m, "component": c }))
                    .collect();
                print_json(&value);
            } else {
                rows.iter().for_each(|(m, c)| println!("V({m}) = {c}"));
            }
        }
        RingView::Spec => {
            let spectrum = ring.zariski_spectrum();
            show_space(
                &spectrum.space,
                &format!("Spec {}", ring.name()),
                args.json,
                args.dot,
            );
        }
    }
    Ok(())
}

fn algebra_command(args: AlgebraArgs, caps: &Caps) -> anyhow::Result<()> {
    let algebra: BooleanAlgebra = match (&args.powerset, &args.file) {
        (Some(k), _) => powerset_algebra(*k, caps)?,
        (_, Some(path)) => io::parse_algebra(&read(path)?)?,
        _ => bail!("one of --powerset or --file is required"),
    };
    match args.view {
        AlgebraView::Spec => show_space(&algebra.stone_spectrum(), "Spec B", args.json, args.dot),
        AlgebraView::Atoms => {
            let atoms: Vec<&str> = algebra
                .atoms()
                .into_iter()
                .map(|a| algebra.label(a))
                .collect();
            if args.json {
                print_json(&atoms);
            } else {
                println!("{}", atoms.join(", "));
            }
        }
        AlgebraView::Ultrafilters => {
            let ultra: Vec<String> = algebra
                .all_ultrafilters()
                .iter()
                .map(|u| u.describe())
                .collect();
            if args.json {
                print_json(&ultra);
            } else {
                ultra.iter().for_each(|u| println!("{u}"));
            }
        }
    }
    Ok(())
}

fn components(space: &FiniteSpace, json: bool) {
    let blocks: Vec<String> = space
        .connected_components()
        .blocks()
        .iter()
        .map(|&b| space.format(b))
        .collect();
    if json {
        print_json(&blocks);
    } else {
        blocks.iter().for_each(|b| println!("{b}"));
    }
}

fn clopens(space: &FiniteSpace, json: bool) {
    let sets: Vec<String> = space
        .clopens()
        .into_iter()
        .map(|c| space.format(c))
        .collect();
    if json {
        print_json(&sets);
    } else {
        sets.iter().for_each(|c| println!("{c}"));
    }
}

fn reflect(space: FiniteSpace, json: bool, dot: bool) {
    let fx = apply_f(&Arc::new(space));
    if json {
        #[derive(serde::Serialize)]
        struct Reflection {
            space: io::SpaceJson,
            unit: Vec<(String, String)>,
        }
        let unit = (0..fx.source.len())
            .map(|x| {
                (
                    fx.source.label(x).to_string(),
                    fx.image.label(fx.unit.apply(x)).to_string(),
                )
            })
            .collect();
        print_json(&Reflection {
            space: io::space_to_json(&fx.image),
            unit,
        });
    } else if dot {
        print!("{}", fx.image.specialization_dot("F(X)"));
    } else {
        print_space(&fx.image);
        for x in 0..fx.source.len() {
            println!(
                "{} -> {}",
                fx.source.label(x),
                fx.image.label(fx.unit.apply(x))
            );
        }
    }
}

fn soberify_command(space: FiniteSpace, json: bool, dot: bool) {
    let t = soberify(&Arc::new(space));
    if json {
        print_json(&io::space_to_json(&t.space));
    } else if dot {
        print!("{}", t.space.specialization_dot("t(X)"));
    } else {
        print_space(&t.space);
    }
}

fn verify(args: VerifyArgs, caps: Caps) -> anyhow::Result<bool> {
    let selector = SuiteSelector::parse(&args.suite)?;
    let options = RunOptions {
        config: CorpusConfig {
            max_points: args.max_points,
            max_ring: args.max_ring,
            max_product: args.max_product,
            max_quotient_source: args.max_quotient_source,
            max_atoms: args.max_atoms,
            max_target: args.max_target,
        },
        caps,
        seed: args.seed,
        sampling: args.sample.map(|count| Sampling {
            count,
            points: args.sample_points,
        }),
    };
    let report = run(&selector, &options)?;
    match &args.json {
        Some(path) if path.as_os_str() == "-" => print!("{}", report.to_json()),
        Some(path) => {
            fs::write(path, report.to_json())
                .with_context(|| format!("writing {}", path.display()))?;
        }
        None => {}
    }
    let to_stdout = matches!(&args.json, Some(p) if p.as_os_str() == "-");
    let mut log: Box<dyn std::io::Write> = if to_stdout {
        Box::new(std::io::stderr())
    } else {
        Box::new(std::io::stdout())
    };
    for failure in report.failures() {
        writeln!(
            log,
            "FAIL {} [{}]: {}",
            failure.claim,
            failure.subject,
            failure.witness.as_deref().unwrap_or("")
        )?;
    }
    writeln!(
        log,
        "suite {}: {} claims, {} passed, {} failed",
        report.suite, report.summary.total, report.summary.passed, report.summary.failed
    )?;
    Ok(report.all_pass())
}
