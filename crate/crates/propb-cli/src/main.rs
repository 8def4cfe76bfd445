//! Command-line front door: builds hypergraphs, verifies colorability and
//! construction guarantees, generates hitting sets, measures expanders, and
//! prints the bound-comparison tables.
//!
//! Exit codes: 0 = success / property confirmed, 1 = counterexample or
//! property failure, 2 = usage, parameter, or cap errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};

use propb::bounds;
use propb::construction::{
    build_gebauer, build_improved, verify_construction_guarantee, ConstructionReport,
    GebauerParams, ImprovedParams, VerifyMode,
};
use propb::expander::{measure_expansion, ExpanderGraph, ExpansionMode};
use propb::hypergraph::{Hypergraph, SolveConfig, SolveMode, SolveOutcome};
use propb::rectangle::{build_hitting_set, HitSetOverrides};
use propb::shift_matrix::{prop1_count, ColSet};
use propb::Caps;

#[derive(Parser)]
#[command(
    name = "propb",
    about = "Deterministic constructions of k-uniform hypergraphs with no proper two-coloring",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a hypergraph and write it with a side-car report.
    Construct {
        #[command(subcommand)]
        which: ConstructCmd,
    },
    /// Solve a hypergraph file or re-check a construction's guarantee.
    Verify {
        #[command(subcommand)]
        which: VerifyCmd,
    },
    /// Generate a hitting set for combinatorial rectangles.
    Hitset(HitsetArgs),
    /// Build the torus expander and measure its vertex expansion.
    Expander(ExpanderArgs),
    /// Print exponent comparisons for the edge-count bounds.
    Bounds(BoundsArgs),
    /// Exhaustively check the shift-overlap count lower bound.
    Prop1Oracle(Prop1Args),
}

#[derive(Subcommand)]
enum ConstructCmd {
    /// All shift sequences in [s]^t.
    Gebauer(GebauerArgs),
    /// Shift sequences from the tree-decomposition hitting set.
    Improved(ImprovedArgs),
}

#[derive(Args)]
struct GebauerArgs {
    #[arg(long)]
    k: u32,
    #[arg(long)]
    t: u32,
    /// Row length override (default (k/t) * 2^t).
    #[arg(long)]
    s: Option<u32>,
    /// Output hypergraph path (default <kind>_k<k>_t<t>.hyp).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Side-car report path (default <out>.report).
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct ImprovedArgs {
    #[arg(long)]
    k: u32,
    #[arg(long)]
    t: u32,
    /// Row length override (default ceil(e * (k/t) * 2^t)).
    #[arg(long)]
    s: Option<u32>,
    /// Goodness slack as p/q (default 1/t).
    #[arg(long, value_parser = parse_ratio)]
    eps: Option<Rational64>,
    /// Expansion override as p/q for the walk-length formula.
    #[arg(long, value_parser = parse_ratio)]
    alpha_override: Option<Rational64>,
    /// Walk-length override for the per-level hitting sets.
    #[arg(long)]
    r_override: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Decide two-colorability of a hypergraph file.
    Solve(SolveArgs),
    /// Rebuild a construction and verify its defining guarantee.
    Guarantee(GuaranteeArgs),
}

#[derive(Args)]
struct SolveArgs {
    /// Hypergraph file (format: `p hyp <n> <m> <k>` plus edge lines).
    file: PathBuf,
    #[arg(long, value_enum, default_value_t = SolveModeArg::Backtracking)]
    mode: SolveModeArg,
    /// Worker threads for the exhaustive scan; the outcome is independent
    /// of this value.
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Single-worker lexicographic-first search (canonical witness).
    #[arg(long)]
    canonical_witness: bool,
    /// Exit 1 if the instance turns out to be colorable.
    #[arg(long)]
    expect_uncolorable: bool,
    /// Sort edge lines instead of rejecting unsorted input.
    #[arg(long)]
    normalize: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum SolveModeArg {
    Exhaustive,
    Backtracking,
}

#[derive(Args)]
struct GuaranteeArgs {
    /// Which construction to rebuild.
    #[arg(value_enum)]
    kind: KindArg,
    #[arg(long)]
    k: u32,
    #[arg(long)]
    t: u32,
    #[arg(long)]
    s: Option<u32>,
    #[arg(long, value_parser = parse_ratio)]
    eps: Option<Rational64>,
    #[arg(long, value_parser = parse_ratio)]
    alpha_override: Option<Rational64>,
    #[arg(long)]
    r_override: Option<u64>,
    /// Coloring space to verify against.
    #[arg(long, value_enum, default_value_t = CheckArg::Dominated)]
    check: CheckArg,
    #[arg(long, default_value_t = 10_000)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Gebauer,
    Improved,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckArg {
    /// Every coloring of the ground matrix (exhaustive, capped).
    All,
    /// Every consistently Red-dominated coloring of every submatrix.
    Dominated,
    /// Random ground colorings (not exhaustive).
    Sampled,
}

#[derive(Args)]
struct HitsetArgs {
    #[arg(long)]
    m: u32,
    #[arg(long)]
    d: u32,
    /// Volume floor as p/q.
    #[arg(long, value_parser = parse_ratio)]
    vol: Rational64,
    #[arg(long, value_parser = parse_ratio)]
    alpha_override: Option<Rational64>,
    #[arg(long)]
    r_override: Option<u64>,
    /// Output path (default hitset_m<m>_d<d>.hs).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExpanderArgs {
    /// Torus side; the graph has n^2 vertices.
    #[arg(long)]
    n: u32,
    #[arg(long, value_enum, default_value_t = MeasureArg::Exhaustive)]
    measure: MeasureArg,
    #[arg(long, default_value_t = 1000)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the adjacency list to this path.
    #[arg(long)]
    dump: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum MeasureArg {
    Exhaustive,
    Sampled,
    None,
}

#[derive(Args)]
struct BoundsArgs {
    /// One or more k values, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    k: Vec<u64>,
    #[arg(long, value_enum, default_value_t = FormatArg::Tsv)]
    format: FormatArg,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Tsv,
    Kv,
}

#[derive(Args)]
struct Prop1Args {
    /// Alphabet size; all 2^s x 2^s set pairs are swept unless --a/--b given.
    #[arg(long)]
    s: u32,
    /// Epsilons to test, each p/q.
    #[arg(long, value_parser = parse_ratio, value_delimiter = ',',
          default_values = ["1/4", "1/3", "1/2", "2/3"])]
    eps: Vec<Rational64>,
    /// Explicit first set, comma-separated columns.
    #[arg(long, value_delimiter = ',')]
    a: Option<Vec<u32>>,
    /// Explicit second set, comma-separated columns.
    #[arg(long, value_delimiter = ',')]
    b: Option<Vec<u32>>,
}

fn parse_ratio(text: &str) -> Result<Rational64, String> {
    if text.contains('.') {
        return Err(format!(
            "{text:?}: decimals are rejected where exactness matters; write p/q"
        ));
    }
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (text, "1"),
    };
    let n: i64 = num.parse().map_err(|_| format!("bad numerator {num:?}"))?;
    let d: i64 = den.parse().map_err(|_| format!("bad denominator {den:?}"))?;
    if d == 0 {
        return Err("denominator must be nonzero".into());
    }
    Ok(Rational64::new(n, d))
}

fn big_ratio(r: Rational64) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let caps = Caps::from_env();
    match run(cli, &caps) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli, caps: &Caps) -> propb::Result<ExitCode> {
    match cli.command {
        Command::Construct { which } => match which {
            ConstructCmd::Gebauer(args) => {
                let params = GebauerParams::new(args.k, args.t, args.s)?;
                let report = build_gebauer(&params, caps)?;
                let cfg = format!(
                    "cfg: construct gebauer k={} t={} s={}",
                    args.k,
                    args.t,
                    report.s
                );
                write_construction(&report, cfg, args.out, args.report, "gebauer")?;
                Ok(ExitCode::SUCCESS)
            }
            ConstructCmd::Improved(args) => {
                let overrides = HitSetOverrides {
                    alpha_override: args.alpha_override,
                    r_override: args.r_override,
                };
                let params = ImprovedParams::new(args.k, args.t, args.eps, args.s, overrides)?;
                let report = build_improved(&params, caps)?;
                let eps = report.eps.expect("improved build records eps");
                let cfg = format!(
                    "cfg: construct improved k={} t={} s={} eps={}/{} r_override={:?} alpha_override={:?}",
                    args.k,
                    args.t,
                    report.s,
                    eps.numer(),
                    eps.denom(),
                    args.r_override,
                    args.alpha_override.map(|a| format!("{}/{}", a.numer(), a.denom())),
                );
                write_construction(&report, cfg, args.out, args.report, "improved")?;
                Ok(ExitCode::SUCCESS)
            }
        },
        Command::Verify { which } => match which {
            VerifyCmd::Solve(args) => {
                let text = std::fs::read_to_string(&args.file)?;
                let h = Hypergraph::parse(&text, args.normalize)?;
                let cfg = SolveConfig {
                    workers: args.workers,
                    canonical_witness: args.canonical_witness,
                    exhaustive_cap: caps.solve_exhaustive_vertices,
                };
                let mode = match args.mode {
                    SolveModeArg::Exhaustive => SolveMode::Exhaustive,
                    SolveModeArg::Backtracking => SolveMode::Backtracking,
                };
                let result = h.solve(mode, &cfg)?;
                match &result.outcome {
                    SolveOutcome::Colorable(witness) => {
                        println!("Colorable");
                        println!("witness {witness}");
                        println!(
                            "nodes {} wall_ms {}",
                            result.stats.nodes,
                            result.stats.wall.as_millis()
                        );
                        if args.expect_uncolorable {
                            return Ok(ExitCode::from(1));
                        }
                    }
                    SolveOutcome::NotColorable => {
                        println!("NotColorable");
                        println!(
                            "nodes {} wall_ms {}",
                            result.stats.nodes,
                            result.stats.wall.as_millis()
                        );
                    }
                }
                Ok(ExitCode::SUCCESS)
            }
            VerifyCmd::Guarantee(args) => {
                let report = match args.kind {
                    KindArg::Gebauer => {
                        let params = GebauerParams::new(args.k, args.t, args.s)?;
                        build_gebauer(&params, caps)?
                    }
                    KindArg::Improved => {
                        let overrides = HitSetOverrides {
                            alpha_override: args.alpha_override,
                            r_override: args.r_override,
                        };
                        let params =
                            ImprovedParams::new(args.k, args.t, args.eps, args.s, overrides)?;
                        build_improved(&params, caps)?
                    }
                };
                let mode = match args.check {
                    CheckArg::All => VerifyMode::AllColorings,
                    CheckArg::Dominated => VerifyMode::ConsistentlyDominatedOnly,
                    CheckArg::Sampled => VerifyMode::SampledColorings {
                        samples: args.samples,
                        seed: args.seed,
                    },
                };
                let g = verify_construction_guarantee(&report, mode, caps)?;
                print!("{}", g.to_text());
                if g.holds() {
                    println!("guarantee holds");
                    Ok(ExitCode::SUCCESS)
                } else {
                    println!("guarantee FAILS");
                    Ok(ExitCode::from(1))
                }
            }
        },
        Command::Hitset(args) => {
            let overrides = HitSetOverrides {
                alpha_override: args.alpha_override,
                r_override: args.r_override,
            };
            let vol = big_ratio(args.vol);
            let hs = build_hitting_set(args.m, args.d, &vol, &overrides, caps)?;
            let cfg = format!(
                "cfg: hitset m={} d={} vol={}/{} r_override={:?} alpha_override={:?}",
                args.m,
                args.d,
                args.vol.numer(),
                args.vol.denom(),
                args.r_override,
                args
                    .alpha_override
                    .map(|a| format!("{}/{}", a.numer(), a.denom())),
            );
            let out = args
                .out
                .unwrap_or_else(|| PathBuf::from(format!("hitset_m{}_d{}.hs", args.m, args.d)));
            std::fs::write(&out, hs.to_text_with_comments(&[cfg]))?;
            let params = hs.spec.as_ref().expect("generator records its parameters");
            println!(
                "wrote {} points to {} (m'={}, r={})",
                hs.size(),
                out.display(),
                params.m_padded,
                params.r
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Expander(args) => {
            let g = ExpanderGraph::build_margulis(args.n)?;
            println!("m {} delta {}", g.m(), g.delta());
            match args.measure {
                MeasureArg::None => {}
                MeasureArg::Exhaustive => {
                    let r = measure_expansion(&g, ExpansionMode::Exhaustive, caps.expansion_vertices)?;
                    println!(
                        "alpha_measured {}/{} (exhaustive)",
                        r.alpha_measured.numer(),
                        r.alpha_measured.denom()
                    );
                    let ws: Vec<String> =
                        r.witness_set.iter().map(|v| v.to_string()).collect();
                    println!("witness_set {}", ws.join(","));
                }
                MeasureArg::Sampled => {
                    let r = measure_expansion(
                        &g,
                        ExpansionMode::Sampled {
                            samples: args.samples,
                            seed: args.seed,
                        },
                        caps.expansion_vertices,
                    )?;
                    println!(
                        "alpha_measured {}/{} (sampled upper bound, samples={}, seed={})",
                        r.alpha_measured.numer(),
                        r.alpha_measured.denom(),
                        args.samples,
                        args.seed
                    );
                }
            }
            if let Some(path) = args.dump {
                let body = format!("c cfg: expander n={}\n{}", args.n, g.to_adjacency_text());
                std::fs::write(&path, body)?;
                println!("dumped adjacency to {}", path.display());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Bounds(args) => {
            let text = match args.format {
                FormatArg::Tsv => bounds::comparison_table(&args.k)?,
                FormatArg::Kv => {
                    let mut out = String::new();
                    for &k in &args.k {
                        out.push_str(&bounds::key_value_report(k)?);
                    }
                    if let Ok(threshold) = bounds::crossover_threshold(100, 10_000_000) {
                        out.push_str(&format!("improved_beats_gebauer_from_k = {threshold}\n"));
                    }
                    out
                }
            };
            match args.out {
                Some(path) => {
                    let ks: Vec<String> = args.k.iter().map(|k| k.to_string()).collect();
                    let body = format!("# cfg: bounds k={}\n{text}", ks.join(","));
                    std::fs::write(&path, body)?;
                    println!("wrote bounds table to {}", path.display());
                }
                None => print!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Prop1Oracle(args) => {
            let s = args.s;
            if s > 12 && args.a.is_none() {
                return Err(propb::Error::CapExceeded {
                    what: "shift-overlap sweep (4^s pairs)",
                    requested: 1u128 << (2 * s),
                    cap: 1 << 24,
                });
            }
            let mut worst_slack: Option<Rational64> = None;
            let mut violations = 0u64;
            let mut checked = 0u64;
            match (args.a, args.b) {
                (Some(a), Some(b)) => {
                    let a = ColSet::from_cols(a.into_iter(), s)?;
                    let b = ColSet::from_cols(b.into_iter(), s)?;
                    for &eps in &args.eps {
                        let r = prop1_count(a, b, s, eps)?;
                        checked += 1;
                        println!(
                            "eps {}/{}: count {} bound {}/{} holds {}",
                            eps.numer(),
                            eps.denom(),
                            r.count,
                            r.bound.numer(),
                            r.bound.denom(),
                            r.holds
                        );
                        if !r.holds {
                            violations += 1;
                        }
                    }
                }
                (None, None) => {
                    for amask in 0u64..1 << s {
                        for bmask in 0u64..1 << s {
                            let a = ColSet::from_cols(
                                (1..=s).filter(|&c| amask >> (c - 1) & 1 == 1),
                                s,
                            )?;
                            let b = ColSet::from_cols(
                                (1..=s).filter(|&c| bmask >> (c - 1) & 1 == 1),
                                s,
                            )?;
                            for &eps in &args.eps {
                                let r = prop1_count(a, b, s, eps)?;
                                checked += 1;
                                if !r.holds {
                                    violations += 1;
                                }
                                let slack = Rational64::from_integer(r.count as i64) - r.bound;
                                if worst_slack.map_or(true, |w| slack < w) {
                                    worst_slack = Some(slack);
                                }
                            }
                        }
                    }
                    if let Some(w) = worst_slack {
                        println!("worst slack (count - bound) {}/{}", w.numer(), w.denom());
                    }
                }
                _ => {
                    return Err(propb::Error::InvalidParameter(
                        "--a and --b must be given together".into(),
                    ))
                }
            }
            println!("checked {checked} violations {violations}");
            if violations == 0 {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
    }
}

fn write_construction(
    report: &ConstructionReport,
    cfg: String,
    out: Option<PathBuf>,
    report_path: Option<PathBuf>,
    kind: &str,
) -> propb::Result<()> {
    let out = out.unwrap_or_else(|| {
        PathBuf::from(format!("{kind}_k{}_t{}.hyp", report.k, report.t))
    });
    let report_path =
        report_path.unwrap_or_else(|| PathBuf::from(format!("{}.report", out.display())));
    std::fs::write(&out, report.hypergraph.to_text_with_comments(&[cfg.clone()]))?;
    let mut side = format!("c {cfg}\n");
    side.push_str(&report.to_text());
    std::fs::write(&report_path, side)?;
    println!(
        "wrote {} vertices, {} distinct edges (raw choices {}) to {}",
        report.n_vertices(),
        report.distinct_edges,
        report.raw_choice_count,
        out.display()
    );
    println!("report at {}", report_path.display());
    Ok(())
}
