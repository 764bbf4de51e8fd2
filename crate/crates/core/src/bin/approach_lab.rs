//! Command-line front end: metric checks, distance queries, topology
//! dumps, weight classification, the theorem battery, the unit-interval
//! case study and counterexample search.
//!
//! Exit codes: 0 when everything passes, 1 on any failure or witness,
//! 2 on usage or input errors.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};

use approach_lab::algebraic::{
    gn, scott_distance_algebraic, AlgCarrier, AlgPoint, AlgebraicSpec, BasisSchedule,
};
use approach_lab::approach::{alexandroff, scott_distance_finite, Subset};
use approach_lab::balls::topologies;
use approach_lab::costs::ExtValue;
use approach_lab::harness::{
    replay, run_battery, search_counterexample, CheckId, SearchTarget, TrialConfig,
};
use approach_lab::io::{self, WeightDoc};
use approach_lab::mutation::Mutation;
use approach_lab::spaces::FiniteSpace;
use approach_lab::weights::{
    colimits, is_cauchy, is_coweight, is_flat, is_scott_weight, is_weight, WeightFn,
};

#[derive(Parser)]
#[command(name = "approach-lab", version, about = "Exact distance computations on finite generalized metric spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the metric axioms of a space file.
    Check { space: PathBuf },
    /// Evaluate an approach distance δ(x, A).
    Dist {
        /// Which distance to evaluate.
        #[arg(value_parser = ["alexandroff", "scott"])]
        kind: String,
        space: PathBuf,
        /// Point label.
        #[arg(long)]
        x: String,
        /// Comma-separated point labels; empty for the empty set.
        #[arg(long = "A", default_value = "")]
        a: String,
    },
    /// Evaluate the compact-basis Scott distance on DR, DL or a space file.
    Sigma(SigmaArgs),
    /// Print the four topologies of a space.
    Topology { space: PathBuf },
    /// Weight utilities.
    #[command(subcommand)]
    Weights(WeightsCmd),
    /// Run the theorem battery.
    Suite(SuiteArgs),
    /// Built-in case studies.
    #[command(subcommand)]
    CaseStudy(CaseStudyCmd),
    /// Search for a counterexample to a battery check or to
    /// c-Scott = generalized Scott.
    Search(SearchArgs),
}

#[derive(Args)]
struct SigmaArgs {
    /// `DR`, `DL`, or a path to a space file.
    #[arg(long)]
    space: String,
    /// The point x: a value for canonical carriers, a label for files.
    #[arg(long)]
    x: String,
    /// Comma-separated values or labels; empty for the empty set.
    #[arg(long = "A", default_value = "")]
    a: String,
    /// Interval width bound for the grid schedule.
    #[arg(long, default_value = "1/1024")]
    eps: String,
    /// Disable the exact breakpoint evaluation and use the grid
    /// schedule with a certified enclosure.
    #[arg(long)]
    no_breakpoints: bool,
}

#[derive(Subcommand)]
enum WeightsCmd {
    /// Classify a weight: weight/coweight, flat, Cauchy, Scott, colimits.
    Classify { space: PathBuf, weight: PathBuf },
}

#[derive(Args)]
struct SuiteArgs {
    /// Defaults to $APPROACH_LAB_SEED, then 0.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 500)]
    trials: u32,
    #[arg(long, default_value_t = 6)]
    max_points: usize,
    /// Comma-separated subset of B1..B12.
    #[arg(long)]
    checks: Option<String>,
    /// Fault injection for mutation-sensitivity runs (debug only).
    #[arg(long, hide = true)]
    mutate: Option<String>,
    /// Re-run each witness standalone and report whether it reproduces.
    #[arg(long)]
    replay_witnesses: bool,
}

#[derive(Subcommand)]
enum CaseStudyCmd {
    /// The interval space where the c-Scott and d-Scott topologies
    /// differ; verified on the dyadic grid.
    Gn {
        #[arg(long, default_value_t = 12)]
        depth: u32,
        #[arg(long, default_value_t = 4000)]
        samples: usize,
    },
}

#[derive(Args)]
struct SearchArgs {
    /// B1..B12 or `cScott!=genScott`.
    target: String,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 200)]
    trials: u32,
    #[arg(long, default_value_t = 6)]
    max_points: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(all_passed) => {
            if all_passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn read_space(path: &PathBuf) -> Result<Arc<FiniteSpace>, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("{}: {e}", path.display()))?;
    io::parse_space(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn resolve_points(space: &FiniteSpace, csv: &str) -> Result<Vec<usize>, String> {
    if csv.is_empty() {
        return Ok(Vec::new());
    }
    csv.split(',')
        .map(|label| {
            space
                .index_of(label)
                .ok_or_else(|| format!("unknown point {label:?}"))
        })
        .collect()
}

fn env_seed() -> u64 {
    std::env::var("APPROACH_LAB_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0)
}

fn run(cli: Cli) -> Result<bool, String> {
    match cli.command {
        Command::Check { space } => {
            let space = read_space(&space)?;
            let report = space.check_metric_axioms();
            if report.ok() {
                println!("ok");
                Ok(true)
            } else {
                for x in &report.nonzero_diagonal {
                    println!("d({x},{x}) != 0", x = space.label(*x));
                }
                for (x, y, z) in &report.triangle_violations {
                    println!(
                        "triangle fails at ({}, {}, {})",
                        space.label(*x),
                        space.label(*y),
                        space.label(*z)
                    );
                }
                Ok(false)
            }
        }
        Command::Dist { kind, space, x, a } => {
            let space = read_space(&space)?;
            let xi = space
                .index_of(&x)
                .ok_or_else(|| format!("unknown point {x:?}"))?;
            let members = resolve_points(&space, &a)?;
            let mut mask: Subset = 0;
            for m in &members {
                mask |= 1 << m;
            }
            let table = match kind.as_str() {
                "alexandroff" => alexandroff(&space).map_err(|e| e.to_string())?,
                "scott" => scott_distance_finite(&space).map_err(|e| e.to_string())?,
                _ => unreachable!("clap validates"),
            };
            println!("{}", table.delta(xi, mask));
            Ok(true)
        }
        Command::Sigma(args) => run_sigma(args),
        Command::Topology { space } => {
            let space = read_space(&space)?;
            let four = topologies(&space).map_err(|e| e.to_string())?;
            let out = serde_json::json!({
                "openBall": io::topology_json(&four.open_ball),
                "cScott": io::topology_json(&four.c_scott),
                "dScott": io::topology_json(&four.d_scott),
                "genScott": io::topology_json(&four.gen_scott),
            });
            println!("{}", serde_json::to_string_pretty(&out).expect("plain data"));
            Ok(true)
        }
        Command::Weights(WeightsCmd::Classify { space, weight }) => {
            let space = read_space(&space)?;
            let text = std::fs::read_to_string(&weight)
                .map_err(|e| format!("{}: {e}", weight.display()))?;
            let doc: WeightDoc =
                serde_json::from_str(&text).map_err(|e| format!("{}: {e}", weight.display()))?;
            let values = doc
                .values_on(&space)
                .map_err(|e| format!("{}: {e}", weight.display()))?;
            let weight_ok = is_weight(&space, &values).map_err(|e| e.to_string())?;
            let coweight_ok = is_coweight(&space, &values).map_err(|e| e.to_string())?;
            let mut out = serde_json::json!({
                "weight": weight_ok,
                "coweight": coweight_ok,
            });
            if weight_ok {
                let phi = WeightFn::new(space.clone(), values).expect("checked");
                let cs: Vec<String> = colimits(&phi)
                    .into_iter()
                    .map(|i| space.label(i).to_string())
                    .collect();
                out["flat"] = serde_json::json!(is_flat(&phi));
                out["cauchy"] = serde_json::json!(is_cauchy(&phi));
                out["scott"] = serde_json::json!(is_scott_weight(&phi));
                out["colimits"] = serde_json::json!(cs);
            }
            println!("{}", serde_json::to_string_pretty(&out).expect("plain data"));
            Ok(true)
        }
        Command::Suite(args) => run_suite(args),
        Command::CaseStudy(CaseStudyCmd::Gn { depth, samples }) => {
            let report = gn::case_study(depth, samples);
            let out = serde_json::json!({
                "metric": report.metric_ok,
                "chainJoin": report.chain_ok,
                "weight": report.weight_ok,
                "scottWeight": report.scott_weight_ok,
                "separation": report.separation_ok,
                "detail": report.detail,
            });
            println!("{}", serde_json::to_string_pretty(&out).expect("plain data"));
            Ok(report.ok())
        }
        Command::Search(args) => {
            let target = SearchTarget::parse(&args.target).map_err(|e| e.to_string())?;
            let mut config = TrialConfig::new(args.seed.unwrap_or_else(env_seed), args.trials);
            config.max_points = args.max_points;
            let report = search_counterexample(target, &config).map_err(|e| e.to_string())?;
            println!(
                "{}",
                serde_json::to_string_pretty(&report).expect("plain data")
            );
            Ok(report.witness.is_none())
        }
    }
}

fn run_sigma(args: SigmaArgs) -> Result<bool, String> {
    let eps: ExtValue = args.eps.parse().map_err(|e| format!("--eps: {e}"))?;
    let (spec, x, a) = if let Some(canonical) = io::canonical_by_name(&args.space) {
        let spec = match canonical {
            approach_lab::spaces::CanonicalSpace::DR => AlgebraicSpec::dr(),
            approach_lab::spaces::CanonicalSpace::DL => AlgebraicSpec::dl(),
            other => {
                return Err(format!(
                    "sigma supports DR, DL and space files, not {}",
                    other.name()
                ))
            }
        };
        let x: ExtValue = args.x.parse().map_err(|e| format!("--x: {e}"))?;
        let a: Vec<AlgPoint> = if args.a.is_empty() {
            Vec::new()
        } else {
            args.a
                .split(',')
                .map(|s| {
                    s.parse::<ExtValue>()
                        .map(AlgPoint::Value)
                        .map_err(|e| format!("--a: {e}"))
                })
                .collect::<Result<_, _>>()?
        };
        (spec, AlgPoint::Value(x), a)
    } else {
        let path = PathBuf::from(&args.space);
        let text = std::fs::read_to_string(&path)
            .map_err(|e| format!("{}: {e}", path.display()))?;
        // Either a bare space file or a full algebraic-space document.
        let spec = if text.contains("\"carrier\"") {
            let doc: approach_lab::io::AlgebraicSpecDoc =
                serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
            doc.to_spec().map_err(|e| format!("{}: {e}", path.display()))?
        } else {
            let space =
                approach_lab::io::parse_space(&text).map_err(|e| format!("{}: {e}", path.display()))?;
            AlgebraicSpec {
                carrier: AlgCarrier::Finite(space),
                basis: BasisSchedule::AllPoints,
                bottom: None,
            }
        };
        match &spec.carrier {
            AlgCarrier::Finite(space) => {
                let xi = space
                    .index_of(&args.x)
                    .ok_or_else(|| format!("unknown point {:?}", args.x))?;
                let members = resolve_points(space, &args.a)?;
                let points = members.into_iter().map(AlgPoint::Point).collect();
                (spec, AlgPoint::Point(xi), points)
            }
            _ => {
                let x: ExtValue = args.x.parse().map_err(|e| format!("--x: {e}"))?;
                let points = if args.a.is_empty() {
                    Vec::new()
                } else {
                    args.a
                        .split(',')
                        .map(|s| {
                            s.parse::<ExtValue>()
                                .map(AlgPoint::Value)
                                .map_err(|e| format!("--A: {e}"))
                        })
                        .collect::<Result<_, _>>()?
                };
                (spec, AlgPoint::Value(x), points)
            }
        }
    };
    let interval = scott_distance_algebraic(&spec, &x, &a, &eps, !args.no_breakpoints)
        .map_err(|e| e.to_string())?;
    if interval.is_exact() {
        println!("{}", interval.lo);
    } else {
        println!("[{}, {}]", interval.lo, interval.hi);
    }
    Ok(true)
}

fn run_suite(args: SuiteArgs) -> Result<bool, String> {
    let mut config = TrialConfig::new(args.seed.unwrap_or_else(env_seed), args.trials);
    config.max_points = args.max_points;
    if let Some(checks) = &args.checks {
        let mut selected = BTreeSet::new();
        for part in checks.split(',') {
            let check = CheckId::parse(part.trim())
                .ok_or_else(|| format!("unknown check {part:?}"))?;
            selected.insert(check);
        }
        config.checks = selected;
    }
    let _guards: Vec<_> = match &args.mutate {
        None => Vec::new(),
        Some(names) => names
            .split(',')
            .map(|name| {
                Mutation::parse(name.trim())
                    .map(|m| m.enable())
                    .ok_or_else(|| format!("unknown mutation {name:?}"))
            })
            .collect::<Result<_, _>>()?,
    };
    let report = run_battery(&config).map_err(|e| e.to_string())?;
    if args.replay_witnesses {
        for witness in report.witnesses() {
            let reproduced = replay(&config, witness);
            eprintln!(
                "replay {} trial {}: {}",
                witness.check,
                witness.trial,
                if reproduced { "reproduced" } else { "NOT reproduced" }
            );
        }
    }
    println!(
        "{}",
        serde_json::to_string_pretty(&report).expect("plain data")
    );
    Ok(report.ok())
}
