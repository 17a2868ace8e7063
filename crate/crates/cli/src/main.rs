//! `qdom`: checks and computations on finite posets, the Smyth powerdomain,
//! quasi-deflations and probability valuations.
//!
//! Exit status: 0 when the result is true or the computation succeeded,
//! 1 when a checked property is false or a demo found its counterexample,
//! 2 on usage or input errors.

mod input;
mod lazy;
mod order;
mod report;
mod val;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Parser, Subcommand, ValueEnum};
use qdom_core::lazy::LazyKind;
use qdom_core::valuation::GRID_CAP;
use qdom_core::Mesh;

use crate::report::Report;

#[derive(Parser)]
#[command(name = "qdom", version, about = "Finite domain theory workbench")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Grid denominator N for valuation commands.
    #[arg(long, global = true, default_value_t = 2)]
    grid: u32,
    /// Upper limit on enumerated items (grid points, map pairs, upper sets).
    #[arg(long, global = true)]
    cap: Option<u64>,
    /// Reject input posets with more elements than this.
    #[arg(long, global = true, default_value_t = 32)]
    max_elements: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a poset and report its shape.
    CheckPoset {
        poset: PathBuf,
        /// Exit 1 unless there is a least element.
        #[arg(long)]
        pointed: bool,
        /// Exit 1 unless the poset is a rooted tree.
        #[arg(long)]
        tree: bool,
    },
    /// Cover relation of a poset.
    Hasse {
        poset: PathBuf,
        #[arg(long)]
        dot: bool,
    },
    UpperSets {
        poset: PathBuf,
    },
    /// The tree of maximal chains from the bottom, with its last-element map.
    Pathspace {
        poset: PathBuf,
        #[arg(long)]
        dot: bool,
    },
    /// Fin(P) under the Smyth order, or h†(Q) with --table and --apply.
    Fin {
        poset: PathBuf,
        #[arg(long)]
        dot: bool,
        /// Set-valued table `x -> {..}` from the poset to --target.
        #[arg(long, requires = "apply")]
        table: Option<PathBuf>,
        #[arg(long)]
        target: Option<PathBuf>,
        /// Compact `{a, b}` to extend the table over.
        #[arg(long, requires = "table")]
        apply: Option<String>,
    },
    /// Monad laws for h: X -> Fin(Y), g: Y -> Fin(Z); exhaustive without tables.
    MonadLaws {
        x: PathBuf,
        #[arg(long)]
        y: Option<PathBuf>,
        #[arg(long)]
        z: Option<PathBuf>,
        #[arg(long, requires = "g")]
        h: Option<PathBuf>,
        #[arg(long, requires = "h")]
        g: Option<PathBuf>,
    },
    /// Quasi-retraction laws for r: X -> Y and a quasi-section (canonical by default).
    QuasiRetraction {
        x: PathBuf,
        y: PathBuf,
        map: PathBuf,
        #[arg(long)]
        qs: Option<PathBuf>,
    },
    /// A chain through nested stages E_0, E_1, ... below a point.
    Koenig {
        poset: PathBuf,
        point: String,
        #[arg(required = true)]
        stages: Vec<String>,
    },
    /// Stochastic order with a transport plan or a violating upper set.
    ValOrder {
        poset: PathBuf,
        nu: String,
        mu: String,
    },
    ValWaybelow {
        poset: PathBuf,
        nu: String,
        mu: String,
    },
    /// Minimal grid upper bounds of two valuations.
    ValMub {
        poset: PathBuf,
        nu1: String,
        nu2: String,
    },
    /// Maximal grid valuations below (and way-below) a valuation.
    ValMaxbelow {
        poset: PathBuf,
        nu: String,
    },
    ValGrid {
        poset: PathBuf,
        #[arg(long)]
        dot: bool,
    },
    /// Pushforward along r: X -> Y, or with --preimage a lift of a valuation on Y.
    ValPush {
        x: PathBuf,
        y: PathBuf,
        map: PathBuf,
        nu: String,
        #[arg(long)]
        preimage: bool,
    },
    /// Counterexamples to the three grid-rounding attempts.
    DemoFailedDeflations {
        poset: PathBuf,
        /// Also report the third attempt at this valuation.
        #[arg(long)]
        nu: Option<String>,
    },
    Lazy {
        #[command(subcommand)]
        action: LazyAction,
    },
    EnumeratePosets {
        n: usize,
        /// One representative per isomorphism class.
        #[arg(long)]
        unlabeled: bool,
        /// Print every poset, not just the count.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Subcommand)]
enum LazyAction {
    /// Describe one of the kinds n2, t, nomega.
    Kind { kind: String },
    Leq { kind: String, x: String, y: String },
    /// φ(x) for a family index `i,j` (n2) or `i` (t).
    Family { kind: String, index: String, x: String },
    /// An index separating x from y when x is not below y.
    Witness { kind: String, x: String, y: String },
    Truncate {
        kind: String,
        k: u64,
        #[arg(long)]
        dot: bool,
    },
    /// Rigidity of f̂ over all monotone self-maps of T_k.
    Rigidity { k: u64, bits: Option<String> },
}

fn kind(s: &str) -> Result<LazyKind> {
    Ok(s.parse()?)
}

fn run(cli: &Cli) -> Result<Report> {
    let max = cli.max_elements;
    let mesh = || -> Result<Mesh> { Ok(Mesh::new(cli.grid)?) };
    let load = |p: &PathBuf| input::poset(p, max);
    match &cli.command {
        Command::CheckPoset { poset, pointed, tree } => Ok(order::check_poset(&*load(poset)?, *pointed, *tree)),
        Command::Hasse { poset, dot } => Ok(order::hasse(&*load(poset)?, *dot)),
        Command::UpperSets { poset } => {
            let cap = cli.cap.map_or(usize::MAX, |c| c as usize);
            order::upper_sets(&*load(poset)?, cap)
        }
        Command::Pathspace { poset, dot } => order::pathspace(&*load(poset)?, *dot),
        Command::Fin { poset, dot, table, target, apply } => {
            let p = load(poset)?;
            let dagger = match (table, apply) {
                (Some(t), Some(q)) => {
                    let target = match target {
                        Some(path) => load(path)?,
                        None => p.clone(),
                    };
                    let h = input::fin_map(&p, &target, t)?;
                    Some((h, input::compact(&p, q)?))
                }
                _ => None,
            };
            order::fin(&p, *dot, dagger)
        }
        Command::MonadLaws { x, y, z, h, g } => {
            let x = load(x)?;
            let y = match y {
                Some(path) => load(path)?,
                None => x.clone(),
            };
            let z = match z {
                Some(path) => load(path)?,
                None => y.clone(),
            };
            let given = match (h, g) {
                (Some(h), Some(g)) => Some((input::fin_map(&x, &y, h)?, input::fin_map(&y, &z, g)?)),
                _ => None,
            };
            order::monad_laws(&x, &y, &z, given, cli.cap.unwrap_or(1_000_000))
        }
        Command::QuasiRetraction { x, y, map, qs } => {
            let (x, y) = (load(x)?, load(y)?);
            let r = input::map(&x, &y, map)?;
            let qs = qs.as_ref().map(|q| input::fin_map(&y, &x, q)).transpose()?;
            order::quasi_retraction(&r, qs)
        }
        Command::Koenig { poset, point, stages } => {
            let p = load(poset)?;
            let y = input::element(&p, point)?;
            let stages = stages.iter().map(|s| input::compact(&p, s)).collect::<Result<Vec<_>>>()?;
            order::koenig(&p, &stages, y)
        }
        Command::ValOrder { poset, nu, mu } => {
            let p = load(poset)?;
            val::order(&p, &input::valuation(&p, nu)?, &input::valuation(&p, mu)?)
        }
        Command::ValWaybelow { poset, nu, mu } => {
            let p = load(poset)?;
            val::way_below(&p, &input::valuation(&p, nu)?, &input::valuation(&p, mu)?)
        }
        Command::ValMub { poset, nu1, nu2 } => {
            let p = load(poset)?;
            val::mub(&p, &input::valuation(&p, nu1)?, &input::valuation(&p, nu2)?, mesh()?)
        }
        Command::ValMaxbelow { poset, nu } => {
            let p = load(poset)?;
            val::max_below(&p, &input::valuation(&p, nu)?, mesh()?)
        }
        Command::ValGrid { poset, dot } => {
            let cap = cli.cap.map_or(GRID_CAP, u128::from);
            val::grid(&*load(poset)?, mesh()?, cap, *dot)
        }
        Command::ValPush { x, y, map, nu, preimage } => {
            let (x, y) = (load(x)?, load(y)?);
            let r = input::map(&x, &y, map)?;
            let on = if *preimage { &y } else { &x };
            val::push(&r, &input::valuation(on, nu)?, *preimage)
        }
        Command::DemoFailedDeflations { poset, nu } => {
            let p = load(poset)?;
            let at = nu.as_ref().map(|v| input::valuation(&p, v)).transpose()?;
            val::demo(&p, mesh()?, at.as_ref())
        }
        Command::Lazy { action } => match action {
            LazyAction::Kind { kind: k } => lazy::describe(kind(k)?),
            LazyAction::Leq { kind: k, x, y } => {
                let k = kind(k)?;
                lazy::leq(k, lazy::code(k, x)?, lazy::code(k, y)?)
            }
            LazyAction::Family { kind: k, index, x } => {
                let k = kind(k)?;
                lazy::family(k, lazy::member(k, index)?, lazy::code(k, x)?)
            }
            LazyAction::Witness { kind: k, x, y } => {
                let k = kind(k)?;
                lazy::witness(k, lazy::code(k, x)?, lazy::code(k, y)?)
            }
            LazyAction::Truncate { kind: k, k: level, dot } => lazy::truncation(kind(k)?, *level, *dot),
            LazyAction::Rigidity { k, bits } => lazy::rigidity(*k, bits.as_deref(), cli.cap.unwrap_or(10_000_000)),
        },
        Command::EnumeratePosets { n, unlabeled, list } => {
            if *n > max {
                bail!("{n} exceeds --max-elements {max}");
            }
            order::enumerate(*n, *unlabeled, *list)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            match cli.format {
                Format::Text => print!("{}", report.text),
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&report.json).expect("reports serialize")
                ),
            }
            ExitCode::from(if report.holds { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
