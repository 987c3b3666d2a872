use std::fmt::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use icdual_core::enumerate::enumerate_split_cycles;
use icdual_core::instance::parse_instance;
use icdual_core::lp::{fmt_rational, write_lp_format};
use icdual_core::pipeline::{build_schedule, cliques, cycles};
use icdual_core::programs;
use icdual_core::verify::{
    bounds_report, check_planar_optimality, check_small_uniprior, check_uniprior_codes_agree, is_planar, simulate,
};
use icdual_core::{Error, Instance, Limits, Mode, Strategy};
use serde::Serialize;

/// Bounds and codes for unicast index coding instances.
#[derive(Parser)]
#[command(name = "icdual", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Instance file (.icp)
    instance: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Cap on enumerated cycles
    #[arg(long, env = "ICDUAL_MAX_CYCLES", default_value_t = Limits::default().max_cycles)]
    max_cycles: usize,
    /// Largest partial clique size enumerated
    #[arg(long, env = "ICDUAL_MAX_K", default_value_t = Limits::default().max_k)]
    max_k: usize,
    /// Branch-and-bound node limit
    #[arg(long, env = "ICDUAL_NODE_LIMIT", default_value_t = Limits::default().node_limit)]
    node_limit: usize,
}

impl Common {
    fn limits(&self) -> Limits {
        Limits {
            max_cycles: self.max_cycles,
            max_k: self.max_k,
            node_limit: self.node_limit,
        }
    }
}

#[derive(Args)]
struct CodeArgs {
    #[arg(long, value_enum, default_value_t = StrategyArg::Cyclic)]
    strategy: StrategyArg,
    #[arg(long, value_enum, default_value_t = ModeArg::Scalar)]
    mode: ModeArg,
}

#[derive(Subcommand)]
enum Command {
    /// Lower bound, code values, gaps and planarity
    Bounds(Common),
    /// List the directed cycles
    Cycles(Common),
    /// List the partial cliques with their maximal degree
    Cliques(Common),
    /// Build a transmission schedule
    Code {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        code: CodeArgs,
    },
    /// Build a schedule and decode it at every user
    Simulate {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Planarity of the underlying undirected graph
    Planar(Common),
    /// Run every optimality check that applies; exit 1 if one fails
    Check(Common),
    /// Print one program in CPLEX LP format
    Lp {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        program: ProgramArg,
        /// Drop integrality
        #[arg(long)]
        relaxed: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Cyclic,
    PartialClique,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Scalar,
    Vector,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProgramArg {
    MaxAcyclic,
    CyclicCode,
    FeedbackVertexSet,
    CyclePacking,
    SplitFeedbackArcSet,
    SplitCyclePacking,
    CliqueCode,
    CliqueBound,
}

impl CodeArgs {
    fn resolve(&self) -> (Strategy, Mode) {
        let s = match self.strategy {
            StrategyArg::Cyclic => Strategy::Cyclic,
            StrategyArg::PartialClique => Strategy::PartialClique,
        };
        let m = match self.mode {
            ModeArg::Scalar => Mode::Scalar,
            ModeArg::Vector => Mode::Vector,
        };
        (s, m)
    }
}

fn load(common: &Common) -> Result<Instance, String> {
    let text = std::fs::read_to_string(&common.instance).map_err(|e| format!("{}: {e}", common.instance.display()))?;
    parse_instance(&text).map_err(|e| format!("{}: {e}", common.instance.display()))
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable output");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct CycleOut {
    packets: Vec<String>,
    users: Vec<String>,
}

#[derive(Serialize)]
struct CliqueOut {
    packets: Vec<String>,
    k: usize,
    d: usize,
}

#[derive(Serialize)]
struct CheckItem {
    applies: bool,
    passed: Option<bool>,
    detail: String,
}

#[derive(Serialize)]
struct CheckOut {
    planar_optimality: CheckItem,
    small_uniprior: CheckItem,
    uniprior_codes_agree: CheckItem,
    bound_chain: CheckItem,
    passed: bool,
}

fn precondition(r: Result<bool, Error>, detail: &str) -> Result<CheckItem, Error> {
    match r {
        Ok(ok) => Ok(CheckItem {
            applies: true,
            passed: Some(ok),
            detail: detail.into(),
        }),
        Err(Error::Precondition(why)) => Ok(CheckItem {
            applies: false,
            passed: None,
            detail: why,
        }),
        Err(e) => Err(e),
    }
}

fn run_check(inst: &Instance, limits: &Limits) -> Result<CheckOut, Error> {
    let planar = check_planar_optimality(inst, limits)?;
    let planar_item = CheckItem {
        applies: planar.planar,
        passed: planar.holds,
        detail: format!(
            "lower {} / relaxations {} {} / cyclic {}",
            fmt_rational(&planar.max_acyclic),
            fmt_rational(&planar.max_acyclic_lp),
            fmt_rational(&planar.cyclic_code_lp),
            fmt_rational(&planar.cyclic_code)
        ),
    };
    let small = precondition(
        check_small_uniprior(inst, limits),
        "scalar cyclic code equals the lower bound",
    )?;
    let codes = precondition(
        check_uniprior_codes_agree(inst, limits),
        "cyclic and clique codes cost the same",
    )?;
    let report = bounds_report(inst, limits)?;
    let chain = CheckItem {
        applies: true,
        passed: Some(report.chain.holds()),
        detail: "lower <= relaxation = cyclic relaxation <= cyclic; clique <= cyclic".into(),
    };
    let passed = [&planar_item, &small, &codes, &chain]
        .iter()
        .all(|c| c.passed != Some(false));
    Ok(CheckOut {
        planar_optimality: planar_item,
        small_uniprior: small,
        uniprior_codes_agree: codes,
        bound_chain: chain,
        passed,
    })
}

fn check_text(out: &CheckOut) -> String {
    let mut s = String::new();
    for (name, c) in [
        ("planar optimality", &out.planar_optimality),
        ("small uniprior", &out.small_uniprior),
        ("uniprior codes agree", &out.uniprior_codes_agree),
        ("bound chain", &out.bound_chain),
    ] {
        let tag = match c.passed {
            Some(true) => "PASS",
            Some(false) => "FAIL",
            None => "SKIP",
        };
        let _ = writeln!(s, "{tag}  {name}: {}", c.detail);
    }
    let _ = writeln!(
        s,
        "{}",
        if out.passed {
            "all checks passed"
        } else {
            "CHECK FAILED"
        }
    );
    s
}

fn run(cli: Cli) -> Result<(String, bool), String> {
    let e = |e: Error| e.to_string();
    Ok(match cli.command {
        Command::Bounds(c) => {
            let inst = load(&c)?;
            let r = bounds_report(&inst, &c.limits()).map_err(e)?;
            let out = if c.format == Format::Json {
                json(&r)
            } else {
                r.to_text()
            };
            (out, true)
        }
        Command::Cycles(c) => {
            let inst = load(&c)?;
            let list = cycles(&inst, &c.limits()).map_err(e)?;
            let out = if c.format == Format::Json {
                let items: Vec<CycleOut> = list
                    .iter()
                    .map(|cy| CycleOut {
                        packets: cy.packets().iter().map(|&m| inst.packet(m).id.clone()).collect(),
                        users: cy.users().iter().map(|&u| inst.users()[u].clone()).collect(),
                    })
                    .collect();
                json(&items)
            } else {
                let mut s = String::new();
                for (i, cy) in list.iter().enumerate() {
                    let _ = writeln!(s, "c{i}  {}", cy.describe(&inst));
                }
                let _ = writeln!(s, "{} cycles", list.len());
                s
            };
            (out, true)
        }
        Command::Cliques(c) => {
            let inst = load(&c)?;
            let list = cliques(&inst, &c.limits()).map_err(e)?;
            let items: Vec<CliqueOut> = list
                .iter()
                .map(|t| CliqueOut {
                    packets: t.packets().iter().map(|&m| inst.packet(m).id.clone()).collect(),
                    k: t.k(),
                    d: t.d(),
                })
                .collect();
            let out = if c.format == Format::Json {
                json(&items)
            } else {
                let mut s = String::new();
                for t in &items {
                    let _ = writeln!(s, "{{{}}}  k={} d={}", t.packets.join(","), t.k, t.d);
                }
                let _ = writeln!(s, "{} partial cliques", items.len());
                s
            };
            (out, true)
        }
        Command::Code { common, code } => {
            let inst = load(&common)?;
            let (strategy, mode) = code.resolve();
            let built = build_schedule(&inst, strategy, mode, &common.limits()).map_err(e)?;
            let out = if common.format == Format::Json {
                json(&built.schedule.dump(&inst))
            } else {
                built.schedule.to_text(&inst)
            };
            (out, true)
        }
        Command::Simulate { common, code, seed } => {
            let inst = load(&common)?;
            let (strategy, mode) = code.resolve();
            let built = build_schedule(&inst, strategy, mode, &common.limits()).map_err(e)?;
            let report = simulate(&inst, &built.schedule, seed).map_err(|err| err.to_string())?;
            let clearance = fmt_rational(&built.schedule.total_count());
            let out = if common.format == Format::Json {
                #[derive(Serialize)]
                struct SimOut<'a> {
                    success: bool,
                    clearance: String,
                    report: &'a icdual_core::DecodeReport,
                }
                json(&SimOut {
                    success: true,
                    clearance,
                    report: &report,
                })
            } else {
                let mut s = String::new();
                let _ = writeln!(
                    s,
                    "seed {}  theta {}  transmissions {}  clearance {}",
                    report.seed, report.theta, report.transmissions, clearance
                );
                for u in &report.users {
                    let _ = writeln!(s, "{}  decoded {}/{} units", u.user, u.decoded_units, u.demanded_units);
                }
                let _ = writeln!(s, "success: every user decoded its demands");
                s
            };
            (out, true)
        }
        Command::Planar(c) => {
            let inst = load(&c)?;
            let planar = is_planar(&inst);
            let out = if c.format == Format::Json {
                json(&serde_json::json!({ "planar": planar }))
            } else {
                format!("{}\n", if planar { "planar" } else { "non-planar" })
            };
            (out, true)
        }
        Command::Check(c) => {
            let inst = load(&c)?;
            let r = run_check(&inst, &c.limits()).map_err(e)?;
            let out = if c.format == Format::Json {
                json(&r)
            } else {
                check_text(&r)
            };
            (out, r.passed)
        }
        Command::Lp {
            common,
            program,
            relaxed,
        } => {
            let inst = load(&common)?;
            let limits = common.limits();
            let lp = match program {
                ProgramArg::SplitFeedbackArcSet | ProgramArg::SplitCyclePacking => {
                    let g = inst.build_split_digraph();
                    let sc = enumerate_split_cycles(&g, Some(limits.max_cycles)).map_err(|x| e(x.into()))?;
                    if matches!(program, ProgramArg::SplitFeedbackArcSet) {
                        programs::split_feedback_arc_set(&inst, &g, &sc, relaxed)
                    } else {
                        programs::split_cycle_packing(&inst, &g, &sc, relaxed)
                    }
                }
                ProgramArg::CliqueCode | ProgramArg::CliqueBound => {
                    let cl = cliques(&inst, &limits).map_err(e)?;
                    if matches!(program, ProgramArg::CliqueCode) {
                        programs::clique_code(&inst, &cl, relaxed)
                    } else {
                        programs::clique_bound(&inst, &cl, relaxed)
                    }
                }
                _ => {
                    let cy = cycles(&inst, &limits).map_err(e)?;
                    match program {
                        ProgramArg::MaxAcyclic => programs::max_acyclic(&inst, &cy, relaxed),
                        ProgramArg::CyclicCode => programs::cyclic_code(&inst, &cy, relaxed),
                        ProgramArg::FeedbackVertexSet => programs::feedback_vertex_set(&inst, &cy, relaxed),
                        _ => programs::cycle_packing(&inst, &cy, relaxed),
                    }
                }
            }
            .map_err(|x| e(x.into()))?;
            (write_lp_format(&lp), true)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, passed)) => {
            print!("{out}");
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}
