//! `faid`: decode, simulate and analyse 7-level decoders on LDPC codes.
//!
//! Exit status: 0 on success, 1 when a verification or validation check
//! finds a failure, 2 on usage or configuration errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use faid_core::analysis::{critical_number, DEFAULT_CAP, DEFAULT_MAX_WEIGHT};
use faid_core::decimation::{closure_expand, parse_triples, AdfaidConfig, RuleSchedule};
use faid_core::faid::format_trace;
use faid_core::graph::search::{odd_checks, stopping_sets_up_to};
use faid_core::graph::{parse_node_sets, validate_code, CodeExpectation, NodeRole};
use faid_core::rule::parse_rule_file_unchecked;
use faid_core::sim::patterns::{to_bits, DEFAULT_CEILING};
use faid_core::sim::{
    bp_decode, fer_sweep, verify_guaranteed, DecoderKind, FrameDecoder, PatternMode, SimConfig,
};
use faid_core::{
    induced_subgraph, is_stopping_set, parse_alist, parse_schedule, presets, validate_rule,
    Adfaid, Faid, NodeSet, TannerGraph, VariableRule,
};

#[derive(Parser)]
#[command(name = "faid", version, about = "Finite alphabet iterative decoders with adaptive decimation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decode one error pattern and print the trace.
    Decode(DecodeArgs),
    /// Frame error rate sweep over crossover probabilities.
    Fer(FerArgs),
    /// Check that every error pattern of a given weight is corrected.
    Verify(VerifyArgs),
    /// Graph and subgraph analysis.
    #[command(subcommand)]
    Analyze(AnalyzeCommand),
    /// Rule and decimation-set utilities.
    #[command(subcommand)]
    Rules(RulesCommand),
}

#[derive(Args)]
struct DecoderArgs {
    /// Parity-check matrix in alist format.
    #[arg(long)]
    code: PathBuf,
    #[arg(long, default_value = "faid")]
    decoder: DecoderKind,
    /// Rule file; defaults to the built-in rules.
    #[arg(long)]
    rule: Option<PathBuf>,
    /// Decimation schedule file; defaults to the built-in Tanner schedule.
    #[arg(long)]
    schedule: Option<PathBuf>,
    /// Iteration limit for faid and bp, residual budget for adfaid.
    #[arg(long, default_value_t = 100)]
    max_iter: usize,
}

#[derive(Args)]
struct DecodeArgs {
    #[command(flatten)]
    decoder: DecoderArgs,
    /// Error positions, comma separated.
    #[arg(long, value_delimiter = ',', conflicts_with = "errors")]
    support: Vec<usize>,
    /// File holding the received word as 0/1 characters.
    #[arg(long)]
    errors: Option<PathBuf>,
    /// Crossover probability for the BP channel LLR.
    #[arg(long, default_value_t = 0.01)]
    alpha: f64,
}

#[derive(Args)]
struct FerArgs {
    #[command(flatten)]
    decoder: DecoderArgs,
    #[arg(long, value_delimiter = ',', required = true)]
    alpha: Vec<f64>,
    /// Frame budget per alpha.
    #[arg(long, default_value_t = 1_000_000)]
    frames: u64,
    #[arg(long, default_value_t = 100)]
    target_errors: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// CSV output; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Failure log output.
    #[arg(long)]
    failures: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    decoder: DecoderArgs,
    #[arg(long)]
    weight: usize,
    /// `exhaustive` or `sample:N`.
    #[arg(long, default_value = "exhaustive")]
    mode: PatternMode,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Crossover probability for the BP channel LLR.
    #[arg(long, default_value_t = 0.01)]
    alpha: f64,
    /// Largest exhaustive pattern count accepted.
    #[arg(long, default_value_t = DEFAULT_CEILING)]
    ceiling: u128,
    /// Write failing supports with their classification here.
    #[arg(long)]
    failures: Option<PathBuf>,
}

#[derive(Args)]
struct NodeArgs {
    #[arg(long)]
    code: PathBuf,
    /// Node indices, comma separated.
    #[arg(long, value_delimiter = ',', conflicts_with = "sets")]
    nodes: Vec<usize>,
    /// Node-set file, one set per line.
    #[arg(long)]
    sets: Option<PathBuf>,
}

#[derive(Subcommand)]
enum AnalyzeCommand {
    /// Stopping-set test for given sets, or a bounded search.
    StoppingSet {
        #[command(flatten)]
        nodes: NodeArgs,
        /// Search for stopping sets up to this size instead.
        #[arg(long)]
        search: Option<usize>,
        #[arg(long, default_value_t = 50_000_000)]
        budget: u64,
    },
    /// Critical number of subgraphs under the isolation assumption.
    CriticalNumber {
        #[command(flatten)]
        nodes: NodeArgs,
        #[arg(long)]
        rule: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_MAX_WEIGHT)]
        max_weight: usize,
        #[arg(long, default_value_t = 100)]
        max_iter: usize,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Structural report: size, rank, degrees and girth.
    Code {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        dv: Option<usize>,
        #[arg(long)]
        dc: Option<usize>,
    },
}

#[derive(Subcommand)]
enum RulesCommand {
    /// Check every rule in a rule file.
    Validate {
        #[arg(long)]
        rule: PathBuf,
    },
    /// Size of the upward closure of a generator list.
    Closure {
        #[arg(long)]
        generators: PathBuf,
        /// Also print the members.
        #[arg(long)]
        list: bool,
    },
}

/// A failed check, as opposed to an error.
struct CheckFailed;

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_code(path: &Path) -> Result<TannerGraph> {
    parse_alist(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn load_rules(path: &Option<PathBuf>) -> Result<Option<std::collections::BTreeMap<String, VariableRule>>> {
    let Some(p) = path else { return Ok(None) };
    let rules = faid_core::parse_rule_file(&read(p)?).with_context(|| format!("--rule {}", p.display()))?;
    Ok(Some(rules))
}

fn pick(rules: &std::collections::BTreeMap<String, VariableRule>, name: &str) -> Result<VariableRule> {
    if let Some(r) = rules.get(name) {
        return Ok(r.clone());
    }
    if rules.len() == 1 {
        return Ok(rules.values().next().unwrap().clone());
    }
    bail!("--rule: file has no `{name}` section")
}

fn load_schedule(path: &Option<PathBuf>) -> Result<RuleSchedule> {
    match path {
        Some(p) => parse_schedule(&read(p)?).with_context(|| format!("--schedule {}", p.display())),
        None => Ok(presets::tanner_schedule()),
    }
}

fn build_decoder(args: &DecoderArgs) -> Result<FrameDecoder> {
    let rules = load_rules(&args.rule)?;
    Ok(match args.decoder {
        DecoderKind::Faid => {
            let rule = match &rules {
                Some(r) => pick(r, "faid")?,
                None => presets::faid_rule(),
            };
            FrameDecoder::faid(rule, args.max_iter)?
        }
        DecoderKind::Adfaid => {
            let (d, r) = match &rules {
                Some(r) => (pick(r, "decimation")?, pick(r, "residual")?),
                None => (presets::decimation_rule(), presets::faid_rule()),
            };
            let mut cfg = AdfaidConfig::new(d, r, load_schedule(&args.schedule)?);
            cfg.iter_budget = args.max_iter;
            cfg.monitors = true;
            FrameDecoder::adfaid(cfg)?
        }
        DecoderKind::Bp => FrameDecoder::bp(args.max_iter)?,
    })
}

fn node_sets(args: &NodeArgs, g: &TannerGraph) -> Result<Vec<NodeSet>> {
    if let Some(p) = &args.sets {
        return parse_node_sets(&read(p)?, g.n()).with_context(|| format!("--sets {}", p.display()));
    }
    if args.nodes.is_empty() {
        bail!("give --nodes or --sets");
    }
    NodeSet::new(args.nodes.clone(), g.n(), NodeRole::Candidate)
        .map(|s| vec![s])
        .context("--nodes")
}

fn write_or_print(path: &Option<PathBuf>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn decode(args: DecodeArgs) -> Result<Result<(), CheckFailed>> {
    let g = load_code(&args.decoder.code)?;
    let received = match &args.errors {
        Some(p) => {
            let bits: Vec<u8> = read(p)?
                .chars()
                .filter(|c| !c.is_whitespace())
                .map(|c| match c {
                    '0' => Ok(0),
                    '1' => Ok(1),
                    _ => Err(anyhow!("--errors: unexpected character {c:?}")),
                })
                .collect::<Result<_>>()?;
            bits
        }
        None => {
            if let Some(&v) = args.support.iter().find(|&&v| v >= g.n()) {
                bail!("--support: index {v} out of range for n = {}", g.n());
            }
            to_bits(g.n(), &args.support)
        }
    };
    if received.len() != g.n() {
        bail!("--errors: {} bits for a code of length {}", received.len(), g.n());
    }
    let dec = build_decoder(&args.decoder)?;
    println!("# decoder: {dec}");
    let (converged, bits, iterations) = match &dec {
        FrameDecoder::Faid(f) => {
            let out = Faid::decode_traced(f, &g, &received)?;
            print!("{}", format_trace(&out.trace));
            (out.converged, out.bits, out.iterations)
        }
        FrameDecoder::Adfaid(a) => {
            let out = Adfaid::decode(a, &g, &received)?;
            for at in &out.trace.attempts {
                println!(
                    "# rule {}: first-round {} rounds {} decimated {} phase {:?} iterations {}",
                    at.rule_index,
                    at.first_round.len(),
                    at.rounds.len(),
                    at.state.decimated,
                    at.phase,
                    at.iterations
                );
            }
            let m = out.monitors;
            println!(
                "# monitors: safety {} fixpoint {}/{} strong-message {}/{} strong-input {}/{}",
                m.safety_violations,
                m.fixpoint_violations,
                m.fixpoint_checks,
                m.strong_message_violations,
                m.strong_message_checks,
                m.strong_input_violations,
                m.strong_input_checks
            );
            (out.outcome.converged, out.outcome.bits, out.outcome.iterations)
        }
        FrameDecoder::Bp(b) => {
            let out = bp_decode(&g, args.alpha, &received, b.max_iter)?;
            (out.converged, out.bits, out.iterations)
        }
    };
    let residual: Vec<String> = (0..g.n()).filter(|&v| bits[v] == 1).map(|v| v.to_string()).collect();
    println!("converged={converged} iterations={iterations} residual_errors={}", residual.len());
    println!("bits: {}", bits.iter().map(|b| b.to_string()).collect::<String>());
    Ok(if converged && residual.is_empty() { Ok(()) } else { Err(CheckFailed) })
}

fn fer(args: FerArgs) -> Result<Result<(), CheckFailed>> {
    let g = load_code(&args.decoder.code)?;
    let mut dec = build_decoder(&args.decoder)?;
    dec.set_monitors(false);
    let mut cfg = SimConfig::new(args.alpha, args.frames, args.seed);
    cfg.target_errors = args.target_errors;
    cfg.workers = args.workers;
    let report = fer_sweep(&g, &dec, &cfg)?;
    write_or_print(&args.out, &report.csv())?;
    if let Some(p) = &args.failures {
        fs::write(p, report.failure_log()).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(Ok(()))
}

fn verify(args: VerifyArgs) -> Result<Result<(), CheckFailed>> {
    let g = load_code(&args.decoder.code)?;
    let dec = build_decoder(&args.decoder)?;
    let rep = verify_guaranteed(
        &g,
        &dec,
        args.alpha,
        args.weight,
        args.mode,
        args.seed,
        args.ceiling,
        args.workers,
    )?;
    println!("# decoder: {dec}");
    println!(
        "weight={} mode={} decoded={} failures={}",
        rep.weight,
        rep.mode,
        rep.decoded,
        rep.failures.len()
    );
    if dec.kind() == DecoderKind::Adfaid {
        let m = rep.monitors;
        println!(
            "monitors: safety={} fixpoint={}/{}",
            m.safety_violations, m.fixpoint_violations, m.fixpoint_checks
        );
    }
    let log: String = rep.failures.iter().map(|f| format!("{f}\n")).collect();
    match &args.failures {
        Some(p) => fs::write(p, &log).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{log}"),
    }
    Ok(if rep.passed() { Ok(()) } else { Err(CheckFailed) })
}

fn analyze(cmd: AnalyzeCommand) -> Result<Result<(), CheckFailed>> {
    match cmd {
        AnalyzeCommand::StoppingSet { nodes, search, budget } => {
            let g = load_code(&nodes.code)?;
            if let Some(max) = search {
                let (sets, complete) = stopping_sets_up_to(&g, max, budget)?;
                for s in &sets {
                    println!("{s}");
                }
                println!("# {} stopping sets of size <= {max}, complete={complete}", sets.len());
                return Ok(Ok(()));
            }
            let mut all = true;
            for s in node_sets(&nodes, &g)? {
                let stop = is_stopping_set(&g, s.indices());
                all &= stop;
                println!(
                    "size={} stopping={} odd_checks={} nodes={s}",
                    s.len(),
                    stop,
                    odd_checks(&g, s.indices())
                );
            }
            Ok(if all { Ok(()) } else { Err(CheckFailed) })
        }
        AnalyzeCommand::CriticalNumber {
            nodes,
            rule,
            max_weight,
            max_iter,
            cap,
        } => {
            let g = load_code(&nodes.code)?;
            let rule = match load_rules(&rule)? {
                Some(r) => pick(&r, "faid")?,
                None => presets::faid_rule(),
            };
            for s in node_sets(&nodes, &g)? {
                let h = induced_subgraph(&g, s.indices())?;
                let cn = critical_number(&h, &rule, max_weight, max_iter, cap)?;
                let value = cn.map_or(format!(">{max_weight}"), |c| c.to_string());
                println!("critical_number={value} size={} nodes={s}", s.len());
            }
            Ok(Ok(()))
        }
        AnalyzeCommand::Code { code, n, k, dv, dc } => {
            let g = load_code(&code)?;
            let rep = validate_code(&g, &CodeExpectation { n, k, dv, dc });
            print!("{rep}");
            Ok(if rep.ok() { Ok(()) } else { Err(CheckFailed) })
        }
    }
}

fn rules(cmd: RulesCommand) -> Result<Result<(), CheckFailed>> {
    match cmd {
        RulesCommand::Validate { rule } => {
            let rules = parse_rule_file_unchecked(&read(&rule)?)
                .with_context(|| format!("--rule {}", rule.display()))?;
            let mut ok = true;
            for (name, r) in &rules {
                let v = validate_rule(r);
                if v.is_empty() {
                    println!("{name}: ok");
                } else {
                    ok = false;
                    for x in v {
                        println!("{name}: {x}");
                    }
                }
            }
            Ok(if ok { Ok(()) } else { Err(CheckFailed) })
        }
        RulesCommand::Closure { generators, list } => {
            let gens = parse_triples(&read(&generators)?)
                .with_context(|| format!("--generators {}", generators.display()))?;
            let set = closure_expand(&gens);
            println!("{}", set.len());
            if list {
                for t in set.iter() {
                    println!("{t}");
                }
            }
            Ok(Ok(()))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.command {
        Command::Decode(a) => decode(a),
        Command::Fer(a) => fer(a),
        Command::Verify(a) => verify(a),
        Command::Analyze(c) => analyze(c),
        Command::Rules(c) => rules(c),
    };
    match res {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(CheckFailed)) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
