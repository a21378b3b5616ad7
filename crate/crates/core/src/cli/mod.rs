//! Command-line front end. Every command produces a [`CommandReport`] that is
//! printed as JSON; the process exit code follows [`ExitStatus`].

use crate::grammar::{parse_grammar, GrammarError, SentencePair};
use crate::multigraph::{
    cutwidth_exact_with_limit, CutwidthVariant, GraphError, Multigraph, PermutationMultigraph,
    DEFAULT_DP_LIMIT,
};
use crate::parser::{compile_strategies_with, parse, ParseError, ParseOptions};
use crate::reduction::{
    build_gadget, canonical_arrangement, gadget_multigraph, min_bisection_brute, sweep_max_width,
    verify_gadget, Bisection, CubicGraph, ReductionError, EXPLICIT_SCALE_LIMIT,
};
use crate::strategy::{
    brute_force_optimize, decoding_exponents, evaluate, optimize, LinearStrategy, Objective,
    Permutation, StrategyError, BRUTE_FORCE_LIMIT, DEFAULT_SIZE_LIMIT,
};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::time::Instant;
use thiserror::Error;

#[derive(Debug, Parser)]
#[command(
    name = "scfg-linear",
    version,
    about = "Linear parsing strategies, cutwidth and the hardness gadget"
)]
pub struct Cli {
    /// Worker threads for parallel solvers (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Pretty-print the JSON report.
    #[arg(long, global = true)]
    pub pretty: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fan-out and time exponents of a strategy.
    Analyze(AnalyzeArgs),
    /// Optimal strategy under a space or time objective.
    Optimize(OptimizeArgs),
    /// Exact cutwidth of a multigraph or permutation multigraph.
    Cutwidth(CutwidthArgs),
    /// Build, verify and sweep the gadget of a cubic graph.
    Reduce(ReduceArgs),
    /// Recognize a sentence pair.
    Parse(ParseArgs),
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// One-line permutation, e.g. "6 1 4 2 5 3".
    pub permutation: String,
    /// Strategy as left positions in collection order (default: identity).
    #[arg(long)]
    pub strategy: Option<String>,
    /// Also report decoding exponents for this language-model order.
    #[arg(long)]
    pub lm_order: Option<usize>,
}

#[derive(Debug, Args)]
pub struct OptimizeArgs {
    pub permutation: String,
    #[arg(long, value_enum, default_value = "space")]
    pub objective: Objective,
    /// Cross-check against factorial brute force.
    #[arg(long)]
    pub oracle: bool,
}

#[derive(Debug, Args)]
pub struct CutwidthArgs {
    /// Permutation whose multigraph is measured.
    #[arg(long, conflicts_with = "graph", required_unless_present = "graph")]
    pub perm: Option<String>,
    /// Edge-list file: header `n m`, then `u v mult` lines (1-based).
    #[arg(long)]
    pub graph: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "cw")]
    pub variant: CutwidthVariant,
    /// Largest vertex count for the exact solver.
    #[arg(long, default_value_t = DEFAULT_DP_LIMIT)]
    pub limit: usize,
}

#[derive(Debug, Args)]
pub struct ReduceArgs {
    /// Cubic graph file: header `n m`, then `u v` lines (1-based); `k4`, `k33`, `q3` name built-ins.
    pub graph: String,
    /// Target bisection width.
    pub k: usize,
    /// Grid scale exponent; 4 gives the faithful construction.
    #[arg(long, default_value_t = 4)]
    pub scale: u32,
    /// Check both Hamiltonian paths and the external-edge structure.
    #[arg(long)]
    pub verify: bool,
    /// Sweep the canonical arrangement of a bisection, e.g. "1,2"; `min` picks a minimum one.
    #[arg(long)]
    pub sweep: Option<String>,
    /// Write the explicit edge list (small scales only).
    #[arg(long)]
    pub edges: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ParseArgs {
    /// Grammar file.
    pub grammar: PathBuf,
    pub w1: String,
    pub w2: String,
    #[arg(long, value_enum, default_value = "space")]
    pub objective: Objective,
    /// Also count derivations.
    #[arg(long)]
    pub count: bool,
    /// Manual strategy for a rule, `label=4,5,2,3,1,6`; repeatable.
    #[arg(long = "strategy")]
    pub strategies: Vec<String>,
}

/// Process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExitStatus {
    Success = 0,
    InputError = 2,
    ResourceLimit = 3,
    VerificationFailure = 4,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Limit(String),
    #[error("{0}")]
    Verification(String),
}

impl CliError {
    pub fn status(&self) -> ExitStatus {
        match self {
            CliError::Input(_) => ExitStatus::InputError,
            CliError::Limit(_) => ExitStatus::ResourceLimit,
            CliError::Verification(_) => ExitStatus::VerificationFailure,
        }
    }
}

impl From<StrategyError> for CliError {
    fn from(e: StrategyError) -> Self {
        match e {
            StrategyError::SizeLimit { .. } => CliError::Limit(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::SizeLimit { .. } => CliError::Limit(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<GrammarError> for CliError {
    fn from(e: GrammarError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        match e {
            ParseError::SolverLimit { .. } | ParseError::Unbounded => {
                CliError::Limit(e.to_string())
            }
            ParseError::Strategy(s) => s.into(),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<ReductionError> for CliError {
    fn from(e: ReductionError) -> Self {
        match e {
            ReductionError::SizeLimit(_) | ReductionError::MemoryCap { .. } => {
                CliError::Limit(e.to_string())
            }
            ReductionError::Unverified(_) => CliError::Verification(e.to_string()),
            ReductionError::Graph(g) => g.into(),
            _ => CliError::Input(e.to_string()),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CommandReport {
    pub command: String,
    pub inputs: Value,
    pub result: Value,
    /// Present exactly when the command failed.
    pub error: Option<ErrorPayload>,
    pub wall_time_ms: f64,
    pub stats: Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct ErrorPayload {
    pub kind: ExitStatus,
    pub message: String,
}

impl CommandReport {
    pub fn exit_status(&self) -> ExitStatus {
        self.error.as_ref().map_or(ExitStatus::Success, |e| e.kind)
    }
}

/// Result payload of one command before timing is attached.
pub struct Output {
    pub result: Value,
    pub stats: Value,
    /// Failure discovered after the result was assembled.
    pub failure: Option<CliError>,
}

impl Output {
    fn ok(result: Value, stats: Value) -> Self {
        Output {
            result,
            stats,
            failure: None,
        }
    }
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn read_file(p: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(p).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))
}

/// Runs one command. `progress` receives human-readable progress lines.
pub fn execute(cli: &Cli, progress: &mut dyn FnMut(&str)) -> CommandReport {
    let start = Instant::now();
    let (name, inputs, out) = match &cli.command {
        Command::Analyze(a) => (
            "analyze",
            to_value(json!({
                "permutation": a.permutation, "strategy": a.strategy, "lm_order": a.lm_order,
            })),
            cmd_analyze(a),
        ),
        Command::Optimize(a) => (
            "optimize",
            to_value(json!({
                "permutation": a.permutation, "objective": a.objective, "oracle": a.oracle,
            })),
            cmd_optimize(a),
        ),
        Command::Cutwidth(a) => (
            "cutwidth",
            to_value(json!({
                "perm": a.perm, "graph": a.graph, "variant": a.variant, "limit": a.limit,
            })),
            cmd_cutwidth(a),
        ),
        Command::Reduce(a) => (
            "reduce",
            to_value(json!({
                "graph": a.graph, "k": a.k, "scale": a.scale, "verify": a.verify,
                "sweep": a.sweep, "edges": a.edges,
            })),
            cmd_reduce(a, progress),
        ),
        Command::Parse(a) => (
            "parse",
            to_value(json!({
                "grammar": a.grammar, "w1": a.w1, "w2": a.w2, "objective": a.objective,
                "count": a.count, "strategies": a.strategies,
            })),
            cmd_parse(a),
        ),
    };
    let (result, stats, error) = match out {
        Ok(o) => (o.result, o.stats, o.failure),
        Err(e) => (Value::Null, Value::Null, Some(e)),
    };
    CommandReport {
        command: name.to_string(),
        inputs,
        result,
        error: error.map(|e| ErrorPayload {
            kind: e.status(),
            message: e.to_string(),
        }),
        wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
        stats,
    }
}

/// Parses `args` (program name first) and runs the command without printing.
pub fn report_for<I, T>(args: I) -> Result<CommandReport, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args)?;
    Ok(execute(&cli, &mut |_| {}))
}

/// Parses arguments, configures the thread pool, runs, and prints the report.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                ExitStatus::InputError as i32
            } else {
                0
            };
            let _ = e.print();
            return code;
        }
    };
    if let Some(n) = cli.threads {
        // A second initialisation in the same process keeps the first pool.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    let report = execute(&cli, &mut |line| eprintln!("{line}"));
    let text = if cli.pretty {
        serde_json::to_string_pretty(&report)
    } else {
        serde_json::to_string(&report)
    }
    .expect("report serializes");
    use std::io::Write;
    // A closed pipe downstream is not an error of the command.
    let _ = writeln!(std::io::stdout(), "{text}");
    report.exit_status() as i32
}

fn parse_perm(text: &str) -> Result<Permutation, CliError> {
    Ok(text.parse::<Permutation>()?)
}

pub fn cmd_analyze(a: &AnalyzeArgs) -> Result<Output, CliError> {
    let p = parse_perm(&a.permutation)?;
    let s = match &a.strategy {
        Some(t) => t.parse::<LinearStrategy>()?,
        None => LinearStrategy::identity(p.len()),
    };
    let rep = evaluate(&p, &s)?;
    let mut result = to_value(&rep);
    result["permutation"] = to_value(p.image());
    result["strategy"] = to_value(&s);
    result["space_exponent"] = json!(rep.space_exponent());
    if let Some(m) = a.lm_order {
        result["decoding"] = to_value(decoding_exponents(&p, &s, m)?);
    }
    Ok(Output::ok(result, json!({})))
}

pub fn cmd_optimize(a: &OptimizeArgs) -> Result<Output, CliError> {
    let p = parse_perm(&a.permutation)?;
    let best = optimize(&p, a.objective, DEFAULT_SIZE_LIMIT)?;
    let mut result = json!({
        "permutation": p.image(),
        "objective": a.objective,
        "strategy": best.strategy,
        "value": best.value,
    });
    let mut failure = None;
    if a.oracle {
        if p.len() > BRUTE_FORCE_LIMIT {
            return Err(CliError::Limit(format!(
                "brute force is limited to size {BRUTE_FORCE_LIMIT}, got {}",
                p.len()
            )));
        }
        let brute = brute_force_optimize(&p, a.objective)?;
        let agree = brute.value == best.value;
        result["oracle_value"] = json!(brute.value);
        result["agree"] = json!(agree);
        if !agree {
            failure = Some(CliError::Verification(format!(
                "branch-and-bound found {}, brute force {}",
                best.value, brute.value
            )));
        }
    }
    Ok(Output {
        result,
        stats: json!({ "nodes": best.nodes }),
        failure,
    })
}

pub fn cmd_cutwidth(a: &CutwidthArgs) -> Result<Output, CliError> {
    let g: Multigraph = match (&a.perm, &a.graph) {
        (Some(t), _) => PermutationMultigraph::from_permutation(&parse_perm(t)?)?
            .graph()
            .clone(),
        (None, Some(path)) => read_file(path)?.parse()?,
        (None, None) => return Err(CliError::Input("give --perm or --graph".into())),
    };
    let r = cutwidth_exact_with_limit(&g, a.variant, a.limit)?;
    Ok(Output::ok(
        json!({
            "variant": r.variant,
            "value": r.value,
            "witness": r.witness.one_based(),
            "vertices": r.vertices,
            "edges": r.edges,
        }),
        json!({ "states": r.states }),
    ))
}

fn load_cubic(spec: &str) -> Result<CubicGraph, CliError> {
    Ok(match spec.to_ascii_lowercase().as_str() {
        "k4" => CubicGraph::complete_k4(),
        "k33" => CubicGraph::complete_bipartite_k33(),
        "q3" => CubicGraph::cube_q3(),
        _ => read_file(Path::new(spec))?.parse()?,
    })
}

pub fn cmd_reduce(a: &ReduceArgs, progress: &mut dyn FnMut(&str)) -> Result<Output, CliError> {
    let g = load_cubic(&a.graph)?;
    let t0 = Instant::now();
    progress(&format!("building gadget at scale {}", a.scale));
    let inst = build_gadget(&g, a.k, a.scale)?;
    progress(&format!(
        "built {} vertices, {} edges in {:.1?}",
        inst.vertex_count(),
        inst.edge_count(),
        t0.elapsed()
    ));
    let mut result = json!({ "manifest": inst.manifest() });
    let mut failure = None;
    if a.verify {
        progress("verifying paths");
        let rep = verify_gadget(&inst);
        if let Some(msg) = rep.first_failure() {
            failure = Some(CliError::Verification(msg));
        }
        result["verification"] = to_value(&rep);
    }
    if let Some(spec) = &a.sweep {
        let b = if spec == "min" {
            min_bisection_brute(&g)?.0
        } else {
            Bisection::parse(g.vertex_count(), spec)?
        };
        progress(&format!("sweeping bisection of cut {}", b.cut(&g)));
        let arr = canonical_arrangement(&inst, &b)?;
        let sw = sweep_max_width(&inst, &arr)?;
        result["bisection"] = json!({
            "v1": b.v1.iter().map(|v| v + 1).collect::<Vec<_>>(),
            "v2": b.v2.iter().map(|v| v + 1).collect::<Vec<_>>(),
            "cut": b.cut(&g),
        });
        result["sweep"] = to_value(&sw);
    }
    if let Some(path) = &a.edges {
        if a.scale > EXPLICIT_SCALE_LIMIT {
            return Err(CliError::Limit(format!(
                "edge lists are only written for scale <= {EXPLICIT_SCALE_LIMIT}"
            )));
        }
        let mg = gadget_multigraph(&inst)?;
        std::fs::write(path, mg.to_string())
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        result["edges_written"] = json!(path);
    }
    progress(&format!("done in {:.1?}", t0.elapsed()));
    Ok(Output {
        result,
        stats: json!({ "build_and_check_ms": t0.elapsed().as_secs_f64() * 1e3 }),
        failure,
    })
}

fn parse_manual(spec: &str) -> Result<(String, LinearStrategy), CliError> {
    let (label, order) = spec
        .split_once('=')
        .ok_or_else(|| CliError::Input(format!("expected label=order, got {spec:?}")))?;
    let s = order.replace(',', " ").parse::<LinearStrategy>()?;
    Ok((label.trim().to_string(), s))
}

pub fn cmd_parse(a: &ParseArgs) -> Result<Output, CliError> {
    let g = parse_grammar(&read_file(&a.grammar)?)?;
    let manual = a
        .strategies
        .iter()
        .map(|s| parse_manual(s))
        .collect::<Result<Vec<_>, _>>()?;
    let strategies = compile_strategies_with(&g, a.objective, &manual)?;
    let p = SentencePair::parse(&g, &a.w1, &a.w2)?;
    let out = parse(
        &g,
        &strategies,
        &p,
        ParseOptions {
            count: a.count,
            keep_states: false,
        },
    )?;
    let rules: Vec<Value> = strategies
        .iter()
        .map(|(l, s)| json!({ "rule": l, "strategy": s }))
        .collect();
    Ok(Output::ok(
        json!({
            "accepted": out.accepted,
            "derivations": out.derivations,
            "strategies": rules,
        }),
        to_value(&out.stats),
    ))
}
