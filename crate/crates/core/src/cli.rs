//! The `trpq` command line: `eval`, `stats` and `plot`.
//!
//! [`run`] does all the work and returns the exit code and output, so the
//! binary is a thin wrapper and the commands are testable in-process.

use std::fmt::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::compact::{coalesce_d, coalesce_t, greedy_reduce, minimize_exact, remove_subsumed, CompactError, CoverMode};
use crate::eval::{eval_repr, Answers, EvalError, EvalOptions, DEFAULT_MAX_ITERATIONS};
use crate::graph::{load_graph, NodeId, TemporalGraph};
use crate::plot::render_svg;
use crate::query::{parse_query, Trpq};
use crate::repr::{AnswerSet, ReprKind};

/// Exit code for malformed input.
pub const EXIT_INPUT: i32 = 1;
/// Exit code when the representation cannot express the answer finitely.
pub const EXIT_INFEASIBLE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "trpq", version, about = "Evaluate temporal regular path queries over interval-annotated graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a query and print one answer tuple per line.
    Eval(EvalArgs),
    /// Count tuples per representation over a family of scaled instances.
    Stats(StatsArgs),
    /// Draw the answer region of one node pair as SVG.
    Plot(PlotArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Minimize {
    Exact,
    Greedy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Scale {
    Graph,
    Query,
}

#[derive(Debug, Args)]
pub struct QueryArgs {
    /// Graph file.
    #[arg(long)]
    pub graph: PathBuf,
    /// Query text, or a file containing it.
    #[arg(long)]
    pub query: String,
    /// Answer representation: point, t, d, td or c.
    #[arg(long, default_value = "c", value_parser = parse_repr)]
    pub repr: ReprKind,
    /// Rounds of closure iteration before giving up.
    #[arg(long, env = "TRPQ_MAX_ITER", default_value_t = DEFAULT_MAX_ITERATIONS)]
    pub max_iterations: usize,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[command(flatten)]
    pub query: QueryArgs,
    /// Coalesce U^t/U^d answers; drop subsumed U^td/U^c answers.
    #[arg(long)]
    pub coalesce: bool,
    /// Reduce the answer set.
    #[arg(long, value_enum)]
    pub minimize: Option<Minimize>,
    /// With `--minimize exact`, forbid overlapping tuples.
    #[arg(long)]
    pub disjoint: bool,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    /// Which side of the instance the factors multiply.
    #[arg(long, value_enum)]
    pub scale: Scale,
    /// Factors as a comma list (`1,2,4`) or a range (`1..8`).
    #[arg(long, default_value = "1..8")]
    pub factors: String,
    /// Graph file; defaults to the built-in family for `--scale`.
    #[arg(long)]
    pub graph: Option<PathBuf>,
    /// Query text or file; defaults to the built-in family for `--scale`.
    #[arg(long)]
    pub query: Option<String>,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    #[command(flatten)]
    pub query: QueryArgs,
    /// Source and target node of the pair to draw.
    #[arg(long, num_args = 2, value_names = ["N1", "N2"])]
    pub pair: Vec<String>,
}

fn parse_repr(s: &str) -> Result<ReprKind, String> {
    s.parse()
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: 0, stdout, stderr: String::new() }
    }

    fn fail(code: i32, message: impl std::fmt::Display) -> Self {
        Outcome { code, stdout: String::new(), stderr: format!("error: {message}\n") }
    }
}

struct Failure(i32, String);

impl From<EvalError> for Failure {
    fn from(e: EvalError) -> Self {
        let code = match e {
            EvalError::Infeasible { .. } => EXIT_INFEASIBLE,
            _ => EXIT_INPUT,
        };
        Failure(code, e.to_string())
    }
}

impl From<CompactError> for Failure {
    fn from(e: CompactError) -> Self {
        let code = match e {
            CompactError::Dense => EXIT_INFEASIBLE,
            _ => EXIT_INPUT,
        };
        Failure(code, e.to_string())
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let text = e.render().to_string();
            return if code == 0 { Outcome::ok(text) } else { Outcome { code, stdout: String::new(), stderr: text } };
        }
    };
    let result = match &cli.command {
        Command::Eval(args) => cmd_eval(args),
        Command::Stats(args) => cmd_stats(args),
        Command::Plot(args) => cmd_plot(args),
    };
    match result {
        Ok(out) => Outcome::ok(out),
        Err(Failure(code, message)) => Outcome::fail(code, message),
    }
}

fn read_graph(path: &Path) -> Result<TemporalGraph, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure(EXIT_INPUT, format!("cannot read {}: {e}", path.display())))?;
    load_graph(&text).map_err(|e| Failure(EXIT_INPUT, format!("{}: {e}", path.display())))
}

/// Query text, read from a file when the argument names one.
fn read_query(arg: &str) -> Result<Trpq, Failure> {
    let path = Path::new(arg);
    let text = if path.is_file() {
        std::fs::read_to_string(path).map_err(|e| Failure(EXIT_INPUT, format!("cannot read {arg}: {e}")))?
    } else {
        arg.to_string()
    };
    let text: String = text.lines().filter(|l| !l.trim_start().starts_with('#')).collect::<Vec<_>>().join(" ");
    parse_query(text.trim()).map_err(|e| Failure(EXIT_INPUT, format!("query: {e}")))
}

fn options(args: &QueryArgs) -> EvalOptions {
    EvalOptions { max_iterations: args.max_iterations, ..EvalOptions::default() }
}

/// Applies the post-processing flags of `eval`.
pub fn postprocess(answers: Answers, coalesce: bool, minimize: Option<Minimize>, disjoint: bool) -> Result<Answers, CompactError> {
    let cover = if disjoint { CoverMode::Disjoint } else { CoverMode::Overlapping };
    Ok(match answers {
        Answers::T(s) => {
            let s = if coalesce || minimize.is_some() { coalesce_t(&s) } else { s };
            Answers::T(if minimize == Some(Minimize::Exact) { minimize_exact(&s, cover)? } else { s })
        }
        Answers::D(s) => {
            let s = if coalesce || minimize.is_some() { coalesce_d(&s) } else { s };
            Answers::D(if minimize == Some(Minimize::Exact) { minimize_exact(&s, cover)? } else { s })
        }
        Answers::TD(s) => Answers::TD(reduce(s, coalesce, minimize, cover)?),
        Answers::C(s) => Answers::C(reduce(s, coalesce, minimize, cover)?),
        point @ Answers::Point(_) => point,
    })
}

fn reduce<S: crate::compact::CoverShape>(
    set: AnswerSet<S>,
    coalesce: bool,
    minimize: Option<Minimize>,
    cover: CoverMode,
) -> Result<AnswerSet<S>, CompactError> {
    let set = if coalesce { remove_subsumed(&set) } else { set };
    Ok(match minimize {
        Some(Minimize::Exact) => minimize_exact(&set, cover)?,
        Some(Minimize::Greedy) => greedy_reduce(&set),
        None => set,
    })
}

fn cmd_eval(args: &EvalArgs) -> Result<String, Failure> {
    let graph = read_graph(&args.query.graph)?;
    let query = read_query(&args.query.query)?;
    let answers = eval_repr(&graph, &query, args.query.repr, &options(&args.query))?;
    let answers = postprocess(answers, args.coalesce, args.minimize, args.disjoint)?;
    let mut out = answers.render();
    let _ = writeln!(out, "count: {}", answers.len());
    Ok(out)
}

/// `a e a` on `[0,8]`, queried with `T[0,1]` scaled to `T[0,i]`.
pub const QUERY_FAMILY_GRAPH: &str = "domain [0,8]\nmode discrete\na e a [0,0]\n";
pub const QUERY_FAMILY_QUERY: &str = "T[0,1]";
/// `a e b` valid on `[0,1]` (scaled to `[0,s]`), queried with `e`.
pub const GRAPH_FAMILY_GRAPH: &str = "domain [0,1]\nmode discrete\na e b [0,1]\n";
pub const GRAPH_FAMILY_QUERY: &str = "e";

fn parse_factors(spec: &str) -> Result<Vec<i64>, Failure> {
    let bad = || Failure(EXIT_INPUT, format!("malformed factor list `{spec}`"));
    let spec = spec.trim();
    if spec.is_empty() {
        return Ok(Vec::new());
    }
    let factors: Vec<i64> = if let Some((a, b)) = spec.split_once("..") {
        let (a, b): (i64, i64) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
        (a..=b).collect()
    } else {
        spec.split(',').map(|f| f.trim().parse().map_err(|_| bad())).collect::<Result<_, _>>()?
    };
    if factors.iter().any(|&f| f < 1) {
        return Err(Failure(EXIT_INPUT, "factors must be at least 1".into()));
    }
    Ok(factors)
}

/// Tuple counts per representation, in the compact form each one admits:
/// coalesced for `t`/`d`, greedily reduced for `td`/`c`. `None` marks a
/// representation that is infeasible for the instance.
pub fn tuple_counts(graph: &TemporalGraph, query: &Trpq, opts: &EvalOptions) -> Result<Vec<(ReprKind, Option<usize>)>, EvalError> {
    let mut out = Vec::new();
    for repr in ReprKind::ALL {
        let count = match eval_repr(graph, query, repr, opts) {
            Ok(answers) => {
                let minimize = matches!(repr, ReprKind::TD | ReprKind::C).then_some(Minimize::Greedy);
                let reduced = postprocess(answers, true, minimize, false).map_err(|e| EvalError::Infeasible {
                    repr,
                    reason: e.to_string(),
                })?;
                Some(reduced.len())
            }
            Err(EvalError::Infeasible { .. }) => None,
            Err(e) => return Err(e),
        };
        out.push((repr, count));
    }
    Ok(out)
}

fn cmd_stats(args: &StatsArgs) -> Result<String, Failure> {
    let factors = parse_factors(&args.factors)?;
    let graph = match &args.graph {
        Some(path) => read_graph(path)?,
        None => load_graph(match args.scale {
            Scale::Graph => GRAPH_FAMILY_GRAPH,
            Scale::Query => QUERY_FAMILY_GRAPH,
        })
        .expect("built-in family graphs are valid"),
    };
    let query = match &args.query {
        Some(q) => read_query(q)?,
        None => parse_query(match args.scale {
            Scale::Graph => GRAPH_FAMILY_QUERY,
            Scale::Query => QUERY_FAMILY_QUERY,
        })
        .expect("built-in family queries are valid"),
    };
    let mut out = String::from("factor,repr,tuple_count\n");
    for factor in factors {
        let (g, q) = match args.scale {
            Scale::Graph => (graph.scaled(factor), query.clone()),
            Scale::Query => (graph.clone(), query.scaled(factor)),
        };
        for (repr, count) in tuple_counts(&g, &q, &EvalOptions::default())? {
            let count = count.map_or_else(|| "NA".to_string(), |c| c.to_string());
            let _ = writeln!(out, "{factor},{repr},{count}");
        }
    }
    Ok(out)
}

fn cmd_plot(args: &PlotArgs) -> Result<String, Failure> {
    let graph = read_graph(&args.query.graph)?;
    let query = read_query(&args.query.query)?;
    let (n1, n2) = (NodeId::new(&args.pair[0]), NodeId::new(&args.pair[1]));
    for n in [&n1, &n2] {
        if !graph.nodes().contains(n) {
            return Err(Failure(EXIT_INPUT, format!("unknown node `{n}`")));
        }
    }
    let answers = eval_repr(&graph, &query, args.query.repr, &options(&args.query))?;
    let tuples: Vec<_> = answers.to_ctuples().into_iter().filter(|c| c.n1 == n1 && c.n2 == n2).collect();
    let title = format!("{query} from {n1} to {n2} ({})", args.query.repr);
    Ok(render_svg(&tuples, graph.domain(), graph.mode(), args.query.repr, &title))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_lists() {
        assert_eq!(parse_factors("1..4").ok(), Some(vec![1, 2, 3, 4]));
        assert_eq!(parse_factors("2, 4").ok(), Some(vec![2, 4]));
        assert_eq!(parse_factors("").ok(), Some(vec![]));
        assert!(parse_factors("0").is_err());
        assert!(parse_factors("x").is_err());
    }

    #[test]
    fn usage_errors_exit_with_input_code() {
        assert_eq!(run(["trpq", "eval"]).code, EXIT_INPUT);
        assert_eq!(run(["trpq", "--help"]).code, 0);
    }
}
