//! Command-line front end. [`run`] parses an argument vector, dispatches to
//! the library and renders a single JSON document (or CSV table).
//!
//! Exit codes: `0` success, `2` domain or precondition failure (a JSON error
//! object is written to stdout), `64` usage error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num::BigUint;
use serde_json::{json, Map, Number, Value};

use crate::bounds::{self, BoundReport, Param};
use crate::constructions::{self, GFamilyParams};
use crate::error::Error;
use crate::exact;
use crate::graph::{self, Graph};
use crate::series::{self, IdentifyOptions};
use crate::synchrony::{self, Estimate, MeasureConfig, Mode, SynchronyOutcome};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

pub const PRECISION_ENV: &str = "CLOSEDWALK_PRECISION_BITS";

#[derive(Debug, Parser)]
#[command(name = "closedwalk", version, about = "Spanning-tree counts, closed-walk series and complexity bounds for regular graphs")]
struct Cli {
    /// Output format. CSV is available for `bounds thm3` and `synchrony`;
    /// `edge-list` for `construct`.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Worker threads for synchrony sweeps; output does not depend on it.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,

    /// Starting working precision (bits) for series identification.
    #[arg(long, global = true, env = PRECISION_ENV, default_value_t = 64)]
    precision_bits: u32,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    EdgeList,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Structural summary of a graph.
    Graph {
        #[command(subcommand)]
        action: GraphAction,
    },
    /// Exact number of spanning trees.
    Complexity {
        #[command(flatten)]
        input: InputArgs,
        /// Count spanning trees of the complement instead.
        #[arg(long)]
        complement: bool,
    },
    /// Exact closed-walk counts w_1..w_K.
    Walks {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        max_k: usize,
        #[arg(long)]
        complement: bool,
    },
    /// Closed-walk series for ln t(complement).
    Series {
        #[command(flatten)]
        input: InputArgs,
        /// Report base term, terms and partial sums through --max-k.
        #[arg(long, requires = "max_k", conflicts_with = "identify")]
        eval: bool,
        #[arg(long)]
        max_k: Option<usize>,
        /// Recover the exact integer t(complement) from the series.
        #[arg(long)]
        identify: bool,
    },
    /// Closed-form complexity bounds.
    Bounds {
        #[command(subcommand)]
        which: BoundCommand,
    },
    /// Build a named or parameterized graph.
    Construct {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Threshold-spreading synchrony measures p_k and e_k.
    Synchrony {
        #[command(flatten)]
        input: InputArgs,
        /// Activation threshold.
        #[arg(long)]
        t: usize,
        /// Seed-set size.
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Exhaustive)]
        mode: ModeArg,
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        /// Read the edge-list file as arcs u -> v.
        #[arg(long, requires = "edges")]
        directed: bool,
        /// Largest number of subsets enumerated in exhaustive mode.
        #[arg(long, default_value_t = synchrony::DEFAULT_EXHAUSTIVE_BUDGET)]
        budget: u64,
    },
}

#[derive(Debug, Subcommand)]
enum GraphAction {
    Info {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        complement: bool,
    },
}

#[derive(Debug, Subcommand)]
enum BoundCommand {
    /// Degree-only lower bound on t(G).
    Prop1 {
        #[command(flatten)]
        input: OptionalInput,
        #[arg(long, requires = "d", conflicts_with_all = ["edges", "graph6", "named", "g_family", "random"])]
        n: Option<usize>,
        #[arg(long, requires = "n")]
        d: Option<usize>,
    },
    /// Degree-and-triangle lower bound on t(G).
    Prop2 {
        #[command(flatten)]
        input: OptionalInput,
        #[arg(long, requires_all = ["d", "delta"], conflicts_with_all = ["edges", "graph6", "named", "g_family", "random"])]
        n: Option<usize>,
        #[arg(long, requires = "n")]
        d: Option<usize>,
        #[arg(long, requires = "n")]
        delta: Option<u64>,
    },
    /// Laplacian-trace lower bound on t(complement).
    Thm2 {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        m: usize,
    },
    /// Bipartite sandwich a(n,d,m) <= t(complement) <= b(n,d,k).
    Thm3 {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Mc,
}

/// Exactly one graph source.
#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct InputArgs {
    /// Edge-list file ("-" for stdin).
    #[arg(long)]
    edges: Option<String>,
    /// Short-form graph6 string.
    #[arg(long)]
    graph6: Option<String>,
    /// petersen, paper-h or paper-bipartite.
    #[arg(long)]
    named: Option<String>,
    /// Member of g(k, l).
    #[arg(long, num_args = 2, value_names = ["K", "L"])]
    g_family: Option<Vec<usize>>,
    /// Seeded random d-regular graph.
    #[arg(long, num_args = 3, value_names = ["N", "D", "SEED"])]
    random: Option<Vec<u64>>,
}

/// At most one graph source (for commands that also take raw parameters).
#[derive(Debug, Args)]
#[group(required = false, multiple = false)]
struct OptionalInput {
    #[arg(long)]
    edges: Option<String>,
    #[arg(long)]
    graph6: Option<String>,
    #[arg(long)]
    named: Option<String>,
    #[arg(long, num_args = 2, value_names = ["K", "L"])]
    g_family: Option<Vec<usize>>,
    #[arg(long, num_args = 3, value_names = ["N", "D", "SEED"])]
    random: Option<Vec<u64>>,
}

impl OptionalInput {
    fn into_input(self) -> Option<InputArgs> {
        let any = self.edges.is_some()
            || self.graph6.is_some()
            || self.named.is_some()
            || self.g_family.is_some()
            || self.random.is_some();
        any.then_some(InputArgs {
            edges: self.edges,
            graph6: self.graph6,
            named: self.named,
            g_family: self.g_family,
            random: self.random,
        })
    }
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Domain(Error),
    /// A bound report whose preconditions failed, already carrying `error`.
    Precondition(Value),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

pub fn run<I, S>(argv: I) -> Output
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let status = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let rendered = e.render().to_string();
            let (stdout, stderr) = if status == EXIT_OK {
                (rendered, String::new())
            } else {
                (String::new(), rendered)
            };
            return Output {
                status,
                stdout,
                stderr,
            };
        }
    };
    match dispatch(&cli) {
        Ok(stdout) => Output {
            status: EXIT_OK,
            stdout,
            stderr: String::new(),
        },
        Err(Failure::Usage(message)) => Output {
            status: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        },
        Err(Failure::Domain(e)) => Output {
            status: EXIT_DOMAIN,
            stdout: render_json(&error_json(e.code(), &e.to_string())),
            stderr: String::new(),
        },
        Err(Failure::Precondition(body)) => Output {
            status: EXIT_DOMAIN,
            stdout: render_json(&body),
            stderr: String::new(),
        },
    }
}

fn error_json(code: &str, message: &str) -> Value {
    json!({ "error": { "code": code, "message": message } })
}

/// Reals carry 17 significant digits; non-finite values become `null`.
fn real(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let text = format!("{x:.16e}");
    Number::from_str(&text).map(Value::Number).unwrap_or(Value::Null)
}

fn big(x: &BigUint) -> Value {
    Value::String(x.to_string())
}

fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn load_graph(input: &InputArgs) -> CliResult<Graph> {
    load_graph_as(input, false)
}

fn load_graph_as(input: &InputArgs, directed: bool) -> CliResult<Graph> {
    if let Some(path) = &input.edges {
        let text = if path == "-" {
            std::io::read_to_string(std::io::stdin())
        } else {
            std::fs::read_to_string(path)
        }
        .map_err(|e| Failure::Usage(format!("cannot read {path}: {e}")))?;
        let g = if directed {
            graph::parse_arc_list(&text)?
        } else {
            graph::parse_edge_list(&text)?
        };
        return Ok(g);
    }
    if let Some(code) = &input.graph6 {
        return Ok(graph::parse_graph6(code)?);
    }
    if let Some(name) = &input.named {
        return Ok(constructions::named_graph(name)?);
    }
    if let Some(kl) = &input.g_family {
        return Ok(constructions::g_family(GFamilyParams::new(kl[0], kl[1])?)?);
    }
    if let Some(args) = &input.random {
        let n = usize::try_from(args[0]).map_err(|_| Failure::Usage("N is too large".into()))?;
        let d = usize::try_from(args[1]).map_err(|_| Failure::Usage("D is too large".into()))?;
        return Ok(constructions::random_regular(n, d, args[2])?);
    }
    Err(Failure::Usage("no graph input given".into()))
}

fn maybe_complement(g: Graph, complement: bool) -> CliResult<Graph> {
    Ok(if complement { g.complement()? } else { g })
}

fn require_format(format: Format, allowed: &[Format], command: &str) -> CliResult<()> {
    if allowed.contains(&format) {
        Ok(())
    } else {
        Err(Failure::Usage(format!(
            "{command} does not support --format {}",
            format.to_possible_value().unwrap().get_name()
        )))
    }
}

fn dispatch(cli: &Cli) -> CliResult<String> {
    use Format::{Csv, EdgeList, Json};
    match &cli.command {
        Command::Graph {
            action: GraphAction::Info { input, complement },
        } => {
            require_format(cli.format, &[Json], "graph info")?;
            let g = maybe_complement(load_graph(input)?, *complement)?;
            Ok(render_json(&graph_info(&g)?))
        }
        Command::Complexity { input, complement } => {
            require_format(cli.format, &[Json], "complexity")?;
            let g = maybe_complement(load_graph(input)?, *complement)?;
            let count = exact::spanning_tree_count(&g)?;
            Ok(render_json(&json!({ "spanning_trees": big(&count) })))
        }
        Command::Walks {
            input,
            max_k,
            complement,
        } => {
            require_format(cli.format, &[Json], "walks")?;
            let g = maybe_complement(load_graph(input)?, *complement)?;
            let table = exact::closed_walk_counts(&g, *max_k)?;
            let walks: Vec<Value> = table.counts().iter().map(big).collect();
            Ok(render_json(&json!({ "max_k": max_k, "walks": walks })))
        }
        Command::Series {
            input,
            eval,
            max_k,
            identify,
        } => {
            require_format(cli.format, &[Json], "series")?;
            if *eval == *identify {
                return Err(Failure::Usage("series needs exactly one of --eval or --identify".into()));
            }
            let g = load_graph(input)?;
            if *identify {
                let opts = IdentifyOptions {
                    initial_bits: cli.precision_bits,
                    ..IdentifyOptions::default()
                };
                let id = series::identify_complexity_with(&g, &opts)?;
                Ok(render_json(&json!({
                    "t_complement": big(&id.value),
                    "terms_used": id.terms_used,
                    "bracket_width": real(id.bracket_width),
                    "precision_bits": id.precision_bits,
                })))
            } else {
                let max_k = max_k.expect("clap enforces --max-k with --eval");
                let s = series::evaluate_series(&g, max_k)?;
                let terms: Vec<Value> = (2..=max_k)
                    .map(|k| json!({ "k": k, "term": real(s.term(k)) }))
                    .collect();
                let partials: Vec<Value> = s.partials.iter().map(|&p| real(p)).collect();
                Ok(render_json(&json!({
                    "n": s.n,
                    "d": s.d,
                    "max_k": max_k,
                    "base": real(s.base),
                    "terms": terms,
                    "partials": partials,
                    "rounding_bound": real(s.rounding_bound),
                })))
            }
        }
        Command::Bounds { which } => run_bounds(cli, which),
        Command::Construct { input } => {
            require_format(cli.format, &[Json, EdgeList], "construct")?;
            let g = load_graph(input)?;
            if cli.format == EdgeList {
                return Ok(g.to_edge_list());
            }
            let edges: Vec<Value> = g.edges().map(|(u, v)| json!([u, v])).collect();
            Ok(render_json(&json!({
                "n": g.order(),
                "size": g.size(),
                "degree": g.regular_degree().degree,
                "triangles": big(&exact::triangle_count(&g)?),
                "edges": edges,
            })))
        }
        Command::Synchrony {
            input,
            t,
            k,
            mode,
            samples,
            seed,
            directed,
            budget,
        } => {
            require_format(cli.format, &[Json, Csv], "synchrony")?;
            let mode = match mode {
                ModeArg::Exhaustive => {
                    if samples.is_some() || seed.is_some() {
                        return Err(Failure::Usage(
                            "--samples and --seed only apply to --mode mc".into(),
                        ));
                    }
                    Mode::Exhaustive
                }
                ModeArg::Mc => match (samples, seed) {
                    (Some(samples), Some(seed)) => Mode::MonteCarlo {
                        samples: *samples,
                        seed: *seed,
                    },
                    _ => return Err(Failure::Usage("--mode mc needs --samples and --seed".into())),
                },
            };
            let g = load_graph_as(input, *directed)?;
            let config = MeasureConfig {
                exhaustive_budget: *budget,
                threads: cli.threads.max(1),
            };
            let outcome = synchrony::measure_synchrony(&g, *t, *k, mode, &config)?;
            Ok(if cli.format == Csv {
                histogram_csv(&outcome)
            } else {
                render_json(&synchrony_json(&outcome))
            })
        }
    }
}

fn graph_info(g: &Graph) -> CliResult<Value> {
    let directed = g.is_directed();
    let mut info = Map::new();
    info.insert("n".into(), json!(g.order()));
    info.insert("size".into(), json!(g.size()));
    info.insert("directed".into(), json!(directed));
    info.insert("degree".into(), json!(g.regular_degree().degree));
    info.insert("connected".into(), json!(g.is_connected()));
    if !directed {
        info.insert("bipartite".into(), json!(g.is_bipartite()));
        info.insert("girth".into(), json!(g.girth()));
        info.insert("triangles".into(), big(&exact::triangle_count(g)?));
        info.insert("graph6".into(), json!(g.to_graph6().ok()));
    }
    Ok(Value::Object(info))
}

fn report_json(r: &BoundReport) -> Value {
    let parameters: Map<String, Value> = r
        .parameters
        .iter()
        .map(|(&k, p)| {
            let v = match *p {
                Param::Int(i) => json!(i),
                Param::Real(x) => real(x),
            };
            (k.to_string(), v)
        })
        .collect();
    json!({
        "name": r.name,
        "target": r.target,
        "preconditions_ok": r.preconditions_ok,
        "reason": r.reason,
        "log_value": r.log_value.map_or(Value::Null, real),
        "linear_value": r.linear_value.map_or(Value::Null, real),
        "parameters": parameters,
    })
}

/// Emits the report(s); exits 2 with an error object when no requested bound
/// has its preconditions met.
fn bound_output(body: Value, reports: &[&BoundReport]) -> CliResult<String> {
    if reports.iter().any(|r| r.preconditions_ok) {
        return Ok(render_json(&body));
    }
    let mut body = body;
    let reason = reports.iter().map(|r| r.reason.as_str()).collect::<Vec<_>>().join("; ");
    body["error"] = json!({ "code": "precondition_failed", "message": reason });
    Err(Failure::Precondition(body))
}

fn run_bounds(cli: &Cli, which: &BoundCommand) -> CliResult<String> {
    use Format::{Csv, Json};
    match which {
        BoundCommand::Prop1 { input, n, d } => {
            require_format(cli.format, &[Json], "bounds prop1")?;
            let (n, d) = match (input_of(input), n, d) {
                (Some(input), _, _) => {
                    let g = load_graph(&input)?;
                    (g.order(), g.regular_degree().degree.ok_or(Error::RegularityRequired)?)
                }
                (None, Some(n), Some(d)) => (*n, *d),
                _ => return Err(Failure::Usage("prop1 needs a graph or --n and --d".into())),
            };
            let r = bounds::prop1_lower(n, d);
            bound_output(report_json(&r), &[&r])
        }
        BoundCommand::Prop2 { input, n, d, delta } => {
            require_format(cli.format, &[Json], "bounds prop2")?;
            let (n, d, delta) = match (input_of(input), n, d, delta) {
                (Some(input), ..) => {
                    let g = load_graph(&input)?;
                    let d = g.regular_degree().degree.ok_or(Error::RegularityRequired)?;
                    (g.order(), d, exact::triangle_count(&g)?)
                }
                (None, Some(n), Some(d), Some(delta)) => (*n, *d, BigUint::from(*delta)),
                _ => {
                    return Err(Failure::Usage(
                        "prop2 needs a graph or --n, --d and --delta".into(),
                    ))
                }
            };
            let r = bounds::prop2_lower(n, d, &delta);
            bound_output(report_json(&r), &[&r])
        }
        BoundCommand::Thm2 { input, m } => {
            require_format(cli.format, &[Json], "bounds thm2")?;
            let g = load_graph(input)?;
            let r = bounds::thm2_lower(&g, *m)?;
            bound_output(report_json(&r), &[&r])
        }
        BoundCommand::Thm3 { input, m, k } => {
            require_format(cli.format, &[Json, Csv], "bounds thm3")?;
            let g = load_graph(input)?;
            let (lower, upper) = bounds::thm3_bounds(&g, *m, *k)?;
            if cli.format == Csv {
                return thm3_table(&g, (*m).max(*k));
            }
            let body = json!({ "lower": report_json(&lower), "upper": report_json(&upper) });
            bound_output(body, &[&lower, &upper])
        }
    }
}

fn input_of(input: &OptionalInput) -> Option<InputArgs> {
    OptionalInput {
        edges: input.edges.clone(),
        graph6: input.graph6.clone(),
        named: input.named.clone(),
        g_family: input.g_family.clone(),
        random: input.random.clone(),
    }
    .into_input()
}

/// Rows `j, a(n,d,j), b(n,d,j)` for `j = 1..=up_to`, with 17 significant
/// digits; an empty `lower` cell marks `y >= 1`.
fn thm3_table(g: &Graph, up_to: usize) -> CliResult<String> {
    let mut out = String::from("m,k,lower,upper\n");
    for j in 1..=up_to {
        let (lower, upper) = bounds::thm3_bounds(g, j, j)?;
        let cell = |r: &BoundReport| r.linear_value.map(|v| format!("{v:.16e}")).unwrap_or_default();
        writeln!(out, "{j},{j},{},{}", cell(&lower), cell(&upper)).unwrap();
    }
    Ok(out)
}

fn estimate_json(e: &Estimate) -> Value {
    match e {
        Estimate::Exact(r) => json!({ "exact": r.to_string(), "value": real(e.value()) }),
        Estimate::Sampled { mean, std_error } => {
            json!({ "estimate": real(*mean), "std_error": real(*std_error) })
        }
    }
}

fn synchrony_json(o: &SynchronyOutcome) -> Value {
    let histogram: Map<String, Value> = o
        .i_star_histogram
        .iter()
        .map(|(i, c)| (i.to_string(), json!(c)))
        .collect();
    json!({
        "k": o.k,
        "t": o.t,
        "mode": o.mode,
        "samples": o.samples,
        "p_k": estimate_json(&o.p_k),
        "e_k": estimate_json(&o.e_k),
        "i_star_histogram": histogram,
        "never": o.never,
    })
}

fn histogram_csv(o: &SynchronyOutcome) -> String {
    let mut out = String::from("i_star,count\n");
    for (i, c) in &o.i_star_histogram {
        writeln!(out, "{i},{c}").unwrap();
    }
    writeln!(out, "inf,{}", o.never).unwrap();
    out
}
