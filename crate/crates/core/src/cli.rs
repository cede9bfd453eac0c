//! The `spectra` command line.
//!
//! Exit codes: 0 success, 1 a verified claim failed, 2 usage or input error,
//! 3 a solve ran out of budget while `--require-exact` was set.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use crate::analysis::{self, AnalysisError, ClaimStatus, GameObjective, MuTable};
use crate::coloring::{self, ColoringError, EdgeColoring};
use crate::constructions::{self, ConstructionError};
use crate::graph::{Graph, GraphError};
use crate::search::{self, SearchBudget, SearchError, SearchOutcome, Status, VertexSelection};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CLAIM_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

/// Default per-solve time limit in seconds, overridable via `SPECTRA_SECONDS`.
pub const DEFAULT_SECONDS: f64 = 10.0;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("bad graph spec {spec:?}: {reason}")]
    BadSpec { spec: String, reason: String },
    #[error("cannot read {path}: {reason}")]
    Io { path: PathBuf, reason: String },
    #[error("format {format:?} is not available for {command}")]
    Format { format: Format, command: &'static str },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
    Csv,
    Dot,
}

#[derive(Debug, Parser)]
#[command(name = "spectra", version, about = "Interval spectra of proper edge colorings")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    pub format: Format,
    /// Write output here instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// Node limit per solve.
    #[arg(long, global = true)]
    pub max_nodes: Option<u64>,
    /// Time limit per solve in seconds; 0 disables the limit.
    #[arg(long, global = true)]
    pub seconds: Option<f64>,
    /// Worker threads per solve.
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Exit with status 3 if any solve ran out of budget.
    #[arg(long, global = true)]
    pub require_exact: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Mu1,
    Mu2,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ObjectiveArg {
    Mu21,
    Mu12,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PartArg {
    #[value(name = "X", alias = "x")]
    X,
    #[value(name = "Y", alias = "y")]
    Y,
    #[value(name = "V", alias = "v")]
    V,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormArg {
    #[value(name = "mu21")]
    Mu21,
    #[value(name = "w")]
    LowerW,
    #[value(name = "W")]
    UpperW,
    #[value(name = "wY")]
    WY,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConstructionKind {
    Staircase,
    Collapse,
    BlockY,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact mu1 / mu2 for one t.
    Mu {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        t: u32,
        #[arg(long, value_enum, default_value_t = Which::Both)]
        which: Which,
    },
    /// mu1 and mu2 for every admissible t.
    MuTable {
        #[arg(long)]
        graph: String,
    },
    /// mu11, mu12, mu21, mu22.
    MuParams {
        #[arg(long)]
        graph: String,
    },
    /// Solve the color-count game.
    Game {
        #[arg(long)]
        graph: String,
        #[arg(long, value_enum, default_value_t = ObjectiveArg::Mu21)]
        objective: ObjectiveArg,
    },
    /// Build an explicit coloring of K_{m,n}.
    Construct {
        #[arg(value_enum)]
        kind: ConstructionKind,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        /// Collapse steps (collapse only; default n-1).
        #[arg(long)]
        steps: Option<usize>,
        /// Group count (block-y only; default ceil(m/n)).
        #[arg(long)]
        q: Option<usize>,
    },
    /// Least and greatest t admitting a coloring interval on a vertex set.
    Wrange {
        #[arg(long)]
        graph: String,
        #[arg(long, value_enum, default_value_t = PartArg::V)]
        part: PartArg,
    },
    /// Evaluate a closed form for K_{m,n}.
    ClosedForm {
        #[arg(value_enum)]
        form: FormArg,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
    /// Check every closed form against the exhaustive oracle.
    Verify {
        #[arg(long, default_value_t = 3)]
        max_m: usize,
        #[arg(long, default_value_t = 3)]
        max_n: usize,
    },
}

/// Rendered output plus the exit code it implies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Emitted {
    pub body: String,
    pub code: i32,
}

/// Parses `kmn:M,N`, `cycle:K`, `path:K` or `file:PATH`.
pub fn parse_graph_spec(spec: &str) -> Result<Graph, CliError> {
    let bad = |reason: &str| CliError::BadSpec {
        spec: spec.to_string(),
        reason: reason.to_string(),
    };
    let (family, arg) = spec.split_once(':').ok_or_else(|| bad("expected FAMILY:ARGS"))?;
    let num = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|_| bad(&format!("{s:?} is not a non-negative integer")))
    };
    match family {
        "kmn" => {
            let (m, n) = arg.split_once(',').ok_or_else(|| bad("expected kmn:M,N"))?;
            Ok(Graph::complete_bipartite(num(m)?, num(n)?)?)
        }
        "cycle" => Ok(Graph::cycle(num(arg)?)?),
        "path" => Ok(Graph::path(num(arg)?)?),
        "file" => {
            let path = PathBuf::from(arg);
            let text = std::fs::read_to_string(&path).map_err(|e| CliError::Io {
                path: path.clone(),
                reason: e.to_string(),
            })?;
            Ok(Graph::from_json_str(&text)?)
        }
        _ => Err(bad("family must be kmn, cycle, path or file")),
    }
}

/// Budget from flags, then `SPECTRA_SECONDS` / `SPECTRA_WORKERS`, then
/// defaults.
pub fn budget_from(common: &Common) -> Result<SearchBudget, CliError> {
    let env_f64 = |key: &str| -> Result<Option<f64>, CliError> {
        std::env::var(key)
            .ok()
            .map(|v| {
                v.parse::<f64>()
                    .map_err(|_| CliError::Usage(format!("{key}={v:?} is not a number")))
            })
            .transpose()
    };
    let seconds = match common.seconds {
        Some(s) => s,
        None => env_f64("SPECTRA_SECONDS")?.unwrap_or(DEFAULT_SECONDS),
    };
    if !seconds.is_finite() || seconds < 0.0 {
        return Err(CliError::Usage(format!("invalid time limit {seconds}")));
    }
    let workers = match common.workers {
        Some(w) => w,
        None => match env_f64("SPECTRA_WORKERS")? {
            Some(w) => w as usize,
            None => std::thread::available_parallelism().map_or(1, |n| n.get()),
        },
    };
    Ok(SearchBudget {
        max_nodes: common.max_nodes,
        max_time: (seconds > 0.0).then(|| Duration::from_secs_f64(seconds)),
        parallel_width: workers.max(1),
    })
}

fn json_text<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn require(format: Format, allowed: &[Format], command: &'static str) -> Result<(), CliError> {
    if allowed.contains(&format) {
        Ok(())
    } else {
        Err(CliError::Format { format, command })
    }
}

fn outcome_line(name: &str, g: &Graph, t: u32, o: &SearchOutcome) -> String {
    let status = match o.status {
        Status::Exact => "exact".to_string(),
        Status::BudgetExhausted => "budget exhausted, best found".to_string(),
    };
    let mut line = format!("{name}({g}, t={t}) = {} ({status}, {} nodes)", o.value, o.nodes_visited);
    if let Some(w) = &o.witness {
        write!(line, "\n  witness: {:?}", w.colors()).unwrap();
    }
    line
}

fn table_human(table: &MuTable) -> String {
    let params = analysis::mu_params(table);
    let mut out = format!(
        "{}  |V|={}  |E|={}\n",
        table.graph, table.vertex_count, table.edge_count
    );
    writeln!(out, "{:>4}  {:>6}  {:>6}", "t", "mu1", "mu2").unwrap();
    for r in &table.rows {
        let mark = |o: &SearchOutcome| if o.status.is_exact() { "" } else { "?" };
        let hl = if r.t == params.mu21.t { "  <- mu21" } else { "" };
        writeln!(
            out,
            "{:>4}  {:>5}{:1}  {:>5}{:1}{hl}",
            r.t,
            r.mu1.value,
            mark(&r.mu1),
            r.mu2.value,
            mark(&r.mu2)
        )
        .unwrap();
    }
    out
}

fn exit_for(status: Status, common: &Common) -> i32 {
    if common.require_exact && !status.is_exact() {
        EXIT_BUDGET
    } else {
        EXIT_OK
    }
}

#[derive(Serialize)]
struct Constructed<'a> {
    graph: crate::graph::GraphJson,
    coloring: &'a EdgeColoring,
    f: usize,
}

/// Executes a parsed command.
pub fn run(cli: &Cli) -> Result<Emitted, CliError> {
    let common = &cli.common;
    let format = common.format;
    let ok = |body: String| Emitted { body, code: EXIT_OK };
    match &cli.command {
        Command::Mu { graph, t, which } => {
            require(format, &[Format::Human, Format::Json], "mu")?;
            let g = parse_graph_spec(graph)?;
            let budget = budget_from(common)?;
            let mu1 = matches!(which, Which::Mu1 | Which::Both)
                .then(|| search::mu1(&g, *t, &budget))
                .transpose()?;
            let mu2 = matches!(which, Which::Mu2 | Which::Both)
                .then(|| search::mu2(&g, *t, &budget))
                .transpose()?;
            let status = [&mu1, &mu2]
                .into_iter()
                .flatten()
                .fold(Status::Exact, |s, o| s.and(o.status));
            let body = match format {
                Format::Json => match (&mu1, &mu2) {
                    (Some(a), Some(b)) => json_text(&json!({ "t": t, "mu1": a, "mu2": b })),
                    (Some(o), None) | (None, Some(o)) => json_text(o),
                    (None, None) => unreachable!("at least one of mu1/mu2"),
                },
                _ => {
                    let mut s = String::new();
                    for (name, o) in [("mu1", &mu1), ("mu2", &mu2)] {
                        if let Some(o) = o {
                            writeln!(s, "{}", outcome_line(name, &g, *t, o)).unwrap();
                        }
                    }
                    s
                }
            };
            Ok(Emitted {
                body,
                code: exit_for(status, common),
            })
        }
        Command::MuTable { graph } => {
            require(format, &[Format::Human, Format::Json, Format::Csv], "mu-table")?;
            let g = parse_graph_spec(graph)?;
            let table = analysis::mu_table(&g, &budget_from(common)?)?;
            let status = table
                .rows
                .iter()
                .fold(Status::Exact, |s, r| s.and(r.mu1.status).and(r.mu2.status));
            let body = match format {
                Format::Json => json_text(&table),
                Format::Csv => table.to_csv(),
                _ => table_human(&table),
            };
            Ok(Emitted {
                body,
                code: exit_for(status, common),
            })
        }
        Command::MuParams { graph } => {
            require(format, &[Format::Human, Format::Json], "mu-params")?;
            let g = parse_graph_spec(graph)?;
            let params = analysis::mu_params(&analysis::mu_table(&g, &budget_from(common)?)?);
            let status = [params.mu11, params.mu12, params.mu21, params.mu22]
                .iter()
                .fold(Status::Exact, |s, p| s.and(p.status));
            let body = match format {
                Format::Json => json_text(&params),
                _ => {
                    let mut s = format!("{g}\n");
                    for (name, p) in [
                        ("mu11", params.mu11),
                        ("mu12", params.mu12),
                        ("mu21", params.mu21),
                        ("mu22", params.mu22),
                    ] {
                        let tag = if p.status.is_exact() { "" } else { " (bound)" };
                        writeln!(s, "{name} = {} at t={}{tag}", p.value, p.t).unwrap();
                    }
                    s
                }
            };
            Ok(Emitted {
                body,
                code: exit_for(status, common),
            })
        }
        Command::Game { graph, objective } => {
            require(format, &[Format::Human, Format::Json], "game")?;
            let g = parse_graph_spec(graph)?;
            let objective = match objective {
                ObjectiveArg::Mu21 => GameObjective::Mu21,
                ObjectiveArg::Mu12 => GameObjective::Mu12,
            };
            let result = analysis::game_solve(&g, objective, &budget_from(common)?)?;
            let body = match format {
                Format::Json => json_text(&result),
                _ => format!(
                    "{g}: Alice picks t={}, Bob reaches f={}{}\n  coloring: {:?}\n",
                    result.alice_t,
                    result.value,
                    if result.status.is_exact() {
                        ""
                    } else {
                        " (budget exhausted)"
                    },
                    result
                        .bob_witness
                        .as_ref()
                        .map(|w| w.colors().to_vec())
                        .unwrap_or_default()
                ),
            };
            Ok(Emitted {
                body,
                code: exit_for(result.status, common),
            })
        }
        Command::Construct { kind, m, n, steps, q } => {
            require(format, &[Format::Human, Format::Json, Format::Dot], "construct")?;
            let (m, n) = analysis::normalize(*m, *n)?;
            let g = Graph::complete_bipartite(m, n)?;
            let (coloring_out, trace) = match kind {
                ConstructionKind::Staircase => (constructions::staircase_coloring(m, n)?, None),
                ConstructionKind::BlockY => {
                    let q = q.unwrap_or(m.div_ceil(n));
                    (constructions::block_interval_on_y(m, n, q)?, None)
                }
                ConstructionKind::Collapse => {
                    let xi = constructions::staircase_coloring(m, n)?;
                    let trace = constructions::collapse_sequence(&g, &xi, steps.unwrap_or(n - 1))?;
                    (trace.stages.last().expect("stage 0").clone(), Some(trace))
                }
            };
            let body = match (format, &trace) {
                (Format::Dot, _) => coloring::to_dot(&g, &coloring_out)?,
                (Format::Json, Some(trace)) => json_text(trace),
                (Format::Json, None) => json_text(&Constructed {
                    graph: g.to_json(),
                    coloring: &coloring_out,
                    f: coloring::interval_count(&g, &coloring_out)?,
                }),
                (_, Some(trace)) => {
                    let mut s = format!("collapse sequence on {g}\n");
                    for (j, stage) in trace.stages.iter().enumerate() {
                        writeln!(
                            s,
                            "stage {j}: t={} f={} colors={:?}",
                            stage.t(),
                            trace.f_values[j],
                            stage.colors()
                        )
                        .unwrap();
                    }
                    s
                }
                (_, None) => {
                    let summary = coloring::summarize(&g, &coloring_out)?;
                    let mut s = format!("{g}, t={}, f={}\n", coloring_out.t(), summary.f);
                    for (e, &(u, v)) in g.edges().iter().enumerate() {
                        writeln!(
                            s,
                            "  {}-{}: {}",
                            g.vertex_name(u),
                            g.vertex_name(v),
                            coloring_out.color(e)
                        )
                        .unwrap();
                    }
                    s
                }
            };
            Ok(ok(body))
        }
        Command::Wrange { graph, part } => {
            require(format, &[Format::Human, Format::Json], "wrange")?;
            let g = parse_graph_spec(graph)?;
            let selection = match part {
                PartArg::X => VertexSelection::X,
                PartArg::Y => VertexSelection::Y,
                PartArg::V => VertexSelection::All,
            };
            if selection != VertexSelection::All && g.parts().is_none() {
                return Err(CliError::Usage("--part X/Y needs a graph with part labels".into()));
            }
            let wr = search::w_range(&g, &selection.resolve(&g), &budget_from(common)?)?;
            let status = if wr.all_exact() {
                Status::Exact
            } else {
                Status::BudgetExhausted
            };
            let body = match format {
                Format::Json => json_text(&json!({
                    "w": wr.w().map(|x| x.0),
                    "W": wr.big_w().map(|x| x.0),
                    "feasible": wr.feasible_ts(),
                    "contiguous": wr.is_contiguous(),
                    "exact": wr.all_exact(),
                    "rows": wr.rows,
                })),
                _ => {
                    let show = |x: Option<(u32, Status)>| match x {
                        Some((t, Status::Exact)) => t.to_string(),
                        Some((t, _)) => format!("{t}?"),
                        None => "none".into(),
                    };
                    format!(
                        "{g} part {part:?}: w={} W={} feasible t: {:?}{}\n",
                        show(wr.w()),
                        show(wr.big_w()),
                        wr.feasible_ts(),
                        if wr.is_contiguous() { "" } else { " (not contiguous)" }
                    )
                }
            };
            Ok(Emitted {
                body,
                code: exit_for(status, common),
            })
        }
        Command::ClosedForm { form, m, n } => {
            require(format, &[Format::Human, Format::Json], "closed-form")?;
            let (name, value) = match form {
                FormArg::Mu21 => ("mu21", analysis::mu21_closed_form(*m, *n)?),
                FormArg::LowerW => ("w", analysis::w_closed(*m, *n)?),
                FormArg::UpperW => ("W", analysis::big_w_closed(*m, *n)?),
                FormArg::WY => ("wY", analysis::wy_closed(*m, *n)?),
            };
            Ok(ok(match format {
                Format::Json => json_text(&json!({ "form": name, "m": m, "n": n, "value": value })),
                _ => format!("{value}\n"),
            }))
        }
        Command::Verify { max_m, max_n } => {
            require(format, &[Format::Human, Format::Json, Format::Csv], "verify")?;
            let report = analysis::verify_suite(*max_m, *max_n, &budget_from(common)?)?;
            let body = match format {
                Format::Json => json_text(&report),
                Format::Csv => {
                    let mut s = String::from("claim,m,n,t,expected,got,status\n");
                    for r in &report.records {
                        writeln!(
                            s,
                            "{},{},{},{},{},{},{}",
                            r.claim,
                            r.pair[0],
                            r.pair[1],
                            r.t.map(|t| t.to_string()).unwrap_or_default(),
                            r.expected,
                            r.got.map(|g| g.to_string()).unwrap_or_default(),
                            match r.status {
                                ClaimStatus::Pass => "pass",
                                ClaimStatus::Fail => "fail",
                                ClaimStatus::Skipped => "skipped",
                            }
                        )
                        .unwrap();
                    }
                    s
                }
                _ => report.to_human(),
            };
            let code = if report.count(ClaimStatus::Fail) > 0 {
                EXIT_CLAIM_FAILED
            } else if report.count(ClaimStatus::Skipped) > 0 {
                exit_for(Status::BudgetExhausted, common)
            } else {
                EXIT_OK
            };
            Ok(Emitted { body, code })
        }
    }
}

/// Parses arguments, runs, writes output; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match run(&cli) {
        Ok(emitted) => {
            let written = match &cli.common.output {
                Some(path) => {
                    std::fs::write(path, &emitted.body).map_err(|e| format!("cannot write {}: {e}", path.display()))
                }
                None => {
                    print!("{}", emitted.body);
                    Ok(())
                }
            };
            if let Err(msg) = written {
                eprintln!("error: {msg}");
                return EXIT_USAGE;
            }
            if emitted.code == EXIT_BUDGET {
                eprintln!("error: budget exhausted and --require-exact was set");
            }
            emitted.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}
