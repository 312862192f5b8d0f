//! Command-line front end: clique counts, static solvers, update replay and
//! graph generation.

pub mod report;

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use dkc_core::dynamic::{parse_update_stream, replay};
use dkc_core::oracle::{build_clique_graph, exact_mis, DEFAULT_CLIQUE_CAP};
use dkc_core::solvers::{solve_gc_with_stats, solve_lp_with_stats, DEFAULT_GC_CAP_BYTES};
use dkc_core::{
    build_ordering, load_edge_list, node_scores_of, solve_hg, DynamicState, GcOptions, Graph,
    LpOptions, OrderingKind, SolutionSet, TieBreak,
};

pub use report::RunReport;
use report::{peak_rss_kb, quantile_us, secs, DynamicSummary, ScoreSummary};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    File {
        path: PathBuf,
        source: dkc_core::Error,
    },
    #[error(transparent)]
    Core(#[from] dkc_core::Error),
    #[error("{}: {source}", path.display())]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    /// 2 for malformed input, 3 for capacity and time limits, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        use dkc_core::Error as E;
        let core = match self {
            CliError::File { source, .. } | CliError::Core(source) => source,
            CliError::Write { .. } => return 1,
        };
        match core {
            E::Parse { .. } => 2,
            E::MemoryGuard { .. } | E::Capacity { .. } | E::Timeout { .. } => 3,
            _ => 1,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(
    name = "dkc",
    version,
    about = "Disjoint k-clique sets on large graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count k-cliques and summarize per-node clique counts.
    Count(CountArgs),
    /// Compute a disjoint k-clique set.
    Solve(SolveArgs),
    /// Solve, then maintain the set while replaying an update stream.
    Dynamic(DynamicArgs),
    /// Write a Watts-Strogatz graph as an edge list.
    Gen(GenArgs),
}

#[derive(Debug, Args)]
pub struct Common {
    /// Edge-list file, one `u v` pair per line.
    pub graph: PathBuf,
    /// Clique size, at least 3.
    #[arg(long, value_parser = clap::value_parser!(u32).range(3..))]
    pub k: u32,
    /// Print one JSON object instead of key=value lines.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct CountArgs {
    #[command(flatten)]
    pub common: Common,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    Hg,
    Gc,
    L,
    Lp,
    Opt,
}

impl Algo {
    fn tag(self) -> &'static str {
        match self {
            Algo::Hg => "hg",
            Algo::Gc => "gc",
            Algo::L => "l",
            Algo::Lp => "lp",
            Algo::Opt => "opt",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OrderingArg {
    Degree,
    Score,
    Natural,
}

#[derive(Debug, Args)]
pub struct SolverFlags {
    /// Worker threads for scoring and heap setup; 0 picks automatically.
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
    /// Node ordering for the basic framework (hg).
    #[arg(long, value_enum, default_value_t = OrderingArg::Degree)]
    pub ordering: OrderingArg,
    /// Disable score-driven pruning.
    #[arg(long)]
    pub no_prune: bool,
    /// Break equal-score ties by discovery order instead of a fixed clique order.
    #[arg(long)]
    pub relaxed_ties: bool,
    /// Memory cap for gc's materialized cliques.
    #[arg(long, default_value_t = DEFAULT_GC_CAP_BYTES)]
    pub gc_cap_bytes: u64,
    /// Time budget for opt.
    #[arg(long, default_value_t = 60)]
    pub opt_timeout_secs: u64,
    /// Write the solution here, one clique per line.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

impl SolverFlags {
    fn ties(&self) -> TieBreak {
        if self.relaxed_ties {
            TieBreak::FirstFound
        } else {
            TieBreak::Canonical
        }
    }
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_enum, default_value_t = Algo::Lp)]
    pub algo: Algo,
    #[command(flatten)]
    pub flags: SolverFlags,
}

#[derive(Debug, Args)]
pub struct DynamicArgs {
    #[command(flatten)]
    pub common: Common,
    /// Update stream of `+ u v` / `- u v` lines.
    #[arg(long)]
    pub stream: PathBuf,
    /// Cross-check the whole state against a rebuild after every update.
    #[arg(long)]
    pub verify: bool,
    #[command(flatten)]
    pub flags: SolverFlags,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long)]
    pub n: usize,
    /// Even, below n.
    #[arg(long)]
    pub mean_degree: usize,
    #[arg(long, default_value_t = 0.1)]
    pub rewire_prob: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Destination file; standard output when absent.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long)]
    pub json: bool,
}

/// Runs a parsed command and returns its report.
pub fn run(cli: &Cli) -> CliResult<RunReport> {
    match &cli.command {
        Command::Count(a) => cmd_count(&a.common.graph, a.common.k as usize),
        Command::Solve(a) => cmd_solve(&a.common.graph, a.common.k as usize, a.algo, &a.flags),
        Command::Dynamic(a) => cmd_dynamic(a),
        Command::Gen(a) => cmd_gen(a),
    }
}

pub fn wants_json(cli: &Cli) -> bool {
    match &cli.command {
        Command::Count(a) => a.common.json,
        Command::Solve(a) => a.common.json,
        Command::Dynamic(a) => a.common.json,
        Command::Gen(a) => a.json,
    }
}

pub fn load_graph(path: &Path) -> CliResult<Graph> {
    let file = File::open(path).map_err(|e| CliError::File {
        path: path.to_owned(),
        source: e.into(),
    })?;
    load_edge_list(BufReader::new(file)).map_err(|source| CliError::File {
        path: path.to_owned(),
        source,
    })
}

fn timed_load(path: &Path) -> CliResult<(Graph, Duration)> {
    let start = Instant::now();
    let g = load_graph(path)?;
    Ok((g, start.elapsed()))
}

/// Solution as text: sorted external labels per line, lines sorted.
pub fn format_solution(g: &Graph, s: &SolutionSet) -> String {
    let mut rows: Vec<Vec<u64>> = s
        .iter()
        .map(|(_, c)| {
            let mut labels: Vec<u64> = c.members().iter().map(|&u| g.label(u)).collect();
            labels.sort_unstable();
            labels
        })
        .collect();
    rows.sort_unstable();
    let mut out = String::new();
    for row in rows {
        let line: Vec<String> = row.iter().map(u64::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// Reads a solution file back against its graph.
pub fn parse_solution(g: &Graph, k: usize, text: &str) -> dkc_core::Result<SolutionSet> {
    let mut cliques = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let parse_err = |message: String| dkc_core::Error::Parse {
            line: idx + 1,
            message,
        };
        let members = line
            .split_whitespace()
            .map(|tok| {
                let label: u64 = tok
                    .parse()
                    .map_err(|_| parse_err(format!("invalid label {tok:?}")))?;
                g.node_of_label(label)
                    .ok_or_else(|| parse_err(format!("unknown label {label}")))
            })
            .collect::<dkc_core::Result<Vec<_>>>()?;
        if members.len() != k {
            return Err(parse_err(format!(
                "expected {k} labels, got {}",
                members.len()
            )));
        }
        cliques.push(dkc_core::Clique::new(members));
    }
    let s = SolutionSet::from_cliques(g.n(), cliques)?;
    s.validate(g, k).map_err(dkc_core::Error::InvalidSolution)?;
    Ok(s)
}

fn write_solution(path: Option<&Path>, g: &Graph, s: &SolutionSet) -> CliResult<()> {
    if let Some(path) = path {
        std::fs::write(path, format_solution(g, s)).map_err(|source| CliError::Write {
            path: path.to_owned(),
            source,
        })?;
    }
    Ok(())
}

fn base_report(command: &str, g: &Graph, k: Option<usize>, load: Duration) -> RunReport {
    RunReport {
        command: command.into(),
        k,
        n: g.n(),
        m: g.m(),
        load_secs: secs(load),
        ..RunReport::default()
    }
}

pub fn cmd_count(path: &Path, k: usize) -> CliResult<RunReport> {
    let (g, load) = timed_load(path)?;
    let start = Instant::now();
    let table = node_scores_of(&g, k);
    let mut report = base_report("count", &g, Some(k), load);
    report.score_secs = Some(secs(start.elapsed()));
    report.tau = Some(table.tau());
    let scores = table.scores();
    report.scores = Some(ScoreSummary {
        min: scores.iter().copied().min().unwrap_or(0),
        max: scores.iter().copied().max().unwrap_or(0),
        mean: if scores.is_empty() {
            0.0
        } else {
            scores.iter().sum::<u64>() as f64 / scores.len() as f64
        },
        covered: scores.iter().filter(|&&s| s > 0).count(),
    });
    report.peak_rss_kb = peak_rss_kb();
    Ok(report)
}

/// Runs one static algorithm on a loaded graph.
pub fn solve_graph(
    g: &Graph,
    k: usize,
    algo: Algo,
    flags: &SolverFlags,
    report: &mut RunReport,
) -> CliResult<SolutionSet> {
    let lp_opts = LpOptions {
        pruning: algo != Algo::L && !flags.no_prune,
        ties: flags.ties(),
        threads: flags.threads,
    };
    let s = match algo {
        Algo::Hg => {
            let start = Instant::now();
            let kind = match flags.ordering {
                OrderingArg::Degree => OrderingKind::Degree,
                OrderingArg::Score => OrderingKind::NodeScore,
                OrderingArg::Natural => OrderingKind::Natural,
            };
            let table = (kind == OrderingKind::NodeScore).then(|| node_scores_of(g, k));
            if let Some(t) = &table {
                report.tau = Some(t.tau());
                report.score_secs = Some(secs(start.elapsed()));
            }
            let ordering = build_ordering(g, kind, table.as_ref().map(|t| t.scores()))?;
            let start = Instant::now();
            let s = solve_hg(g, k, &ordering);
            report.solve_secs = Some(secs(start.elapsed()));
            s
        }
        Algo::Gc => {
            let opts = GcOptions {
                ties: flags.ties(),
                cap_bytes: flags.gc_cap_bytes,
            };
            let (s, stats) = solve_gc_with_stats(g, k, &opts)?;
            report.tau = stats.tau;
            report.score_secs = Some(secs(stats.score_time));
            report.solve_secs = Some(secs(stats.solve_time));
            s
        }
        Algo::L | Algo::Lp => {
            let (s, stats) = solve_lp_with_stats(g, k, &lp_opts);
            report.tau = stats.tau;
            report.score_secs = Some(secs(stats.score_time));
            report.solve_secs = Some(secs(stats.solve_time));
            s
        }
        Algo::Opt => {
            let start = Instant::now();
            let cg = build_clique_graph(g, k, DEFAULT_CLIQUE_CAP)?;
            report.tau = Some(cg.len() as u64);
            let s = exact_mis(&cg, Some(Duration::from_secs(flags.opt_timeout_secs)))?;
            report.solve_secs = Some(secs(start.elapsed()));
            s
        }
    };
    Ok(s)
}

pub fn cmd_solve(path: &Path, k: usize, algo: Algo, flags: &SolverFlags) -> CliResult<RunReport> {
    let (g, load) = timed_load(path)?;
    let mut report = base_report("solve", &g, Some(k), load);
    report.algorithm = Some(algo.tag().into());
    let s = solve_graph(&g, k, algo, flags, &mut report)?;
    write_solution(flags.output.as_deref(), &g, &s)?;
    report.solution_size = Some(s.len());
    report.peak_rss_kb = peak_rss_kb();
    Ok(report)
}

pub fn cmd_dynamic(args: &DynamicArgs) -> CliResult<RunReport> {
    let k = args.common.k as usize;
    let (g, load) = timed_load(&args.common.graph)?;
    let stream = File::open(&args.stream)
        .map_err(dkc_core::Error::from)
        .and_then(|f| parse_update_stream(BufReader::new(f)))
        .map_err(|source| CliError::File {
            path: args.stream.clone(),
            source,
        })?;
    let mut report = base_report("dynamic", &g, Some(k), load);
    report.algorithm = Some("lp".into());
    let s = solve_graph(&g, k, Algo::Lp, &args.flags, &mut report)?;
    let initial_size = s.len();
    let mut state = DynamicState::new(g, k, s)?;
    let metrics = replay(&mut state, &stream, args.verify)?;
    write_solution(
        args.flags.output.as_deref(),
        state.graph(),
        state.solution(),
    )?;
    report.m = state.graph().m();
    report.solution_size = Some(state.solution().len());
    report.dynamic = Some(DynamicSummary {
        ops: stream.len(),
        op_errors: metrics.errors.len(),
        initial_size,
        final_index_size: state.index().len(),
        latency_p50_us: quantile_us(&metrics.latencies, 0.5),
        latency_p90_us: quantile_us(&metrics.latencies, 0.9),
        latency_p99_us: quantile_us(&metrics.latencies, 0.99),
        latency_max_us: quantile_us(&metrics.latencies, 1.0),
        total_update_secs: secs(metrics.total_time()),
        size_trajectory: metrics.sizes,
    });
    for (op, message) in &metrics.errors {
        eprintln!("warning: update {} skipped: {message}", op + 1);
    }
    report.peak_rss_kb = peak_rss_kb();
    Ok(report)
}

pub fn cmd_gen(args: &GenArgs) -> CliResult<RunReport> {
    let start = Instant::now();
    let g =
        dkc_core::generate::watts_strogatz(args.n, args.mean_degree, args.rewire_prob, args.seed)?;
    let elapsed = start.elapsed();
    let result = match &args.output {
        Some(path) => File::create(path)
            .and_then(|f| {
                let mut w = BufWriter::new(f);
                g.write_edge_list(&mut w)?;
                w.flush()
            })
            .map_err(|source| CliError::Write {
                path: path.clone(),
                source,
            }),
        None => {
            let stdout = std::io::stdout();
            let mut w = BufWriter::new(stdout.lock());
            g.write_edge_list(&mut w)
                .and_then(|_| w.flush())
                .map_err(|source| CliError::Write {
                    path: "<stdout>".into(),
                    source,
                })
        }
    };
    result?;
    let mut report = base_report("gen", &g, None, Duration::ZERO);
    report.solve_secs = Some(secs(elapsed));
    Ok(report)
}
