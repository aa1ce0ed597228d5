//! Command-line definitions and their implementations.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use c4free_core::frugal::{frugal_colour, DegreeThreshold, FrugalParams, Mode};
use c4free_core::gen;
use c4free_core::graph::{EdgeColouring, Graph};
use c4free_core::oracle::{exact_ex_c4, exact_phi_c4, phi_lower_bound, OracleLimits};
use c4free_core::pipeline::{decompose, PipelineConfig, Strategy};
use c4free_core::sidon::{complete_c4_free_colouring, two_sqrt_budget, verify_complete, CompleteOptions};
use c4free_core::verify::{verify_c4_free_colouring, verify_forest_colouring, VerificationReport, Violation};

use crate::bench::{self, BenchPlan};
use crate::io;
use crate::report::{strategy_name, DecomposeReport, FrugalReport};
use crate::{CliError, EXIT_INVALID, EXIT_OK};

#[derive(Debug, Parser)]
#[command(name = "c4free", version, about = "Partition graph edges into classes without 4-cycles")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decompose an edge list into C4-free classes.
    Decompose(DecomposeArgs),
    /// Check a colouring file: every class C4-free, optionally a forest.
    Verify(VerifyArgs),
    /// Write a generated graph as an edge list.
    Gen(GenArgs),
    /// C4-free colouring of the complete graph K_t.
    Complete(CompleteArgs),
    /// Frugal colouring of a spanning subgraph, with a retention report.
    Frugal(FrugalArgs),
    /// Exact values for tiny instances.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Lower bound on the classes needed by any graph of maximum degree D.
    Bound(BoundArgs),
    /// Decompose random regular graphs and write one CSV row per run.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Strict,
    Empirical,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Auto,
    Pipeline,
    Forest,
    Greedy,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Auto => Strategy::Auto,
            StrategyArg::Pipeline => Strategy::Pipeline,
            StrategyArg::Forest => Strategy::Forest,
            StrategyArg::Greedy => Strategy::Greedy,
        }
    }
}

/// `ln`, `log2`, or a fixed positive integer.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThresholdArg(pub DegreeThreshold);

impl FromStr for ThresholdArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ln" => Ok(ThresholdArg(DegreeThreshold::LnSquared)),
            "log2" => Ok(ThresholdArg(DegreeThreshold::Log2Squared)),
            _ => match s.parse::<usize>() {
                Ok(k) if k >= 1 => Ok(ThresholdArg(DegreeThreshold::Fixed(k))),
                _ => Err(format!("expected ln, log2 or a positive integer, got {s:?}")),
            },
        }
    }
}

#[derive(Clone, Debug, Args)]
pub struct EngineArgs {
    #[arg(long, default_value_t = 2.0)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = ModeArg::Empirical)]
    pub mode: ModeArg,
    /// Minimum retention accepted in empirical mode.
    #[arg(long, default_value_t = 0.05)]
    pub retention: f64,
    #[arg(long, default_value_t = 20)]
    pub max_resamples: u32,
    /// Degree threshold: ln, log2 (squared logarithms of Delta) or a number.
    #[arg(long, default_value = "ln")]
    pub threshold: ThresholdArg,
}

impl EngineArgs {
    pub fn params(&self) -> Result<FrugalParams, CliError> {
        let mode = match self.mode {
            ModeArg::Strict => Mode::Strict,
            ModeArg::Empirical => Mode::Empirical,
        };
        if !(self.alpha > 0.0 && self.alpha.is_finite()) {
            return Err(CliError::Precondition(format!("alpha must be positive, got {}", self.alpha)));
        }
        if mode == Mode::Strict && self.alpha <= 16.0 {
            return Err(CliError::Precondition(format!(
                "strict mode needs alpha > 16, got {}",
                self.alpha
            )));
        }
        if !(self.retention > 0.0 && self.retention < 1.0) {
            return Err(CliError::Precondition(format!(
                "retention must lie in (0, 1), got {}",
                self.retention
            )));
        }
        Ok(FrugalParams {
            alpha: self.alpha,
            seed: self.seed,
            max_resamples: self.max_resamples,
            mode,
            empirical_retention: self.retention,
            threshold: self.threshold.0,
            ..FrugalParams::default()
        })
    }

    pub fn pipeline(&self, strategy: Strategy, max_iterations: Option<usize>) -> Result<PipelineConfig, CliError> {
        let config = PipelineConfig {
            frugal: self.params()?,
            threshold: self.threshold.0,
            max_iterations,
            strategy,
            ..PipelineConfig::default()
        };
        config.validate().map_err(|e| CliError::Precondition(e.to_string()))?;
        Ok(config)
    }
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Colouring output; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// JSON statistics output.
    #[arg(long)]
    pub stats: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = StrategyArg::Auto)]
    pub strategy: StrategyArg,
    #[arg(long)]
    pub max_iterations: Option<usize>,
    /// Record 0 ms instead of the wall time.
    #[arg(long)]
    pub no_timing: bool,
    #[command(flatten)]
    pub engine: EngineArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Edge list the colouring must cover exactly; defaults to the
    /// colouring's own edges.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub colouring: PathBuf,
    /// Also require every class to be a forest.
    #[arg(long)]
    pub forest: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    Regular,
    Er,
    Tree,
    Complete,
    Cycle,
    Path,
    Star,
    Bipartite,
    Petersen,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub kind: GenKind,
    /// Vertex count (leaf count for stars).
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long)]
    pub p: Option<f64>,
    /// Part sizes for bipartite graphs, as `a,b`.
    #[arg(long, value_delimiter = ',')]
    pub parts: Vec<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CompleteArgs {
    #[arg(long)]
    pub t: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Extra classes tolerated above the 2 sqrt(t) budget before trying
    /// larger primes.
    #[arg(long, default_value_t = 0)]
    pub budget_slack: u32,
}

#[derive(Debug, Args)]
pub struct FrugalArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Vertex colouring output, `v c` per line.
    #[arg(long)]
    pub chi: Option<PathBuf>,
    /// Edge list of the subgraph H.
    #[arg(long)]
    pub h: Option<PathBuf>,
    #[command(flatten)]
    pub engine: EngineArgs,
}

#[derive(Debug, Subcommand)]
pub enum OracleCommand {
    /// Largest edge count of a C4-free graph on n <= 10 vertices.
    Ex {
        #[arg(long)]
        n: usize,
    },
    /// Least number of C4-free classes of a small graph.
    Phi {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 8)]
        max_colours: u32,
        #[arg(long, default_value_t = OracleLimits::default().max_edges)]
        max_edges: usize,
        #[arg(long, default_value_t = OracleLimits::default().max_nodes)]
        max_nodes: u64,
    },
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    #[arg(long)]
    pub delta: u64,
    /// Value of ex(Delta + 1, C4) to use instead of the built-in one.
    #[arg(long)]
    pub ex: Option<u64>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long)]
    pub n: usize,
    /// Comma-separated degrees; may be empty.
    #[arg(long, default_value = "")]
    pub d_list: String,
    /// Comma-separated seeds.
    #[arg(long, default_value = "0")]
    pub seeds: String,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "pipeline")]
    pub strategies: Vec<StrategyArg>,
    /// CSV output; stdout when absent.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    #[arg(long)]
    pub max_iterations: Option<usize>,
    #[arg(long)]
    pub no_timing: bool,
    #[command(flatten)]
    pub engine: EngineArgs,
}

fn parse_list<T: FromStr>(flag: &str, text: &str) -> Result<Vec<T>, CliError> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse()
                .map_err(|_| CliError::Precondition(format!("--{flag}: cannot parse {s:?}")))
        })
        .collect()
}

pub fn load_graph(path: &Path) -> Result<Graph, CliError> {
    let reader = io::open(path).map_err(|source| CliError::File {
        path: path.to_path_buf(),
        source,
    })?;
    io::read_edge_list(reader).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

fn load_colouring(path: &Path) -> Result<(Graph, Vec<u32>), CliError> {
    let reader = io::open(path).map_err(|source| CliError::File {
        path: path.to_path_buf(),
        source,
    })?;
    io::read_colouring(reader).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

fn create(path: Option<&Path>) -> Result<impl Write, CliError> {
    io::create(path).map_err(|source| CliError::File {
        path: path.map(Path::to_path_buf).unwrap_or_else(|| PathBuf::from("-")),
        source,
    })
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<u8, CliError> {
    match cli.command {
        Command::Decompose(a) => cmd_decompose(&a, out),
        Command::Verify(a) => cmd_verify(&a, out),
        Command::Gen(a) => cmd_gen(&a),
        Command::Complete(a) => cmd_complete(&a, out),
        Command::Frugal(a) => cmd_frugal(&a, out),
        Command::Oracle(c) => cmd_oracle(&c, out),
        Command::Bound(a) => cmd_bound(&a, out),
        Command::Bench(a) => cmd_bench(&a, out),
    }
}

pub fn cmd_decompose(a: &DecomposeArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let g = load_graph(&a.input)?;
    let config = a.engine.pipeline(a.strategy.into(), a.max_iterations)?;
    let start = Instant::now();
    let (col, mut stats) = decompose(&g, &config);
    if !a.no_timing {
        stats.millis = start.elapsed().as_millis() as u64;
    }
    io::write_colouring(&g, &col, create(a.out.as_deref())?)?;
    if let Some(path) = &a.stats {
        let report = DecomposeReport::new(&stats, &config.frugal, g.vertex_count(), g.edge_count());
        let mut w = create(Some(path))?;
        serde_json::to_writer_pretty(&mut w, &report)?;
        writeln!(w)?;
        w.flush()?;
    }
    let summary = format!(
        "classes={} delta={} sqrt_ratio={:.4} strategy={} iterations={}{}",
        col.class_count(),
        stats.delta,
        stats.sqrt_ratio,
        strategy_name(stats.strategy),
        stats.iterations.len(),
        if stats.degraded { " degraded" } else { "" }
    );
    if a.out.is_some() {
        writeln!(out, "{summary}")?;
    } else {
        eprintln!("{summary}");
    }
    Ok(EXIT_OK)
}

/// Checks a raw colouring against `g`. Class ids in the report are the
/// colours as written in the file.
pub fn verify_colouring(
    g: &Graph,
    colouring_graph: &Graph,
    raw: &[u32],
    forest: bool,
) -> (VerificationReport, u32, Option<String>) {
    // Align the file's colours with the edge ids of g.
    let mut colours = vec![u32::MAX; g.edge_count()];
    for (e, &(u, v)) in colouring_graph.edges().iter().enumerate() {
        let id = ((u as usize) < g.vertex_count() && (v as usize) < g.vertex_count())
            .then(|| g.edge_id(u, v))
            .flatten();
        match id {
            Some(id) => colours[id] = raw[e],
            None => return (VerificationReport::default(), 0, Some(format!("edge:{u}-{v},not-in-graph"))),
        }
    }
    if let Some(e) = colours.iter().position(|&c| c == u32::MAX) {
        let (u, v) = g.edge(e);
        return (VerificationReport::default(), 0, Some(format!("edge:{u}-{v},uncoloured")));
    }
    let mut distinct = colours.clone();
    distinct.sort_unstable();
    distinct.dedup();
    let col = EdgeColouring::compacted(colours);
    let mut report = verify_c4_free_colouring(g, &col).expect("colouring is total");
    if forest {
        let more = verify_forest_colouring(g, &col).expect("colouring is total");
        report.violations.extend(more.violations);
    }
    for v in report.violations.iter_mut() {
        match v {
            Violation::C4 { class, .. } | Violation::Cycle { class, .. } => *class = distinct[*class as usize],
            _ => {}
        }
    }
    (report, distinct.len() as u32, None)
}

pub fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let (cg, raw) = load_colouring(&a.colouring)?;
    let g = match &a.input {
        Some(p) => load_graph(p)?,
        None => cg.clone(),
    };
    let (report, classes, coverage) = verify_colouring(&g, &cg, &raw, a.forest);
    if let Some(w) = coverage {
        writeln!(out, "FAIL kind=coverage witness={w}")?;
        return Ok(EXIT_INVALID);
    }
    if report.is_ok() {
        writeln!(out, "OK classes={classes}")?;
        Ok(EXIT_OK)
    } else {
        writeln!(out, "{}", report.summary())?;
        Ok(EXIT_INVALID)
    }
}

pub fn cmd_gen(a: &GenArgs) -> Result<u8, CliError> {
    let need = |v: Option<usize>, flag: &str| {
        v.ok_or_else(|| CliError::Precondition(format!("--kind {:?} needs --{flag}", a.kind).to_lowercase()))
    };
    let g = match a.kind {
        GenKind::Regular => gen::random_regular(need(a.n, "n")?, need(a.d, "d")?, a.seed)
            .map_err(|e| CliError::Precondition(e.to_string()))?,
        GenKind::Er => {
            let p = a.p.ok_or_else(|| CliError::Precondition("--kind er needs --p".into()))?;
            if !(0.0..=1.0).contains(&p) {
                return Err(CliError::Precondition(format!("p must lie in [0, 1], got {p}")));
            }
            gen::erdos_renyi(need(a.n, "n")?, p, a.seed)
        }
        GenKind::Tree => gen::random_tree(need(a.n, "n")?, a.seed),
        GenKind::Complete => gen::complete_graph(need(a.n, "n")?),
        GenKind::Cycle => {
            let n = need(a.n, "n")?;
            if n < 3 {
                return Err(CliError::Precondition(format!("a cycle needs n >= 3, got {n}")));
            }
            gen::cycle(n)
        }
        GenKind::Path => gen::path(need(a.n, "n")?),
        GenKind::Star => gen::star(need(a.n, "n")?),
        GenKind::Bipartite => match a.parts[..] {
            [x, y] => gen::complete_bipartite(x, y),
            _ => return Err(CliError::Precondition("--kind bipartite needs --parts a,b".into())),
        },
        GenKind::Petersen => gen::petersen(),
    };
    io::write_edge_list(&g, create(a.out.as_deref())?)?;
    Ok(EXIT_OK)
}

pub fn cmd_complete(a: &CompleteArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    if a.t == 0 {
        return Err(CliError::Precondition("t must be at least 1".into()));
    }
    let opts = CompleteOptions {
        budget_slack: a.budget_slack,
        ..CompleteOptions::default()
    };
    let cc = complete_c4_free_colouring(a.t, opts);
    if !verify_complete(&cc) {
        return Err(CliError::Verification(format!("K_{} colouring has a 4-cycle", a.t)));
    }
    let (g, col) = cc.to_edge_colouring();
    io::write_colouring(&g, &col, create(a.out.as_deref())?)?;
    let summary = format!(
        "t={} classes={} budget={} prime={}",
        a.t,
        cc.class_count(),
        two_sqrt_budget(a.t),
        cc.prime().map_or_else(|| "none".to_string(), |q| q.to_string())
    );
    if a.out.is_some() {
        writeln!(out, "{summary}")?;
    } else {
        eprintln!("{summary}");
    }
    Ok(EXIT_OK)
}

pub fn cmd_frugal(a: &FrugalArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let g = load_graph(&a.input)?;
    let params = a.engine.params()?;
    let r = frugal_colour(&g, &params).map_err(|e| CliError::Precondition(e.to_string()))?;
    if let Some(path) = &a.chi {
        io::write_vertex_colouring(&r.chi, create(Some(path))?)?;
    }
    if let Some(path) = &a.h {
        io::write_edge_list(&r.h, create(Some(path))?)?;
    }
    let report = FrugalReport::new(&r, &params, g.max_degree(), g.edge_count());
    serde_json::to_writer_pretty(&mut *out, &report)?;
    writeln!(out)?;
    Ok(EXIT_OK)
}

pub fn cmd_oracle(c: &OracleCommand, out: &mut dyn Write) -> Result<u8, CliError> {
    match c {
        OracleCommand::Ex { n } => {
            let ex = exact_ex_c4(*n).map_err(|e| CliError::Precondition(e.to_string()))?;
            writeln!(out, "{ex}")?;
        }
        OracleCommand::Phi {
            input,
            max_colours,
            max_edges,
            max_nodes,
        } => {
            let g = load_graph(input)?;
            let limits = OracleLimits {
                max_edges: *max_edges,
                max_nodes: *max_nodes,
            };
            let phi = exact_phi_c4(&g, *max_colours, limits).map_err(|e| CliError::Precondition(e.to_string()))?;
            writeln!(out, "{phi}")?;
        }
    }
    Ok(EXIT_OK)
}

pub fn cmd_bound(a: &BoundArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    if a.ex == Some(0) {
        return Err(CliError::Precondition("--ex must be positive".into()));
    }
    if a.delta > 1 << 31 {
        return Err(CliError::Precondition(format!("delta {} is too large", a.delta)));
    }
    writeln!(out, "{}", phi_lower_bound(a.delta, a.ex))?;
    Ok(EXIT_OK)
}

pub fn bench_plan(a: &BenchArgs) -> Result<BenchPlan, CliError> {
    let config = a.engine.pipeline(Strategy::Pipeline, a.max_iterations)?;
    Ok(BenchPlan {
        n: a.n,
        degrees: parse_list("d-list", &a.d_list)?,
        seeds: parse_list("seeds", &a.seeds)?,
        strategies: a.strategies.iter().map(|&s| s.into()).collect(),
        config,
        jobs: a.jobs,
        timing: !a.no_timing,
    })
}

pub fn cmd_bench(a: &BenchArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let plan = bench_plan(a)?;
    let rows = bench::run(&plan)?;
    match &a.csv {
        Some(path) => bench::write_csv(&rows, create(Some(path))?)?,
        None => bench::write_csv(&rows, &mut *out)?,
    }
    Ok(EXIT_OK)
}
