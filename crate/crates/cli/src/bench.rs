//! Benchmark over random regular graphs, reported as CSV.

use std::io::Write;
use std::time::Instant;

use c4free_core::gen::random_regular;
use c4free_core::pipeline::{decompose, PipelineConfig, Strategy};
use c4free_core::verify::verify_c4_free_colouring;
use rayon::prelude::*;
use serde::Serialize;

use crate::report::strategy_name;
use crate::CliError;

pub const HEADER: &str = "n,d,Delta,strategy,alpha,seed,colours,sqrt_ratio,verify_ok,millis";

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRow {
    pub n: usize,
    pub d: usize,
    #[serde(rename = "Delta")]
    pub delta: usize,
    pub strategy: &'static str,
    pub alpha: f64,
    pub seed: u64,
    pub colours: u32,
    pub sqrt_ratio: f64,
    pub verify_ok: bool,
    pub millis: u64,
}

#[derive(Clone, Debug)]
pub struct BenchPlan {
    pub n: usize,
    pub degrees: Vec<usize>,
    pub seeds: Vec<u64>,
    pub strategies: Vec<Strategy>,
    /// Template; strategy and seed are set per cell.
    pub config: PipelineConfig,
    pub jobs: usize,
    /// Report 0 ms so output is reproducible byte for byte.
    pub timing: bool,
}

impl BenchPlan {
    /// Cells in output order: degree, then seed, then strategy.
    pub fn cells(&self) -> Vec<(usize, u64, Strategy)> {
        let mut out = Vec::new();
        for &d in &self.degrees {
            for &seed in &self.seeds {
                for &s in &self.strategies {
                    out.push((d, seed, s));
                }
            }
        }
        out
    }
}

fn run_cell(plan: &BenchPlan, d: usize, seed: u64, strategy: Strategy) -> Result<BenchRow, CliError> {
    let g = random_regular(plan.n, d, seed).map_err(|e| CliError::Precondition(e.to_string()))?;
    let mut config = plan.config;
    config.strategy = strategy;
    config.frugal.seed = seed;
    let start = Instant::now();
    let (col, stats) = decompose(&g, &config);
    let millis = if plan.timing { start.elapsed().as_millis() as u64 } else { 0 };
    let report = verify_c4_free_colouring(&g, &col).expect("colouring is total");
    if !report.is_ok() {
        return Err(CliError::Verification(format!(
            "n={} d={d} seed={seed} strategy={}: {}",
            plan.n,
            strategy_name(strategy),
            report.summary()
        )));
    }
    Ok(BenchRow {
        n: plan.n,
        d,
        delta: g.max_degree(),
        strategy: strategy_name(strategy),
        alpha: config.frugal.alpha,
        seed,
        colours: col.class_count(),
        sqrt_ratio: stats.sqrt_ratio,
        verify_ok: true,
        millis,
    })
}

/// Runs every cell, up to `jobs` at a time, and returns the rows in cell
/// order. The first failing cell aborts the run.
pub fn run(plan: &BenchPlan) -> Result<Vec<BenchRow>, CliError> {
    let cells = plan.cells();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(plan.jobs.max(1))
        .build()
        .map_err(|e| CliError::Precondition(e.to_string()))?;
    pool.install(|| {
        cells
            .par_iter()
            .map(|&(d, seed, s)| run_cell(plan, d, seed, s))
            .collect()
    })
}

pub fn write_csv<W: Write>(rows: &[BenchRow], w: W) -> Result<(), CliError> {
    let mut out = csv::WriterBuilder::new().has_headers(false).from_writer(w);
    out.write_record(HEADER.split(','))?;
    for row in rows {
        out.serialize(row)?;
    }
    out.flush()?;
    Ok(())
}
