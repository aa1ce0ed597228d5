//! Flat JSON documents for decomposition and frugal runs.

use c4free_core::frugal::{FrugalParams, FrugalResult, Mode};
use c4free_core::pipeline::{PipelineStats, Strategy};
use serde::Serialize;

pub fn strategy_name(s: Strategy) -> &'static str {
    match s {
        Strategy::Pipeline => "pipeline",
        Strategy::Forest => "forest",
        Strategy::Greedy => "greedy",
        Strategy::Auto => "auto",
    }
}

pub fn mode_name(m: Mode) -> &'static str {
    match m {
        Mode::Strict => "strict",
        Mode::Empirical => "empirical",
    }
}

#[derive(Debug, Serialize)]
pub struct DecomposeReport {
    pub strategy: &'static str,
    pub mode: &'static str,
    pub alpha: f64,
    pub seed: u64,
    pub vertices: usize,
    pub edges: usize,
    pub delta: usize,
    pub threshold: usize,
    pub iterations: usize,
    pub iteration_delta: Vec<usize>,
    pub iteration_core_edges: Vec<usize>,
    pub iteration_peeled_edges: Vec<usize>,
    pub iteration_classes: Vec<u32>,
    pub iteration_complete_order: Vec<usize>,
    pub iteration_retention_min: Vec<f64>,
    pub iteration_retention_mean: Vec<f64>,
    pub iteration_resamples: Vec<u32>,
    pub iteration_next_delta: Vec<usize>,
    pub remainder_edges: usize,
    pub remainder_degeneracy: usize,
    pub remainder_classes: u32,
    pub total_classes: u32,
    pub sqrt_ratio: f64,
    pub degraded: bool,
    pub verified: bool,
    pub millis: u64,
}

impl DecomposeReport {
    pub fn new(stats: &PipelineStats, params: &FrugalParams, vertices: usize, edges: usize) -> Self {
        let it = &stats.iterations;
        DecomposeReport {
            strategy: strategy_name(stats.strategy),
            mode: mode_name(params.mode),
            alpha: params.alpha,
            seed: params.seed,
            vertices,
            edges,
            delta: stats.delta,
            threshold: stats.threshold,
            iterations: it.len(),
            iteration_delta: it.iter().map(|i| i.delta).collect(),
            iteration_core_edges: it.iter().map(|i| i.core_edges).collect(),
            iteration_peeled_edges: it.iter().map(|i| i.peeled_edges).collect(),
            iteration_classes: it.iter().map(|i| i.classes).collect(),
            iteration_complete_order: it.iter().map(|i| i.complete_order).collect(),
            iteration_retention_min: it.iter().map(|i| i.retention.min).collect(),
            iteration_retention_mean: it.iter().map(|i| i.retention.mean).collect(),
            iteration_resamples: it.iter().map(|i| i.resamples).collect(),
            iteration_next_delta: it.iter().map(|i| i.next_delta).collect(),
            remainder_edges: stats.remainder_edges,
            remainder_degeneracy: stats.remainder_degeneracy,
            remainder_classes: stats.remainder_classes,
            total_classes: stats.total_classes,
            sqrt_ratio: stats.sqrt_ratio,
            degraded: stats.degraded,
            verified: true,
            millis: stats.millis,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct FrugalReport {
    pub mode: &'static str,
    pub alpha: f64,
    pub seed: u64,
    pub delta: usize,
    pub palette: u32,
    pub edges: usize,
    pub h_edges: usize,
    pub retention_min: f64,
    pub retention_mean: f64,
    pub required_retention: f64,
    pub resamples_used: u32,
    pub degraded: bool,
    pub side_a: usize,
    pub side_b: usize,
    pub phase1_uncoloured: [usize; 2],
    pub phase1_removed: [usize; 2],
    pub phase2_removed: [usize; 2],
    pub verified: bool,
}

impl FrugalReport {
    pub fn new(r: &FrugalResult, params: &FrugalParams, delta: usize, edges: usize) -> Self {
        let side_a = r.side.iter().filter(|&&s| s == c4free_core::frugal::Side::A).count();
        FrugalReport {
            mode: mode_name(params.mode),
            alpha: params.alpha,
            seed: params.seed,
            delta,
            palette: r.chi.palette(),
            edges,
            h_edges: r.h.edge_count(),
            retention_min: r.retention.min,
            retention_mean: r.retention.mean,
            required_retention: params.required_retention(),
            resamples_used: r.resamples_used,
            degraded: r.degraded,
            side_a,
            side_b: r.side.len() - side_a,
            phase1_uncoloured: r.rounds.each_ref().map(|x| x.phase1_uncoloured),
            phase1_removed: r.rounds.each_ref().map(|x| x.phase1_removed),
            phase2_removed: r.rounds.each_ref().map(|x| x.phase2_removed),
            verified: true,
        }
    }
}
