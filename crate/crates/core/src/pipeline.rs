//! Full C4-free edge decomposition.
//!
//! The main route repeatedly peels low-degree vertices, finds a proper
//! 1-frugal colouring of a large subgraph `H` of the core, and splits `H`
//! by pulling back a C4-free colouring of the complete graph on the colour
//! set: the edge `uv` goes to the class of `{chi(u), chi(v)}`. Every 4-cycle
//! of `H` is rainbow under `chi`, so a monochromatic one would map onto a
//! 4-cycle of that complete-graph class. Everything peeled, plus what is
//! left at the end, has small degeneracy and is split into forests.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{DecomposeError, FrugalError};
use crate::frugal::{frugal_colour, DegreeThreshold, FrugalParams, FrugalResult, Mode, Retention};
use crate::graph::{EdgeColouring, Graph, Vertex, VertexColouring};
use crate::sidon::{complete_c4_free_colouring, CompleteColouring, CompleteOptions};
use crate::verify::{verify_c4_free_colouring, verify_forest_colouring, verify_frugal_proper};

/// Result of [`peel_low_degree`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Peeled {
    /// Surviving spanning subgraph: minimum degree at least the threshold
    /// on its non-isolated vertices, or no edges at all.
    pub core: Graph,
    /// For each edge of `core`, its id in the input.
    pub core_edges: Vec<usize>,
    /// Input ids of the removed edges, in removal order.
    pub peeled_edges: Vec<usize>,
    /// Removed vertices, in removal order.
    pub peeled_vertices: Vec<Vertex>,
}

/// Repeatedly deletes a vertex of current degree below `threshold`
/// (isolated vertices are left alone), moving its remaining edges to the
/// peeled list.
pub fn peel_low_degree(g: &Graph, threshold: usize) -> Peeled {
    let n = g.vertex_count();
    let mut degree: Vec<usize> = (0..n as Vertex).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut alive = vec![true; g.edge_count()];
    let mut stack: Vec<Vertex> = (0..n as Vertex)
        .rev()
        .filter(|&v| degree[v as usize] > 0 && degree[v as usize] < threshold)
        .collect();
    let mut peeled_edges = Vec::new();
    let mut peeled_vertices = Vec::new();
    while let Some(v) = stack.pop() {
        if removed[v as usize] {
            continue;
        }
        removed[v as usize] = true;
        peeled_vertices.push(v);
        for (w, e) in g.incident(v) {
            if !alive[e] {
                continue;
            }
            alive[e] = false;
            peeled_edges.push(e);
            degree[v as usize] -= 1;
            degree[w as usize] -= 1;
            let dw = degree[w as usize];
            if !removed[w as usize] && dw + 1 == threshold {
                stack.push(w);
            }
        }
    }
    let (core, core_edges) = g.spanning_subgraph(|e| alive[e]);
    Peeled {
        core,
        core_edges,
        peeled_edges,
        peeled_vertices,
    }
}

/// Splits the edges of `h` into classes by the class of `{chi(u), chi(v)}`
/// in `complete`, and verifies that no class has a 4-cycle.
pub fn pullback_decompose(
    h: &Graph,
    chi: &VertexColouring,
    complete: &CompleteColouring,
) -> Result<EdgeColouring, DecomposeError> {
    let report = verify_frugal_proper(h, chi).map_err(|_| DecomposeError::NotFrugal)?;
    if !report.is_ok() {
        return Err(DecomposeError::NotFrugal);
    }
    if (chi.palette() as usize) > complete.order() {
        return Err(DecomposeError::PaletteTooLarge {
            have: complete.order(),
            need: chi.palette() as usize,
        });
    }
    let raw = h
        .edges()
        .iter()
        .map(|&(u, v)| complete.class(chi.get(u).unwrap(), chi.get(v).unwrap()))
        .collect();
    let colouring = EdgeColouring::compacted(raw);
    let check = verify_c4_free_colouring(h, &colouring).expect("colouring is total");
    assert!(check.is_ok(), "pull-back produced a 4-cycle: {}", check.summary());
    Ok(colouring)
}

/// Smallest-last ordering: repeatedly removes a vertex of minimum current
/// degree. Returns the removal order and the largest degree seen at
/// removal, which bounds every vertex's number of later neighbours.
pub fn degeneracy_ordering(g: &Graph) -> (Vec<Vertex>, usize) {
    let n = g.vertex_count();
    let max_d = g.max_degree();
    let mut degree: Vec<usize> = (0..n as Vertex).map(|v| g.degree(v)).collect();
    // Bucket queue with lazy deletion.
    let mut buckets: Vec<Vec<Vertex>> = vec![Vec::new(); max_d + 1];
    for v in (0..n as Vertex).rev() {
        buckets[degree[v as usize]].push(v);
    }
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut k = 0;
    let mut low = 0;
    while order.len() < n {
        let v = loop {
            while buckets[low].is_empty() {
                low += 1;
            }
            let v = buckets[low].pop().unwrap();
            if !removed[v as usize] && degree[v as usize] == low {
                break v;
            }
        };
        removed[v as usize] = true;
        k = k.max(low);
        order.push(v);
        for &w in g.neighbours(v) {
            if !removed[w as usize] {
                degree[w as usize] -= 1;
                let d = degree[w as usize];
                buckets[d].push(w);
                low = low.min(d);
            }
        }
    }
    (order, k)
}

/// Labels each vertex's later neighbours (in `ordering`) with distinct
/// indices below `k`. Each label class is a forest: on any cycle, the
/// earliest vertex would need two edges with the same label.
pub fn forest_partition(
    g: &Graph,
    ordering: &[Vertex],
    k: usize,
) -> Result<EdgeColouring, DecomposeError> {
    let n = g.vertex_count();
    let mut position = vec![usize::MAX; n];
    for (i, &v) in ordering.iter().enumerate() {
        if (v as usize) >= n || position[v as usize] != usize::MAX {
            return Err(DecomposeError::BadOrdering);
        }
        position[v as usize] = i;
    }
    if ordering.len() != n {
        return Err(DecomposeError::BadOrdering);
    }
    let mut colours = vec![0u32; g.edge_count()];
    for &v in ordering {
        let mut label = 0;
        for (w, e) in g.incident(v) {
            if position[w as usize] > position[v as usize] {
                colours[e] = label;
                label += 1;
            }
        }
        if label as usize > k {
            return Err(DecomposeError::ForwardDegree {
                vertex: v,
                forward: label as usize,
                bound: k,
            });
        }
    }
    let colouring = EdgeColouring::new(colours).expect("labels are contiguous");
    let check = verify_forest_colouring(g, &colouring).expect("colouring is total");
    assert!(check.is_ok(), "forest class has a cycle: {}", check.summary());
    Ok(colouring)
}

/// First-fit: each edge, in id order, joins the lowest class in which it
/// closes no 4-cycle.
pub fn greedy_decompose(g: &Graph) -> EdgeColouring {
    let n = g.vertex_count();
    let mut classes: Vec<Vec<Vec<Vertex>>> = Vec::new();
    let mut mark = vec![0u64; n];
    let mut stamp = 0u64;
    let mut colours = Vec::with_capacity(g.edge_count());
    for &(u, v) in g.edges() {
        let mut chosen = None;
        for (c, adj) in classes.iter().enumerate() {
            stamp += 1;
            for &y in &adj[v as usize] {
                mark[y as usize] = stamp;
            }
            // A path u - x - y - v in the class closes a 4-cycle.
            let closes = adj[u as usize].iter().any(|&x| {
                adj[x as usize]
                    .iter()
                    .any(|&y| y != u && mark[y as usize] == stamp)
            });
            if !closes {
                chosen = Some(c);
                break;
            }
        }
        let c = chosen.unwrap_or_else(|| {
            classes.push(vec![Vec::new(); n]);
            classes.len() - 1
        });
        classes[c][u as usize].push(v);
        classes[c][v as usize].push(u);
        colours.push(c as u32);
    }
    EdgeColouring::new(colours).expect("classes are opened in order")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Peel, frugal colour, pull back; forests for the remainder.
    Pipeline,
    /// Degeneracy forests only.
    Forest,
    /// First-fit baseline.
    Greedy,
    /// Pipeline and forest; whichever uses fewer classes.
    Auto,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PipelineConfig {
    pub frugal: FrugalParams,
    /// Peeling and stopping threshold, evaluated at the input's `Delta`.
    pub threshold: DegreeThreshold,
    /// Iteration cap; `None` means `10 * ceil(ln Delta) + 10`.
    pub max_iterations: Option<usize>,
    pub complete: CompleteOptions,
    pub strategy: Strategy,
    /// Required per-iteration drop: the next maximum degree must be at most
    /// `(1 - beta0)` times the current one. `None` uses the frugal
    /// retention target.
    pub progress_beta: Option<f64>,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            frugal: FrugalParams::default(),
            threshold: DegreeThreshold::LnSquared,
            max_iterations: None,
            complete: CompleteOptions::default(),
            strategy: Strategy::Auto,
            progress_beta: None,
        }
    }
}

impl PipelineConfig {
    /// Rejects frugal parameters no graph could satisfy.
    pub fn validate(&self) -> Result<(), FrugalError> {
        let alpha = self.frugal.alpha;
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(FrugalError::AlphaNotPositive(alpha));
        }
        if self.frugal.mode == Mode::Strict && !(alpha > 16.0) {
            return Err(FrugalError::AlphaTooSmall(alpha));
        }
        Ok(())
    }

    pub fn iteration_cap(&self, delta: usize) -> usize {
        self.max_iterations.unwrap_or_else(|| {
            let ln = if delta < 2 { 0.0 } else { libm::log(delta as f64) };
            10 * libm::ceil(ln) as usize + 10
        })
    }
}

/// One peel-colour-split round.
#[derive(Clone, Debug, PartialEq)]
pub struct IterationStats {
    /// Maximum degree of the peeled core.
    pub delta: usize,
    pub core_edges: usize,
    pub peeled_edges: usize,
    /// Classes emitted by the pull-back.
    pub classes: u32,
    /// Order of the complete graph whose colouring was pulled back.
    pub complete_order: usize,
    pub retention: Retention,
    pub resamples: u32,
    /// Maximum degree after removing the emitted edges.
    pub next_delta: usize,
    pub degraded: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PipelineStats {
    pub strategy: Strategy,
    /// Maximum degree of the input.
    pub delta: usize,
    pub threshold: usize,
    pub iterations: Vec<IterationStats>,
    pub remainder_edges: usize,
    /// Degeneracy of the remainder, which is also its class count bound.
    pub remainder_degeneracy: usize,
    pub remainder_classes: u32,
    pub total_classes: u32,
    /// `total_classes / sqrt(delta)`, 0 for edgeless input.
    pub sqrt_ratio: f64,
    pub degraded: bool,
    /// Wall time, filled in by callers that have a clock.
    pub millis: u64,
}

impl PipelineStats {
    fn new(strategy: Strategy, delta: usize, threshold: usize) -> Self {
        PipelineStats {
            strategy,
            delta,
            threshold,
            iterations: Vec::new(),
            remainder_edges: 0,
            remainder_degeneracy: 0,
            remainder_classes: 0,
            total_classes: 0,
            sqrt_ratio: 0.0,
            degraded: false,
            millis: 0,
        }
    }

    fn finish(&mut self, total: u32) {
        self.total_classes = total;
        self.sqrt_ratio = if self.delta == 0 {
            0.0
        } else {
            total as f64 / libm::sqrt(self.delta as f64)
        };
    }
}

/// Partitions the edges of `g` into classes containing no 4-cycle.
///
/// The output is verified before it is returned, whatever the strategy.
pub fn decompose(g: &Graph, config: &PipelineConfig) -> (EdgeColouring, PipelineStats) {
    let (colouring, stats) = match config.strategy {
        Strategy::Forest => forest_route(g, config, Strategy::Forest),
        Strategy::Greedy => {
            let delta = g.max_degree();
            let mut stats = PipelineStats::new(Strategy::Greedy, delta, config.threshold.value(delta));
            let col = greedy_decompose(g);
            stats.finish(col.class_count());
            (col, stats)
        }
        Strategy::Pipeline => pipeline_route(g, config),
        Strategy::Auto => {
            let (pc, ps) = pipeline_route(g, config);
            let (fc, fs) = forest_route(g, config, Strategy::Forest);
            if fc.class_count() < pc.class_count() {
                (fc, fs)
            } else {
                (pc, ps)
            }
        }
    };
    let check = verify_c4_free_colouring(g, &colouring).expect("colouring is total");
    assert!(check.is_ok(), "decomposition has a 4-cycle: {}", check.summary());
    (colouring, stats)
}

fn forest_route(g: &Graph, config: &PipelineConfig, strategy: Strategy) -> (EdgeColouring, PipelineStats) {
    let delta = g.max_degree();
    let mut stats = PipelineStats::new(strategy, delta, config.threshold.value(delta));
    let (order, k) = degeneracy_ordering(g);
    let col = forest_partition(g, &order, k).expect("smallest-last order respects its bound");
    stats.remainder_edges = g.edge_count();
    stats.remainder_degeneracy = k;
    stats.remainder_classes = col.class_count();
    stats.finish(col.class_count());
    (col, stats)
}

fn mix_seed(seed: u64, salt: u64) -> u64 {
    // splitmix64 finaliser
    let mut z = seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn pipeline_route(g: &Graph, config: &PipelineConfig) -> (EdgeColouring, PipelineStats) {
    let delta = g.max_degree();
    let threshold = config.threshold.value(delta);
    if delta <= threshold {
        let (col, mut stats) = forest_route(g, config, Strategy::Pipeline);
        stats.strategy = Strategy::Pipeline;
        return (col, stats);
    }
    let mut stats = PipelineStats::new(Strategy::Pipeline, delta, threshold);
    let beta0 = config
        .progress_beta
        .unwrap_or_else(|| config.frugal.required_retention());
    let mut raw = vec![u32::MAX; g.edge_count()];
    let mut next_colour = 0u32;
    let mut alive = vec![true; g.edge_count()];
    let mut remainder: Vec<usize> = Vec::new();

    for round in 0..config.iteration_cap(delta) {
        let (current, current_ids) = g.spanning_subgraph(|e| alive[e]);
        if current.max_degree() <= threshold {
            break;
        }
        let peeled = peel_low_degree(&current, threshold);
        for &e in &peeled.peeled_edges {
            let id = current_ids[e];
            alive[id] = false;
            remainder.push(id);
        }
        if peeled.core.edge_count() == 0 {
            break;
        }
        let core = &peeled.core;
        let core_delta = core.max_degree();
        let core_ids: Vec<usize> = peeled.core_edges.iter().map(|&e| current_ids[e]).collect();

        let Some((result, next_delta, tries)) = colour_with_progress(core, config, round as u64, beta0) else {
            // The frugal engine rejected this core; the forests take the rest.
            stats.degraded = true;
            break;
        };
        let degraded = result.degraded || (next_delta as f64) > (1.0 - beta0) * core_delta as f64;
        stats.degraded |= degraded;

        let complete = complete_c4_free_colouring(result.chi.palette() as usize, config.complete);
        let classes = pullback_decompose(&result.h, &result.chi, &complete)
            .expect("frugal output is verified proper and 1-frugal");
        for (i, &core_edge) in result.h_edges.iter().enumerate() {
            let id = core_ids[core_edge];
            raw[id] = next_colour + classes.colour(i);
            alive[id] = false;
        }
        next_colour += classes.class_count();
        stats.iterations.push(IterationStats {
            delta: core_delta,
            core_edges: core.edge_count(),
            peeled_edges: peeled.peeled_edges.len(),
            classes: classes.class_count(),
            complete_order: complete.order(),
            retention: result.retention,
            resamples: tries,
            next_delta,
            degraded,
        });
    }
    remainder.extend((0..g.edge_count()).filter(|&e| alive[e]));
    remainder.sort_unstable();

    let (rest, rest_ids) = g.spanning_subgraph(|e| raw[e] == u32::MAX);
    debug_assert_eq!(rest_ids, remainder);
    let (order, k) = degeneracy_ordering(&rest);
    let forest = forest_partition(&rest, &order, k).expect("smallest-last order respects its bound");
    for (i, &id) in rest_ids.iter().enumerate() {
        raw[id] = next_colour + forest.colour(i);
    }
    stats.remainder_edges = rest.edge_count();
    stats.remainder_degeneracy = k;
    stats.remainder_classes = forest.class_count();
    let colouring = EdgeColouring::compacted(raw);
    stats.finish(colouring.class_count());
    (colouring, stats)
}

/// Runs the frugal engine on `core`, resampling with fresh seeds while the
/// maximum degree left after removing `H` misses `(1 - beta0) Delta`.
/// Returns the best attempt, the degree it leaves, and the attempts used
/// beyond the first; `None` when the engine rejects the core.
fn colour_with_progress(
    core: &Graph,
    config: &PipelineConfig,
    round: u64,
    beta0: f64,
) -> Option<(FrugalResult, usize, u32)> {
    let core_delta = core.max_degree();
    let limit = (1.0 - beta0) * core_delta as f64;
    let mut best: Option<(FrugalResult, usize)> = None;
    let mut params = config.frugal;
    if params.mode == Mode::Strict && (params.threshold.value(core_delta) > core.min_positive_degree()) {
        // The peeled core meets the threshold at the input's Delta, which
        // is at least the threshold at the core's own Delta.
        params.threshold = DegreeThreshold::Fixed(core.min_positive_degree().max(1));
    }
    let mut tries = 0;
    for attempt in 0..=config.frugal.max_resamples {
        params.seed = mix_seed(config.frugal.seed, (round << 32) | attempt as u64);
        let result = frugal_colour(core, &params).ok()?;
        let next_delta = (0..core.vertex_count() as Vertex)
            .map(|v| core.degree(v) - result.h.degree(v))
            .max()
            .unwrap_or(0);
        tries = attempt + result.resamples_used;
        let better = best.as_ref().is_none_or(|(_, d)| next_delta < *d);
        if better {
            best = Some((result, next_delta));
        }
        if (next_delta as f64) <= limit {
            break;
        }
    }
    let (result, next_delta) = best?;
    Some((result, next_delta, tries))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;
    use crate::verify::is_forest;

    fn lollipop() -> Graph {
        // K5 on 0..5, then the path 4-5-6-7.
        let mut edges = Vec::new();
        for u in 0..5 {
            for v in u + 1..5 {
                edges.push((u, v));
            }
        }
        edges.extend([(4, 5), (5, 6), (6, 7)]);
        Graph::from_edges(8, &edges).unwrap()
    }

    #[test]
    fn peel_examples() {
        let p5 = gen::path(5);
        let p = peel_low_degree(&p5, 2);
        assert_eq!(p.core.edge_count(), 0);
        assert_eq!(p.peeled_edges.len(), 4);

        let k5 = gen::complete_graph(5);
        let p = peel_low_degree(&k5, 3);
        assert_eq!(p.core.edge_count(), 10);
        assert!(p.peeled_edges.is_empty());

        let g = lollipop();
        let p = peel_low_degree(&g, 3);
        assert_eq!(p.core.edge_count(), 10);
        let mut peeled: Vec<_> = p.peeled_edges.iter().map(|&e| g.edge(e)).collect();
        peeled.sort_unstable();
        assert_eq!(peeled, vec![(4, 5), (5, 6), (6, 7)]);
        assert_eq!(p.peeled_vertices, vec![5, 6, 7]);
        for (i, &e) in p.core_edges.iter().enumerate() {
            assert_eq!(p.core.edge(i), g.edge(e));
        }
    }

    #[test]
    fn peel_partitions_edges_and_respects_threshold() {
        for seed in 0..30 {
            let g = gen::erdos_renyi(80, 0.08, seed);
            let theta = 2 + (seed % 5) as usize;
            let p = peel_low_degree(&g, theta);
            let mut all: Vec<usize> = p.core_edges.iter().chain(&p.peeled_edges).copied().collect();
            all.sort_unstable();
            assert_eq!(all, (0..g.edge_count()).collect::<Vec<_>>());
            let dmin = p.core.min_positive_degree();
            assert!(p.core.edge_count() == 0 || dmin >= theta);
            // Each peel removes fewer than theta edges, so the peeled part
            // has degeneracy below theta.
            let (rest, _) = g.spanning_subgraph(|e| p.peeled_edges.contains(&e));
            assert!(degeneracy_ordering(&rest).1 < theta);
        }
    }

    #[test]
    fn pullback_single_edge() {
        let h = gen::path(2);
        let chi = VertexColouring::from_total(&[0, 1], 2).unwrap();
        let complete = complete_c4_free_colouring(2, CompleteOptions::default());
        let col = pullback_decompose(&h, &chi, &complete).unwrap();
        assert_eq!(col.class_count(), 1);
    }

    #[test]
    fn pullback_rainbow_c4() {
        let h = gen::cycle(4);
        let chi = VertexColouring::from_total(&[0, 1, 2, 3], 4).unwrap();
        let complete = complete_c4_free_colouring(4, CompleteOptions::default());
        let col = pullback_decompose(&h, &chi, &complete).unwrap();
        let raw: Vec<u32> = h.edges().iter().map(|&(u, v)| complete.class(u, v)).collect();
        assert_eq!(col, EdgeColouring::compacted(raw));
        assert!(verify_c4_free_colouring(&h, &col).unwrap().is_ok());
    }

    #[test]
    fn pullback_rejects_bad_inputs() {
        let h = gen::path(3);
        let complete = complete_c4_free_colouring(4, CompleteOptions::default());
        // Vertex 1 sees colour 0 twice.
        let chi = VertexColouring::from_total(&[0, 1, 0], 4).unwrap();
        assert_eq!(pullback_decompose(&h, &chi, &complete), Err(DecomposeError::NotFrugal));
        let chi = VertexColouring::from_total(&[0, 1, 5], 6).unwrap();
        assert!(matches!(
            pullback_decompose(&h, &chi, &complete),
            Err(DecomposeError::PaletteTooLarge { .. })
        ));
    }

    #[test]
    fn pullback_of_frugal_output_is_c4_free() {
        for seed in 0..20 {
            let g = gen::erdos_renyi(150, 0.1, seed);
            let r = frugal_colour(&g, &FrugalParams::empirical(1.0 + (seed % 3) as f64, 0.05, seed)).unwrap();
            let complete = complete_c4_free_colouring(r.chi.palette() as usize, CompleteOptions::default());
            let col = pullback_decompose(&r.h, &r.chi, &complete).unwrap();
            assert!(verify_c4_free_colouring(&r.h, &col).unwrap().is_ok());
        }
    }

    fn forward_degrees_within(g: &Graph, order: &[Vertex], k: usize) -> bool {
        let mut pos = vec![0; g.vertex_count()];
        for (i, &v) in order.iter().enumerate() {
            pos[v as usize] = i;
        }
        order
            .iter()
            .all(|&v| g.neighbours(v).iter().filter(|&&w| pos[w as usize] > pos[v as usize]).count() <= k)
    }

    #[test]
    fn degeneracy_examples() {
        assert_eq!(degeneracy_ordering(&gen::random_tree(30, 4)).1, 1);
        assert_eq!(degeneracy_ordering(&gen::cycle(4)).1, 2);
        assert_eq!(degeneracy_ordering(&gen::complete_graph(5)).1, 4);
        assert_eq!(degeneracy_ordering(&gen::petersen()).1, 3);
        assert_eq!(degeneracy_ordering(&Graph::empty(3)), (vec![0, 1, 2], 0));
        for seed in 0..20 {
            let g = gen::erdos_renyi(100, 0.1, seed);
            let (order, k) = degeneracy_ordering(&g);
            assert!(forward_degrees_within(&g, &order, k));
            assert!(!forward_degrees_within(&g, &order, k.saturating_sub(1)) || k == 0);
        }
    }

    #[test]
    fn forest_examples() {
        for (g, classes) in [
            (gen::star(5), 1),
            (gen::cycle(4), 2),
            (gen::complete_graph(4), 3),
        ] {
            let (order, k) = degeneracy_ordering(&g);
            let col = forest_partition(&g, &order, k).unwrap();
            assert_eq!(col.class_count(), classes);
            for c in 0..col.class_count() {
                assert!(is_forest(&col.class_subgraph(&g, c)));
            }
        }
    }

    #[test]
    fn forest_rejects_bad_orderings() {
        let g = gen::complete_graph(4);
        assert_eq!(forest_partition(&g, &[0, 1, 2], 3), Err(DecomposeError::BadOrdering));
        assert_eq!(forest_partition(&g, &[0, 1, 1, 2], 3), Err(DecomposeError::BadOrdering));
        assert!(matches!(
            forest_partition(&g, &[0, 1, 2, 3], 2),
            Err(DecomposeError::ForwardDegree { vertex: 0, forward: 3, bound: 2 })
        ));
    }

    #[test]
    fn greedy_is_c4_free() {
        for seed in 0..20 {
            let g = gen::erdos_renyi(60, 0.3, seed);
            let col = greedy_decompose(&g);
            assert!(verify_c4_free_colouring(&g, &col).unwrap().is_ok());
        }
        assert_eq!(greedy_decompose(&gen::cycle(4)).class_count(), 2);
        assert_eq!(greedy_decompose(&gen::petersen()).class_count(), 1);
    }

    #[test]
    fn decompose_small_cases() {
        let mut config = PipelineConfig::default();
        for strategy in [Strategy::Auto, Strategy::Forest, Strategy::Greedy] {
            config.strategy = strategy;
            let (col, stats) = decompose(&gen::random_tree(40, 1), &config);
            assert_eq!(col.class_count(), 1, "{strategy:?}");
            assert_eq!(stats.total_classes, 1);
            let (col, _) = decompose(&gen::cycle(4), &config);
            assert_eq!(col.class_count(), 2);
        }
        for strategy in [Strategy::Auto, Strategy::Forest, Strategy::Greedy, Strategy::Pipeline] {
            config.strategy = strategy;
            let (col, stats) = decompose(&Graph::empty(5), &config);
            assert_eq!(col.class_count(), 0);
            assert_eq!(stats.sqrt_ratio, 0.0);
        }
        // The pipeline route on a 4-cycle is valid but may use more classes.
        config.strategy = Strategy::Pipeline;
        let (col, _) = decompose(&gen::cycle(4), &config);
        assert!(col.class_count() >= 2);
    }

    #[test]
    fn pipeline_route_on_dense_graph() {
        let g = gen::random_regular(400, 40, 3).unwrap();
        let config = PipelineConfig {
            strategy: Strategy::Pipeline,
            ..PipelineConfig::default()
        };
        let (col, stats) = decompose(&g, &config);
        assert!(!stats.iterations.is_empty());
        let emitted: u32 = stats.iterations.iter().map(|it| it.classes).sum();
        assert_eq!(stats.total_classes, emitted + stats.remainder_classes);
        assert_eq!(col.class_count(), stats.total_classes);
        assert!(stats.remainder_classes as usize <= stats.remainder_degeneracy);
        for it in &stats.iterations {
            let t = it.complete_order as f64;
            assert!(it.classes as f64 <= libm::ceil(2.0 * libm::sqrt(t)));
        }
        assert_eq!(decompose(&g, &config).0, col);
    }

    #[test]
    fn rejected_cores_fall_through_to_forests() {
        let g = gen::random_regular(200, 20, 1).unwrap();
        let mut config = PipelineConfig {
            strategy: Strategy::Pipeline,
            frugal: FrugalParams::strict(10.0, 0),
            ..PipelineConfig::default()
        };
        assert!(matches!(config.validate(), Err(FrugalError::AlphaTooSmall(_))));
        let (col, stats) = decompose(&g, &config);
        assert!(stats.iterations.is_empty());
        assert!(stats.degraded);
        assert_eq!(col.class_count(), stats.remainder_classes);
        config.frugal = FrugalParams::strict(20.0, 0);
        assert!(config.validate().is_ok());
    }

    #[test]
    fn strict_pipeline_runs() {
        let g = gen::random_regular(300, 30, 8).unwrap();
        let config = PipelineConfig {
            strategy: Strategy::Pipeline,
            frugal: FrugalParams::strict(17.0, 2),
            max_iterations: Some(3),
            ..PipelineConfig::default()
        };
        let (col, stats) = decompose(&g, &config);
        assert!(stats.iterations.len() <= 3);
        assert!(verify_c4_free_colouring(&g, &col).unwrap().is_ok());
    }
}
