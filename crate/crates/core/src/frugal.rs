//! Spanning subgraphs with proper 1-frugal vertex colourings.
//!
//! Given `G` with maximum degree `D`, [`frugal_colour`] finds a spanning
//! subgraph `H` and a colouring with `2 * ceil(alpha * D)` colours that is
//! proper on `H` and under which every `H`-neighbourhood is rainbow, while
//! `H` keeps a constant fraction of every degree.
//!
//! A locally maximal cut gives a bipartite `H0` keeping at least half of
//! every degree. Each side is then coloured in turn with its own palette:
//! Phase I colours the side at random, uncolours every vertex whose colour
//! is shared by another vertex in too many of its neighbours' neighbourhoods
//! and drops the clashing edges of the rest; Phase II colours the
//! uncoloured vertices one by one with the colour that costs the fewest
//! edges. Whole attempts are resampled until the retention target is met.

use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::FrugalError;
use crate::gen::rng_from;
use crate::graph::{Graph, Vertex, VertexColouring};
use crate::verify::verify_frugal_proper;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// `alpha > 16`, `delta >= log^2 Delta`, and every vertex keeps
    /// `beta(alpha)` of its degree.
    Strict,
    /// Any `alpha > 0`; minimum retention must reach a configured ratio.
    Empirical,
}

/// The `log^2 Delta` degree threshold.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DegreeThreshold {
    /// `ceil((ln Delta)^2)`.
    LnSquared,
    /// `ceil((log2 Delta)^2)`.
    Log2Squared,
    Fixed(usize),
}

impl DegreeThreshold {
    /// Threshold for maximum degree `delta`; never below 1.
    pub fn value(self, delta: usize) -> usize {
        let x = match self {
            DegreeThreshold::Fixed(k) => return k.max(1),
            _ if delta < 2 => return 1,
            DegreeThreshold::LnSquared => libm::log(delta as f64),
            DegreeThreshold::Log2Squared => libm::log2(delta as f64),
        };
        (libm::ceil(x * x) as usize).max(1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FrugalParams {
    pub alpha: f64,
    pub seed: u64,
    /// Extra attempts after the first when the retention target is missed.
    pub max_resamples: u32,
    pub mode: Mode,
    /// Minimum `d_H(v) / d_G(v)` accepted in empirical mode.
    pub empirical_retention: f64,
    pub threshold: DegreeThreshold,
    /// Smallest maximum degree accepted in strict mode.
    pub strict_degree_floor: usize,
}

impl Default for FrugalParams {
    fn default() -> Self {
        FrugalParams {
            alpha: 2.0,
            seed: 0,
            max_resamples: 20,
            mode: Mode::Empirical,
            empirical_retention: 0.05,
            threshold: DegreeThreshold::LnSquared,
            strict_degree_floor: 2,
        }
    }
}

impl FrugalParams {
    pub fn strict(alpha: f64, seed: u64) -> Self {
        FrugalParams {
            alpha,
            seed,
            mode: Mode::Strict,
            ..Self::default()
        }
    }

    pub fn empirical(alpha: f64, retention: f64, seed: u64) -> Self {
        FrugalParams {
            alpha,
            seed,
            mode: Mode::Empirical,
            empirical_retention: retention,
            ..Self::default()
        }
    }

    /// Retention ratio every vertex must reach for an attempt to be
    /// accepted: `beta(alpha)` in strict mode.
    pub fn required_retention(&self) -> f64 {
        match self.mode {
            Mode::Strict => beta(self.alpha),
            Mode::Empirical => self.empirical_retention,
        }
    }
}

/// `beta(alpha) = (1 - 4 / sqrt(alpha))^2 / 2`.
pub fn beta(alpha: f64) -> f64 {
    let r = 1.0 - 4.0 / libm::sqrt(alpha);
    0.5 * r * r
}

/// Palette size of one side: `ceil(alpha * delta)`, at least 1.
pub fn side_palette(alpha: f64, delta: usize) -> u32 {
    (libm::ceil(alpha * delta as f64) as u32).max(1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    A,
    B,
}

/// A set of live edges of a host graph, with live degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeMask {
    alive: Vec<bool>,
    degree: Vec<usize>,
}

impl EdgeMask {
    pub fn from_fn(host: &Graph, mut keep: impl FnMut(usize) -> bool) -> Self {
        let mut alive = vec![false; host.edge_count()];
        let mut degree = vec![0; host.vertex_count()];
        for (e, &(u, v)) in host.edges().iter().enumerate() {
            if keep(e) {
                alive[e] = true;
                degree[u as usize] += 1;
                degree[v as usize] += 1;
            }
        }
        EdgeMask { alive, degree }
    }

    #[inline]
    pub fn is_alive(&self, e: usize) -> bool {
        self.alive[e]
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.degree[v as usize]
    }

    pub fn remove(&mut self, host: &Graph, e: usize) {
        if core::mem::replace(&mut self.alive[e], false) {
            let (u, v) = host.edge(e);
            self.degree[u as usize] -= 1;
            self.degree[v as usize] -= 1;
        }
    }

    pub fn alive_count(&self) -> usize {
        self.alive.iter().filter(|&&a| a).count()
    }

    /// Live `(neighbour, edge)` pairs at `v`.
    pub fn live<'a>(&'a self, host: &'a Graph, v: Vertex) -> impl Iterator<Item = (Vertex, usize)> + 'a {
        host.incident(v).filter(move |&(_, e)| self.alive[e])
    }

    pub fn to_graph(&self, host: &Graph) -> (Graph, Vec<usize>) {
        host.spanning_subgraph(|e| self.alive[e])
    }
}

/// A bipartition from a locally maximal cut; `cut` holds the crossing
/// edges, which form `H0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bipartition {
    pub side: Vec<Side>,
    pub cut: EdgeMask,
}

/// Random sides, then single-vertex moves while any vertex has strictly
/// more neighbours on its own side than across. At the fixpoint every
/// vertex keeps at least `ceil(d / 2)` crossing edges.
pub fn maxcut_bipartition(g: &Graph, rng: &mut ChaCha8Rng) -> Bipartition {
    let n = g.vertex_count();
    let mut side: Vec<bool> = (0..n).map(|_| rng.gen::<bool>()).collect();
    let mut queued = vec![true; n];
    let mut queue: Vec<Vertex> = (0..n as Vertex).rev().collect();
    while let Some(v) = queue.pop() {
        queued[v as usize] = false;
        let same = g
            .neighbours(v)
            .iter()
            .filter(|&&w| side[w as usize] == side[v as usize])
            .count();
        if 2 * same > g.degree(v) {
            side[v as usize] = !side[v as usize];
            for &w in g.neighbours(v) {
                if !queued[w as usize] {
                    queued[w as usize] = true;
                    queue.push(w);
                }
            }
        }
    }
    let cut = EdgeMask::from_fn(g, |e| {
        let (u, v) = g.edge(e);
        side[u as usize] != side[v as usize]
    });
    Bipartition {
        side: side.into_iter().map(|s| if s { Side::B } else { Side::A }).collect(),
        cut,
    }
}

/// Result of Phase I on one side.
#[derive(Clone, Debug)]
pub struct PhaseOne {
    /// Colours in `0..palette` for the vertices that kept theirs.
    pub colouring: VertexColouring,
    /// Side vertices that lost their colour, ascending.
    pub uncoloured: Vec<Vertex>,
    pub removed_edges: usize,
}

/// Phase I on the vertices with `in_side[v]`, over the live edges of
/// `mask` (which must all cross the bipartition).
///
/// Every side vertex draws a uniform colour. A vertex `a` is uncoloured
/// when at least `d(a) / sqrt(alpha)` of its neighbours `b` have another
/// neighbour with `a`'s colour; all such decisions use the initial draw.
/// Each vertex that keeps its colour loses exactly those clashing edges.
pub fn phase1_colour(
    host: &Graph,
    mask: &mut EdgeMask,
    in_side: &[bool],
    palette: u32,
    alpha: f64,
    rng: &mut ChaCha8Rng,
) -> PhaseOne {
    let n = host.vertex_count();
    let mut drawn = vec![u32::MAX; n];
    for v in 0..n {
        if in_side[v] {
            drawn[v] = rng.gen_range(0..palette);
        }
    }
    // clash[e]: the far endpoint of e sees the near endpoint's colour twice.
    let mut clash = vec![false; host.edge_count()];
    let mut count = vec![0u32; palette as usize];
    for b in 0..n as Vertex {
        if in_side[b as usize] {
            continue;
        }
        for (a, _) in mask.live(host, b) {
            count[drawn[a as usize] as usize] += 1;
        }
        for (a, e) in mask.live(host, b) {
            clash[e] = count[drawn[a as usize] as usize] >= 2;
        }
        for (a, _) in mask.live(host, b) {
            count[drawn[a as usize] as usize] = 0;
        }
    }
    let sqrt_alpha = libm::sqrt(alpha);
    let mut colouring = VertexColouring::uncoloured(n, palette);
    let mut uncoloured = Vec::new();
    let mut doomed = Vec::new();
    for a in 0..n as Vertex {
        if !in_side[a as usize] {
            continue;
        }
        let before = doomed.len();
        doomed.extend(mask.live(host, a).filter(|&(_, e)| clash[e]).map(|(_, e)| e));
        let clashes = doomed.len() - before;
        if clashes as f64 * sqrt_alpha >= mask.degree(a) as f64 {
            doomed.truncate(before);
            uncoloured.push(a);
        } else {
            colouring.set(a, drawn[a as usize]);
        }
    }
    let removed_edges = doomed.len();
    for e in doomed {
        mask.remove(host, e);
    }
    PhaseOne {
        colouring,
        uncoloured,
        removed_edges,
    }
}

/// Every vertex off the side sees each colour at most once among its
/// coloured live neighbours. Holds after Phase I and after Phase II.
pub fn unique_colours_across(
    host: &Graph,
    mask: &EdgeMask,
    in_side: &[bool],
    colouring: &VertexColouring,
) -> bool {
    let mut seen = vec![u32::MAX; colouring.palette() as usize];
    (0..host.vertex_count() as Vertex)
        .filter(|&b| !in_side[b as usize])
        .all(|b| {
            mask.live(host, b).all(|(a, _)| match colouring.get(a) {
                Some(c) if seen[c as usize] == b => false,
                Some(c) => {
                    seen[c as usize] = b;
                    true
                }
                None => true,
            })
        })
}

/// Result of Phase II on one side.
#[derive(Clone, Debug, PartialEq)]
pub struct PhaseTwo {
    pub removed_edges: usize,
    /// Smallest `kept / degree-before` over the vertices coloured here
    /// (1 when there were none or all had degree 0).
    pub min_ratio: f64,
}

/// Phase II: colours `uncoloured` in the given order. Each vertex takes the
/// colour, ties to the smallest, that the fewest of its neighbours already
/// see on another neighbour, then drops the edges to those neighbours.
///
/// `max_degree` must bound the live degree of every vertex off the side.
/// Pigeonhole over the palette then caps the loss of each vertex at
/// `d (max_degree - 1) / palette < d / alpha`; this is asserted.
pub fn phase2_complete(
    host: &Graph,
    mask: &mut EdgeMask,
    colouring: &mut VertexColouring,
    uncoloured: &[Vertex],
    alpha: f64,
    max_degree: usize,
) -> PhaseTwo {
    let palette = colouring.palette() as usize;
    let mut cost = vec![0usize; palette];
    let mut seen_at = vec![0u64; palette];
    let mut visit = 0u64;
    let mut removed_edges = 0;
    let mut min_ratio = 1.0f64;
    let mut clashing = Vec::new();
    for &a in uncoloured {
        cost.iter_mut().for_each(|c| *c = 0);
        let live: Vec<(Vertex, usize)> = mask.live(host, a).collect();
        for &(b, _) in &live {
            // Count each colour once per neighbour b.
            visit += 1;
            for (a2, _) in mask.live(host, b) {
                if a2 == a {
                    continue;
                }
                if let Some(c) = colouring.get(a2) {
                    if seen_at[c as usize] != visit {
                        seen_at[c as usize] = visit;
                        cost[c as usize] += 1;
                    }
                }
            }
        }
        let (best, &loss) = cost
            .iter()
            .enumerate()
            .min_by_key(|&(c, &k)| (k, c))
            .expect("palette is nonempty");
        let degree = live.len();
        assert!(
            loss * palette <= degree * max_degree.saturating_sub(1),
            "phase II loss {loss} at vertex {a} exceeds the pigeonhole bound"
        );
        assert!(
            (degree - loss) as f64 >= (1.0 - 1.0 / alpha) * degree as f64,
            "phase II kept {} of {degree} edges at vertex {a}",
            degree - loss
        );
        clashing.clear();
        for &(b, e) in &live {
            let clash = mask
                .live(host, b)
                .any(|(a2, _)| a2 != a && colouring.get(a2) == Some(best as u32));
            if clash {
                clashing.push(e);
            }
        }
        debug_assert_eq!(clashing.len(), loss);
        for &e in &clashing {
            mask.remove(host, e);
        }
        removed_edges += loss;
        if degree > 0 {
            min_ratio = min_ratio.min((degree - loss) as f64 / degree as f64);
        }
        colouring.set(a, best as u32);
    }
    PhaseTwo {
        removed_edges,
        min_ratio,
    }
}

/// Per-side bookkeeping of one attempt.
#[derive(Clone, Debug, PartialEq)]
pub struct RoundReport {
    pub side: Side,
    pub phase1_uncoloured: usize,
    pub phase1_removed: usize,
    pub phase2_removed: usize,
    pub phase2_min_ratio: f64,
}

/// Minimum and mean of `d_H(v) / d_G(v)` over vertices with `d_G(v) > 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Retention {
    pub min: f64,
    pub mean: f64,
}

#[derive(Clone, Debug)]
pub struct FrugalResult {
    /// The spanning subgraph `H`.
    pub h: Graph,
    /// For each edge of `h`, its id in the input graph.
    pub h_edges: Vec<usize>,
    /// Total colouring with palette `2 * ceil(alpha * Delta)`; side A uses
    /// the lower half.
    pub chi: VertexColouring,
    pub side: Vec<Side>,
    pub resamples_used: u32,
    pub retention: Retention,
    /// The retention target was never met; this is the best attempt.
    pub degraded: bool,
    pub rounds: [RoundReport; 2],
}

fn check_params(g: &Graph, p: &FrugalParams) -> Result<(), FrugalError> {
    if !(p.alpha > 0.0) {
        return Err(FrugalError::AlphaNotPositive(p.alpha));
    }
    if g.edge_count() == 0 {
        return Err(FrugalError::NoEdges);
    }
    if p.mode == Mode::Strict {
        if !(p.alpha > 16.0) {
            return Err(FrugalError::AlphaTooSmall(p.alpha));
        }
        let delta = g.max_degree();
        if delta < p.strict_degree_floor {
            return Err(FrugalError::DegreeFloor {
                max_degree: delta,
                floor: p.strict_degree_floor,
            });
        }
        let required = p.threshold.value(delta);
        if g.min_positive_degree() < required {
            return Err(FrugalError::TooSparse {
                min_degree: g.min_positive_degree(),
                required,
            });
        }
    }
    Ok(())
}

/// Runs both rounds, verifying the output, and resamples whole attempts
/// until the retention target holds or the budget runs out.
pub fn frugal_colour(g: &Graph, params: &FrugalParams) -> Result<FrugalResult, FrugalError> {
    check_params(g, params)?;
    let mut rng = rng_from(params.seed);
    let target = params.required_retention();
    let mut best: Option<FrugalResult> = None;
    for attempt in 0..=params.max_resamples {
        let mut r = attempt_once(g, params, &mut rng);
        r.resamples_used = attempt;
        let accepted = match params.mode {
            Mode::Strict => (0..g.vertex_count() as Vertex)
                .all(|v| r.h.degree(v) as f64 >= target * g.degree(v) as f64),
            Mode::Empirical => r.retention.min >= target,
        };
        if accepted {
            r.degraded = false;
            return Ok(r);
        }
        if best.as_ref().is_none_or(|b| r.retention.min > b.retention.min) {
            best = Some(r);
        }
    }
    let mut r = best.unwrap();
    r.degraded = true;
    r.resamples_used = params.max_resamples;
    Ok(r)
}

fn attempt_once(g: &Graph, params: &FrugalParams, rng: &mut ChaCha8Rng) -> FrugalResult {
    let delta = g.max_degree();
    let palette = side_palette(params.alpha, delta);
    let Bipartition { side, mut cut } = maxcut_bipartition(g, rng);
    let mut chi = VertexColouring::uncoloured(g.vertex_count(), 2 * palette);
    let mut rounds = Vec::with_capacity(2);
    for (which, offset) in [(Side::A, 0), (Side::B, palette)] {
        let in_side: Vec<bool> = side.iter().map(|&s| s == which).collect();
        let mut p1 = phase1_colour(g, &mut cut, &in_side, palette, params.alpha, rng);
        assert!(
            unique_colours_across(g, &cut, &in_side, &p1.colouring),
            "phase I left a repeated colour in some neighbourhood"
        );
        let p2 = phase2_complete(
            g,
            &mut cut,
            &mut p1.colouring,
            &p1.uncoloured,
            params.alpha,
            delta,
        );
        assert!(unique_colours_across(g, &cut, &in_side, &p1.colouring));
        for v in 0..g.vertex_count() as Vertex {
            if in_side[v as usize] {
                chi.set(v, offset + p1.colouring.get(v).expect("side fully coloured"));
            }
        }
        rounds.push(RoundReport {
            side: which,
            phase1_uncoloured: p1.uncoloured.len(),
            phase1_removed: p1.removed_edges,
            phase2_removed: p2.removed_edges,
            phase2_min_ratio: p2.min_ratio,
        });
    }
    let (h, h_edges) = cut.to_graph(g);
    let report = verify_frugal_proper(&h, &chi).expect("chi is total");
    assert!(report.is_ok(), "frugal colouring failed verification: {}", report.summary());
    let mut min = f64::INFINITY;
    let mut sum = 0.0;
    let mut counted = 0usize;
    for v in 0..g.vertex_count() as Vertex {
        if g.degree(v) > 0 {
            let r = h.degree(v) as f64 / g.degree(v) as f64;
            min = min.min(r);
            sum += r;
            counted += 1;
        }
    }
    let retention = Retention {
        min: if counted == 0 { 1.0 } else { min },
        mean: if counted == 0 { 1.0 } else { sum / counted as f64 },
    };
    let rounds: [RoundReport; 2] = rounds.try_into().unwrap();
    FrugalResult {
        h,
        h_edges,
        chi,
        side,
        resamples_used: 0,
        retention,
        degraded: false,
        rounds,
    }
}
