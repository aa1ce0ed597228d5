//! Deterministic graph generators.

use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::GraphError;
use crate::graph::{canonical, Edge, Graph, Vertex};

/// Restart cap for [`random_regular`].
pub const PAIRING_RESTARTS: usize = 100;

pub(crate) fn rng_from(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn build(n: usize, mut edges: Vec<Edge>) -> Graph {
    for e in edges.iter_mut() {
        *e = canonical(e.0, e.1);
    }
    edges.sort_unstable();
    edges.dedup();
    Graph::from_sorted_unique(n, edges)
}

/// `K_t`.
pub fn complete_graph(t: usize) -> Graph {
    let mut edges = Vec::with_capacity(t * t.saturating_sub(1) / 2);
    for u in 0..t as Vertex {
        for v in u + 1..t as Vertex {
            edges.push((u, v));
        }
    }
    Graph::from_sorted_unique(t, edges)
}

pub fn path(n: usize) -> Graph {
    build(n, (1..n as Vertex).map(|v| (v - 1, v)).collect())
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "a cycle needs at least 3 vertices");
    let mut edges: Vec<Edge> = (1..n as Vertex).map(|v| (v - 1, v)).collect();
    edges.push((0, n as Vertex - 1));
    build(n, edges)
}

/// Star with centre 0 and `leaves` leaves.
pub fn star(leaves: usize) -> Graph {
    build(leaves + 1, (1..=leaves as Vertex).map(|v| (0, v)).collect())
}

/// `K_{a,b}` with sides `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let mut edges = Vec::with_capacity(a * b);
    for u in 0..a as Vertex {
        for v in a as Vertex..(a + b) as Vertex {
            edges.push((u, v));
        }
    }
    build(a + b, edges)
}

/// The Petersen graph: outer 5-cycle `0..5`, inner pentagram `5..10`.
pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((i + 5, (i + 2) % 5 + 5));
    }
    build(10, edges)
}

/// Uniform random labelled tree from a random Prüfer sequence.
pub fn random_tree(n: usize, seed: u64) -> Graph {
    if n < 2 {
        return Graph::empty(n);
    }
    let mut rng = rng_from(seed);
    let code: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &c in &code {
        degree[c] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &c in &code {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf as Vertex, c as Vertex));
        degree[leaf] -= 1;
        degree[c] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0] as Vertex, rest[1] as Vertex));
    build(n, edges)
}

/// Random simple `d`-regular graph on `n` vertices.
///
/// Stubs are paired one at a time, only ever joining two stubs on distinct,
/// non-adjacent vertices; if the remaining stubs admit no such pair the
/// whole pairing restarts, at most [`PAIRING_RESTARTS`] times.
pub fn random_regular(n: usize, d: usize, seed: u64) -> Result<Graph, GraphError> {
    let bad = |reason| GraphError::RegularParameters { n, d, reason };
    if !(n * d).is_multiple_of(2) {
        return Err(bad("n*d is odd"));
    }
    if d >= n && !(d == 0 && n == 0) {
        return Err(bad("d must be below n"));
    }
    let mut rng = rng_from(seed);
    'restart: for _ in 0..PAIRING_RESTARTS {
        let mut stubs: Vec<Vertex> = (0..n as Vertex)
            .flat_map(|v| core::iter::repeat_n(v, d))
            .collect();
        let mut adj: Vec<Vec<Vertex>> = vec![Vec::with_capacity(d); n];
        let mut edges = Vec::with_capacity(n * d / 2);
        let mut misses = 0usize;
        while !stubs.is_empty() {
            let i = rng.gen_range(0..stubs.len());
            let j = rng.gen_range(0..stubs.len());
            let (u, v) = (stubs[i], stubs[j]);
            if i != j && u != v && !adj[u as usize].contains(&v) {
                pair(&mut stubs, &mut adj, &mut edges, i, j);
                misses = 0;
                continue;
            }
            misses += 1;
            if misses < 64 + stubs.len() {
                continue;
            }
            // Many consecutive misses: look for any admissible pair directly.
            match find_admissible(&stubs, &adj) {
                Some((i, j)) => {
                    pair(&mut stubs, &mut adj, &mut edges, i, j);
                    misses = 0;
                }
                None => continue 'restart,
            }
        }
        return Ok(build(n, edges));
    }
    Err(GraphError::PairingFailed(PAIRING_RESTARTS))
}

fn pair(
    stubs: &mut Vec<Vertex>,
    adj: &mut [Vec<Vertex>],
    edges: &mut Vec<Edge>,
    i: usize,
    j: usize,
) {
    let (u, v) = (stubs[i], stubs[j]);
    adj[u as usize].push(v);
    adj[v as usize].push(u);
    edges.push((u, v));
    let (hi, lo) = if i > j { (i, j) } else { (j, i) };
    stubs.swap_remove(hi);
    stubs.swap_remove(lo);
}

fn find_admissible(stubs: &[Vertex], adj: &[Vec<Vertex>]) -> Option<(usize, usize)> {
    let mut order: Vec<usize> = (0..stubs.len()).collect();
    order.sort_by_key(|&i| stubs[i]);
    order.dedup_by_key(|i| stubs[*i]);
    for (a, &i) in order.iter().enumerate() {
        for &j in &order[a + 1..] {
            if !adj[stubs[i] as usize].contains(&stubs[j]) {
                return Some((i, j));
            }
        }
    }
    None
}

/// `G(n, p)`: every pair independently with probability `p`.
pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = rng_from(seed);
    let mut edges = Vec::new();
    for u in 0..n as Vertex {
        for v in u + 1..n as Vertex {
            if rng.gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_sorted_unique(n, edges)
}

/// Random relabelling of `g`; handy for checking label independence.
pub fn shuffled(g: &Graph, seed: u64) -> Graph {
    let mut perm: Vec<Vertex> = (0..g.vertex_count() as Vertex).collect();
    perm.shuffle(&mut rng_from(seed));
    build(
        g.vertex_count(),
        g.edges()
            .iter()
            .map(|&(u, v)| (perm[u as usize], perm[v as usize]))
            .collect(),
    )
}
