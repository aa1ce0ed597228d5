//! Exact oracles for tiny instances: the extremal number `ex(n, C4)`, the
//! clique lower bound on the number of classes, and the exact minimum
//! number of C4-free classes.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::OracleError;
use crate::graph::{Graph, Vertex};
use crate::verify::find_c4;

/// Largest order accepted by [`exact_ex_c4`].
pub const EX_CAP: usize = 10;

/// Limits for [`exact_phi_c4`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleLimits {
    /// Largest edge count accepted for graphs that contain a 4-cycle.
    pub max_edges: usize,
    /// Search nodes per colour count before giving up.
    pub max_nodes: u64,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_edges: 15,
            max_nodes: 50_000_000,
        }
    }
}

/// Maximum edge count of a C4-free graph on `n <= EX_CAP` vertices.
///
/// Works upward from `ex(n - 1)`. Deleting a vertex of an extremal graph
/// leaves a C4-free graph on `n - 1` vertices, so every vertex of an
/// extremal graph has degree at least `ex(n) - ex(n - 1)`. For each target
/// `T` the search asks for a C4-free graph with at least `T` edges and
/// minimum degree at least `T - ex(n - 1)`; the largest feasible `T` is
/// `ex(n)`. Vertex 0 is taken to be a maximum-degree vertex adjacent to
/// `1..=d0`, and the remaining pairs are decided in lexicographic order,
/// bounded by the undecided pair count, the degree headroom and the cherry
/// count (every vertex pair has at most one common neighbour, so the sum of
/// `C(deg, 2)` never exceeds `C(n, 2)`).
pub fn exact_ex_c4(n: usize) -> Result<usize, OracleError> {
    if n > EX_CAP {
        return Err(OracleError::TooLarge {
            size: n,
            cap: EX_CAP,
        });
    }
    let mut ex = 0;
    for order in 2..=n {
        let prev = ex;
        // A pendant vertex never closes a 4-cycle.
        ex = prev + 1;
        while ex_feasible(order, ex + 1, ex + 1 - prev) {
            ex += 1;
        }
    }
    Ok(ex)
}

fn ex_feasible(n: usize, target: usize, min_degree: usize) -> bool {
    let pairs: Vec<(usize, usize)> = (1..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    for d0 in (min_degree.max(1)..n).rev() {
        let mut s = ExSearch {
            n,
            pairs: pairs.clone(),
            adj: [0u16; EX_CAP],
            degree: [0usize; EX_CAP],
            cherries: 0,
            edges: 0,
            max_degree: d0,
            min_degree,
            target,
        };
        for v in 1..=d0 {
            s.link(0, v);
        }
        if s.branch(0) {
            return true;
        }
    }
    false
}

struct ExSearch {
    n: usize,
    pairs: Vec<(usize, usize)>,
    adj: [u16; EX_CAP],
    degree: [usize; EX_CAP],
    cherries: usize,
    edges: usize,
    max_degree: usize,
    min_degree: usize,
    target: usize,
}

impl ExSearch {
    fn closes_c4(&self, u: usize, v: usize) -> bool {
        let mut xs = self.adj[u] & !(1 << v);
        while xs != 0 {
            let x = xs.trailing_zeros() as usize;
            xs &= xs - 1;
            if self.adj[x] & self.adj[v] & !(1 << u) != 0 {
                return true;
            }
        }
        false
    }

    fn link(&mut self, u: usize, v: usize) {
        self.cherries += self.degree[u] + self.degree[v];
        self.degree[u] += 1;
        self.degree[v] += 1;
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
        self.edges += 1;
    }

    fn unlink(&mut self, u: usize, v: usize) {
        self.adj[u] &= !(1 << v);
        self.adj[v] &= !(1 << u);
        self.degree[u] -= 1;
        self.degree[v] -= 1;
        self.cherries -= self.degree[u] + self.degree[v];
        self.edges -= 1;
    }

    /// Most edges that can still be added without the cherry sum passing
    /// `C(n, 2)` or any degree passing the maximum, adding degree greedily
    /// to the lowest-degree vertices.
    fn room(&self) -> usize {
        let cap = self.n * (self.n - 1) / 2;
        let mut deg = self.degree;
        let deg = &mut deg[..self.n];
        let mut cherries = self.cherries;
        let mut half_edges = 0;
        loop {
            let (i, &d) = deg.iter().enumerate().min_by_key(|&(_, &d)| d).unwrap();
            if d >= self.max_degree || cherries + d > cap {
                break;
            }
            cherries += d;
            deg[i] += 1;
            half_edges += 1;
        }
        half_edges / 2
    }

    fn branch(&mut self, i: usize) -> bool {
        if i == self.pairs.len() {
            return self.edges >= self.target
                && self.degree[..self.n].iter().all(|&d| d >= self.min_degree);
        }
        let room = (self.pairs.len() - i).min(self.room());
        if self.edges + room < self.target {
            return false;
        }
        let (u, v) = self.pairs[i];
        let row_ends = v + 1 == self.n;
        if self.degree[u] < self.max_degree
            && self.degree[v] < self.max_degree
            && !self.closes_c4(u, v)
        {
            self.link(u, v);
            let ok = (!row_ends || self.degree[u] >= self.min_degree) && self.branch(i + 1);
            self.unlink(u, v);
            if ok {
                return true;
            }
        }
        (!row_ends || self.degree[u] >= self.min_degree) && self.branch(i + 1)
    }
}

fn isqrt_ceil(x: u64) -> u64 {
    let mut r = libm::sqrt(x as f64) as u64;
    while r * r > x {
        r -= 1;
    }
    while r * r < x {
        r += 1;
    }
    r
}

/// Upper bound on `ex(n, C4)`: `floor(n (1 + s) / 4)` with `s` the
/// rounded-up square root of `4n - 3`, so it never undercuts the real
/// value `n (1 + sqrt(4n - 3)) / 4`.
pub fn ex_c4_upper_bound(n: u64) -> u64 {
    if n < 2 {
        return 0;
    }
    n * (1 + isqrt_ceil(4 * n - 3)) / 4
}

/// Lower bound on the number of C4-free classes needed for `K_{delta+1}`:
/// `ceil(C(delta+1, 2) / ex(delta+1, C4))`.
///
/// Uses `ex` when given, the exact oracle when `delta + 1 <= EX_CAP`, and
/// [`ex_c4_upper_bound`] otherwise.
pub fn phi_lower_bound(delta: u64, ex: Option<u64>) -> u64 {
    let n = delta + 1;
    let pairs = n * delta / 2;
    if pairs == 0 {
        return 0;
    }
    let ex = ex.unwrap_or_else(|| {
        if n as usize <= EX_CAP {
            exact_ex_c4(n as usize).unwrap() as u64
        } else {
            ex_c4_upper_bound(n)
        }
    });
    pairs.div_ceil(ex)
}

/// Exact minimum number of C4-free classes of `g`, trying `1..=max_colours`.
///
/// C4-free graphs answer 1 (0 when edgeless) without search; otherwise the
/// graph must respect `limits.max_edges`.
pub fn exact_phi_c4(g: &Graph, max_colours: u32, limits: OracleLimits) -> Result<u32, OracleError> {
    if g.edge_count() == 0 {
        return Ok(0);
    }
    if find_c4(g).is_none() {
        return if max_colours >= 1 {
            Ok(1)
        } else {
            Err(OracleError::ColourLimit(max_colours))
        };
    }
    if g.edge_count() > limits.max_edges {
        return Err(OracleError::TooLarge {
            size: g.edge_count(),
            cap: limits.max_edges,
        });
    }
    for k in 2..=max_colours {
        if c4_free_colouring_search(g, k, limits.max_nodes)?.is_some() {
            return Ok(k);
        }
    }
    Err(OracleError::ColourLimit(max_colours))
}

/// Backtracking search for a C4-free colouring of `g` with at most
/// `colours` classes. Returns colours indexed by edge id.
///
/// Edges are visited so that each next edge touches as many already-placed
/// edges as possible; the first edge is fixed to colour 0 and new colours
/// are opened in order, which removes colour-permutation symmetry.
/// Non-isolated vertices must number at most 64.
pub fn c4_free_colouring_search(
    g: &Graph,
    colours: u32,
    max_nodes: u64,
) -> Result<Option<Vec<u32>>, OracleError> {
    let m = g.edge_count();
    if m == 0 {
        return Ok(Some(Vec::new()));
    }
    if colours == 0 {
        return Ok(None);
    }
    // Compress non-isolated vertices to bit positions.
    let mut bit = vec![u32::MAX; g.vertex_count()];
    let mut next = 0u32;
    for &(u, v) in g.edges() {
        for w in [u, v] {
            if bit[w as usize] == u32::MAX {
                bit[w as usize] = next;
                next += 1;
            }
        }
    }
    if next > 64 {
        return Err(OracleError::TooLarge {
            size: next as usize,
            cap: 64,
        });
    }
    let order = edge_order(g);
    let ends: Vec<(usize, usize)> = order
        .iter()
        .map(|&e| {
            let (u, v) = g.edge(e);
            (bit[u as usize] as usize, bit[v as usize] as usize)
        })
        .collect();
    let mut s = ColourSearch {
        ends,
        adj: vec![[0u64; 64]; colours as usize],
        assigned: vec![0; m],
        colours,
        nodes: 0,
        max_nodes,
    };
    if !s.go(0, 0)? {
        return Ok(None);
    }
    let mut out = vec![0; m];
    for (pos, &e) in order.iter().enumerate() {
        out[e] = s.assigned[pos];
    }
    Ok(Some(out))
}

fn edge_order(g: &Graph) -> Vec<usize> {
    let m = g.edge_count();
    let mut placed = vec![false; m];
    let mut touched = vec![0usize; g.vertex_count()];
    let mut order = Vec::with_capacity(m);
    for _ in 0..m {
        let e = (0..m)
            .filter(|&e| !placed[e])
            .max_by_key(|&e| {
                let (u, v) = g.edge(e);
                // max_by_key keeps the last maximum; reverse id for stability.
                (touched[u as usize] + touched[v as usize], usize::MAX - e)
            })
            .unwrap();
        placed[e] = true;
        let (u, v): (Vertex, Vertex) = g.edge(e);
        touched[u as usize] += 1;
        touched[v as usize] += 1;
        order.push(e);
    }
    order
}

struct ColourSearch {
    ends: Vec<(usize, usize)>,
    adj: Vec<[u64; 64]>,
    assigned: Vec<u32>,
    colours: u32,
    nodes: u64,
    max_nodes: u64,
}

impl ColourSearch {
    fn closes_c4(&self, c: usize, u: usize, v: usize) -> bool {
        let adj = &self.adj[c];
        let mut xs = adj[u] & !(1u64 << v);
        while xs != 0 {
            let x = xs.trailing_zeros() as usize;
            xs &= xs - 1;
            if adj[x] & adj[v] & !(1u64 << u) != 0 {
                return true;
            }
        }
        false
    }

    fn go(&mut self, pos: usize, used: u32) -> Result<bool, OracleError> {
        if pos == self.ends.len() {
            return Ok(true);
        }
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Err(OracleError::BudgetExhausted(self.max_nodes));
        }
        let (u, v) = self.ends[pos];
        let limit = (used + 1).min(self.colours);
        for c in 0..limit {
            if self.closes_c4(c as usize, u, v) {
                continue;
            }
            self.adj[c as usize][u] |= 1 << v;
            self.adj[c as usize][v] |= 1 << u;
            self.assigned[pos] = c;
            let found = self.go(pos + 1, used.max(c + 1))?;
            self.adj[c as usize][u] &= !(1 << v);
            self.adj[c as usize][v] &= !(1 << u);
            if found {
                return Ok(true);
            }
        }
        Ok(false)
    }
}
