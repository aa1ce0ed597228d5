//! Simple undirected graphs with dense vertex ids, plus edge and vertex
//! colourings over them.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::GraphError;

/// A vertex id. Vertices of a graph on `n` vertices are `0..n`.
pub type Vertex = u32;

/// An undirected edge stored canonically with `.0 < .1`.
pub type Edge = (Vertex, Vertex);

/// Returns the canonical orientation of `{u, v}`.
#[inline]
pub fn canonical(u: Vertex, v: Vertex) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Immutable simple undirected graph.
///
/// Edges are kept sorted in canonical form and an edge's position in that
/// order is its id. Adjacency is a CSR layout with sorted neighbour arrays;
/// each adjacency slot also records the id of the edge it represents.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    offsets: Vec<usize>,
    neighbours: Vec<Vertex>,
    slot_edge: Vec<u32>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges)
            .finish()
    }
}

impl Graph {
    /// Builds a graph on `n` vertices, rejecting loops, repeated edges and
    /// out-of-range endpoints. Edge orientation in the input is irrelevant.
    pub fn from_edges(n: usize, edges: &[Edge]) -> Result<Self, GraphError> {
        let mut canon = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u == v {
                return Err(GraphError::Loop(u));
            }
            if u as usize >= n || v as usize >= n {
                return Err(GraphError::VertexOutOfRange {
                    vertex: u.max(v),
                    n,
                });
            }
            canon.push(canonical(u, v));
        }
        canon.sort_unstable();
        if let Some(w) = canon.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::Duplicate(w[0].0, w[0].1));
        }
        Ok(Self::from_sorted_unique(n, canon))
    }

    /// `edges` must be canonical, sorted, duplicate-free and in range.
    pub(crate) fn from_sorted_unique(n: usize, edges: Vec<Edge>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        let mut degree = vec![0usize; n];
        for &(u, v) in &edges {
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        let mut acc = 0;
        for d in &degree {
            acc += d;
            offsets.push(acc);
        }
        let mut cursor = offsets[..n].to_vec();
        let mut neighbours = vec![0; acc];
        let mut slot_edge = vec![0; acc];
        // Edges are sorted by (u, v), so filling in edge order leaves each
        // list sorted: lower neighbours arrive via their own (w, u) edges
        // before any (u, v) edge with v > u.
        for (id, &(u, v)) in edges.iter().enumerate() {
            let (u, v) = (u as usize, v as usize);
            neighbours[cursor[u]] = v as Vertex;
            slot_edge[cursor[u]] = id as u32;
            cursor[u] += 1;
            neighbours[cursor[v]] = u as Vertex;
            slot_edge[cursor[v]] = id as u32;
            cursor[v] += 1;
        }
        debug_assert!((0..n).all(|v| neighbours[offsets[v]..offsets[v + 1]]
            .windows(2)
            .all(|w| w[0] < w[1])));
        Graph {
            n,
            edges,
            offsets,
            neighbours,
            slot_edge,
        }
    }

    /// Graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Self {
        Self::from_sorted_unique(n, Vec::new())
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// All edges in canonical sorted order; the index is the edge id.
    #[inline]
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    #[inline]
    pub fn edge(&self, id: usize) -> Edge {
        self.edges[id]
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        let v = v as usize;
        self.offsets[v + 1] - self.offsets[v]
    }

    /// Sorted neighbours of `v`.
    #[inline]
    pub fn neighbours(&self, v: Vertex) -> &[Vertex] {
        let v = v as usize;
        &self.neighbours[self.offsets[v]..self.offsets[v + 1]]
    }

    /// Edge ids parallel to [`Graph::neighbours`].
    #[inline]
    pub fn incident_edges(&self, v: Vertex) -> &[u32] {
        let v = v as usize;
        &self.slot_edge[self.offsets[v]..self.offsets[v + 1]]
    }

    /// `(neighbour, edge id)` pairs for `v`.
    pub fn incident(&self, v: Vertex) -> impl Iterator<Item = (Vertex, usize)> + '_ {
        self.neighbours(v)
            .iter()
            .zip(self.incident_edges(v))
            .map(|(&w, &e)| (w, e as usize))
    }

    pub fn edge_id(&self, u: Vertex, v: Vertex) -> Option<usize> {
        if u as usize >= self.n || v as usize >= self.n {
            return None;
        }
        let (a, b) = if self.degree(u) <= self.degree(v) {
            (u, v)
        } else {
            (v, u)
        };
        self.neighbours(a)
            .binary_search(&b)
            .ok()
            .map(|i| self.incident_edges(a)[i] as usize)
    }

    #[inline]
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edge_id(u, v).is_some()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n as Vertex).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n as Vertex).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    /// Minimum degree over non-isolated vertices; 0 for an edgeless graph.
    pub fn min_positive_degree(&self) -> usize {
        (0..self.n as Vertex)
            .map(|v| self.degree(v))
            .filter(|&d| d > 0)
            .min()
            .unwrap_or(0)
    }

    /// Spanning subgraph keeping the edges for which `keep(id)` holds.
    ///
    /// Returns the subgraph and, for each of its edges, the id of the
    /// corresponding edge in `self`.
    pub fn spanning_subgraph(&self, mut keep: impl FnMut(usize) -> bool) -> (Graph, Vec<usize>) {
        let mut ids = Vec::new();
        let mut edges = Vec::new();
        for (id, &e) in self.edges.iter().enumerate() {
            if keep(id) {
                ids.push(id);
                edges.push(e);
            }
        }
        (Self::from_sorted_unique(self.n, edges), ids)
    }
}

/// A total assignment of colour classes to the edges of a graph, indexed by
/// edge id. Colour ids are always contiguous `0..class_count`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeColouring {
    colours: Vec<u32>,
    class_count: u32,
}

impl EdgeColouring {
    /// Accepts `colours` only if the ids used are exactly `0..k` for some `k`.
    pub fn new(colours: Vec<u32>) -> Result<Self, GraphError> {
        let k = colours.iter().map(|&c| c + 1).max().unwrap_or(0);
        let mut seen = vec![false; k as usize];
        for &c in &colours {
            seen[c as usize] = true;
        }
        if let Some(gap) = seen.iter().position(|s| !s) {
            return Err(GraphError::ColourGap(gap as u32));
        }
        Ok(EdgeColouring {
            colours,
            class_count: k,
        })
    }

    /// Renumbers arbitrary ids to `0..k`, preserving their relative order.
    pub fn compacted(raw: Vec<u32>) -> Self {
        let mut ids: Vec<u32> = raw.clone();
        ids.sort_unstable();
        ids.dedup();
        let colours = raw
            .into_iter()
            .map(|c| ids.binary_search(&c).unwrap() as u32)
            .collect();
        EdgeColouring {
            colours,
            class_count: ids.len() as u32,
        }
    }

    #[inline]
    pub fn colour(&self, edge: usize) -> u32 {
        self.colours[edge]
    }

    #[inline]
    pub fn colours(&self) -> &[u32] {
        &self.colours
    }

    #[inline]
    pub fn class_count(&self) -> u32 {
        self.class_count
    }

    /// Number of edges coloured; equals the graph's edge count when total.
    #[inline]
    pub fn len(&self) -> usize {
        self.colours.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.colours.is_empty()
    }

    /// Edge ids grouped by class.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.class_count as usize];
        for (e, &c) in self.colours.iter().enumerate() {
            out[c as usize].push(e);
        }
        out
    }

    /// The spanning subgraph formed by one class.
    pub fn class_subgraph(&self, g: &Graph, class: u32) -> Graph {
        g.spanning_subgraph(|e| self.colours[e] == class).0
    }
}

/// A partial map from vertices to colours drawn from `0..palette`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexColouring {
    colours: Vec<Option<u32>>,
    palette: u32,
}

impl VertexColouring {
    pub fn uncoloured(n: usize, palette: u32) -> Self {
        VertexColouring {
            colours: vec![None; n],
            palette,
        }
    }

    /// Total colouring from a slice; every entry must lie in the palette.
    pub fn from_total(colours: &[u32], palette: u32) -> Result<Self, GraphError> {
        if let Some(&c) = colours.iter().find(|&&c| c >= palette) {
            return Err(GraphError::ColourOutOfPalette { colour: c, palette });
        }
        Ok(VertexColouring {
            colours: colours.iter().map(|&c| Some(c)).collect(),
            palette,
        })
    }

    #[inline]
    pub fn get(&self, v: Vertex) -> Option<u32> {
        self.colours[v as usize]
    }

    /// Panics if `colour` is outside the palette.
    #[inline]
    pub fn set(&mut self, v: Vertex, colour: u32) {
        assert!(colour < self.palette, "colour {colour} outside palette {}", self.palette);
        self.colours[v as usize] = Some(colour);
    }

    #[inline]
    pub fn clear(&mut self, v: Vertex) {
        self.colours[v as usize] = None;
    }

    #[inline]
    pub fn palette(&self) -> u32 {
        self.palette
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.colours.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.colours.is_empty()
    }

    pub fn is_total(&self) -> bool {
        self.colours.iter().all(Option::is_some)
    }

    pub fn as_slice(&self) -> &[Option<u32>] {
        &self.colours
    }

    /// No edge of `h` joins two vertices of the same colour. Uncoloured
    /// endpoints never conflict.
    pub fn is_proper_on(&self, h: &Graph) -> bool {
        h.edges().iter().all(|&(u, v)| match (self.get(u), self.get(v)) {
            (Some(a), Some(b)) => a != b,
            _ => true,
        })
    }

    /// Every neighbourhood in `h` is rainbow: no vertex has two neighbours
    /// of the same colour.
    pub fn is_frugal_on(&self, h: &Graph) -> bool {
        let mut stamp = vec![u32::MAX; self.palette as usize];
        (0..h.vertex_count() as Vertex).all(|v| {
            h.neighbours(v).iter().all(|&w| match self.get(w) {
                Some(c) if stamp[c as usize] == v => false,
                Some(c) => {
                    stamp[c as usize] = v;
                    true
                }
                None => true,
            })
        })
    }
}
