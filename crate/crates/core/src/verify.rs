//! Independent checkers: 4-cycle detection, colouring validity, frugality,
//! acyclicity, and the Sidon property.

use alloc::collections::VecDeque;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::{self, Write as _};

use crate::error::VerifyError;
use crate::graph::{EdgeColouring, Graph, Vertex, VertexColouring};

/// Returns a 4-cycle `[w, x, y, z]` (edges `wx, xy, yz, zw`) if `g` has one.
///
/// For each vertex `v`, walks all 2-paths `v - x - w` with `w > v` and
/// stops at the first `w` reached through two different middles.
pub fn find_c4(g: &Graph) -> Option<[Vertex; 4]> {
    let n = g.vertex_count();
    let mut reached_from = vec![u32::MAX; n];
    let mut middle = vec![0 as Vertex; n];
    for v in 0..n as Vertex {
        for &x in g.neighbours(v) {
            for &w in g.neighbours(x) {
                if w <= v {
                    continue;
                }
                if reached_from[w as usize] == v {
                    return Some([v, middle[w as usize], w, x]);
                }
                reached_from[w as usize] = v;
                middle[w as usize] = x;
            }
        }
    }
    None
}

/// Returns an edge lying on a cycle of `g`, if `g` is not a forest.
pub fn find_cycle_edge(g: &Graph) -> Option<(Vertex, Vertex)> {
    let mut parent: Vec<usize> = (0..g.vertex_count()).collect();
    fn root(parent: &mut [usize], mut v: usize) -> usize {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }
    for &(u, v) in g.edges() {
        let (a, b) = (root(&mut parent, u as usize), root(&mut parent, v as usize));
        if a == b {
            return Some((u, v));
        }
        parent[a] = b;
    }
    None
}

pub fn is_forest(g: &Graph) -> bool {
    find_cycle_edge(g).is_none()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// Class `class` contains the 4-cycle `cycle`.
    C4 { class: u32, cycle: [Vertex; 4] },
    /// Both endpoints of `edge` have colour `colour`.
    Monochromatic { edge: (Vertex, Vertex), colour: u32 },
    /// `vertex` sees `colour` on both of `neighbours`.
    NotFrugal {
        vertex: Vertex,
        colour: u32,
        neighbours: (Vertex, Vertex),
    },
    /// Class `class` contains a cycle through `edge`.
    Cycle { class: u32, edge: (Vertex, Vertex) },
}

impl Violation {
    pub fn kind(&self) -> &'static str {
        match self {
            Violation::C4 { .. } => "c4",
            Violation::Monochromatic { .. } => "monochromatic",
            Violation::NotFrugal { .. } => "frugality",
            Violation::Cycle { .. } => "cycle",
        }
    }

    /// Compact witness, e.g. `class:2,cycle:0-1-2-3`.
    pub fn witness(&self) -> String {
        let mut s = String::new();
        let _ = match self {
            Violation::C4 { class, cycle } => write!(
                s,
                "class:{class},cycle:{}-{}-{}-{}",
                cycle[0], cycle[1], cycle[2], cycle[3]
            ),
            Violation::Monochromatic { edge, colour } => {
                write!(s, "edge:{}-{},colour:{colour}", edge.0, edge.1)
            }
            Violation::NotFrugal {
                vertex,
                colour,
                neighbours,
            } => write!(
                s,
                "vertex:{vertex},colour:{colour},neighbours:{}-{}",
                neighbours.0, neighbours.1
            ),
            Violation::Cycle { class, edge } => {
                write!(s, "class:{class},edge:{}-{}", edge.0, edge.1)
            }
        };
        s
    }
}

/// Outcome of a verification pass. It is ok exactly when no violation was
/// recorded.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub violations: Vec<Violation>,
}

impl VerificationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    /// Single-line machine-readable form: `OK` or
    /// `FAIL kind=<kind> witness=<witness>` for the first violation.
    pub fn summary(&self) -> String {
        match self.violations.first() {
            None => String::from("OK"),
            Some(v) => {
                let mut s = String::new();
                let _ = write!(s, "FAIL kind={} witness={}", v.kind(), v.witness());
                if self.violations.len() > 1 {
                    let _ = write!(s, " more={}", self.violations.len() - 1);
                }
                s
            }
        }
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return writeln!(f, "verification: OK");
        }
        writeln!(f, "verification: FAILED ({} violations)", self.violations.len())?;
        for v in &self.violations {
            writeln!(f, "  {:<14} {}", v.kind(), v.witness())?;
        }
        Ok(())
    }
}

fn check_total(g: &Graph, colouring: &EdgeColouring) -> Result<(), VerifyError> {
    if colouring.len() != g.edge_count() {
        return Err(VerifyError::NotTotal {
            graph: g.edge_count(),
            colouring: colouring.len(),
        });
    }
    Ok(())
}

/// Checks that no colour class contains a 4-cycle. Reports one witness per
/// offending class.
pub fn verify_c4_free_colouring(
    g: &Graph,
    colouring: &EdgeColouring,
) -> Result<VerificationReport, VerifyError> {
    check_total(g, colouring)?;
    let mut report = VerificationReport::default();
    for_each_class(g, colouring, |class, sub| {
        if let Some(cycle) = find_c4(sub) {
            report.violations.push(Violation::C4 { class, cycle });
        }
    });
    Ok(report)
}

/// Checks that every colour class is a forest.
pub fn verify_forest_colouring(
    g: &Graph,
    colouring: &EdgeColouring,
) -> Result<VerificationReport, VerifyError> {
    check_total(g, colouring)?;
    let mut report = VerificationReport::default();
    for_each_class(g, colouring, |class, sub| {
        if let Some(edge) = find_cycle_edge(sub) {
            report.violations.push(Violation::Cycle { class, edge });
        }
    });
    Ok(report)
}

fn for_each_class(g: &Graph, colouring: &EdgeColouring, mut f: impl FnMut(u32, &Graph)) {
    let k = colouring.class_count() as usize;
    let mut buckets: Vec<Vec<(Vertex, Vertex)>> = vec![Vec::new(); k];
    for (e, &c) in colouring.colours().iter().enumerate() {
        buckets[c as usize].push(g.edge(e));
    }
    for (class, edges) in buckets.into_iter().enumerate() {
        let sub = Graph::from_sorted_unique(g.vertex_count(), edges);
        f(class as u32, &sub);
    }
}

/// Checks that `chi` is proper and 1-frugal on `h`.
pub fn verify_frugal_proper(
    h: &Graph,
    chi: &VertexColouring,
) -> Result<VerificationReport, VerifyError> {
    if let Some(v) = (0..h.vertex_count() as Vertex).find(|&v| chi.get(v).is_none()) {
        return Err(VerifyError::PartialColouring(v));
    }
    let mut report = VerificationReport::default();
    for &(u, v) in h.edges() {
        let c = chi.get(u).unwrap();
        if chi.get(v) == Some(c) {
            report.violations.push(Violation::Monochromatic {
                edge: (u, v),
                colour: c,
            });
        }
    }
    let mut seen_at = vec![u32::MAX; chi.palette() as usize];
    let mut seen_by = vec![0 as Vertex; chi.palette() as usize];
    for v in 0..h.vertex_count() as Vertex {
        for &w in h.neighbours(v) {
            let c = chi.get(w).unwrap() as usize;
            if seen_at[c] == v {
                report.violations.push(Violation::NotFrugal {
                    vertex: v,
                    colour: c as u32,
                    neighbours: (seen_by[c], w),
                });
            } else {
                seen_at[c] = v;
                seen_by[c] = w;
            }
        }
    }
    Ok(report)
}

/// True iff all sums `a + b mod m` over `a <= b` in `set` are distinct.
/// Elements are reduced mod `m` and repeated elements are ignored.
pub fn is_sidon(set: &[u64], m: u64) -> bool {
    assert!(m > 0, "modulus must be positive");
    let mut s: Vec<u64> = set.iter().map(|&a| a % m).collect();
    s.sort_unstable();
    s.dedup();
    let mut sums = Vec::with_capacity(s.len() * (s.len() + 1) / 2);
    for (i, &a) in s.iter().enumerate() {
        for &b in &s[i..] {
            sums.push(((a as u128 + b as u128) % m as u128) as u64);
        }
    }
    sums.sort_unstable();
    sums.windows(2).all(|w| w[0] != w[1])
}

/// The sum graph of `set` on `Z_m`: residues `i != j` joined when
/// `i + j mod m` lies in `set`.
pub fn sum_graph(set: &[u64], m: usize) -> Graph {
    let mut member = vec![false; m];
    for &s in set {
        member[(s % m as u64) as usize] = true;
    }
    let mut edges = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            if member[(i + j) % m] {
                edges.push((i as Vertex, j as Vertex));
            }
        }
    }
    Graph::from_sorted_unique(m, edges)
}

/// Connected components by BFS; returns a component id per vertex.
pub fn components(g: &Graph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut comp = vec![usize::MAX; n];
    let mut next = 0;
    let mut queue = VecDeque::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = next;
        queue.push_back(s as Vertex);
        while let Some(v) = queue.pop_front() {
            for &w in g.neighbours(v) {
                if comp[w as usize] == usize::MAX {
                    comp[w as usize] = next;
                    queue.push_back(w);
                }
            }
        }
        next += 1;
    }
    comp
}
