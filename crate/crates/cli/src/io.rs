//! Edge-list and colouring text formats.
//!
//! Edge lists hold one `u v` pair per line; colourings hold `u v c`. Lines
//! starting with `#` and blank lines are skipped. Vertex ids run from 0 to
//! the largest id seen, so ids that never appear become isolated vertices.

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use c4free_core::graph::{canonical, Edge, EdgeColouring, Graph, Vertex, VertexColouring};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: expected {expected} non-negative integers, found {found:?}")]
    Malformed {
        line: usize,
        expected: usize,
        found: String,
    },
    #[error("line {line}: loop edge at vertex {vertex}")]
    Loop { line: usize, vertex: Vertex },
    #[error("line {line}: duplicate edge {u} {v}")]
    Duplicate { line: usize, u: Vertex, v: Vertex },
    #[error("line {line}: vertex {vertex} is outside the graph ({n} vertices)")]
    OutOfRange { line: usize, vertex: Vertex, n: usize },
    #[error("read failed: {0}")]
    Io(#[from] io::Error),
}

fn parse_fields<const K: usize>(text: &str, line: usize) -> Result<Option<[u64; K]>, ParseError> {
    let trimmed = text.trim();
    if trimmed.is_empty() || trimmed.starts_with('#') {
        return Ok(None);
    }
    let malformed = || ParseError::Malformed {
        line,
        expected: K,
        found: trimmed.to_string(),
    };
    let mut out = [0u64; K];
    let mut parts = trimmed.split_whitespace();
    for slot in out.iter_mut() {
        *slot = parts.next().and_then(|p| p.parse().ok()).ok_or_else(malformed)?;
    }
    if parts.next().is_some() || out.iter().take(2).any(|&x| x > Vertex::MAX as u64 - 1) {
        return Err(malformed());
    }
    Ok(Some(out))
}

/// Reads lines of `K` integers, the first two being an edge. Returns the
/// canonical edges, the trailing fields, and the line of each edge.
fn read_records<const K: usize, R: BufRead>(reader: R) -> Result<Vec<(Edge, [u64; K], usize)>, ParseError> {
    let mut records = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line_no = i + 1;
        let Some(fields) = parse_fields::<K>(&line?, line_no)? else {
            continue;
        };
        let (u, v) = (fields[0] as Vertex, fields[1] as Vertex);
        if u == v {
            return Err(ParseError::Loop { line: line_no, vertex: u });
        }
        records.push((canonical(u, v), fields, line_no));
    }
    // Stable sort keeps the earlier line first among duplicates.
    records.sort_by_key(|r| r.0);
    for w in records.windows(2) {
        if w[0].0 == w[1].0 {
            let (u, v) = w[1].0;
            return Err(ParseError::Duplicate { line: w[1].2, u, v });
        }
    }
    Ok(records)
}

fn order_of(edges: impl Iterator<Item = Edge>) -> usize {
    edges.map(|(_, v)| v as usize + 1).max().unwrap_or(0)
}

pub fn read_edge_list<R: BufRead>(reader: R) -> Result<Graph, ParseError> {
    let records = read_records::<2, _>(reader)?;
    let edges: Vec<Edge> = records.iter().map(|r| r.0).collect();
    let n = order_of(edges.iter().copied());
    Ok(Graph::from_edges(n, &edges).expect("edges were checked while parsing"))
}

pub fn write_edge_list<W: Write>(g: &Graph, mut w: W) -> io::Result<()> {
    for &(u, v) in g.edges() {
        writeln!(w, "{u} {v}")?;
    }
    w.flush()
}

/// Reads `u v c` lines. The graph is the set of listed edges; colours are
/// returned by edge id, exactly as written.
pub fn read_colouring<R: BufRead>(reader: R) -> Result<(Graph, Vec<u32>), ParseError> {
    let records = read_records::<3, _>(reader)?;
    for r in &records {
        if r.1[2] > u32::MAX as u64 {
            return Err(ParseError::Malformed {
                line: r.2,
                expected: 3,
                found: format!("{} {} {}", r.1[0], r.1[1], r.1[2]),
            });
        }
    }
    let edges: Vec<Edge> = records.iter().map(|r| r.0).collect();
    let n = order_of(edges.iter().copied());
    let g = Graph::from_edges(n, &edges).expect("edges were checked while parsing");
    let colours = records.iter().map(|r| r.1[2] as u32).collect();
    Ok((g, colours))
}

/// One `u v c` line per edge with `u < v`, in lexicographic order.
pub fn write_colouring<W: Write>(g: &Graph, colouring: &EdgeColouring, mut w: W) -> io::Result<()> {
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        writeln!(w, "{u} {v} {}", colouring.colour(e))?;
    }
    w.flush()
}

/// One `v c` line per coloured vertex.
pub fn write_vertex_colouring<W: Write>(chi: &VertexColouring, mut w: W) -> io::Result<()> {
    for (v, c) in chi.as_slice().iter().enumerate() {
        if let Some(c) = c {
            writeln!(w, "{v} {c}")?;
        }
    }
    w.flush()
}

pub fn open(path: &Path) -> io::Result<BufReader<Box<dyn Read>>> {
    let inner: Box<dyn Read> = if path.as_os_str() == "-" {
        Box::new(io::stdin())
    } else {
        Box::new(File::open(path)?)
    };
    Ok(BufReader::new(inner))
}

/// Writes to `path`, or to stdout for `None` or `-`.
pub fn create(path: Option<&Path>) -> io::Result<BufWriter<Box<dyn Write>>> {
    let inner: Box<dyn Write> = match path {
        Some(p) if p.as_os_str() != "-" => Box::new(File::create(p)?),
        _ => Box::new(io::stdout()),
    };
    Ok(BufWriter::new(inner))
}
