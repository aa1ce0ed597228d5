use thiserror::Error;

use crate::graph::Vertex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("loop edge at vertex {0}")]
    Loop(Vertex),
    #[error("duplicate edge {0} {1}")]
    Duplicate(Vertex, Vertex),
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("colour ids are not contiguous: {0} is unused")]
    ColourGap(u32),
    #[error("colour {colour} outside palette of size {palette}")]
    ColourOutOfPalette { colour: u32, palette: u32 },
    #[error("no {d}-regular graph on {n} vertices: {reason}")]
    RegularParameters {
        n: usize,
        d: usize,
        reason: &'static str,
    },
    #[error("pairing construction failed after {0} restarts")]
    PairingFailed(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("colouring covers {colouring} edges but the graph has {graph}")]
    NotTotal { graph: usize, colouring: usize },
    #[error("vertex {0} is uncoloured")]
    PartialColouring(Vertex),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("instance too large for the exact oracle: {size} exceeds cap {cap}")]
    TooLarge { size: usize, cap: usize },
    #[error("no C4-free colouring with at most {0} colours")]
    ColourLimit(u32),
    #[error("search budget of {0} nodes exhausted")]
    BudgetExhausted(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("construction check failed: {0}")]
    Internal(&'static str),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FrugalError {
    #[error("alpha must exceed 16 in strict mode (got {0})")]
    AlphaTooSmall(f64),
    #[error("alpha must be positive (got {0})")]
    AlphaNotPositive(f64),
    #[error("minimum degree {min_degree} is below the required {required}")]
    TooSparse { min_degree: usize, required: usize },
    #[error("maximum degree {max_degree} is below the strict-mode floor {floor}")]
    DegreeFloor { max_degree: usize, floor: usize },
    #[error("graph has no edges")]
    NoEdges,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecomposeError {
    #[error("ordering violates the forward-degree bound at vertex {vertex}: {forward} > {bound}")]
    ForwardDegree {
        vertex: Vertex,
        forward: usize,
        bound: usize,
    },
    #[error("ordering is not a permutation of the vertices")]
    BadOrdering,
    #[error("input colouring is not proper and 1-frugal on H")]
    NotFrugal,
    #[error("complete-graph colouring covers {have} colours, need {need}")]
    PaletteTooLarge { have: usize, need: usize },
}
