//! Simple undirected graphs on at most 64 vertices.
//!
//! Each adjacency row is a single `u64`, so neighborhood comparisons, induced
//! subgraphs and BFS frontiers are word operations. Graphs are immutable
//! values: every operation that "modifies" a graph returns a new one.

mod graph6;
mod metric;
mod structure;

use std::fmt;

use thiserror::Error;

pub use graph6::{parse_graph6, to_graph6, Graph6Error};
pub use metric::{bfs_distances, diameter, diameter_paths, DiameterPath, DiameterPaths};
pub use structure::{
    classify_outside, is_reduced, pendant_pairs, reduce, twin_classes, OutsideClassification,
    OutsideVertex, Reduction,
};

/// Largest supported vertex count.
pub const MAX_VERTICES: usize = 64;

/// Default cap on the number of diameter paths enumerated per graph.
pub const DEFAULT_PATH_LIMIT: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph has {0} vertices; at most {MAX_VERTICES} are supported")]
    TooManyVertices(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("adjacency is not symmetric at ({0}, {1})")]
    Asymmetric(usize, usize),
    #[error("graph is not connected")]
    Disconnected,
    #[error("invalid diameter path: {0}")]
    InvalidDiameterPath(String),
}

/// Iterate over the vertex indices contained in a bitmask, lowest first.
pub fn members(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

#[inline]
fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A simple undirected graph with vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: usize,
    rows: Vec<u64>,
}

impl Graph {
    /// The edgeless graph on `n` vertices. `n = 0` is allowed; deletion
    /// identities routinely produce it.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        Ok(Graph {
            n,
            rows: vec![0; n],
        })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            g.rows[u] |= 1 << v;
            g.rows[v] |= 1 << u;
        }
        Ok(g)
    }

    /// Build from explicit adjacency rows, validating symmetry and the
    /// absence of loops.
    pub fn from_rows(rows: Vec<u64>) -> Result<Self, GraphError> {
        let n = rows.len();
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        let all = full_mask(n);
        for (u, &row) in rows.iter().enumerate() {
            if row & !all != 0 {
                let vertex = (row & !all).trailing_zeros() as usize;
                return Err(GraphError::VertexOutOfRange { vertex, n });
            }
            if row >> u & 1 == 1 {
                return Err(GraphError::SelfLoop(u));
            }
            for v in members(row) {
                if rows[v] >> u & 1 == 0 {
                    return Err(GraphError::Asymmetric(u, v));
                }
            }
        }
        Ok(Graph { n, rows })
    }

    /// Rows already known to be valid (internal fast path).
    pub(crate) fn from_rows_unchecked(rows: Vec<u64>) -> Self {
        debug_assert!(Graph::from_rows(rows.clone()).is_ok());
        Graph {
            n: rows.len(),
            rows,
        }
    }

    pub fn path(n: usize) -> Result<Self, GraphError> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges)
    }

    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        if n >= 3 {
            edges.push((n - 1, 0));
        }
        Graph::from_edges(n, &edges)
    }

    pub fn complete(n: usize) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        let all = full_mask(n);
        for (v, row) in g.rows.iter_mut().enumerate() {
            *row = all & !(1 << v);
        }
        Ok(g)
    }

    /// `K_{a,b}` with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Result<Self, GraphError> {
        let mut edges = Vec::with_capacity(a * b);
        for u in 0..a {
            for v in a..a + b {
                edges.push((u, v));
            }
        }
        Graph::from_edges(a + b, &edges)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    #[inline]
    pub fn vertex_mask(&self) -> u64 {
        full_mask(self.n)
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u] >> v & 1 == 1
    }

    /// Open neighborhood of `v` as a bitmask.
    #[inline]
    pub fn neighbors(&self, v: usize) -> u64 {
        self.rows[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.rows
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    /// Edges `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| members(self.rows[u] >> u >> 1).map(move |k| (u, u + 1 + k)))
    }

    /// Vertices reachable from `v` as a bitmask.
    pub fn component_of(&self, v: usize) -> u64 {
        let mut seen = 1u64 << v;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for u in members(frontier) {
                next |= self.rows[u];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen
    }

    /// The empty graph counts as disconnected.
    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.component_of(0) == self.vertex_mask()
    }

    /// Induced subgraph on the vertices in `mask`, keeping their relative order.
    pub fn induced(&self, mask: u64) -> Graph {
        let keep: Vec<usize> = members(mask & self.vertex_mask()).collect();
        let mut pos = [usize::MAX; MAX_VERTICES];
        for (i, &v) in keep.iter().enumerate() {
            pos[v] = i;
        }
        let rows = keep
            .iter()
            .map(|&v| members(self.rows[v] & mask).fold(0u64, |acc, u| acc | 1 << pos[u]))
            .collect();
        Graph::from_rows_unchecked(rows)
    }

    pub fn remove_vertex(&self, v: usize) -> Graph {
        self.induced(self.vertex_mask() & !(1 << v))
    }

    pub fn remove_vertices(&self, mask: u64) -> Graph {
        self.induced(self.vertex_mask() & !mask)
    }

    /// Append a new vertex `n` adjacent to the vertices in `neighbors`.
    pub fn add_vertex(&self, neighbors: u64) -> Result<Graph, GraphError> {
        if self.n == MAX_VERTICES {
            return Err(GraphError::TooManyVertices(self.n + 1));
        }
        let neighbors = neighbors & self.vertex_mask();
        let mut rows = self.rows.clone();
        for v in members(neighbors) {
            rows[v] |= 1 << self.n;
        }
        rows.push(neighbors);
        Ok(Graph::from_rows_unchecked(rows))
    }

    /// Relabel so that old vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n, "permutation length mismatch");
        let mut rows = vec![0u64; self.n];
        for v in 0..self.n {
            rows[perm[v]] = members(self.rows[v]).fold(0u64, |acc, u| acc | 1 << perm[u]);
        }
        Graph::from_rows_unchecked(rows)
    }

    pub fn to_graph6(&self) -> String {
        to_graph6(self)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({})", to_graph6(self))
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&to_graph6(self))
    }
}
