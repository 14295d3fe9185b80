//! Isomorph-free generation of connected graphs by canonical augmentation.
//!
//! Every connected graph on `n` vertices is produced from a connected parent
//! on `n - 1` vertices by adding one vertex joined to a non-empty subset. A
//! child is kept only if the new vertex is, up to automorphism, the child's
//! canonical deletion vertex: among the non-cut vertices with the largest
//! `(degree, sum of neighbor degrees)`, the one with the highest canonical
//! position. That makes the parent of each isomorphism class unique, so
//! distinct parents never share a child; isomorphic children of one parent
//! are removed by comparing canonical certificates.

use std::collections::HashSet;

use rayon::prelude::*;

use super::canon::{canonical_labeling, rooted_labeling, CANON_MAX_N};
use super::EnumError;
use crate::graph::Graph;

/// Largest order produced by the built-in enumerator.
pub const ENUM_MAX_N: usize = 9;

fn check_n(n: usize) -> Result<(), EnumError> {
    if (1..=ENUM_MAX_N).contains(&n) {
        Ok(())
    } else {
        Err(EnumError::OrderOutOfRange(n))
    }
}

/// One representative per isomorphism class of connected graphs on `n`
/// vertices, in a fixed order.
pub fn connected_graphs(n: usize) -> Result<ConnectedGraphs, EnumError> {
    connected_graphs_shard(n, 0, 1)
}

/// The slice of [`connected_graphs`] whose parents have index `shard` modulo
/// `shards`. The union over all shards, in shard order per parent, is the
/// full enumeration; shards are disjoint.
pub fn connected_graphs_shard(
    n: usize,
    shard: usize,
    shards: usize,
) -> Result<ConnectedGraphs, EnumError> {
    check_n(n)?;
    if shards == 0 || shard >= shards {
        return Err(EnumError::BadShard { shard, shards });
    }
    let parents = if n == 1 { Vec::new() } else { level(n - 1) };
    Ok(ConnectedGraphs {
        emit_single: n == 1,
        parents,
        next_parent: shard,
        stride: shards,
        buffer: Vec::new().into_iter(),
    })
}

/// Same sequence as [`connected_graphs`], computed on the rayon pool.
pub fn connected_graphs_par(n: usize) -> Result<Vec<Graph>, EnumError> {
    check_n(n)?;
    Ok(level(n))
}

/// All connected graphs on `n` vertices, materialized.
fn level(n: usize) -> Vec<Graph> {
    let mut current = vec![Graph::empty(1).expect("K1")];
    for _ in 1..n {
        current = current
            .par_iter()
            .map(children)
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .collect();
    }
    current
}

/// Streaming iterator returned by [`connected_graphs`].
pub struct ConnectedGraphs {
    emit_single: bool,
    parents: Vec<Graph>,
    next_parent: usize,
    stride: usize,
    buffer: std::vec::IntoIter<Graph>,
}

impl Iterator for ConnectedGraphs {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        if self.emit_single {
            self.emit_single = false;
            if self.next_parent == 0 {
                return Some(Graph::empty(1).expect("K1"));
            }
            return None;
        }
        loop {
            if let Some(g) = self.buffer.next() {
                return Some(g);
            }
            let parent = self.parents.get(self.next_parent)?;
            self.buffer = children(parent).into_iter();
            self.next_parent += self.stride;
        }
    }
}

/// Accepted, pairwise non-isomorphic one-vertex extensions of `parent`.
pub(crate) fn children(parent: &Graph) -> Vec<Graph> {
    let m = parent.n();
    debug_assert!(m < CANON_MAX_N);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for subset in 1u64..1 << m {
        let child = parent.add_vertex(subset).expect("within cap");
        if let Some(cert) = accept(&child) {
            if seen.insert(cert) {
                out.push(child);
            }
        }
    }
    out
}

fn is_cut_vertex(g: &Graph, v: usize) -> bool {
    let rest = g.vertex_mask() & !(1 << v);
    if rest == 0 {
        return false;
    }
    let start = rest.trailing_zeros() as usize;
    let mut seen = 1u64 << start;
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0;
        for u in crate::graph::members(frontier) {
            next |= g.neighbors(u);
        }
        next &= rest & !seen;
        seen |= next;
        frontier = next;
    }
    seen != rest
}

/// Canonical certificate of `child` if its last vertex is a canonical
/// deletion vertex, else `None`.
fn accept(child: &Graph) -> Option<u128> {
    let n = child.n();
    let w = n - 1;
    let score = |v: usize| {
        let nb: usize = crate::graph::members(child.neighbors(v))
            .map(|u| child.degree(u))
            .sum();
        (child.degree(v), nb)
    };
    // The new vertex is never a cut vertex: the parent is connected.
    let best_score = (0..n)
        .filter(|&v| v == w || !is_cut_vertex(child, v))
        .map(score)
        .max()
        .expect("non-empty");
    if score(w) < best_score {
        return None;
    }
    let tied: Vec<usize> = (0..n)
        .filter(|&v| score(v) == best_score && (v == w || !is_cut_vertex(child, v)))
        .collect();
    let lab = canonical_labeling(child).expect("within cap");
    if tied.len() == 1 {
        return Some(lab.certificate);
    }
    let pos = lab.positions();
    let chosen = *tied.iter().max_by_key(|&&v| pos[v]).expect("non-empty");
    if chosen == w
        || rooted_labeling(child, w).expect("in range").certificate
            == rooted_labeling(child, chosen)
                .expect("in range")
                .certificate
    {
        Some(lab.certificate)
    } else {
        None
    }
}
