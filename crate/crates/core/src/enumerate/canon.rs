//! Canonical labeling by individualization-refinement.
//!
//! The search tree is the usual one: refine the ordered partition to an
//! equitable one, individualize each vertex of the first smallest
//! non-singleton cell in turn, recurse. Each leaf is a discrete partition and
//! therefore a relabeling; the canonical form is the relabeled graph whose
//! column-major upper-triangle bit string (its graph6 body) is smallest.
//!
//! Branches are skipped only when an automorphism fixing the current prefix
//! maps them onto an explored sibling. Two sources of such automorphisms are
//! used: transpositions of twin vertices (open or closed), and automorphisms
//! discovered when two leaves produce the same certificate.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{members, to_graph6, Graph};

/// Largest order handled by the canonical labeler. The certificate of a
/// 16-vertex graph has 120 bits and fits a `u128`.
pub const CANON_MAX_N: usize = 16;

const MAX_STORED_AUTOMORPHISMS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CanonError {
    #[error("canonical labeling supports at most {CANON_MAX_N} vertices, got {0}")]
    TooLarge(usize),
    #[error("root vertex {root} out of range for {n} vertices")]
    BadRoot { root: usize, n: usize },
}

/// graph6 string of the canonically relabeled graph.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CanonicalForm(String);

impl CanonicalForm {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn into_string(self) -> String {
        self.0
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A canonical labeling: `order[i]` is the original vertex placed at
/// position `i`; `certificate` packs the relabeled upper triangle MSB-first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labeling {
    pub order: Vec<usize>,
    pub certificate: u128,
}

impl Labeling {
    /// Permutation mapping original vertex `v` to its canonical index.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.order.len()];
        for (i, &v) in self.order.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }
}

pub fn canonical_labeling(g: &Graph) -> Result<Labeling, CanonError> {
    let n = g.n();
    if n > CANON_MAX_N {
        return Err(CanonError::TooLarge(n));
    }
    let cells = if n == 0 {
        Vec::new()
    } else {
        vec![g.vertex_mask()]
    };
    Ok(Search::run(g.rows(), cells, Vec::new()))
}

/// Canonical labeling of the graph with `root` distinguished. Two vertices
/// lie in the same automorphism orbit iff their rooted certificates agree.
pub fn rooted_labeling(g: &Graph, root: usize) -> Result<Labeling, CanonError> {
    let n = g.n();
    if n > CANON_MAX_N {
        return Err(CanonError::TooLarge(n));
    }
    if root >= n {
        return Err(CanonError::BadRoot { root, n });
    }
    let rest = g.vertex_mask() & !(1 << root);
    let cells = if rest == 0 {
        vec![1 << root]
    } else {
        vec![1 << root, rest]
    };
    Ok(Search::run(g.rows(), cells, vec![root]))
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm, CanonError> {
    let lab = canonical_labeling(g)?;
    Ok(CanonicalForm(to_graph6(&g.relabel(&lab.positions()))))
}

/// Canonical relabeling of `g`.
pub fn canonical_graph(g: &Graph) -> Result<Graph, CanonError> {
    let lab = canonical_labeling(g)?;
    Ok(g.relabel(&lab.positions()))
}

fn certificate(rows: &[u64], order: &[usize]) -> u128 {
    let mut cert = 0u128;
    let mut bit = 127;
    for j in 1..order.len() {
        let row = rows[order[j]];
        for &u in &order[..j] {
            if row >> u & 1 == 1 {
                cert |= 1 << bit;
            }
            bit -= 1;
        }
    }
    cert
}

/// Split every cell by the number of neighbors each vertex has in every cell,
/// until the partition stops changing. Sub-cells are ordered by their count
/// vectors, so the result is equivariant under relabeling.
fn refine(rows: &[u64], mut cells: Vec<u64>) -> Vec<u64> {
    let n = rows.len();
    let mut sig: Vec<(Vec<u8>, usize)> = Vec::with_capacity(n);
    loop {
        let before = cells.len();
        if before == n {
            return cells;
        }
        let mut next = Vec::with_capacity(n);
        for &cell in &cells {
            if cell & (cell - 1) == 0 {
                next.push(cell);
                continue;
            }
            sig.clear();
            for v in members(cell) {
                let counts = cells
                    .iter()
                    .map(|&c| (rows[v] & c).count_ones() as u8)
                    .collect();
                sig.push((counts, v));
            }
            sig.sort_unstable();
            let mut mask = 0u64;
            for i in 0..sig.len() {
                if i > 0 && sig[i].0 != sig[i - 1].0 {
                    next.push(mask);
                    mask = 0;
                }
                mask |= 1 << sig[i].1;
            }
            next.push(mask);
        }
        cells = next;
        if cells.len() == before {
            return cells;
        }
    }
}

struct Search<'a> {
    rows: &'a [u64],
    best: Option<Labeling>,
    automorphisms: Vec<Vec<usize>>,
}

impl<'a> Search<'a> {
    /// `fixed` lists vertices already individualized by the initial partition.
    fn run(rows: &'a [u64], cells: Vec<u64>, mut fixed: Vec<usize>) -> Labeling {
        if rows.is_empty() {
            return Labeling {
                order: Vec::new(),
                certificate: 0,
            };
        }
        let mut search = Search {
            rows,
            best: None,
            automorphisms: Vec::new(),
        };
        search.descend(cells, &mut fixed);
        search.best.expect("at least one leaf")
    }

    fn descend(&mut self, cells: Vec<u64>, fixed: &mut Vec<usize>) {
        let cells = refine(self.rows, cells);
        let n = self.rows.len();
        if cells.len() == n {
            let order: Vec<usize> = cells.iter().map(|c| c.trailing_zeros() as usize).collect();
            self.leaf(order);
            return;
        }
        let (idx, target) = cells
            .iter()
            .copied()
            .enumerate()
            .filter(|(_, c)| c.count_ones() > 1)
            .min_by_key(|(i, c)| (c.count_ones(), *i))
            .expect("non-discrete partition");

        let mut tried: Vec<usize> = Vec::new();
        for v in members(target) {
            if tried.iter().any(|&u| self.equivalent(u, v, fixed)) {
                continue;
            }
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..idx]);
            child.push(1 << v);
            child.push(target & !(1 << v));
            child.extend_from_slice(&cells[idx + 1..]);
            fixed.push(v);
            self.descend(child, fixed);
            fixed.pop();
            tried.push(v);
        }
    }

    fn leaf(&mut self, order: Vec<usize>) {
        let cert = certificate(self.rows, &order);
        match &self.best {
            Some(best) if cert > best.certificate => {}
            Some(best) if cert == best.certificate => {
                if self.automorphisms.len() < MAX_STORED_AUTOMORPHISMS {
                    let mut gamma = vec![0; order.len()];
                    for (i, &v) in order.iter().enumerate() {
                        gamma[v] = best.order[i];
                    }
                    self.automorphisms.push(gamma);
                }
            }
            _ => {
                self.best = Some(Labeling {
                    order,
                    certificate: cert,
                });
            }
        }
    }

    /// Is there a known automorphism fixing `fixed` pointwise that maps `u`
    /// to `v`? Checked on the orbits of the group generated by the stored
    /// automorphisms that fix the prefix, plus twin transpositions.
    fn equivalent(&self, u: usize, v: usize, fixed: &[usize]) -> bool {
        let rows = self.rows;
        let twins = |a: usize, b: usize| rows[a] == rows[b] || rows[a] | 1 << a == rows[b] | 1 << b;
        if twins(u, v) {
            return true;
        }
        let stabilizing: Vec<&Vec<usize>> = self
            .automorphisms
            .iter()
            .filter(|g| fixed.iter().all(|&x| g[x] == x))
            .collect();
        if stabilizing.is_empty() {
            return false;
        }
        let n = rows.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for g in &stabilizing {
            for x in 0..n {
                let (a, b) = (find(&mut parent, x), find(&mut parent, g[x]));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        // Twin transpositions fix every other vertex, hence the prefix.
        for a in 0..n {
            for b in a + 1..n {
                if twins(a, b) && !fixed.contains(&a) && !fixed.contains(&b) {
                    let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                    if ra != rb {
                        parent[ra] = rb;
                    }
                }
            }
        }
        find(&mut parent, u) == find(&mut parent, v)
    }
}
