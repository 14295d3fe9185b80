use std::collections::BTreeMap;

use serde::Serialize;

use super::metric::{bfs_distances, diameter, DiameterPath};
use super::{members, Graph, GraphError};

/// Classes of the relation `N(u) = N(v)` (open neighborhoods), each sorted,
/// ordered by smallest member. Singletons are included.
pub fn twin_classes(g: &Graph) -> Vec<Vec<usize>> {
    let mut by_row: BTreeMap<u64, usize> = BTreeMap::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for v in 0..g.n() {
        let idx = *by_row.entry(g.neighbors(v)).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[idx].push(v);
    }
    classes
}

/// First vertex that shares its open neighborhood with a later-or-earlier vertex.
fn lowest_twinned_vertex(g: &Graph) -> Option<usize> {
    let rows = g.rows();
    (0..g.n()).find(|&v| (0..g.n()).any(|u| u != v && rows[u] == rows[v]))
}

pub fn is_reduced(g: &Graph) -> bool {
    lowest_twinned_vertex(g).is_none()
}

/// Outcome of twin reduction. Diameters are reported on both sides because
/// deleting twins can shrink the diameter (`C_4` reduces to `K_2`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Reduction {
    #[serde(skip)]
    pub graph: Graph,
    /// Original indices of the deleted vertices, in deletion order.
    pub removed: Vec<usize>,
    pub diameter_before: usize,
    pub diameter_after: usize,
}

impl Reduction {
    pub fn removed_count(&self) -> usize {
        self.removed.len()
    }
}

/// Repeatedly delete the lowest-indexed vertex that has a twin until the graph
/// is reduced.
pub fn reduce(g: &Graph) -> Result<Reduction, GraphError> {
    let diameter_before = diameter(g)?;
    let mut current = g.clone();
    let mut original: Vec<usize> = (0..g.n()).collect();
    let mut removed = Vec::new();
    while let Some(v) = lowest_twinned_vertex(&current) {
        removed.push(original.remove(v));
        current = current.remove_vertex(v);
    }
    // Twin deletion keeps the graph connected.
    let diameter_after = diameter(&current)?;
    Ok(Reduction {
        graph: current,
        removed,
        diameter_before,
        diameter_after,
    })
}

/// Every degree-one vertex paired with its unique neighbor, ordered by the pendant.
pub fn pendant_pairs(g: &Graph) -> Vec<(usize, usize)> {
    (0..g.n())
        .filter(|&u| g.degree(u) == 1)
        .map(|u| (u, g.neighbors(u).trailing_zeros() as usize))
        .collect()
}

/// One vertex off the diameter path.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OutsideVertex {
    pub vertex: usize,
    /// `|N_P(x)|`; zero for vertices at distance two or more.
    pub class: usize,
    /// One-based path positions adjacent to the vertex, ascending.
    pub anchors: Vec<usize>,
    /// Distance from the vertex to the path.
    pub distance: usize,
}

/// Partition of `V(G) \ V(P)` by the number of path neighbors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OutsideClassification {
    pub path: DiameterPath,
    pub vertices: Vec<OutsideVertex>,
}

impl OutsideClassification {
    /// Vertices with exactly `i` path neighbors.
    pub fn class(&self, i: usize) -> impl Iterator<Item = &OutsideVertex> {
        self.vertices
            .iter()
            .filter(move |x| x.distance == 1 && x.class == i)
    }

    /// Vertices at distance two or more from the path.
    pub fn far(&self) -> impl Iterator<Item = &OutsideVertex> {
        self.vertices.iter().filter(|x| x.distance >= 2)
    }

    pub fn get(&self, v: usize) -> Option<&OutsideVertex> {
        self.vertices.iter().find(|x| x.vertex == v)
    }
}

pub fn classify_outside(
    g: &Graph,
    path: &DiameterPath,
) -> Result<OutsideClassification, GraphError> {
    // Re-validate: callers may hand over a path built for another graph.
    let path = DiameterPath::new(g, path.vertices().to_vec())?;
    let on_path = path.mask();

    // Multi-source BFS distances to the path.
    let mut to_path = vec![usize::MAX; g.n()];
    for &v in path.vertices() {
        for (u, d) in bfs_distances(g, v).into_iter().enumerate() {
            if let Some(d) = d {
                to_path[u] = to_path[u].min(d);
            }
        }
    }

    let vertices = members(g.vertex_mask() & !on_path)
        .map(|x| {
            let hits = g.neighbors(x) & on_path;
            let mut anchors: Vec<usize> = members(hits)
                .map(|v| path.position(v).expect("on path"))
                .collect();
            anchors.sort_unstable();
            OutsideVertex {
                vertex: x,
                class: anchors.len(),
                anchors,
                distance: to_path[x],
            }
        })
        .collect();
    Ok(OutsideClassification { path, vertices })
}
