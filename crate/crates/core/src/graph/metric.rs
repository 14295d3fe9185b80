use serde::Serialize;

use super::{members, Graph, GraphError};

/// A shortest path realizing the diameter, stored as `v_1, ..., v_{d+1}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct DiameterPath {
    vertices: Vec<usize>,
}

impl DiameterPath {
    /// Wrap a vertex sequence, checking that it is a diameter path of `g`.
    pub fn new(g: &Graph, vertices: Vec<usize>) -> Result<Self, GraphError> {
        validate_path(g, &vertices)?;
        Ok(DiameterPath { vertices })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Number of edges on the path.
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.len() == 1
    }

    pub fn mask(&self) -> u64 {
        self.vertices.iter().fold(0, |acc, &v| acc | 1 << v)
    }

    /// One-based position of `v` on the path.
    pub fn position(&self, v: usize) -> Option<usize> {
        self.vertices.iter().position(|&u| u == v).map(|i| i + 1)
    }
}

fn validate_path(g: &Graph, vertices: &[usize]) -> Result<(), GraphError> {
    let bad = |msg: String| Err(GraphError::InvalidDiameterPath(msg));
    if vertices.is_empty() {
        return bad("no vertices".into());
    }
    let mut seen = 0u64;
    for &v in vertices {
        if v >= g.n() {
            return Err(GraphError::VertexOutOfRange {
                vertex: v,
                n: g.n(),
            });
        }
        if seen >> v & 1 == 1 {
            return bad(format!("vertex {v} repeated"));
        }
        seen |= 1 << v;
    }
    for w in vertices.windows(2) {
        if !g.has_edge(w[0], w[1]) {
            return bad(format!("{} and {} are not adjacent", w[0], w[1]));
        }
    }
    let d = diameter(g)?;
    let len = vertices.len() - 1;
    if len != d {
        return bad(format!("length {len} differs from diameter {d}"));
    }
    let dist = bfs_distances(g, vertices[0]);
    if dist[vertices[len]] != Some(d) {
        return bad("endpoints are closer than the path length".into());
    }
    Ok(())
}

/// Shortest-path edge counts from `source`; `None` marks unreachable vertices.
pub fn bfs_distances(g: &Graph, source: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.n()];
    dist[source] = Some(0);
    let mut seen = 1u64 << source;
    let mut frontier = seen;
    let mut level = 0;
    while frontier != 0 {
        level += 1;
        let mut next = 0u64;
        for u in members(frontier) {
            next |= g.neighbors(u);
        }
        next &= !seen;
        for v in members(next) {
            dist[v] = Some(level);
        }
        seen |= next;
        frontier = next;
    }
    dist
}

/// Eccentricity of every vertex. Fails on disconnected (or empty) graphs.
fn eccentricities(g: &Graph) -> Result<Vec<usize>, GraphError> {
    if !g.is_connected() {
        return Err(GraphError::Disconnected);
    }
    Ok((0..g.n())
        .map(|v| {
            bfs_distances(g, v)
                .into_iter()
                .map(|d| d.expect("connected"))
                .max()
                .unwrap_or(0)
        })
        .collect())
}

pub fn diameter(g: &Graph) -> Result<usize, GraphError> {
    Ok(eccentricities(g)?.into_iter().max().unwrap_or(0))
}

/// Result of [`diameter_paths`]. `truncated` is set when more paths exist
/// than the requested limit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiameterPaths {
    pub diameter: usize,
    pub paths: Vec<DiameterPath>,
    pub truncated: bool,
}

/// Enumerate distinct diameter paths, at most `limit` of them.
///
/// Every eccentric pair `u < v` with `d(u, v) = d` contributes all shortest
/// `u -> v` paths, found by backtracking through the BFS layers of `u` while
/// staying on vertices whose distance to `v` decreases. Each path is reported
/// once, oriented from its smaller endpoint. Order is deterministic: by `u`,
/// then `v`, then lexicographic vertex sequence.
pub fn diameter_paths(g: &Graph, limit: usize) -> Result<DiameterPaths, GraphError> {
    let d = diameter(g)?;
    let n = g.n();
    if d == 0 {
        return Ok(DiameterPaths {
            diameter: 0,
            paths: vec![DiameterPath { vertices: vec![0] }],
            truncated: false,
        });
    }
    let dist: Vec<Vec<Option<usize>>> = (0..n).map(|v| bfs_distances(g, v)).collect();
    let mut paths = Vec::new();
    let mut truncated = false;
    'pairs: for (u, from_u) in dist.iter().enumerate() {
        for v in u + 1..n {
            if from_u[v] != Some(d) {
                continue;
            }
            let to_v = &dist[v];
            let mut stack = vec![u];
            if !extend(g, to_v, &mut stack, v, limit, &mut paths) {
                truncated = true;
                break 'pairs;
            }
        }
    }
    Ok(DiameterPaths {
        diameter: d,
        paths,
        truncated,
    })
}

/// Depth-first extension of `stack` towards `target`. Returns `false` once a
/// path beyond `limit` is found.
fn extend(
    g: &Graph,
    to_target: &[Option<usize>],
    stack: &mut Vec<usize>,
    target: usize,
    limit: usize,
    out: &mut Vec<DiameterPath>,
) -> bool {
    let last = *stack.last().expect("non-empty");
    if last == target {
        if out.len() == limit {
            return false;
        }
        out.push(DiameterPath {
            vertices: stack.clone(),
        });
        return true;
    }
    let remaining = to_target[last].expect("connected");
    for w in members(g.neighbors(last)) {
        if to_target[w] == Some(remaining - 1) {
            stack.push(w);
            let more = extend(g, to_target, stack, target, limit, out);
            stack.pop();
            if !more {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distances() {
        let p5 = Graph::path(5).unwrap();
        let d: Vec<_> = bfs_distances(&p5, 0)
            .into_iter()
            .map(Option::unwrap)
            .collect();
        assert_eq!(d, vec![0, 1, 2, 3, 4]);
        let k4 = Graph::complete(4).unwrap();
        let d: Vec<_> = bfs_distances(&k4, 2)
            .into_iter()
            .map(Option::unwrap)
            .collect();
        assert_eq!(d, vec![1, 1, 0, 1]);
        let split = Graph::from_edges(3, &[(0, 1)]).unwrap();
        assert_eq!(bfs_distances(&split, 0), vec![Some(0), Some(1), None]);
    }

    #[test]
    fn diameters() {
        assert_eq!(diameter(&Graph::path(5).unwrap()), Ok(4));
        assert_eq!(diameter(&Graph::cycle(4).unwrap()), Ok(2));
        assert_eq!(diameter(&Graph::complete_bipartite(1, 4).unwrap()), Ok(2));
        assert_eq!(diameter(&Graph::empty(1).unwrap()), Ok(0));
        assert_eq!(
            diameter(&Graph::empty(2).unwrap()),
            Err(GraphError::Disconnected)
        );
        assert_eq!(
            diameter(&Graph::empty(0).unwrap()),
            Err(GraphError::Disconnected)
        );
    }

    #[test]
    fn paths_of_small_graphs() {
        let p5 = diameter_paths(&Graph::path(5).unwrap(), 10).unwrap();
        assert_eq!(p5.paths.len(), 1);
        assert_eq!(p5.paths[0].vertices(), &[0, 1, 2, 3, 4]);
        let k2 = diameter_paths(&Graph::complete(2).unwrap(), 10).unwrap();
        assert_eq!(k2.paths.len(), 1);
        assert_eq!(k2.paths[0].len(), 1);
        let k1 = diameter_paths(&Graph::empty(1).unwrap(), 10).unwrap();
        assert_eq!(k1.paths[0].vertices(), &[0]);
    }

    #[test]
    fn c6_has_six_diameter_paths() {
        // Three antipodal pairs, two geodesics each.
        let c6 = Graph::cycle(6).unwrap();
        let all = diameter_paths(&c6, 100).unwrap();
        assert_eq!(all.diameter, 3);
        assert_eq!(all.paths.len(), 6);
        assert!(!all.truncated);
        let capped = diameter_paths(&c6, 4).unwrap();
        assert_eq!(capped.paths.len(), 4);
        assert!(capped.truncated);
        assert_eq!(&all.paths[..4], &capped.paths[..]);
        let exact = diameter_paths(&c6, 6).unwrap();
        assert!(!exact.truncated);
    }

    #[test]
    fn path_validation() {
        let p5 = Graph::path(5).unwrap();
        assert!(DiameterPath::new(&p5, vec![4, 3, 2, 1, 0]).is_ok());
        assert!(DiameterPath::new(&p5, vec![0, 1, 2, 3]).is_err());
        assert!(DiameterPath::new(&p5, vec![0, 2, 1, 3, 4]).is_err());
        let c6 = Graph::cycle(6).unwrap();
        let c5 = Graph::cycle(5).unwrap();
        assert!(DiameterPath::new(&c5, vec![0, 1, 2]).is_ok());
        // Triangle with a tail: 1-0-2 has length 2 but d(1, 2) = 1.
        let tail = Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (2, 3)]).unwrap();
        assert!(DiameterPath::new(&tail, vec![1, 0, 2]).is_err());
        assert!(DiameterPath::new(&tail, vec![0, 2, 3]).is_ok());
        assert!(DiameterPath::new(&c6, vec![0, 1, 2, 3]).is_ok());
        assert!(DiameterPath::new(&c6, vec![0, 1, 1, 3]).is_err());
    }
}
