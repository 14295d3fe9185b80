//! The even-diameter extremal family and its structural recognizer.
//!
//! A member is built on an odd path `v_1 ~ ... ~ v_{d+1}` (so `d` is even):
//!
//! * one vertex `z` adjacent to `v_{2b+1}, v_{2b+2}, v_{2b+3}`;
//! * for every `a` in a set `A` of distinct indices, a vertex `x_a`
//!   adjacent to `v_{2a}`;
//! * the edge `x_a z` exactly when `a = b + 1`.
//!
//! There are no other edges. Members with `b + 1` in `A` are the
//! [`Variant::Linked`] ones, the rest [`Variant::Detached`]. Every member has
//! `n = d + 2 + |A|` and nullity `|A| + 1 = n - d - 1` once it passes
//! validation; some parameter choices create twins or shortcut the path and
//! are rejected.
//!
//! The recognizer runs the converse: for a graph with `eta = n - d - 1` and
//! even `d`, it looks for a diameter path relative to which the graph has
//! exactly this shape.

use std::collections::{BTreeSet, HashSet};

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::enumerate::{canonical_form, CanonError, CanonicalForm};
use crate::graph::{
    classify_outside, diameter, diameter_paths, is_reduced, DiameterPath, Graph, GraphError,
    OutsideClassification, DEFAULT_PATH_LIMIT,
};
use crate::linalg::{graph_rank, nullity};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("invalid family parameters: {0}")]
    InvalidParams(String),
    #[error("parameters rejected: {0}")]
    Rejected(Rejection),
    #[error(transparent)]
    Canon(#[from] CanonError),
}

/// Post-construction validation failure.
#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "reason", rename_all = "kebab-case")]
pub enum Rejection {
    #[error("vertices {u} and {v} are twins")]
    NotReduced { u: usize, v: usize },
    #[error("diameter is {found}, expected {expected}")]
    DiameterChanged { found: usize, expected: usize },
    #[error("nullity is {found}, expected {expected}")]
    NullityMismatch { found: usize, expected: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FamilyParams {
    /// Even diameter, at least 2.
    pub d: usize,
    /// `z` sits on `v_{2b+1}, v_{2b+2}, v_{2b+3}`.
    pub b: usize,
    /// Indices `a` with a pendant-like `x_a ~ v_{2a}`.
    pub anchors: BTreeSet<usize>,
}

impl Serialize for FamilyParams {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("FamilyParams", 3)?;
        st.serialize_field("d", &self.d)?;
        st.serialize_field("b", &self.b)?;
        st.serialize_field("A", &self.anchors)?;
        st.end()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    /// No `x_a` is adjacent to `z`.
    Detached,
    /// `x_{b+1}` is present and adjacent to `z`.
    Linked,
}

impl FamilyParams {
    pub fn new(d: usize, b: usize, anchors: impl IntoIterator<Item = usize>) -> Self {
        FamilyParams {
            d,
            b,
            anchors: anchors.into_iter().collect(),
        }
    }

    pub fn validate(&self) -> Result<(), FamilyError> {
        let bad = |m: String| Err(FamilyError::InvalidParams(m));
        if self.d < 2 || self.d % 2 == 1 {
            return bad(format!("d = {} must be even and at least 2", self.d));
        }
        if 2 * self.b + 2 > self.d {
            return bad(format!(
                "b = {} exceeds (d - 2) / 2 = {}",
                self.b,
                (self.d - 2) / 2
            ));
        }
        if let Some(&a) = self.anchors.iter().find(|&&a| a == 0 || 2 * a > self.d) {
            return bad(format!("anchor index {a} outside 1..={}", self.d / 2));
        }
        let n = self.order();
        if n > crate::graph::MAX_VERTICES {
            return bad(format!("{n} vertices exceed the graph size cap"));
        }
        Ok(())
    }

    /// `d + 2 + |A|`.
    pub fn order(&self) -> usize {
        self.d + 2 + self.anchors.len()
    }

    pub fn variant(&self) -> Variant {
        if self.anchors.contains(&(self.b + 1)) {
            Variant::Linked
        } else {
            Variant::Detached
        }
    }

    /// Construct without validation. Path vertices are `0..=d`, `z` is
    /// `d + 1`, and the `x_a` follow in increasing `a`.
    fn build(&self) -> Graph {
        let d = self.d;
        let z = d + 1;
        let mut edges: Vec<(usize, usize)> = (1..=d).map(|i| (i - 1, i)).collect();
        edges.extend([(z, 2 * self.b), (z, 2 * self.b + 1), (z, 2 * self.b + 2)]);
        for (k, &a) in self.anchors.iter().enumerate() {
            let x = d + 2 + k;
            edges.push((x, 2 * a - 1));
            if a == self.b + 1 {
                edges.push((x, z));
            }
        }
        Graph::from_edges(self.order(), &edges).expect("valid construction")
    }
}

/// Build the family member for `p` and validate it: reduced, diameter
/// exactly `d` with `v_1 .. v_{d+1}` still a diameter path, and nullity
/// `n - d - 1`.
pub fn generate_family(p: &FamilyParams) -> Result<Graph, FamilyError> {
    p.validate()?;
    let g = p.build();
    let reject = |r| Err(FamilyError::Rejected(r));
    let rows = g.rows();
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            if rows[u] == rows[v] {
                return reject(Rejection::NotReduced { u, v });
            }
        }
    }
    let d = diameter(&g).expect("connected by construction");
    if d != p.d {
        return reject(Rejection::DiameterChanged {
            found: d,
            expected: p.d,
        });
    }
    // d(v_1, v_{d+1}) = d whenever the diameter is d and the path survives.
    DiameterPath::new(&g, (0..=p.d).collect()).map_err(|_| {
        FamilyError::Rejected(Rejection::DiameterChanged {
            found: d,
            expected: p.d,
        })
    })?;
    let eta = nullity(&g);
    let expected = g.n() - p.d - 1;
    if eta != expected {
        return reject(Rejection::NullityMismatch {
            found: eta,
            expected,
        });
    }
    Ok(g)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyMember {
    pub params: FamilyParams,
    pub variant: Variant,
    #[serde(serialize_with = "as_graph6")]
    pub graph: Graph,
    pub canonical: CanonicalForm,
}

fn as_graph6<S: Serializer>(g: &Graph, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&g.to_graph6())
}

/// Every validated member with diameter `d` and at most `n_max` vertices, one
/// per isomorphism class, ordered by `(b, A as a bitmask)`.
pub fn enumerate_family(d: usize, n_max: usize) -> Result<Vec<FamilyMember>, FamilyError> {
    FamilyParams::new(d, 0, []).validate()?;
    let half = d / 2;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for b in 0..half {
        for mask in 0u64..1 << half {
            let params = FamilyParams::new(d, b, (1..=half).filter(|a| mask >> (a - 1) & 1 == 1));
            if params.order() > n_max {
                continue;
            }
            let graph = match generate_family(&params) {
                Ok(g) => g,
                Err(FamilyError::Rejected(_)) => continue,
                Err(e) => return Err(e),
            };
            let canonical = canonical_form(&graph)?;
            if seen.insert(canonical.clone()) {
                out.push(FamilyMember {
                    variant: params.variant(),
                    params,
                    graph,
                    canonical,
                });
            }
        }
    }
    Ok(out)
}

/// `eta(G) = n - d - 1`.
pub fn is_extremal(g: &Graph) -> Result<bool, GraphError> {
    let d = diameter(g)?;
    Ok(nullity(g) + d + 1 == g.n())
}

/// Which structural requirement a diameter path failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    /// Some vertex is at distance two or more from the path.
    FarVertex,
    /// Some outside vertex has exactly two path neighbors.
    TwoAnchors,
    /// Some outside vertex has more than three path neighbors.
    TooManyAnchors,
    /// A single-anchor vertex hangs off an odd position.
    AnchorParity,
    /// Two single-anchor vertices share an anchor.
    RepeatedAnchor,
    /// Two single-anchor vertices are adjacent.
    AdjacentPendants,
    /// A three-anchor vertex is not on `v_m, v_{m+1}, v_{m+2}` with `m` odd.
    TriangleAnchors,
    /// There is not exactly one three-anchor vertex.
    TriangleCount,
    /// `x_a ~ z` does not match `a = b + 1`.
    TriangleLink,
    /// The parameters read off the path do not rebuild the graph.
    Regeneration,
    /// The graph has the family shape, but the construction for these
    /// parameters fails validation (twins or a shortened diameter).
    RejectedConstruction,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathFailure {
    pub path: Vec<usize>,
    pub check: Check,
    pub vertices: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    NotExtremal,
    /// Odd diameter with `rank = d + 1`.
    OddExtremal,
    EvenExtremal {
        params: FamilyParams,
        variant: Variant,
    },
    /// Extremal with even diameter but no diameter path has the family
    /// shape: a counterexample to the characterization (for reduced graphs).
    Mismatch {
        failures: Vec<PathFailure>,
        reduced: bool,
    },
    /// No enumerated path matched, but the path limit was hit.
    Inconclusive {
        failures: Vec<PathFailure>,
        limit: usize,
    },
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::NotExtremal => "not-extremal",
            Verdict::OddExtremal => "odd-extremal",
            Verdict::EvenExtremal { .. } => "even-extremal",
            Verdict::Mismatch { .. } => "mismatch",
            Verdict::Inconclusive { .. } => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecognitionResult {
    pub graph6: String,
    pub n: usize,
    pub d: usize,
    pub nullity: usize,
    pub rank: usize,
    pub verdict: Verdict,
    /// The matching path for `EvenExtremal`.
    pub path: Option<DiameterPath>,
    pub classification: Option<OutsideClassification>,
}

/// Flat JSON form: `{graph6, verdict, d, params: {b, A}, variant, witness}`.
#[derive(Serialize)]
struct RecognitionRecord<'a> {
    graph6: &'a str,
    verdict: &'static str,
    n: usize,
    d: usize,
    nullity: usize,
    rank: usize,
    params: Option<&'a FamilyParams>,
    variant: Option<Variant>,
    path: Option<&'a [usize]>,
    witness: Option<Witness<'a>>,
}

#[derive(Serialize)]
struct Witness<'a> {
    failures: &'a [PathFailure],
    #[serde(skip_serializing_if = "Option::is_none")]
    reduced: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    path_limit: Option<usize>,
}

impl Serialize for RecognitionResult {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let (params, variant, witness) = match &self.verdict {
            Verdict::EvenExtremal { params, variant } => (Some(params), Some(*variant), None),
            Verdict::Mismatch { failures, reduced } => (
                None,
                None,
                Some(Witness {
                    failures,
                    reduced: Some(*reduced),
                    path_limit: None,
                }),
            ),
            Verdict::Inconclusive { failures, limit } => (
                None,
                None,
                Some(Witness {
                    failures,
                    reduced: None,
                    path_limit: Some(*limit),
                }),
            ),
            _ => (None, None, None),
        };
        RecognitionRecord {
            graph6: &self.graph6,
            verdict: self.verdict.name(),
            n: self.n,
            d: self.d,
            nullity: self.nullity,
            rank: self.rank,
            params,
            variant,
            path: self.path.as_ref().map(DiameterPath::vertices),
            witness,
        }
        .serialize(s)
    }
}

/// [`recognize_with_limit`] with the default path limit.
pub fn recognize(g: &Graph) -> Result<RecognitionResult, GraphError> {
    recognize_with_limit(g, DEFAULT_PATH_LIMIT)
}

pub fn recognize_with_limit(g: &Graph, path_limit: usize) -> Result<RecognitionResult, GraphError> {
    let d = diameter(g)?;
    let eta = nullity(g);
    let mut result = RecognitionResult {
        graph6: g.to_graph6(),
        n: g.n(),
        d,
        nullity: eta,
        rank: graph_rank(g),
        verdict: Verdict::NotExtremal,
        path: None,
        classification: None,
    };
    if eta + d + 1 != g.n() {
        return Ok(result);
    }
    if d % 2 == 1 {
        result.verdict = Verdict::OddExtremal;
        return Ok(result);
    }
    let paths = diameter_paths(g, path_limit)?;
    let mut failures = Vec::new();
    for path in &paths.paths {
        let classes = classify_outside(g, path)?;
        match match_family(g, &classes) {
            Ok(params) => {
                result.verdict = Verdict::EvenExtremal {
                    variant: params.variant(),
                    params,
                };
                result.path = Some(path.clone());
                result.classification = Some(classes);
                return Ok(result);
            }
            Err((check, vertices)) => failures.push(PathFailure {
                path: path.vertices().to_vec(),
                check,
                vertices,
            }),
        }
    }
    result.verdict = if paths.truncated {
        Verdict::Inconclusive {
            failures,
            limit: path_limit,
        }
    } else {
        Verdict::Mismatch {
            failures,
            reduced: is_reduced(g),
        }
    };
    Ok(result)
}

/// Read `(b, A)` off a classified path, or name the first failed check and
/// the vertices involved.
fn match_family(
    g: &Graph,
    classes: &OutsideClassification,
) -> Result<FamilyParams, (Check, Vec<usize>)> {
    let fail = |c, v: Vec<usize>| Err((c, v));
    let path = classes.path.vertices();
    let d = path.len() - 1;

    if let Some(x) = classes.far().next() {
        return fail(Check::FarVertex, vec![x.vertex]);
    }
    let mut singles: Vec<(usize, usize)> = Vec::new();
    let mut triangles: Vec<(usize, usize)> = Vec::new();
    for x in &classes.vertices {
        match x.class {
            1 if x.anchors[0] % 2 == 0 => singles.push((x.vertex, x.anchors[0] / 2)),
            1 => return fail(Check::AnchorParity, vec![x.vertex]),
            2 => return fail(Check::TwoAnchors, vec![x.vertex]),
            3 => {
                let m = x.anchors[0];
                if x.anchors != [m, m + 1, m + 2] || m % 2 == 0 {
                    return fail(Check::TriangleAnchors, vec![x.vertex]);
                }
                triangles.push((x.vertex, (m - 1) / 2));
            }
            _ => return fail(Check::TooManyAnchors, vec![x.vertex]),
        }
    }
    for (i, &(x, a)) in singles.iter().enumerate() {
        for &(y, b) in &singles[i + 1..] {
            if a == b {
                return fail(Check::RepeatedAnchor, vec![x, y]);
            }
            if g.has_edge(x, y) {
                return fail(Check::AdjacentPendants, vec![x, y]);
            }
        }
    }
    if triangles.len() != 1 {
        return fail(
            Check::TriangleCount,
            triangles.iter().map(|t| t.0).collect(),
        );
    }
    let (z, b) = triangles[0];
    for &(x, a) in &singles {
        if g.has_edge(x, z) != (a == b + 1) {
            return fail(Check::TriangleLink, vec![x, z]);
        }
    }

    let params = FamilyParams::new(d, b, singles.iter().map(|s| s.1));
    // Map the input onto the construction's labels and compare edge sets.
    let mut perm = vec![0; g.n()];
    for (i, &v) in path.iter().enumerate() {
        perm[v] = i;
    }
    perm[z] = d + 1;
    let mut by_anchor = singles.clone();
    by_anchor.sort_by_key(|s| s.1);
    for (k, &(x, _)) in by_anchor.iter().enumerate() {
        perm[x] = d + 2 + k;
    }
    if params.validate().is_err() || g.relabel(&perm) != params.build() {
        return fail(Check::Regeneration, Vec::new());
    }
    if generate_family(&params).is_err() {
        return fail(Check::RejectedConstruction, Vec::new());
    }
    Ok(params)
}
