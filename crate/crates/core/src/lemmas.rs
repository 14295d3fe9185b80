//! Executable checkers for the nullity identities used by the extremal
//! characterization.
//!
//! Each checker inspects one graph and returns a [`ViolationReport`] instead
//! of asserting, so a failing identity shows up as data that can be merged
//! across a corpus. Checkers whose identity carries a hypothesis (the graph
//! must satisfy `eta = n - d - 1`) count non-qualifying graphs as skipped.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::graph::{diameter, diameter_paths, members, pendant_pairs, reduce, Graph};
use crate::linalg::{graph_rank, integer_eigenvalue_multiplicity, nullity};

/// Outside-vertex cap for the induced-supergraph sweeps (`2^12` subsets).
pub const SUBSET_SWEEP_CAP: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Lemma {
    /// `|m_G(mu) - m_{G-v}(mu)| <= 1`.
    Interlacing,
    /// Twins `u, v`: `eta(G) = eta(G - u) + 1`.
    TwinDeletion,
    /// Pendant `u` with support `w`: `eta(G) = eta(G - u - w)`.
    PendantDeletion,
    /// Induced supergraphs `H` of a diameter path: `rank(H) >= rank(G) - 1`.
    RankBoundDiameterPath,
    /// Equal `H`-neighborhoods extend to equal `G`-neighborhoods.
    TwinExtension,
    /// `eta(G) = n - d - 1` iff the same holds for the reduced graph.
    ReductionEquivalence,
    /// Twin reduction preserves the diameter.
    ReductionDiameter,
    /// Odd diameter: `rank(G) >= d + 1`.
    RankLowerBound,
}

impl Lemma {
    pub fn name(self) -> &'static str {
        match self {
            Lemma::Interlacing => "interlacing",
            Lemma::TwinDeletion => "twin-deletion",
            Lemma::PendantDeletion => "pendant-deletion",
            Lemma::RankBoundDiameterPath => "rank-bound-diameter-path",
            Lemma::TwinExtension => "twin-extension",
            Lemma::ReductionEquivalence => "reduction-equivalence",
            Lemma::ReductionDiameter => "reduction-diameter",
            Lemma::RankLowerBound => "rank-lower-bound",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Normal,
    High,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Witness {
    pub vertices: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<i64>,
    /// Vertex set of the induced subgraph involved, when there is one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subgraph: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Violation {
    pub lemma: Lemma,
    pub graph6: String,
    pub witness: Witness,
    pub expected: String,
    pub observed: BTreeMap<String, i64>,
    pub severity: Severity,
}

/// Outcome of one checker over one or more graphs. An empty `violations`
/// list means the identity held on every checked instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ViolationReport {
    pub lemma: Lemma,
    pub graphs_checked: u64,
    pub instances_checked: u64,
    /// Graphs outside the identity's hypothesis.
    pub skipped: u64,
    /// Graphs whose subset sweep exceeded [`SUBSET_SWEEP_CAP`].
    pub truncated: u64,
    pub violations: Vec<Violation>,
    /// Named counters (e.g. how often an alternative form held).
    pub tallies: BTreeMap<String, u64>,
    /// graph6 of graphs singled out by the checker (e.g. bound attained).
    pub flagged: Vec<String>,
}

impl ViolationReport {
    pub fn new(lemma: Lemma) -> Self {
        ViolationReport {
            lemma,
            graphs_checked: 0,
            instances_checked: 0,
            skipped: 0,
            truncated: 0,
            violations: Vec::new(),
            tallies: BTreeMap::new(),
            flagged: Vec::new(),
        }
    }

    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    fn tally(&mut self, key: &str) {
        *self.tallies.entry(key.to_string()).or_default() += 1;
    }

    fn skip(mut self) -> Self {
        self.skipped += 1;
        self
    }

    /// Fold `other` into `self`. Follow with [`Self::canonicalize`] for an
    /// order-independent result.
    pub fn merge(&mut self, other: ViolationReport) {
        debug_assert_eq!(self.lemma, other.lemma);
        self.graphs_checked += other.graphs_checked;
        self.instances_checked += other.instances_checked;
        self.skipped += other.skipped;
        self.truncated += other.truncated;
        self.violations.extend(other.violations);
        for (k, v) in other.tallies {
            *self.tallies.entry(k).or_default() += v;
        }
        self.flagged.extend(other.flagged);
    }

    pub fn canonicalize(&mut self) {
        self.violations.sort();
        self.flagged.sort();
    }
}

fn observed<const N: usize>(pairs: [(&str, i64); N]) -> BTreeMap<String, i64> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

pub fn check_interlacing(g: &Graph, mus: &[i64]) -> ViolationReport {
    let mut report = ViolationReport::new(Lemma::Interlacing);
    report.graphs_checked = 1;
    let g6 = g.to_graph6();
    for &mu in mus {
        let whole = integer_eigenvalue_multiplicity(g, mu) as i64;
        for v in 0..g.n() {
            report.instances_checked += 1;
            let minus = integer_eigenvalue_multiplicity(&g.remove_vertex(v), mu) as i64;
            if (whole - minus).abs() > 1 {
                report.violations.push(Violation {
                    lemma: Lemma::Interlacing,
                    graph6: g6.clone(),
                    witness: Witness {
                        vertices: vec![v],
                        mu: Some(mu),
                        subgraph: None,
                    },
                    expected: "|m_G(mu) - m_{G-v}(mu)| <= 1".into(),
                    observed: observed([("m_G", whole), ("m_G-v", minus)]),
                    severity: Severity::Normal,
                });
            }
        }
    }
    report
}

pub fn check_twin_deletion(g: &Graph) -> ViolationReport {
    let mut report = ViolationReport::new(Lemma::TwinDeletion);
    report.graphs_checked = 1;
    let eta = nullity(g) as i64;
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            if g.neighbors(u) != g.neighbors(v) {
                continue;
            }
            report.instances_checked += 1;
            let without_u = nullity(&g.remove_vertex(u)) as i64;
            let without_v = nullity(&g.remove_vertex(v)) as i64;
            if eta != without_u + 1 || eta != without_v + 1 {
                report.violations.push(Violation {
                    lemma: Lemma::TwinDeletion,
                    graph6: g.to_graph6(),
                    witness: Witness {
                        vertices: vec![u, v],
                        ..Witness::default()
                    },
                    expected: "eta(G) = eta(G-u) + 1 = eta(G-v) + 1".into(),
                    observed: observed([
                        ("eta_G", eta),
                        ("eta_G-u", without_u),
                        ("eta_G-v", without_v),
                    ]),
                    severity: Severity::Normal,
                });
            }
        }
    }
    report
}

/// Checks `eta(G) = eta(G - u - w)` for each pendant `u` with support `w`.
/// The variant `eta(G) = eta(G - w)` (pendant left isolated) is evaluated
/// too and tallied under `isolated-pendant-form-held` / `-failed`.
pub fn check_pendant_deletion(g: &Graph) -> ViolationReport {
    let mut report = ViolationReport::new(Lemma::PendantDeletion);
    report.graphs_checked = 1;
    let eta = nullity(g) as i64;
    for (u, w) in pendant_pairs(g) {
        report.instances_checked += 1;
        let both = nullity(&g.remove_vertices(1 << u | 1 << w)) as i64;
        let support_only = nullity(&g.remove_vertex(w)) as i64;
        if support_only == eta {
            report.tally("isolated-pendant-form-held");
        } else {
            report.tally("isolated-pendant-form-failed");
        }
        if both != eta {
            report.violations.push(Violation {
                lemma: Lemma::PendantDeletion,
                graph6: g.to_graph6(),
                witness: Witness {
                    vertices: vec![u, w],
                    ..Witness::default()
                },
                expected: "eta(G) = eta(G-u-w)".into(),
                observed: observed([
                    ("eta_G", eta),
                    ("eta_G-u-w", both),
                    ("eta_G-w", support_only),
                ]),
                severity: Severity::Normal,
            });
        }
    }
    report
}

/// Diameter, rank, and a fixed diameter path of an extremal graph.
struct Extremal {
    rank: usize,
    path_mask: u64,
    outside: Vec<usize>,
}

fn extremal_context(g: &Graph) -> Option<Extremal> {
    let d = diameter(g).ok()?;
    let rank = graph_rank(g);
    if d + 1 != rank {
        return None;
    }
    let paths = diameter_paths(g, 1).ok()?;
    let path_mask = paths.paths.first()?.mask();
    let outside = members(g.vertex_mask() & !path_mask).collect();
    Some(Extremal {
        rank,
        path_mask,
        outside,
    })
}

fn subset_mask(outside: &[usize], bits: u64) -> u64 {
    members(bits).fold(0, |acc, i| acc | 1 << outside[i])
}

/// For extremal `g`: every induced `H` between a diameter path and `G` has
/// `rank(H) >= rank(G) - 1`.
pub fn check_rank_bound_diam(g: &Graph) -> ViolationReport {
    let report = ViolationReport::new(Lemma::RankBoundDiameterPath);
    let Some(ctx) = extremal_context(g) else {
        return report.skip();
    };
    let mut report = report;
    report.graphs_checked = 1;
    if ctx.outside.len() > SUBSET_SWEEP_CAP {
        report.truncated = 1;
        return report;
    }
    for bits in 0u64..1 << ctx.outside.len() {
        let h = ctx.path_mask | subset_mask(&ctx.outside, bits);
        report.instances_checked += 1;
        let rank_h = graph_rank(&g.induced(h));
        if rank_h + 1 < ctx.rank {
            report.violations.push(Violation {
                lemma: Lemma::RankBoundDiameterPath,
                graph6: g.to_graph6(),
                witness: Witness {
                    subgraph: Some(members(h).collect()),
                    ..Witness::default()
                },
                expected: "rank(H) >= rank(G) - 1".into(),
                observed: observed([("rank_H", rank_h as i64), ("rank_G", ctx.rank as i64)]),
                severity: Severity::Normal,
            });
        }
    }
    report
}

/// For extremal `g` and every induced `H` containing a diameter path with
/// `rank(H) >= rank(G) - 1`: non-adjacent `v` outside `H` and `h` inside
/// with equal `H`-neighborhoods have equal `G`-neighborhoods, and likewise
/// for non-adjacent pairs both outside `H`.
pub fn check_twin_extension(g: &Graph) -> ViolationReport {
    let report = ViolationReport::new(Lemma::TwinExtension);
    let Some(ctx) = extremal_context(g) else {
        return report.skip();
    };
    let mut report = report;
    report.graphs_checked = 1;
    if ctx.outside.len() > SUBSET_SWEEP_CAP {
        report.truncated = 1;
        return report;
    }
    let all = g.vertex_mask();
    let g6 = g.to_graph6();
    for bits in 0u64..1 << ctx.outside.len() {
        let h = ctx.path_mask | subset_mask(&ctx.outside, bits);
        if graph_rank(&g.induced(h)) + 1 < ctx.rank {
            continue;
        }
        for v in members(all & !h) {
            let pairs = members(h).chain(members(all & !h).filter(|&u| u > v));
            for other in pairs {
                if g.has_edge(v, other) || g.neighbors(v) & h != g.neighbors(other) & h {
                    continue;
                }
                report.instances_checked += 1;
                if g.neighbors(v) != g.neighbors(other) {
                    report.violations.push(Violation {
                        lemma: Lemma::TwinExtension,
                        graph6: g6.clone(),
                        witness: Witness {
                            vertices: vec![v, other],
                            mu: None,
                            subgraph: Some(members(h).collect()),
                        },
                        expected: "N_H(x) = N_H(y), x !~ y  =>  N_G(x) = N_G(y)".into(),
                        observed: observed([
                            ("N_G(x)", g.neighbors(v) as i64),
                            ("N_G(y)", g.neighbors(other) as i64),
                        ]),
                        severity: Severity::Normal,
                    });
                }
            }
        }
    }
    report
}

/// Compares `eta(G) = n - d - 1` with the same statement for the twin
/// reduction of `G`, and records every diameter change under reduction.
/// A biconditional failure without a diameter change is marked high
/// severity.
pub fn check_reduction_equivalence(g: &Graph) -> ViolationReport {
    let mut report = ViolationReport::new(Lemma::ReductionEquivalence);
    if g.n() < 2 {
        return report.skip();
    }
    let Ok(red) = reduce(g) else {
        return report.skip();
    };
    report.graphs_checked = 1;
    report.instances_checked = 1;
    if red.removed.is_empty() {
        return report;
    }
    let (n, nr) = (g.n() as i64, red.graph.n() as i64);
    let (d, dr) = (red.diameter_before as i64, red.diameter_after as i64);
    let (eta, etar) = (nullity(g) as i64, nullity(&red.graph) as i64);
    let lhs = eta == n - d - 1;
    let rhs = etar == nr - dr - 1;
    let values = observed([
        ("n_G", n),
        ("d_G", d),
        ("eta_G", eta),
        ("n_Gr", nr),
        ("d_Gr", dr),
        ("eta_Gr", etar),
        ("extremal_G", lhs as i64),
        ("extremal_Gr", rhs as i64),
    ]);
    let witness = Witness {
        vertices: red.removed.clone(),
        ..Witness::default()
    };
    if lhs != rhs {
        report.violations.push(Violation {
            lemma: Lemma::ReductionEquivalence,
            graph6: g.to_graph6(),
            witness: witness.clone(),
            expected: "eta(G) = n(G)-d(G)-1  <=>  eta(Gr) = n(Gr)-d(Gr)-1".into(),
            observed: values.clone(),
            severity: if d == dr {
                Severity::High
            } else {
                Severity::Normal
            },
        });
    }
    if d != dr {
        report.violations.push(Violation {
            lemma: Lemma::ReductionDiameter,
            graph6: g.to_graph6(),
            witness,
            expected: "d(Gr) = d(G)".into(),
            observed: values,
            severity: Severity::Normal,
        });
    }
    report
}

/// Odd diameter: `rank(G) >= d + 1`; graphs attaining equality are flagged.
pub fn check_rank_lower_bound(g: &Graph) -> ViolationReport {
    let report = ViolationReport::new(Lemma::RankLowerBound);
    let Ok(d) = diameter(g) else {
        return report.skip();
    };
    if d % 2 == 0 {
        return report.skip();
    }
    let mut report = report;
    report.graphs_checked = 1;
    report.instances_checked = 1;
    let rank = graph_rank(g);
    if rank < d + 1 {
        report.violations.push(Violation {
            lemma: Lemma::RankLowerBound,
            graph6: g.to_graph6(),
            witness: Witness::default(),
            expected: "rank(G) >= d + 1".into(),
            observed: observed([("rank", rank as i64), ("d", d as i64)]),
            severity: Severity::Normal,
        });
    } else if rank == d + 1 {
        report.tally("odd-extremal");
        report.flagged.push(g.to_graph6());
    }
    report
}
