//! Exhaustive verification driver: every connected graph in an order range
//! goes through the extremality test, the recognizer and the selected
//! checker suites.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use super::canon::{canonical_form, CanonicalForm};
use super::generate::{connected_graphs_par, ENUM_MAX_N};
use super::EnumError;
use crate::families::{enumerate_family, recognize_with_limit, PathFailure, Verdict};
use crate::graph::{diameter, is_reduced, reduce, Graph, DEFAULT_PATH_LIMIT};
use crate::lemmas::{self, Lemma, Violation, ViolationReport};
use crate::linalg::nullity;

/// A checker suite selectable from the sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Interlacing,
    TwinDeletion,
    PendantDeletion,
    RankBoundDiameterPath,
    TwinExtension,
    ReductionEquivalence,
    RankLowerBound,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Interlacing,
        Suite::TwinDeletion,
        Suite::PendantDeletion,
        Suite::RankBoundDiameterPath,
        Suite::TwinExtension,
        Suite::ReductionEquivalence,
        Suite::RankLowerBound,
    ];

    pub fn lemma(self) -> Lemma {
        match self {
            Suite::Interlacing => Lemma::Interlacing,
            Suite::TwinDeletion => Lemma::TwinDeletion,
            Suite::PendantDeletion => Lemma::PendantDeletion,
            Suite::RankBoundDiameterPath => Lemma::RankBoundDiameterPath,
            Suite::TwinExtension => Lemma::TwinExtension,
            Suite::ReductionEquivalence => Lemma::ReductionEquivalence,
            Suite::RankLowerBound => Lemma::RankLowerBound,
        }
    }

    pub fn name(self) -> &'static str {
        self.lemma().name()
    }

    fn run(self, g: &Graph, mus: &[i64]) -> ViolationReport {
        match self {
            Suite::Interlacing => lemmas::check_interlacing(g, mus),
            Suite::TwinDeletion => lemmas::check_twin_deletion(g),
            Suite::PendantDeletion => lemmas::check_pendant_deletion(g),
            Suite::RankBoundDiameterPath => lemmas::check_rank_bound_diam(g),
            Suite::TwinExtension => lemmas::check_twin_extension(g),
            Suite::ReductionEquivalence => lemmas::check_reduction_equivalence(g),
            Suite::RankLowerBound => lemmas::check_rank_lower_bound(g),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Suite::ALL.iter().map(|x| x.name()).collect();
                format!("unknown suite {s:?}; expected one of {}", names.join(", "))
            })
    }
}

#[derive(Debug, Clone)]
pub struct SweepOptions {
    pub suites: BTreeSet<Suite>,
    pub path_limit: usize,
    /// Eigenvalues tested by the interlacing suite.
    pub interlacing_mus: Vec<i64>,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            suites: Suite::ALL.into_iter().collect(),
            path_limit: DEFAULT_PATH_LIMIT,
            interlacing_mus: (-2..=2).collect(),
        }
    }
}

impl SweepOptions {
    pub fn without_suites() -> Self {
        SweepOptions {
            suites: BTreeSet::new(),
            ..Self::default()
        }
    }
}

/// Totals for one order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct NStats {
    pub n: usize,
    pub connected: u64,
    pub reduced: u64,
    /// `eta = n - d - 1`, any diameter, reduced or not.
    pub extremal: u64,
    pub odd_extremal: u64,
    /// Reduced, even `d >= 2`, `eta = n - d - 1`.
    pub even_extremal_reduced: u64,
    /// Of those, recognized as family members.
    pub recognized: u64,
    pub inconclusive: u64,
    /// Canonical graph6 of every reduced even extremal graph, sorted.
    pub census: Vec<CanonicalForm>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MismatchRecord {
    pub graph6: String,
    pub n: usize,
    pub d: usize,
    pub failures: Vec<PathFailure>,
}

/// A non-reduced even extremal graph whose twin reduction is not a
/// recognized family member.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionGap {
    pub graph6: String,
    pub reduced_graph6: String,
    pub d: usize,
    pub reduced_d: usize,
    pub reduced_verdict: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub n_min: usize,
    pub n_max: usize,
    pub per_n: Vec<NStats>,
    /// Reduced even extremal graphs that the recognizer rejected.
    pub mismatches: Vec<MismatchRecord>,
    pub reduction_gaps: Vec<ReductionGap>,
    /// Violations of the reduction biconditional, kept apart from the
    /// other suites because they are expected.
    pub reduction_violations: Vec<Violation>,
    pub suites: BTreeMap<Suite, ViolationReport>,
    /// Family members in range missing from the census.
    pub family_missing: Vec<String>,
    /// Wall-clock seconds, keyed by `n=<order>` and `total`.
    pub timings: BTreeMap<String, f64>,
}

impl SweepReport {
    fn empty(n_min: usize, n_max: usize) -> Self {
        SweepReport {
            n_min,
            n_max,
            per_n: Vec::new(),
            mismatches: Vec::new(),
            reduction_gaps: Vec::new(),
            reduction_violations: Vec::new(),
            suites: BTreeMap::new(),
            family_missing: Vec::new(),
            timings: BTreeMap::new(),
        }
    }

    pub fn theorem_holds(&self) -> bool {
        self.mismatches.is_empty() && self.family_missing.is_empty()
    }

    /// Violations from every suite other than the reduction one.
    pub fn unexpected_violations(&self) -> impl Iterator<Item = &Violation> {
        self.suites
            .iter()
            .filter(|(s, _)| **s != Suite::ReductionEquivalence)
            .flat_map(|(_, r)| r.violations.iter())
    }
}

struct Outcome {
    reduced: bool,
    extremal: bool,
    odd: bool,
    census: Option<CanonicalForm>,
    recognized: bool,
    inconclusive: bool,
    mismatch: Option<MismatchRecord>,
    gap: Option<ReductionGap>,
    reports: Vec<(Suite, ViolationReport)>,
}

fn examine(g: &Graph, opts: &SweepOptions) -> Outcome {
    let d = diameter(g).expect("enumerated graphs are connected");
    let n = g.n();
    let extremal = nullity(g) + d + 1 == n;
    let reduced = is_reduced(g);
    let mut out = Outcome {
        reduced,
        extremal,
        odd: extremal && d % 2 == 1,
        census: None,
        recognized: false,
        inconclusive: false,
        mismatch: None,
        gap: None,
        reports: opts
            .suites
            .iter()
            .map(|&s| (s, s.run(g, &opts.interlacing_mus)))
            .collect(),
    };
    if !extremal || d % 2 == 1 {
        return out;
    }
    if reduced {
        out.census = Some(canonical_form(g).expect("enumerator orders are canonizable"));
        let r = recognize_with_limit(g, opts.path_limit).expect("connected");
        match r.verdict {
            Verdict::EvenExtremal { .. } => out.recognized = true,
            Verdict::Inconclusive { .. } => out.inconclusive = true,
            Verdict::Mismatch { failures, .. } => {
                out.mismatch = Some(MismatchRecord {
                    graph6: g.to_graph6(),
                    n,
                    d,
                    failures,
                })
            }
            Verdict::NotExtremal | Verdict::OddExtremal => unreachable!("gated above"),
        }
    } else {
        let red = reduce(g).expect("connected");
        let r = recognize_with_limit(&red.graph, opts.path_limit).expect("connected");
        if !matches!(r.verdict, Verdict::EvenExtremal { .. }) {
            out.gap = Some(ReductionGap {
                graph6: g.to_graph6(),
                reduced_graph6: red.graph.to_graph6(),
                d,
                reduced_d: red.diameter_after,
                reduced_verdict: r.verdict.name(),
            });
        }
    }
    out
}

/// Run the extremality census, the recognizer and the selected suites over
/// every connected graph with `n_min <= n <= n_max`. Deterministic apart from
/// `timings`; parallel on the current rayon pool.
pub fn verify_theorem(
    n_min: usize,
    n_max: usize,
    opts: &SweepOptions,
) -> Result<SweepReport, EnumError> {
    let mut report = SweepReport::empty(n_min, n_max);
    let lo = n_min.max(1);
    if lo > n_max {
        return Ok(report);
    }
    if n_max > ENUM_MAX_N {
        return Err(EnumError::OrderOutOfRange(n_max));
    }
    let start = Instant::now();
    for s in &opts.suites {
        report.suites.insert(*s, ViolationReport::new(s.lemma()));
    }
    for n in lo..=n_max {
        let t = Instant::now();
        let graphs = connected_graphs_par(n)?;
        let outcomes: Vec<Outcome> = graphs.par_iter().map(|g| examine(g, opts)).collect();
        let mut stats = NStats {
            n,
            ..NStats::default()
        };
        for o in outcomes {
            stats.connected += 1;
            stats.reduced += o.reduced as u64;
            stats.extremal += o.extremal as u64;
            stats.odd_extremal += o.odd as u64;
            stats.recognized += o.recognized as u64;
            stats.inconclusive += o.inconclusive as u64;
            if let Some(c) = o.census {
                stats.even_extremal_reduced += 1;
                stats.census.push(c);
            }
            report.mismatches.extend(o.mismatch);
            report.reduction_gaps.extend(o.gap);
            for (s, r) in o.reports {
                report.suites.get_mut(&s).expect("registered").merge(r);
            }
        }
        stats.census.sort();
        report.per_n.push(stats);
        report
            .timings
            .insert(format!("n={n}"), t.elapsed().as_secs_f64());
    }
    for r in report.suites.values_mut() {
        r.canonicalize();
    }
    if let Some(r) = report.suites.get(&Suite::ReductionEquivalence) {
        report.reduction_violations = r
            .violations
            .iter()
            .filter(|v| v.lemma == Lemma::ReductionEquivalence)
            .cloned()
            .collect();
    }
    report.family_missing = missing_family_members(lo, n_max, &report.per_n);
    report
        .timings
        .insert("total".into(), start.elapsed().as_secs_f64());
    Ok(report)
}

fn missing_family_members(lo: usize, n_max: usize, per_n: &[NStats]) -> Vec<String> {
    let census: HashSet<&CanonicalForm> = per_n.iter().flat_map(|s| &s.census).collect();
    let mut missing = Vec::new();
    for d in (2..n_max.saturating_sub(1)).step_by(2) {
        let members = enumerate_family(d, n_max).expect("even d in range");
        for m in members {
            if m.graph.n() >= lo && !census.contains(&m.canonical) {
                missing.push(m.graph.to_graph6());
            }
        }
    }
    missing
}
