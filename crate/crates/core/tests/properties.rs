use proptest::prelude::*;

use nullity_core::enumerate::canonical_form;
use nullity_core::graph::{
    classify_outside, diameter, diameter_paths, is_reduced, parse_graph6, reduce, Graph,
};
use nullity_core::lemmas::{check_interlacing, check_twin_deletion, ViolationReport};
use nullity_core::linalg::{
    char_poly, distinct_eigenvalue_count, nullity, rank_exact, rank_mod_p, IntMatrix,
};

/// Random connected graph: a random spanning tree plus random extra edges.
fn connected(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n)
        .prop_flat_map(|n| {
            let parents = (1..n).map(|v| 0..v).collect::<Vec<_>>();
            (
                Just(n),
                parents,
                proptest::collection::vec(any::<bool>(), n * n),
            )
        })
        .prop_map(|(n, parents, bits)| {
            let mut edges: Vec<_> = parents
                .iter()
                .enumerate()
                .map(|(i, &p)| (p, i + 1))
                .collect();
            for v in 0..n {
                for u in 0..v {
                    if bits[u * n + v] {
                        edges.push((u, v));
                    }
                }
            }
            Graph::from_edges(n, &edges).unwrap()
        })
}

fn shuffled(g: Graph) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    let n = g.n();
    (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
}

proptest! {
    #[test]
    fn graph6_round_trip(g in connected(20)) {
        prop_assert_eq!(parse_graph6(&g.to_graph6()).unwrap(), g);
    }

    #[test]
    fn reduce_is_idempotent(g in connected(9)) {
        let r = reduce(&g).unwrap();
        prop_assert!(is_reduced(&r.graph));
        prop_assert_eq!(reduce(&r.graph).unwrap().removed_count(), 0);
        prop_assert_eq!(g.n() - r.graph.n(), r.removed_count());
        prop_assert!(r.diameter_after <= r.diameter_before);
        // Each twin deletion lowers the nullity by exactly one.
        prop_assert_eq!(nullity(&g), nullity(&r.graph) + r.removed_count());
    }

    #[test]
    fn reduction_class_ignores_labels((g, perm) in connected(9).prop_flat_map(shuffled)) {
        let a = reduce(&g).unwrap().graph;
        let b = reduce(&g.relabel(&perm)).unwrap().graph;
        prop_assert_eq!(canonical_form(&a).unwrap(), canonical_form(&b).unwrap());
    }

    #[test]
    fn canonical_form_is_label_invariant((g, perm) in connected(12).prop_flat_map(shuffled)) {
        prop_assert_eq!(canonical_form(&g).unwrap(), canonical_form(&g.relabel(&perm)).unwrap());
    }

    #[test]
    fn modular_rank_never_exceeds_exact(g in connected(12)) {
        let a = IntMatrix::adjacency(&g);
        let exact = rank_exact(&a);
        let r1 = rank_mod_p(&a, 32003).unwrap();
        let r2 = rank_mod_p(&a, 65521).unwrap();
        prop_assert!(r1 <= exact && r2 <= exact);
        prop_assert!(r1 == exact || r2 == exact);
    }

    #[test]
    fn zero_root_multiplicity_is_nullity(g in connected(10)) {
        prop_assert_eq!(char_poly(&IntMatrix::adjacency(&g)).zero_root_multiplicity(), nullity(&g));
    }

    #[test]
    fn distinct_eigenvalues_exceed_diameter(g in connected(10)) {
        prop_assert!(distinct_eigenvalue_count(&g) > diameter(&g).unwrap());
    }

    #[test]
    fn interlacing_and_twins_hold(g in connected(9)) {
        prop_assert!(check_interlacing(&g, &[-2, -1, 0, 1, 2]).is_clean());
        prop_assert!(check_twin_deletion(&g).is_clean());
    }

    #[test]
    fn diameter_paths_are_induced_paths(g in connected(10)) {
        let d = diameter(&g).unwrap();
        for p in diameter_paths(&g, 50).unwrap().paths {
            prop_assert_eq!(p.vertices().len(), d + 1);
            let h = g.induced(p.mask());
            prop_assert_eq!(h.edge_count(), d);
            for x in classify_outside(&g, &p).unwrap().vertices {
                if x.distance == 1 {
                    prop_assert!(x.anchors.len() <= 3);
                    prop_assert!(x.anchors.last().unwrap() - x.anchors[0] <= 2);
                }
            }
        }
    }

    #[test]
    fn report_merge_is_order_independent(gs in proptest::collection::vec(connected(7), 1..6)) {
        let reports: Vec<ViolationReport> =
            gs.iter().map(nullity_core::lemmas::check_reduction_equivalence).collect();
        let fold = |rs: &[ViolationReport]| {
            let mut acc = ViolationReport::new(rs[0].lemma);
            for r in rs {
                acc.merge(r.clone());
            }
            acc.canonicalize();
            acc
        };
        let mut rev = reports.clone();
        rev.reverse();
        prop_assert_eq!(fold(&reports), fold(&rev));
    }
}
