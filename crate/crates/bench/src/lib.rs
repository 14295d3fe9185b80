//! Fixed inputs shared by the kernel benchmarks.

use nullity_core::families::{generate_family, FamilyParams};
use nullity_core::Graph;

/// Petersen graph: outer 5-cycle, inner pentagram, spokes.
pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
        edges.push((i, 5 + i));
    }
    Graph::from_edges(10, &edges).expect("valid")
}

/// Named graphs of assorted structure, 9 to 16 vertices.
pub fn fixtures() -> Vec<(&'static str, Graph)> {
    vec![
        ("path9", Graph::path(9).expect("valid")),
        ("cycle12", Graph::cycle(12).expect("valid")),
        ("petersen", petersen()),
        ("k4_4", Graph::complete_bipartite(4, 4).expect("valid")),
        (
            "family_d8",
            generate_family(&FamilyParams::new(8, 1, [2, 3])).expect("valid member"),
        ),
        ("k16", Graph::complete(16).expect("valid")),
    ]
}
