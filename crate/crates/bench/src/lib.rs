//! Fixtures shared by the benchmarks.

use bicover_core::families::{orthogonality_graph, random_bipartite};
use bicover_core::setcover::{biclique_instance, SetCoverInstance};
use bicover_core::BipartiteGraph;

pub fn orthogonal(d: usize) -> BipartiteGraph {
    orthogonality_graph(d).expect("even dimension")
}

/// Biclique instance of a seeded random graph small enough for the exact
/// solvers.
pub fn random_instance(na: usize, nb: usize, seed: u64) -> SetCoverInstance {
    let g = random_bipartite(na, nb, 0.5, seed).expect("valid probability");
    biclique_instance(&g).expect("small graph").instance
}
