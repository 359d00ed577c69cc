//! Shared inputs for the criterion benches.

use copcover::embedding::{random_planar_triangulation, EmbeddingScheme};
use copcover::graph::{generate, Family, Graph};

pub fn graph(family: &str) -> Graph {
    generate(&Family::parse(family).expect("known family"), Some(7)).expect("generates")
}

/// Petersen graph with random signs and rotations.
pub fn random_petersen_scheme(seed: u64) -> EmbeddingScheme {
    EmbeddingScheme::random(&graph("petersen"), seed)
}

pub fn triangulation(n: usize) -> EmbeddingScheme {
    random_planar_triangulation(n, 7)
}
