//! Exhaustive enumeration of small graphs up to isomorphism.

use std::collections::HashMap;

use super::{is_isomorphic, Graph};

/// All graphs on `n` vertices, one per isomorphism class. Built by adding a
/// vertex with every possible neighbourhood to each class on `n - 1`
/// vertices and discarding isomorphic duplicates. Practical for `n <= 8`.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    let mut classes = vec![Graph::empty(0)];
    for m in 1..=n {
        let mut buckets: HashMap<(usize, Vec<usize>), Vec<usize>> = HashMap::new();
        let mut next: Vec<Graph> = Vec::new();
        for g in &classes {
            let prev = m - 1;
            for mask in 0u64..(1u64 << prev) {
                let edges =
                    g.edges().iter().copied().chain((0..prev).filter(|&u| mask >> u & 1 == 1).map(|u| (u, prev)));
                let cand = Graph::from_edge_set(m, edges);
                let key = (cand.size(), cand.degree_sequence());
                let bucket = buckets.entry(key).or_default();
                if bucket.iter().any(|&i| is_isomorphic(&next[i], &cand).is_some()) {
                    continue;
                }
                bucket.push(next.len());
                next.push(cand);
            }
        }
        classes = next;
    }
    classes
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_counts() {
        // OEIS A000088
        let counts: Vec<usize> = (0..=5).map(|n| all_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 11, 34]);
    }
}
