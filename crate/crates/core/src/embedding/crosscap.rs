use std::collections::VecDeque;

use super::{euler_genus, is_orientable_scheme, validate_scheme, EmbeddingError, EmbeddingScheme};

/// Adds a crosscap to an orientable scheme by negating one edge outside a
/// BFS spanning tree rooted at vertex 0 (smallest such edge by endpoints),
/// after switching the scheme to all-positive form. The Euler genus grows
/// by at most one; this is re-checked on the output.
pub fn add_crosscap(s: &EmbeddingScheme) -> Result<EmbeddingScheme, EmbeddingError> {
    validate_scheme(s).map_err(EmbeddingError::Invalid)?;
    if !is_orientable_scheme(s) {
        return Err(EmbeddingError::NotOrientable);
    }
    let before = euler_genus(s);
    let mut out = s.clone();
    let (lambda, _) = out.tree_switching();
    for (v, &l) in lambda.iter().enumerate() {
        if l < 0 {
            out.switch_at(v);
        }
    }
    if out.signature.iter().any(|&x| x != 1) {
        return Err(EmbeddingError::Internal("switching did not reach all-positive form".into()));
    }

    let mut in_tree = vec![false; out.edges.len()];
    let mut seen = vec![false; out.n];
    seen[0] = true;
    let mut queue = VecDeque::from([0]);
    while let Some(u) = queue.pop_front() {
        let mut incident = out.rotation[u].clone();
        incident.sort_unstable_by_key(|&e| out.other_end(e, u));
        for e in incident {
            let w = out.other_end(e, u);
            if !seen[w] {
                seen[w] = true;
                in_tree[e] = true;
                queue.push_back(w);
            }
        }
    }
    let chosen = (0..out.edges.len())
        .filter(|&e| !in_tree[e])
        .min_by_key(|&e| {
            let [a, b] = out.edges[e];
            (a.min(b), a.max(b))
        })
        .ok_or(EmbeddingError::Acyclic)?;
    out.signature[chosen] = -1;

    let after = euler_genus(&out);
    if is_orientable_scheme(&out) {
        return Err(EmbeddingError::Internal("crosscap left the scheme orientable".into()));
    }
    if after > before + 1 || after + 1 < before {
        return Err(EmbeddingError::Internal(format!("Euler genus moved from {before} to {after}")));
    }
    Ok(out)
}
