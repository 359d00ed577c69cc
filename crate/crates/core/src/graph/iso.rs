//! Backtracking isomorphism test for small graphs.

use super::Graph;

/// Vertex bijection `g -> h`: `map[v]` is the image of `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isomorphism {
    pub map: Vec<usize>,
}

impl Isomorphism {
    pub fn is_valid(&self, g: &Graph, h: &Graph) -> bool {
        if g.order() != h.order() || g.size() != h.size() || self.map.len() != g.order() {
            return false;
        }
        let mut hit = vec![false; h.order()];
        for &x in &self.map {
            if x >= h.order() || std::mem::replace(&mut hit[x], true) {
                return false;
            }
        }
        g.edges().iter().all(|&(u, v)| h.has_edge(self.map[u], self.map[v]))
    }
}

// Degree plus sorted neighbour degrees.
fn vertex_invariants(g: &Graph) -> Vec<(usize, Vec<usize>)> {
    (0..g.order())
        .map(|v| {
            let mut nd: Vec<_> = g.neighbors(v).iter().map(|&w| g.degree(w)).collect();
            nd.sort_unstable();
            (g.degree(v), nd)
        })
        .collect()
}

/// Returns a verified isomorphism when `g` and `h` are isomorphic.
pub fn is_isomorphic(g: &Graph, h: &Graph) -> Option<Isomorphism> {
    let n = g.order();
    if n != h.order() || g.size() != h.size() || g.degree_sequence() != h.degree_sequence() {
        return None;
    }
    let gi = vertex_invariants(g);
    let hi = vertex_invariants(h);
    let mut a = gi.clone();
    let mut b = hi.clone();
    a.sort();
    b.sort();
    if a != b {
        return None;
    }

    // Order g's vertices: start from the rarest invariant class, then grow
    // along adjacency so each new vertex is constrained by mapped neighbours.
    let class_size = |inv: &(usize, Vec<usize>)| gi.iter().filter(|x| *x == inv).count();
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    while order.len() < n {
        let next = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let mapped_nbrs = g.neighbors(v).iter().filter(|&&w| placed[w]).count();
                (mapped_nbrs, std::cmp::Reverse(class_size(&gi[v])), g.degree(v), std::cmp::Reverse(v))
            })
            .unwrap();
        placed[next] = true;
        order.push(next);
    }

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if extend(g, h, &gi, &hi, &order, 0, &mut map, &mut used) {
        let iso = Isomorphism { map };
        assert!(iso.is_valid(g, h), "backtracking produced an invalid isomorphism");
        Some(iso)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn extend(
    g: &Graph,
    h: &Graph,
    gi: &[(usize, Vec<usize>)],
    hi: &[(usize, Vec<usize>)],
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    for x in 0..h.order() {
        if used[x] || gi[v] != hi[x] {
            continue;
        }
        let consistent = order[..depth].iter().all(|&u| g.has_edge(u, v) == h.has_edge(map[u], x));
        if !consistent {
            continue;
        }
        map[v] = x;
        used[x] = true;
        if extend(g, h, gi, hi, order, depth + 1, map, used) {
            return true;
        }
        used[x] = false;
        map[v] = usize::MAX;
    }
    false
}
