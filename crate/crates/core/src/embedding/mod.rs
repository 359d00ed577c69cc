//! Embedding schemes: a cyclic rotation of incident edges at every vertex
//! plus a sign on every edge. Negative edges reverse the local orientation,
//! which is how non-orientable surfaces arise.

use std::collections::VecDeque;
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

mod crosscap;
mod faces;
mod genus;

pub use crosscap::add_crosscap;
pub use faces::{count_faces, trace_faces, Dart, FaceSet};
pub use genus::{min_euler_genus, GenusMode, GenusSearch, DEFAULT_GENUS_BUDGET};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmbeddingError {
    #[error("invalid embedding scheme: {}", list(.0))]
    Invalid(Vec<Violation>),
    #[error("scheme is not orientable")]
    NotOrientable,
    #[error("graph is acyclic, no crosscap can be added")]
    Acyclic,
    #[error("graph has no non-orientable cellular embedding (it is a tree)")]
    NoNonOrientable,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("search space of {space} schemes exceeds the budget of {max}")]
    Capacity { space: u128, max: u128 },
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

fn list(v: &[Violation]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    EndpointOutOfRange { edge: usize },
    Loop { edge: usize },
    ParallelEdge { edge: usize, other: usize },
    RotationCount { expected: usize, got: usize },
    SignatureCount { expected: usize, got: usize },
    BadSign { edge: usize, value: i8 },
    UnknownEdge { edge: usize, vertex: usize },
    NotIncident { edge: usize, vertex: usize },
    Repeated { edge: usize, vertex: usize },
    Missing { edge: usize, vertex: usize },
    NotConnected,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::EndpointOutOfRange { edge } => write!(f, "edge {edge} has an endpoint out of range"),
            Violation::Loop { edge } => write!(f, "edge {edge} is a loop"),
            Violation::ParallelEdge { edge, other } => write!(f, "edge {edge} duplicates edge {other}"),
            Violation::RotationCount { expected, got } => write!(f, "expected {expected} rotations, got {got}"),
            Violation::SignatureCount { expected, got } => write!(f, "expected {expected} signs, got {got}"),
            Violation::BadSign { edge, value } => write!(f, "edge {edge} has sign {value}, expected +1 or -1"),
            Violation::UnknownEdge { edge, vertex } => write!(f, "unknown edge {edge} at vertex {vertex}"),
            Violation::NotIncident { edge, vertex } => write!(f, "edge {edge} listed at non-incident vertex {vertex}"),
            Violation::Repeated { edge, vertex } => write!(f, "edge {edge} repeated at vertex {vertex}"),
            Violation::Missing { edge, vertex } => write!(f, "edge {edge} missing at vertex {vertex}"),
            Violation::NotConnected => write!(f, "not cellular-capable: graph is disconnected"),
        }
    }
}

/// Serialised as `{n, edges, rotation, signature}`; edge ids index `edges`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingScheme {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    pub rotation: Vec<Vec<usize>>,
    pub signature: Vec<i8>,
}

pub fn validate_scheme(s: &EmbeddingScheme) -> Result<(), Vec<Violation>> {
    let mut out = Vec::new();
    let m = s.edges.len();
    let mut seen = std::collections::HashMap::new();
    for (e, &[u, v]) in s.edges.iter().enumerate() {
        if u >= s.n || v >= s.n {
            out.push(Violation::EndpointOutOfRange { edge: e });
        } else if u == v {
            out.push(Violation::Loop { edge: e });
        } else if let Some(&other) = seen.get(&(u.min(v), u.max(v))) {
            out.push(Violation::ParallelEdge { edge: e, other });
        } else {
            seen.insert((u.min(v), u.max(v)), e);
        }
    }
    if s.signature.len() != m {
        out.push(Violation::SignatureCount { expected: m, got: s.signature.len() });
    }
    for (e, &x) in s.signature.iter().enumerate() {
        if x != 1 && x != -1 {
            out.push(Violation::BadSign { edge: e, value: x });
        }
    }
    if s.rotation.len() != s.n {
        out.push(Violation::RotationCount { expected: s.n, got: s.rotation.len() });
    }
    if !out.is_empty() {
        return Err(out);
    }
    for (v, rot) in s.rotation.iter().enumerate() {
        let mut local = std::collections::BTreeMap::new();
        for &e in rot {
            if e >= m {
                out.push(Violation::UnknownEdge { edge: e, vertex: v });
            } else if !s.edges[e].contains(&v) {
                out.push(Violation::NotIncident { edge: e, vertex: v });
            } else {
                *local.entry(e).or_insert(0u32) += 1;
            }
        }
        for (&e, &c) in &local {
            if c > 1 {
                out.push(Violation::Repeated { edge: e, vertex: v });
            }
        }
        for (e, &[a, b]) in s.edges.iter().enumerate() {
            if (a == v || b == v) && !local.contains_key(&e) {
                out.push(Violation::Missing { edge: e, vertex: v });
            }
        }
    }
    if out.is_empty() && !s.graph().is_connected() {
        out.push(Violation::NotConnected);
    }
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

impl EmbeddingScheme {
    /// Underlying graph; vertex numbering is shared, edge ids are not.
    pub fn graph(&self) -> Graph {
        Graph::from_edge_set(self.n, self.edges.iter().map(|&[u, v]| (u, v)))
    }

    pub fn validated(self) -> Result<Self, EmbeddingError> {
        validate_scheme(&self).map_err(EmbeddingError::Invalid)?;
        Ok(self)
    }

    /// All-positive scheme with each rotation in increasing edge-id order
    /// (edge ids follow the graph's sorted edge list).
    pub fn from_graph(g: &Graph) -> Self {
        let edges: Vec<[usize; 2]> = g.edges().iter().map(|&(u, v)| [u, v]).collect();
        let mut rotation = vec![Vec::new(); g.order()];
        for (e, &[u, v]) in edges.iter().enumerate() {
            rotation[u].push(e);
            rotation[v].push(e);
        }
        EmbeddingScheme { n: g.order(), signature: vec![1; edges.len()], edges, rotation }
    }

    /// Uniformly random rotations and signs on a connected graph.
    pub fn random(g: &Graph, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut s = Self::from_graph(g);
        for rot in &mut s.rotation {
            rot.shuffle(&mut rng);
        }
        for x in &mut s.signature {
            *x = if rng.gen_bool(0.5) { 1 } else { -1 };
        }
        s
    }

    pub fn other_end(&self, e: usize, v: usize) -> usize {
        let [a, b] = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    /// Local switch at `v`: reverse the rotation and negate every incident
    /// edge. The embedded surface is unchanged.
    pub fn switch_at(&mut self, v: usize) {
        self.rotation[v].reverse();
        for &e in &self.rotation[v] {
            self.signature[e] = -self.signature[e];
        }
    }

    /// Vertex signs `lambda` from a BFS forest such that every tree edge
    /// satisfies `lambda(u) * sign(e) * lambda(v) = +1`.
    pub(crate) fn tree_switching(&self) -> (Vec<i8>, Vec<bool>) {
        let mut lambda = vec![0i8; self.n];
        let mut tree = vec![false; self.edges.len()];
        for root in 0..self.n {
            if lambda[root] != 0 {
                continue;
            }
            lambda[root] = 1;
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                let mut incident = self.rotation[u].clone();
                incident.sort_unstable_by_key(|&e| self.other_end(e, u));
                for e in incident {
                    let w = self.other_end(e, u);
                    if lambda[w] == 0 {
                        lambda[w] = lambda[u] * self.signature[e];
                        tree[e] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        (lambda, tree)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.n as i64 - self.edges.len() as i64 + count_faces(self) as i64
    }
}

/// True iff some switching makes every sign positive, i.e. every cycle has
/// positive sign product.
pub fn is_orientable_scheme(s: &EmbeddingScheme) -> bool {
    let (lambda, _) = s.tree_switching();
    s.edges.iter().zip(&s.signature).all(|(&[u, v], &x)| lambda[u] * x * lambda[v] == 1)
}

/// `2 - V + E - F` for a connected scheme.
pub fn euler_genus(s: &EmbeddingScheme) -> usize {
    let g = 2 - s.euler_characteristic();
    debug_assert!(g >= 0, "negative Euler genus");
    g as usize
}

/// Random planar triangulation on `n >= 3` vertices with its spherical
/// rotation system (all signs positive).
pub fn random_planar_triangulation(n: usize, seed: u64) -> EmbeddingScheme {
    planar_triangulation_with(n, &mut ChaCha8Rng::seed_from_u64(seed))
}

pub(crate) fn planar_triangulation_with(n: usize, rng: &mut ChaCha8Rng) -> EmbeddingScheme {
    assert!(n >= 3, "triangulation needs three vertices");
    // faces as counter-clockwise triples
    let mut faces: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1]];
    for v in 3..n {
        let i = rng.gen_range(0..faces.len());
        let [a, b, c] = faces.swap_remove(i);
        faces.extend([[a, b, v], [b, c, v], [c, a, v]]);
    }
    let has_edge = |faces: &[[usize; 3]], x: usize, y: usize| {
        faces.iter().any(|f| (0..3).any(|i| f[i] == x && f[(i + 1) % 3] == y))
    };
    let degree = |faces: &[[usize; 3]], x: usize| faces.iter().filter(|f| f.contains(&x)).count();
    for _ in 0..4 * n {
        let i = rng.gen_range(0..faces.len());
        let j0 = rng.gen_range(0..3);
        let (a, b, c) = (faces[i][j0], faces[i][(j0 + 1) % 3], faces[i][(j0 + 2) % 3]);
        let Some(j) = faces.iter().position(|f| (0..3).any(|t| f[t] == b && f[(t + 1) % 3] == a)) else { continue };
        let d = *faces[j].iter().find(|&&x| x != a && x != b).unwrap();
        if c == d || has_edge(&faces, c, d) || degree(&faces, a) <= 3 || degree(&faces, b) <= 3 {
            continue;
        }
        faces[i] = [a, d, c];
        faces[j] = [d, b, c];
    }
    // rotation at v: successor map x -> y from every face (v, x, y)
    let mut succ = vec![std::collections::HashMap::new(); n];
    let mut edge_set = std::collections::BTreeSet::new();
    for f in &faces {
        for t in 0..3 {
            let (v, x, y) = (f[t], f[(t + 1) % 3], f[(t + 2) % 3]);
            succ[v].insert(x, y);
            edge_set.insert((v.min(x), v.max(x)));
        }
    }
    let edges: Vec<[usize; 2]> = edge_set.iter().map(|&(u, v)| [u, v]).collect();
    let id: std::collections::HashMap<(usize, usize), usize> =
        edges.iter().enumerate().flat_map(|(e, &[u, v])| [((u, v), e), ((v, u), e)]).collect();
    let rotation = (0..n)
        .map(|v| {
            let start = *succ[v].keys().min().unwrap();
            let mut out = vec![id[&(v, start)]];
            let mut x = succ[v][&start];
            while x != start {
                out.push(id[&(v, x)]);
                x = succ[v][&x];
            }
            out
        })
        .collect();
    EmbeddingScheme { n, signature: vec![1; edges.len()], edges, rotation }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};

    pub(crate) fn c3(signs: [i8; 3]) -> EmbeddingScheme {
        EmbeddingScheme {
            n: 3,
            edges: vec![[0, 1], [0, 2], [1, 2]],
            rotation: vec![vec![0, 1], vec![0, 2], vec![1, 2]],
            signature: signs.to_vec(),
        }
    }

    #[test]
    fn validation_reports_violations() {
        assert!(validate_scheme(&c3([1, 1, 1])).is_ok());
        let g = generate(&Family::Petersen, None).unwrap();
        let mut s = EmbeddingScheme::from_graph(&g);
        assert!(validate_scheme(&s).is_ok());
        let dropped = s.rotation[5].remove(0);
        let errs = validate_scheme(&s).unwrap_err();
        assert_eq!(errs, vec![Violation::Missing { edge: dropped, vertex: 5 }]);
        assert_eq!(errs[0].to_string(), format!("edge {dropped} missing at vertex 5"));

        let two = EmbeddingScheme { n: 2, edges: vec![], rotation: vec![vec![], vec![]], signature: vec![] };
        let errs = validate_scheme(&two).unwrap_err();
        assert_eq!(errs, vec![Violation::NotConnected]);
        assert!(errs[0].to_string().contains("not cellular-capable"));

        let bad = EmbeddingScheme { signature: vec![1, 0, 1], ..c3([1, 1, 1]) };
        assert_eq!(validate_scheme(&bad).unwrap_err(), vec![Violation::BadSign { edge: 1, value: 0 }]);
    }

    #[test]
    fn orientability() {
        assert!(is_orientable_scheme(&c3([1, 1, 1])));
        assert!(!is_orientable_scheme(&c3([1, 1, -1])));
        assert!(is_orientable_scheme(&c3([1, -1, -1])));
        let mut s = c3([1, 1, 1]);
        s.switch_at(1);
        assert!(is_orientable_scheme(&s));
    }

    #[test]
    fn triangulations_are_planar() {
        for seed in 0..20 {
            let s = random_planar_triangulation(12, seed);
            validate_scheme(&s).unwrap();
            assert_eq!(s.edges.len(), 30);
            assert_eq!(euler_genus(&s), 0);
        }
    }
}
