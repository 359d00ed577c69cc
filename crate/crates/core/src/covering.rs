//! Vertex maps between graphs that carry neighbourhoods onto
//! neighbourhoods, and the orientable double cover of a signed scheme.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::embedding::EmbeddingScheme;
use crate::graph::{parse_graph6, write_graph6, Graph, VertexSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoverError {
    #[error("deck involution is only defined for maps built by double_cover")]
    Unsupported,
    #[error("map has {got} entries for a source of order {expected}")]
    WrongLength { expected: usize, got: usize },
    #[error("vertex {0} outside the target")]
    OutOfRange(usize),
    #[error("bad covering-map file: {0}")]
    Format(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoverKind {
    WeakCover,
    TwoSheeted,
}

/// `p[u]` is the image of source vertex `u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoveringMap {
    pub source: Graph,
    pub target: Graph,
    pub p: Vec<usize>,
    pub kind: CoverKind,
    sheets: bool,
}

#[derive(Serialize, Deserialize)]
struct CoveringMapFile {
    source_graph6: String,
    target_graph6: String,
    p: Vec<usize>,
    kind: CoverKind,
}

/// Evidence that a map passed [`check_weak_cover`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeakCoverCertificate {
    pub fibre_sizes: Vec<usize>,
    /// Every fibre has two vertices and `p` is bijective on each neighbourhood.
    pub two_sheeted: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoverViolation {
    WrongLength {
        expected: usize,
        got: usize,
    },
    OutOfRange {
        vertex: usize,
        image: usize,
    },
    NotSurjective {
        missed: Vec<usize>,
    },
    /// `p(N(u))` and `N(p(u))` differ at `vertex`.
    Neighbourhood {
        vertex: usize,
        extra: VertexSet,
        missing: VertexSet,
    },
}

impl fmt::Display for CoverViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoverViolation::WrongLength { expected, got } => {
                write!(f, "map has {got} entries, source has {expected} vertices")
            }
            CoverViolation::OutOfRange { vertex, image } => {
                write!(f, "vertex {vertex} maps to {image}, outside the target")
            }
            CoverViolation::NotSurjective { missed } => write!(f, "target vertices {missed:?} have empty fibres"),
            CoverViolation::Neighbourhood { vertex, extra, missing } => {
                write!(f, "at vertex {vertex}: p(N(u)) \\ N(p(u)) = {extra}, N(p(u)) \\ p(N(u)) = {missing}")
            }
        }
    }
}

/// Checks surjectivity and `p(N(u)) = N(p(u))` for every source vertex.
pub fn check_weak_cover(p: &[usize], source: &Graph, target: &Graph) -> Result<WeakCoverCertificate, CoverViolation> {
    if p.len() != source.order() {
        return Err(CoverViolation::WrongLength { expected: source.order(), got: p.len() });
    }
    if let Some((vertex, &image)) = p.iter().enumerate().find(|&(_, &x)| x >= target.order()) {
        return Err(CoverViolation::OutOfRange { vertex, image });
    }
    let mut fibre_sizes = vec![0; target.order()];
    for &x in p {
        fibre_sizes[x] += 1;
    }
    let missed: Vec<usize> = (0..target.order()).filter(|&x| fibre_sizes[x] == 0).collect();
    if !missed.is_empty() {
        return Err(CoverViolation::NotSurjective { missed });
    }
    let mut bijective = true;
    for u in 0..source.order() {
        let image: VertexSet = source.neighbors(u).iter().map(|&w| p[w]).collect();
        let expected = target.neighborhood(p[u], false);
        if image != expected {
            return Err(CoverViolation::Neighbourhood {
                vertex: u,
                extra: image.difference(&expected),
                missing: expected.difference(&image),
            });
        }
        bijective &= source.degree(u) == expected.len();
    }
    let two_sheeted = bijective && fibre_sizes.iter().all(|&s| s == 2);
    Ok(WeakCoverCertificate { fibre_sizes, two_sheeted })
}

impl CoveringMap {
    /// Builds a map after checking it; `kind` is TwoSheeted when the
    /// certificate says so.
    pub fn certified(
        source: Graph,
        target: Graph,
        p: Vec<usize>,
    ) -> Result<(Self, WeakCoverCertificate), CoverViolation> {
        let cert = check_weak_cover(&p, &source, &target)?;
        let kind = if cert.two_sheeted { CoverKind::TwoSheeted } else { CoverKind::WeakCover };
        Ok((CoveringMap { source, target, p, kind, sheets: false }, cert))
    }

    /// Unchecked constructor; use [`check_weak_cover`] before trusting it.
    pub fn new(source: Graph, target: Graph, p: Vec<usize>, kind: CoverKind) -> Self {
        CoveringMap { source, target, p, kind, sheets: false }
    }

    pub fn identity(g: &Graph) -> Self {
        CoveringMap {
            source: g.clone(),
            target: g.clone(),
            p: (0..g.order()).collect(),
            kind: CoverKind::WeakCover,
            sheets: false,
        }
    }

    pub fn fibre(&self, v: usize) -> VertexSet {
        self.p.iter().enumerate().filter(|&(_, &x)| x == v).map(|(u, _)| u).collect()
    }

    pub fn to_json(&self) -> String {
        let file = CoveringMapFile {
            source_graph6: write_graph6(&self.source).expect("graph fits graph6"),
            target_graph6: write_graph6(&self.target).expect("graph fits graph6"),
            p: self.p.clone(),
            kind: self.kind,
        };
        serde_json::to_string(&file).expect("map serialises")
    }

    /// Parses the JSON form. The map is not checked; see [`check_weak_cover`].
    pub fn from_json(text: &str) -> Result<Self, CoverError> {
        let file: CoveringMapFile = serde_json::from_str(text).map_err(|e| CoverError::Format(e.to_string()))?;
        let source = parse_graph6(&file.source_graph6).map_err(|e| CoverError::Format(e.to_string()))?;
        let target = parse_graph6(&file.target_graph6).map_err(|e| CoverError::Format(e.to_string()))?;
        if file.p.len() != source.order() {
            return Err(CoverError::WrongLength { expected: source.order(), got: file.p.len() });
        }
        if let Some(&bad) = file.p.iter().find(|&&x| x >= target.order()) {
            return Err(CoverError::OutOfRange(bad));
        }
        Ok(CoveringMap::new(source, target, file.p, file.kind))
    }
}

/// Orientable double cover. Vertex `(v, +1)` is `v` and `(v, -1)` is
/// `v + n`. Edge `e = uv` with sign `σ` lifts to `(u,+1)(v,σ)` (id `e`) and
/// `(u,-1)(v,-σ)` (id `e + E`), where `u = edges[e][0]`. Rotations are
/// copied on the `+1` sheet and reversed on the `-1` sheet, so every lifted
/// edge is positive.
pub fn double_cover(s: &EmbeddingScheme) -> (EmbeddingScheme, CoveringMap) {
    let n = s.n;
    let m = s.edges.len();
    let mut edges = Vec::with_capacity(2 * m);
    let lift_end = |v: usize, sheet_pos: bool| if sheet_pos { v } else { v + n };
    for (e, &[u, v]) in s.edges.iter().enumerate() {
        let sigma = s.signature[e] > 0;
        edges.push([lift_end(u, true), lift_end(v, sigma)]);
    }
    for (e, &[u, v]) in s.edges.iter().enumerate() {
        let sigma = s.signature[e] > 0;
        edges.push([lift_end(u, false), lift_end(v, !sigma)]);
    }
    // lifted id of edge e at (v, sheet)
    let lift_edge = |e: usize, v: usize, sheet_pos: bool| {
        let [u, _] = s.edges[e];
        let on_plus_copy = if v == u { sheet_pos } else { sheet_pos == (s.signature[e] > 0) };
        if on_plus_copy {
            e
        } else {
            e + m
        }
    };
    let mut rotation = vec![Vec::new(); 2 * n];
    for v in 0..n {
        rotation[v] = s.rotation[v].iter().map(|&e| lift_edge(e, v, true)).collect();
        rotation[v + n] = s.rotation[v].iter().rev().map(|&e| lift_edge(e, v, false)).collect();
    }
    let cover = EmbeddingScheme { n: 2 * n, edges, rotation, signature: vec![1; 2 * m] };
    let map = CoveringMap {
        source: cover.graph(),
        target: s.graph(),
        p: (0..2 * n).map(|x| x % n).collect(),
        kind: CoverKind::TwoSheeted,
        sheets: true,
    };
    (cover, map)
}

/// The sheet swap `(v, t) -> (v, -t)` of a map built by [`double_cover`].
pub fn deck_involution(map: &CoveringMap) -> Result<Vec<usize>, CoverError> {
    if !map.sheets || map.kind != CoverKind::TwoSheeted {
        return Err(CoverError::Unsupported);
    }
    let n = map.target.order();
    Ok((0..2 * n).map(|x| (x + n) % (2 * n)).collect())
}

/// Quotient of a graph by a fixed-point-free involution: orbit `{x, σx}` is
/// named by its smaller member's rank among orbit representatives.
pub fn quotient_by_involution(g: &Graph, inv: &[usize]) -> Graph {
    let mut name = vec![usize::MAX; g.order()];
    let mut next = 0;
    for x in 0..g.order() {
        if name[x] == usize::MAX {
            name[x] = next;
            name[inv[x]] = next;
            next += 1;
        }
    }
    Graph::from_edge_set(next, g.edges().iter().map(|&(u, v)| (name[u], name[v])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::{is_orientable_scheme, validate_scheme, Violation};
    use crate::graph::{generate, is_isomorphic, Family};

    fn c6_to_c3() -> (Graph, Graph, Vec<usize>) {
        let c6 = generate(&Family::Cycle(6), None).unwrap();
        let c3 = generate(&Family::Cycle(3), None).unwrap();
        (c6, c3, (0..6).map(|i| i % 3).collect())
    }

    #[test]
    fn identity_and_cycle_covers() {
        let g = generate(&Family::Petersen, None).unwrap();
        let id = CoveringMap::identity(&g);
        assert!(check_weak_cover(&id.p, &g, &g).is_ok());
        assert_eq!(id.fibre(4).as_slice(), &[4]);

        let (c6, c3, p) = c6_to_c3();
        let (map, cert) = CoveringMap::certified(c6, c3, p).unwrap();
        assert!(cert.two_sheeted);
        assert_eq!(map.kind, CoverKind::TwoSheeted);
        assert_eq!(map.fibre(0).as_slice(), &[0, 3]);
    }

    #[test]
    fn constant_map_is_not_a_weak_cover() {
        let c3 = generate(&Family::Cycle(3), None).unwrap();
        let k1 = Graph::empty(1);
        let v = check_weak_cover(&[0, 0, 0], &c3, &k1).unwrap_err();
        assert_eq!(
            v,
            CoverViolation::Neighbourhood { vertex: 0, extra: VertexSet::new(vec![0]), missing: VertexSet::default() }
        );
    }

    #[test]
    fn weak_but_not_two_sheeted() {
        let p3 = generate(&Family::Path(3), None).unwrap();
        let k2 = generate(&Family::Complete(2), None).unwrap();
        let cert = check_weak_cover(&[0, 1, 0], &p3, &k2).unwrap();
        assert!(!cert.two_sheeted);
        assert_eq!(cert.fibre_sizes, vec![2, 1]);
        assert!(matches!(check_weak_cover(&[0, 0, 0], &p3, &k2), Err(CoverViolation::NotSurjective { .. })));
    }

    #[test]
    fn double_cover_of_orientable_triangle_is_two_triangles() {
        let s = EmbeddingScheme::from_graph(&generate(&Family::Cycle(3), None).unwrap());
        let (cover, map) = double_cover(&s);
        // two sheets: structurally sound, only connectivity is missing
        assert_eq!(validate_scheme(&cover).unwrap_err(), vec![Violation::NotConnected]);
        assert!(cover.signature.iter().all(|&x| x == 1));
        assert!(is_orientable_scheme(&cover));
        let g = cover.graph();
        assert_eq!(g.components().len(), 2);
        let c3 = generate(&Family::Cycle(3), None).unwrap();
        assert!(is_isomorphic(&g, &c3.disjoint_union(&c3)).is_some());
        assert_eq!(deck_involution(&map).unwrap(), vec![3, 4, 5, 0, 1, 2]);
        assert_eq!(map.fibre(1).as_slice(), &[1, 4]);
    }

    #[test]
    fn twisted_triangle_lifts_to_hexagon() {
        let s = EmbeddingScheme {
            signature: vec![1, 1, -1],
            ..EmbeddingScheme::from_graph(&generate(&Family::Cycle(3), None).unwrap())
        };
        let (cover, map) = double_cover(&s);
        let c6 = generate(&Family::Cycle(6), None).unwrap();
        assert!(is_isomorphic(&cover.graph(), &c6).is_some());
        assert!(check_weak_cover(&map.p, &map.source, &map.target).unwrap().two_sheeted);
    }

    #[test]
    fn deck_requires_constructed_map() {
        let (c6, c3, p) = c6_to_c3();
        let (map, _) = CoveringMap::certified(c6, c3, p).unwrap();
        assert_eq!(deck_involution(&map).unwrap_err(), CoverError::Unsupported);
    }

    #[test]
    fn json_round_trip() {
        let (c6, c3, p) = c6_to_c3();
        let (map, _) = CoveringMap::certified(c6, c3, p).unwrap();
        let back = CoveringMap::from_json(&map.to_json()).unwrap();
        assert_eq!(back, map);
        assert!(matches!(CoveringMap::from_json("{}"), Err(CoverError::Format(_))));
    }
}
