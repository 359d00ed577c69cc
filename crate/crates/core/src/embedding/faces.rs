//! Face tracing for signed rotation systems.
//!
//! A flag `(e, end, s)` sits at endpoint `end` of edge `e` about to walk
//! along `e` with local orientation `s`. Walking multiplies `s` by the sign
//! of `e`; at the far vertex the walk continues with the rotation successor
//! of `e` when `s = +1` and the predecessor when `s = -1`. The `4E` flags
//! split into `2F` orbits, each face once per direction.

use serde::Serialize;

use super::EmbeddingScheme;

/// One traversal of an edge side: leaving `from` along `edge`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Dart {
    pub from: usize,
    pub edge: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceSet {
    pub faces: Vec<Vec<Dart>>,
}

impl FaceSet {
    pub fn count(&self) -> usize {
        self.faces.len()
    }

    pub fn total_length(&self) -> usize {
        self.faces.iter().map(Vec::len).sum()
    }
}

pub(crate) struct Tracer<'a> {
    s: &'a EmbeddingScheme,
    // position of edge e in the rotation at its endpoint `end`
    pos: Vec<usize>,
}

impl<'a> Tracer<'a> {
    pub(crate) fn new(s: &'a EmbeddingScheme) -> Self {
        let mut pos = vec![0; 2 * s.edges.len()];
        for (v, rot) in s.rotation.iter().enumerate() {
            for (i, &e) in rot.iter().enumerate() {
                let end = usize::from(s.edges[e][0] != v);
                pos[2 * e + end] = i;
            }
        }
        Tracer { s, pos }
    }

    #[inline]
    fn flag(e: usize, end: usize, positive: bool) -> usize {
        (2 * e + end) * 2 + usize::from(!positive)
    }

    #[inline]
    fn step(&self, flag: usize) -> usize {
        let positive = flag & 1 == 0;
        let e = flag / 4;
        let end = (flag / 2) & 1;
        let far = 1 - end;
        let w = self.s.edges[e][far];
        let positive = positive == (self.s.signature[e] > 0);
        let rot = &self.s.rotation[w];
        let d = rot.len();
        let p = self.pos[2 * e + far];
        let f = if positive { rot[(p + 1) % d] } else { rot[(p + d - 1) % d] };
        let f_end = usize::from(self.s.edges[f][0] != w);
        Self::flag(f, f_end, positive)
    }

    #[inline]
    fn reverse(&self, flag: usize) -> usize {
        let positive = flag & 1 == 0;
        let e = flag / 4;
        let end = (flag / 2) & 1;
        let arrives_positive = positive == (self.s.signature[e] > 0);
        Self::flag(e, 1 - end, !arrives_positive)
    }

    pub(crate) fn orbit_count(&self, visited: &mut Vec<bool>) -> usize {
        let total = 4 * self.s.edges.len();
        visited.clear();
        visited.resize(total, false);
        let mut orbits = 0;
        for start in 0..total {
            if visited[start] {
                continue;
            }
            orbits += 1;
            let mut f = start;
            while !visited[f] {
                visited[f] = true;
                f = self.step(f);
            }
        }
        orbits
    }
}

/// Number of faces of a validated scheme.
pub fn count_faces(s: &EmbeddingScheme) -> usize {
    if s.edges.is_empty() {
        return 1;
    }
    let orbits = Tracer::new(s).orbit_count(&mut Vec::new());
    debug_assert!(orbits.is_multiple_of(2));
    orbits / 2
}

/// Facial walks of a validated scheme, one per face; every edge side is
/// used exactly once, so the walks have total length `2E`.
pub fn trace_faces(s: &EmbeddingScheme) -> FaceSet {
    if s.edges.is_empty() {
        return FaceSet { faces: vec![Vec::new()] };
    }
    let tracer = Tracer::new(s);
    let total = 4 * s.edges.len();
    let mut seen = vec![false; total];
    let mut faces = Vec::new();
    for start in 0..total {
        if seen[start] {
            continue;
        }
        let mut walk = Vec::new();
        let mut f = start;
        while !seen[f] {
            seen[f] = true;
            let e = f / 4;
            let end = (f / 2) & 1;
            walk.push(Dart { from: s.edges[e][end], edge: e });
            f = tracer.step(f);
        }
        // the same face traced backwards
        let mut r = tracer.reverse(start);
        assert!(!seen[r], "face orbit is its own reverse");
        while !seen[r] {
            seen[r] = true;
            r = tracer.step(r);
        }
        faces.push(walk);
    }
    FaceSet { faces }
}

/// Independent face count for an all-positive scheme: plain rotation
/// successor walk on darts, no orientation bookkeeping.
#[cfg(test)]
pub(crate) fn count_faces_unsigned(s: &EmbeddingScheme) -> usize {
    assert!(s.signature.iter().all(|&x| x == 1), "unsigned tracer needs positive signs");
    if s.edges.is_empty() {
        return 1;
    }
    let m = s.edges.len();
    // dart 2e + j leaves edges[e][j]
    let mut next_at = std::collections::HashMap::new();
    for (v, rot) in s.rotation.iter().enumerate() {
        for i in 0..rot.len() {
            next_at.insert((v, rot[i]), rot[(i + 1) % rot.len()]);
        }
    }
    let mut seen = vec![false; 2 * m];
    let mut faces = 0;
    for start in 0..2 * m {
        if seen[start] {
            continue;
        }
        faces += 1;
        let mut d = start;
        while !seen[d] {
            seen[d] = true;
            let e = d / 2;
            let w = s.edges[e][1 - d % 2];
            let f = next_at[&(w, e)];
            d = 2 * f + usize::from(s.edges[f][0] != w);
        }
    }
    faces
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covering::double_cover;
    use crate::embedding::{euler_genus, random_planar_triangulation, tests::c3, EmbeddingScheme};
    use crate::graph::{generate, Family};

    fn k4_planar() -> EmbeddingScheme {
        random_planar_triangulation(4, 0)
    }

    #[test]
    fn triangle_on_sphere() {
        let f = trace_faces(&c3([1, 1, 1]));
        assert_eq!(f.count(), 2);
        assert!(f.faces.iter().all(|w| w.len() == 3));
        assert_eq!(euler_genus(&c3([1, 1, 1])), 0);
    }

    #[test]
    fn triangle_with_a_twist() {
        let s = c3([1, 1, -1]);
        let f = trace_faces(&s);
        assert_eq!(f.count(), 1);
        assert_eq!(f.faces[0].len(), 6);
        assert_eq!(euler_genus(&s), 1);
    }

    #[test]
    fn k4_sphere_matches_cover_quotient() {
        let s = k4_planar();
        let f = trace_faces(&s);
        assert_eq!(f.count(), 4);
        assert!(f.faces.iter().all(|w| w.len() == 3));
        let (cover, _) = double_cover(&s);
        assert_eq!(count_faces_unsigned(&cover), 8);
    }

    #[test]
    fn every_edge_side_used_once() {
        let g = generate(&Family::Petersen, None).unwrap();
        for seed in 0..30 {
            let s = EmbeddingScheme::random(&g, seed);
            let f = trace_faces(&s);
            assert_eq!(f.total_length(), 2 * s.edges.len());
            let mut uses = vec![0; s.edges.len()];
            for d in f.faces.iter().flatten() {
                uses[d.edge] += 1;
            }
            assert!(uses.iter().all(|&u| u == 2));
            assert_eq!(f.count(), count_faces(&s));
        }
    }
}
