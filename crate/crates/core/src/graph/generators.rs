//! Deterministic graph families.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Graph, GraphError};

const DODECAHEDRON: [(usize, usize); 30] = [
    (0, 1),
    (0, 10),
    (0, 19),
    (1, 2),
    (1, 8),
    (2, 3),
    (2, 6),
    (3, 4),
    (3, 19),
    (4, 5),
    (4, 17),
    (5, 6),
    (5, 15),
    (6, 7),
    (7, 8),
    (7, 14),
    (8, 9),
    (9, 10),
    (9, 13),
    (10, 11),
    (11, 12),
    (11, 18),
    (12, 13),
    (12, 16),
    (13, 14),
    (14, 15),
    (15, 16),
    (16, 17),
    (17, 18),
    (18, 19),
];

const ICOSAHEDRON: [(usize, usize); 30] = [
    (0, 1),
    (0, 5),
    (0, 7),
    (0, 8),
    (0, 11),
    (1, 2),
    (1, 5),
    (1, 6),
    (1, 8),
    (2, 3),
    (2, 6),
    (2, 8),
    (2, 9),
    (3, 4),
    (3, 6),
    (3, 9),
    (3, 10),
    (4, 5),
    (4, 6),
    (4, 10),
    (4, 11),
    (5, 6),
    (5, 11),
    (7, 8),
    (7, 9),
    (7, 10),
    (7, 11),
    (8, 9),
    (9, 10),
    (10, 11),
];

#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    Path(usize),
    Cycle(usize),
    Complete(usize),
    CompleteBipartite(usize, usize),
    Grid {
        rows: usize,
        cols: usize,
    },
    /// Kneser graph K(5,2): 2-subsets of {0..4} in lexicographic order, adjacent when disjoint.
    Petersen,
    Dodecahedron,
    Icosahedron,
    RandomGnp {
        n: usize,
        p: f64,
    },
    /// Random planar triangulation (vertex insertion followed by edge flips).
    PlanarTriangulation(usize),
    DisjointUnion(Box<Family>, Box<Family>),
}

impl Family {
    pub const NAMES: [&'static str; 11] = [
        "path",
        "cycle",
        "complete",
        "complete_bipartite",
        "grid",
        "petersen",
        "dodecahedron",
        "icosahedron",
        "random_gnp",
        "planar_triangulation",
        "disjoint_union",
    ];

    /// Builds a family from its name and integer parameters. `random_gnp`
    /// takes `n` and the edge probability in percent. `disjoint_union` is not
    /// expressible with integers; use [`Family::parse`].
    pub fn from_name(name: &str, params: &[usize]) -> Result<Family, GraphError> {
        let bad = |reason: &str| GraphError::InvalidParams { family: name.to_string(), reason: reason.to_string() };
        let arity = |k: usize| {
            if params.len() == k {
                Ok(())
            } else {
                Err(bad(&format!("expected {k} parameter(s), got {}", params.len())))
            }
        };
        let fam = match name {
            "path" => {
                arity(1)?;
                Family::Path(params[0])
            }
            "cycle" => {
                arity(1)?;
                Family::Cycle(params[0])
            }
            "complete" => {
                arity(1)?;
                Family::Complete(params[0])
            }
            "complete_bipartite" => {
                arity(2)?;
                Family::CompleteBipartite(params[0], params[1])
            }
            "grid" => {
                arity(2)?;
                Family::Grid { rows: params[0], cols: params[1] }
            }
            "petersen" => {
                arity(0)?;
                Family::Petersen
            }
            "dodecahedron" => {
                arity(0)?;
                Family::Dodecahedron
            }
            "icosahedron" => {
                arity(0)?;
                Family::Icosahedron
            }
            "random_gnp" => {
                arity(2)?;
                if params[1] > 100 {
                    return Err(bad("edge probability is a percentage in 0..=100"));
                }
                Family::RandomGnp { n: params[0], p: params[1] as f64 / 100.0 }
            }
            "planar_triangulation" => {
                arity(1)?;
                Family::PlanarTriangulation(params[0])
            }
            "disjoint_union" => return Err(bad("takes two family specs, e.g. disjoint_union(cycle:4,path:2)")),
            other => return Err(GraphError::UnknownFamily(other.to_string())),
        };
        Ok(fam)
    }

    /// Parses `name` or `name:p1,p2,...`; `disjoint_union(A,B)` nests two specs.
    pub fn parse(spec: &str) -> Result<Family, GraphError> {
        let spec = spec.trim();
        if let Some(inner) = spec.strip_prefix("disjoint_union(").and_then(|s| s.strip_suffix(')')) {
            let split = split_top_level(inner).ok_or_else(|| GraphError::InvalidParams {
                family: "disjoint_union".into(),
                reason: "expected two comma-separated family specs".into(),
            })?;
            return Ok(Family::DisjointUnion(Box::new(Family::parse(split.0)?), Box::new(Family::parse(split.1)?)));
        }
        let (name, rest) = spec.split_once(':').unwrap_or((spec, ""));
        let params = rest
            .split(',')
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.trim().parse::<usize>().map_err(|_| GraphError::InvalidParams {
                    family: name.to_string(),
                    reason: format!("`{s}` is not a non-negative integer"),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Family::from_name(name, &params)
    }
}

// Splits at the first depth-0 comma that starts a new family name.
fn split_top_level(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 && s[i + 1..].starts_with(|ch: char| ch.is_ascii_alphabetic()) => {
                return Some((&s[..i], &s[i + 1..]));
            }
            _ => {}
        }
    }
    None
}

/// Builds a graph of the given family. Random families use `seed`
/// (default 0) with a ChaCha8 stream, so output is platform independent.
pub fn generate(family: &Family, seed: Option<u64>) -> Result<Graph, GraphError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.unwrap_or(0));
    build(family, &mut rng)
}

fn build(family: &Family, rng: &mut ChaCha8Rng) -> Result<Graph, GraphError> {
    let invalid = |name: &str, reason: &str| GraphError::InvalidParams { family: name.into(), reason: reason.into() };
    let g = match *family {
        Family::Path(n) => {
            if n == 0 {
                return Err(invalid("path", "needs at least one vertex"));
            }
            Graph::from_edge_set(n, (1..n).map(|v| (v - 1, v)))
        }
        Family::Cycle(n) => {
            if n < 3 {
                return Err(invalid("cycle", "needs at least three vertices"));
            }
            Graph::from_edge_set(n, (0..n).map(|v| (v, (v + 1) % n)))
        }
        Family::Complete(n) => {
            if n == 0 {
                return Err(invalid("complete", "needs at least one vertex"));
            }
            Graph::from_edge_set(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
        }
        Family::CompleteBipartite(a, b) => {
            if a == 0 || b == 0 {
                return Err(invalid("complete_bipartite", "both sides must be nonempty"));
            }
            Graph::from_edge_set(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))))
        }
        Family::Grid { rows, cols } => {
            if rows == 0 || cols == 0 {
                return Err(invalid("grid", "both dimensions must be positive"));
            }
            let id = |i: usize, j: usize| i * cols + j;
            let mut edges = Vec::new();
            for i in 0..rows {
                for j in 0..cols {
                    if j + 1 < cols {
                        edges.push((id(i, j), id(i, j + 1)));
                    }
                    if i + 1 < rows {
                        edges.push((id(i, j), id(i + 1, j)));
                    }
                }
            }
            Graph::from_edge_set(rows * cols, edges)
        }
        Family::Petersen => {
            let pairs: Vec<(usize, usize)> = (0..5).flat_map(|a| (a + 1..5).map(move |b| (a, b))).collect();
            let mut edges = Vec::new();
            for (i, &(a, b)) in pairs.iter().enumerate() {
                for (j, &(c, d)) in pairs.iter().enumerate().skip(i + 1) {
                    if a != c && a != d && b != c && b != d {
                        edges.push((i, j));
                    }
                }
            }
            Graph::from_edge_set(10, edges)
        }
        Family::Dodecahedron => Graph::from_edge_set(20, DODECAHEDRON),
        Family::Icosahedron => Graph::from_edge_set(12, ICOSAHEDRON),
        Family::RandomGnp { n, p } => {
            if !(0.0..=1.0).contains(&p) {
                return Err(invalid("random_gnp", "edge probability outside [0, 1]"));
            }
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(p) {
                        edges.push((u, v));
                    }
                }
            }
            Graph::from_edge_set(n, edges)
        }
        Family::PlanarTriangulation(n) => {
            if n < 3 {
                return Err(invalid("planar_triangulation", "needs at least three vertices"));
            }
            crate::embedding::planar_triangulation_with(n, rng).graph()
        }
        Family::DisjointUnion(ref a, ref b) => build(a, rng)?.disjoint_union(&build(b, rng)?),
    };
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_families() {
        let c3 = generate(&Family::Cycle(3), None).unwrap();
        assert_eq!((c3.order(), c3.size()), (3, 3));
        let u = generate(&Family::parse("disjoint_union(cycle:4,path:2)").unwrap(), None).unwrap();
        assert_eq!((u.order(), u.size(), u.components().len()), (6, 5, 2));
        let kb = generate(&Family::CompleteBipartite(3, 3), None).unwrap();
        assert_eq!(kb.size(), 9);
        let grid = generate(&Family::Grid { rows: 3, cols: 4 }, None).unwrap();
        assert_eq!(grid.size(), 3 * 3 + 2 * 4);
    }

    #[test]
    fn petersen_structure() {
        let p = generate(&Family::Petersen, None).unwrap();
        assert_eq!((p.order(), p.size()), (10, 15));
        assert!((0..10).all(|v| p.degree(v) == 3));
        assert_eq!(p.girth(), Some(5));
    }

    #[test]
    fn platonic_skeletons() {
        let d = generate(&Family::Dodecahedron, None).unwrap();
        assert!((0..20).all(|v| d.degree(v) == 3));
        assert_eq!(d.girth(), Some(5));
        let i = generate(&Family::Icosahedron, None).unwrap();
        assert!((0..12).all(|v| i.degree(v) == 5));
        assert_eq!(i.girth(), Some(3));
    }

    #[test]
    fn random_families_are_seeded() {
        let f = Family::RandomGnp { n: 15, p: 0.3 };
        assert_eq!(generate(&f, Some(7)).unwrap(), generate(&f, Some(7)).unwrap());
        assert_ne!(generate(&f, Some(7)).unwrap(), generate(&f, Some(8)).unwrap());
        let t = generate(&Family::PlanarTriangulation(12), Some(3)).unwrap();
        assert_eq!(t.size(), 3 * 12 - 6);
    }

    #[test]
    fn name_errors() {
        assert_eq!(Family::parse("moebius:3"), Err(GraphError::UnknownFamily("moebius".into())));
        assert!(matches!(Family::parse("cycle"), Err(GraphError::InvalidParams { .. })));
        assert!(matches!(generate(&Family::Cycle(2), None), Err(GraphError::InvalidParams { .. })));
        assert!(matches!(Family::parse("grid:2,x"), Err(GraphError::InvalidParams { .. })));
        assert_eq!(
            Family::parse("disjoint_union(grid:2,3,petersen)").unwrap(),
            Family::DisjointUnion(Box::new(Family::Grid { rows: 2, cols: 3 }), Box::new(Family::Petersen))
        );
    }
}
