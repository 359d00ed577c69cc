//! Generators and reference implementations shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashMap;
use std::path::PathBuf;

use copcover::embedding::EmbeddingScheme;
use copcover::graph::Graph;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

pub fn corpus(sub: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(sub)
}

pub fn config(cases: u32, seed: u64) -> Config {
    Config { cases, rng_seed: RngSeed::Fixed(seed), failure_persistence: None, ..Config::default() }
}

/// Any simple graph on 1..=max_n vertices.
pub fn any_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        prop::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut i = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[i] {
                        edges.push((u, v));
                    }
                    i += 1;
                }
            }
            Graph::new(n, edges).unwrap()
        })
    })
}

/// Connected graph: a random spanning tree plus random extra edges.
pub fn connected_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        (
            prop::collection::vec(any::<prop::sample::Index>(), n - 1),
            prop::collection::vec(prop::bool::weighted(0.35), n * (n - 1) / 2),
        )
            .prop_map(move |(parents, extra)| {
                let mut edges = std::collections::BTreeSet::new();
                for (i, p) in parents.iter().enumerate() {
                    let v = i + 1;
                    edges.insert((p.index(v), v));
                }
                let mut i = 0;
                for u in 0..n {
                    for v in u + 1..n {
                        if extra[i] {
                            edges.insert((u, v));
                        }
                        i += 1;
                    }
                }
                Graph::new(n, edges).unwrap()
            })
    })
}

/// Random signed rotation system on a random connected graph.
pub fn any_scheme(max_n: usize) -> impl Strategy<Value = EmbeddingScheme> {
    (connected_graph(max_n), any::<u64>()).prop_map(|(g, seed)| EmbeddingScheme::random(&g, seed))
}

/// Plain face count for all-positive schemes: follow each dart to the
/// rotation successor at its head.
pub fn faces_by_darts(s: &EmbeddingScheme) -> usize {
    assert!(s.signature.iter().all(|&x| x == 1));
    if s.edges.is_empty() {
        return 1;
    }
    let mut succ = HashMap::new();
    for (v, rot) in s.rotation.iter().enumerate() {
        for i in 0..rot.len() {
            succ.insert((v, rot[i]), rot[(i + 1) % rot.len()]);
        }
    }
    // dart (tail, edge)
    let mut seen = std::collections::HashSet::new();
    let mut faces = 0;
    for (e, &[u, v]) in s.edges.iter().enumerate() {
        for start in [(u, e), (v, e)] {
            if seen.contains(&start) {
                continue;
            }
            faces += 1;
            let mut d = start;
            while seen.insert(d) {
                let [a, b] = s.edges[d.1];
                let head = if a == d.0 { b } else { a };
                let next = succ[&(head, d.1)];
                d = (head, next);
            }
        }
    }
    faces
}

/// Game values by a depth-indexed fixed point over labelled cop tuples:
/// `W_d` is the set of states from which the cops capture within `d` plies.
/// Keys are `(cops, robber, cops_to_move)`; absent states are robber wins.
pub struct MinimaxOracle {
    pub values: HashMap<(Vec<usize>, usize, bool), u32>,
}

impl MinimaxOracle {
    pub fn new(g: &Graph, k: usize) -> Self {
        let n = g.order();
        let tuples: Vec<Vec<usize>> = (0..n.pow(k as u32))
            .map(|mut x| {
                (0..k)
                    .map(|_| {
                        let c = x % n;
                        x /= n;
                        c
                    })
                    .collect()
            })
            .collect();
        let closed = |v: usize| -> Vec<usize> {
            let mut out = vec![v];
            out.extend_from_slice(g.neighbors(v));
            out
        };
        let successors = |cops: &Vec<usize>| -> Vec<Vec<usize>> {
            let mut out = vec![Vec::new()];
            for &c in cops {
                out = out
                    .into_iter()
                    .flat_map(|prefix: Vec<usize>| {
                        closed(c).into_iter().map(move |w| {
                            let mut p = prefix.clone();
                            p.push(w);
                            p
                        })
                    })
                    .collect();
            }
            out
        };
        let mut values: HashMap<(Vec<usize>, usize, bool), u32> = HashMap::new();
        for t in &tuples {
            for r in 0..n {
                if t.contains(&r) {
                    values.insert((t.clone(), r, true), 0);
                    values.insert((t.clone(), r, false), 0);
                }
            }
        }
        let mut depth = 0;
        loop {
            depth += 1;
            let mut added = Vec::new();
            for t in &tuples {
                for r in 0..n {
                    if !values.contains_key(&(t.clone(), r, true))
                        && successors(t).iter().any(|s| values.get(&(s.clone(), r, false)).is_some_and(|&d| d < depth))
                    {
                        added.push((t.clone(), r, true));
                    }
                    if !values.contains_key(&(t.clone(), r, false))
                        && closed(r).iter().all(|&w| values.get(&(t.clone(), w, true)).is_some_and(|&d| d < depth))
                    {
                        added.push((t.clone(), r, false));
                    }
                }
            }
            if added.is_empty() {
                break;
            }
            for key in added {
                values.insert(key, depth);
            }
        }
        MinimaxOracle { values }
    }

    pub fn value(&self, cops: &[usize], robber: usize, cops_to_move: bool) -> Option<u32> {
        self.values.get(&(cops.to_vec(), robber, cops_to_move)).copied()
    }
}
