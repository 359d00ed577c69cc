//! Dominated-vertex elimination, the classical characterisation of graphs
//! on which one cop wins.

use serde::Serialize;

use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum Dismantling {
    /// Each step `(u, v)` deletes `u`, whose closed neighbourhood in the
    /// remaining graph lies inside that of `v`. `last` is the survivor.
    Order { steps: Vec<(usize, usize)>, last: usize },
    /// No remaining vertex is dominated; `remaining` induces the witness.
    NotDismantlable { remaining: Vec<usize> },
}

impl Dismantling {
    pub fn is_dismantlable(&self) -> bool {
        matches!(self, Dismantling::Order { .. })
    }
}

pub fn dismantle(g: &Graph) -> Dismantling {
    let n = g.order();
    let words = n.div_ceil(64);
    let mut closed = vec![vec![0u64; words]; n];
    for v in 0..n {
        closed[v][v / 64] |= 1 << (v % 64);
        for &w in g.neighbors(v) {
            closed[v][w / 64] |= 1 << (w % 64);
        }
    }
    let mut alive = vec![!0u64; words];
    if !n.is_multiple_of(64) {
        alive[words - 1] = (1u64 << (n % 64)) - 1;
    }
    let is_alive = |alive: &[u64], v: usize| alive[v / 64] >> (v % 64) & 1 == 1;
    let dominated_by =
        |alive: &[u64], u: usize, v: usize| (0..words).all(|i| closed[u][i] & alive[i] & !closed[v][i] == 0);

    let mut steps = Vec::new();
    let mut left = n;
    while left > 1 {
        let found = (0..n).filter(|&u| is_alive(&alive, u)).find_map(|u| {
            (0..n).filter(|&v| v != u && is_alive(&alive, v)).find(|&v| dominated_by(&alive, u, v)).map(|v| (u, v))
        });
        match found {
            Some((u, v)) => {
                alive[u / 64] &= !(1 << (u % 64));
                steps.push((u, v));
                left -= 1;
            }
            None => {
                return Dismantling::NotDismantlable { remaining: (0..n).filter(|&v| is_alive(&alive, v)).collect() }
            }
        }
    }
    let last = (0..n).find(|&v| is_alive(&alive, v)).unwrap_or(0);
    Dismantling::Order { steps, last }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};

    #[test]
    fn triangle() {
        let d = dismantle(&generate(&Family::Cycle(3), None).unwrap());
        assert_eq!(d, Dismantling::Order { steps: vec![(0, 1), (1, 2)], last: 2 });
    }

    #[test]
    fn four_cycle_and_petersen_are_irreducible() {
        for f in [Family::Cycle(4), Family::Petersen] {
            let g = generate(&f, None).unwrap();
            assert_eq!(dismantle(&g), Dismantling::NotDismantlable { remaining: (0..g.order()).collect() });
        }
    }

    #[test]
    fn trees_and_chordal_examples() {
        assert!(dismantle(&generate(&Family::Path(5), None).unwrap()).is_dismantlable());
        assert!(dismantle(&Graph::empty(1)).is_dismantlable());
        assert!(!dismantle(&Graph::empty(2)).is_dismantlable());
        // C5 with a pendant path reduces to C5
        let g = Graph::new(7, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (4, 5), (5, 6)]).unwrap();
        assert_eq!(dismantle(&g), Dismantling::NotDismantlable { remaining: vec![0, 1, 2, 3, 4] });
    }
}
