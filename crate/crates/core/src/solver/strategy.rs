//! Positional strategies read off a solved game.

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::{MoveGen, SolveError, SolveResult, Turn};
use crate::graph::{parse_graph6, write_graph6, Graph, GraphError};

/// Winning cop strategy as a table from `(sorted cops, robber)` to the
/// sorted cop tuple after the move.
#[derive(Clone, Debug, PartialEq)]
pub struct CopStrategy {
    pub k: usize,
    pub graph: Graph,
    pub placement: Vec<usize>,
    pub moves: BTreeMap<(Vec<usize>, usize), Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CopMove {
    pub cops: Vec<usize>,
    pub robber: usize,
    pub to: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct StrategyFile {
    k: usize,
    graph6: String,
    placement: Vec<usize>,
    moves: Vec<CopMove>,
}

impl CopStrategy {
    /// Target tuple for labelled cop positions; the result is aligned with
    /// `cops` so that every cop stays or steps to a neighbour.
    pub fn respond(&self, cops: &[usize], robber: usize) -> Option<Vec<usize>> {
        let mut key = cops.to_vec();
        key.sort_unstable();
        let to = self.moves.get(&(key, robber))?;
        assign_moves(&self.graph, cops, to)
    }

    pub fn to_json(&self) -> Result<String, GraphError> {
        let file = StrategyFile {
            k: self.k,
            graph6: write_graph6(&self.graph)?,
            placement: self.placement.clone(),
            moves: self
                .moves
                .iter()
                .map(|((cops, robber), to)| CopMove { cops: cops.clone(), robber: *robber, to: to.clone() })
                .collect(),
        };
        Ok(serde_json::to_string(&file).expect("strategy serialises"))
    }

    pub fn from_json(text: &str) -> Result<Self, String> {
        let file: StrategyFile = serde_json::from_str(text).map_err(|e| e.to_string())?;
        let graph = parse_graph6(&file.graph6).map_err(|e| e.to_string())?;
        let n = graph.order();
        let ok = |t: &[usize]| t.len() == file.k && t.iter().all(|&v| v < n);
        if !ok(&file.placement) {
            return Err("placement does not match k or graph order".into());
        }
        let mut moves = BTreeMap::new();
        for m in file.moves {
            if !ok(&m.cops) || !ok(&m.to) || m.robber >= n {
                return Err(format!("move {m:?} does not fit the graph"));
            }
            let mut cops = m.cops;
            cops.sort_unstable();
            let mut to = m.to;
            to.sort_unstable();
            moves.insert((cops, m.robber), to);
        }
        Ok(CopStrategy { k: file.k, graph, placement: file.placement, moves })
    }
}

/// Orders the multiset `to` so that `to[i]` is `from[i]` or adjacent to it.
pub fn assign_moves(g: &Graph, from: &[usize], to: &[usize]) -> Option<Vec<usize>> {
    fn go(g: &Graph, from: &[usize], to: &[usize], used: &mut [bool], out: &mut Vec<usize>) -> bool {
        let i = out.len();
        if i == from.len() {
            return true;
        }
        for j in 0..to.len() {
            if used[j] || (j > 0 && to[j] == to[j - 1] && !used[j - 1]) {
                continue;
            }
            if to[j] == from[i] || g.has_edge(from[i], to[j]) {
                used[j] = true;
                out.push(to[j]);
                if go(g, from, to, used, out) {
                    return true;
                }
                out.pop();
                used[j] = false;
            }
        }
        false
    }
    if from.len() != to.len() {
        return None;
    }
    let mut sorted = to.to_vec();
    sorted.sort_unstable();
    let mut out = Vec::with_capacity(from.len());
    go(g, from, &sorted, &mut vec![false; sorted.len()], &mut out).then_some(out)
}

/// Maximally evasive robber: prefers robber-win states, otherwise the
/// largest rank, breaking ties by smallest vertex.
#[derive(Clone, Copy, Debug)]
pub struct RobberStrategy<'a> {
    result: &'a SolveResult,
}

impl<'a> RobberStrategy<'a> {
    pub fn new(result: &'a SolveResult) -> Self {
        RobberStrategy { result }
    }

    fn value(&self, cops: &[usize], r: usize) -> u64 {
        self.result.rank(cops, r, Turn::Cops).map_or(u64::MAX, u64::from)
    }

    fn best<I: Iterator<Item = usize>>(&self, cops: &[usize], options: I) -> usize {
        let mut best = None;
        for r in options {
            let v = self.value(cops, r);
            if best.is_none_or(|(bv, br)| v > bv || (v == bv && r < br)) {
                best = Some((v, r));
            }
        }
        best.expect("at least one option").1
    }

    pub fn place(&self, cops: &[usize]) -> usize {
        self.best(cops, 0..self.result.graph().order())
    }

    pub fn next(&self, cops: &[usize], robber: usize) -> usize {
        let g = self.result.graph();
        self.best(cops, std::iter::once(robber).chain(g.neighbors(robber).iter().copied()))
    }
}

/// Cop strategy over all states reachable from the best placement (ties to
/// the lexicographically smallest successor) and the evasive robber.
pub fn extract_strategies(result: &SolveResult) -> Result<(CopStrategy, RobberStrategy<'_>), SolveError> {
    let placement = result.best_placement.clone().ok_or(SolveError::NoStrategy { k: result.k() })?;
    let g = result.graph();
    let index = result.index();
    let mut gen = MoveGen::new(g, index);
    let mut moves = BTreeMap::new();
    let mut queue: VecDeque<(Vec<usize>, usize)> =
        (0..g.order()).filter(|r| !placement.contains(r)).map(|r| (placement.clone(), r)).collect();
    while let Some((cops, r)) = queue.pop_front() {
        if moves.contains_key(&(cops.clone(), r)) {
            continue;
        }
        let rank = result.rank_sorted(&cops, r, Turn::Cops).expect("reachable states are cop wins");
        let t = index.rank(&cops);
        let to: Vec<usize> = gen
            .successors(t)
            .iter()
            .map(|&s| index.tuple(s).iter().map(|&c| c as usize).collect::<Vec<_>>())
            .filter(|c| result.rank_sorted(c, r, Turn::Robber) == Some(rank - 1))
            .min()
            .expect("a rank-decreasing move exists");
        if !to.contains(&r) {
            for r2 in std::iter::once(r).chain(g.neighbors(r).iter().copied()) {
                if !to.contains(&r2) {
                    queue.push_back((to.clone(), r2));
                }
            }
        }
        moves.insert((cops, r), to);
    }
    let strategy = CopStrategy { k: result.k(), graph: g.clone(), placement, moves };
    Ok((strategy, RobberStrategy::new(result)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};
    use crate::solver::solve_k_copwin;

    #[test]
    fn k2_strategy() {
        let k2 = generate(&Family::Complete(2), None).unwrap();
        let res = solve_k_copwin(&k2, 1).unwrap();
        let (cops, robber) = extract_strategies(&res).unwrap();
        assert_eq!(cops.placement, vec![0]);
        assert_eq!(robber.place(&[0]), 1);
        assert_eq!(res.rank(&[0], 1, Turn::Cops), Some(1));
        assert_eq!(cops.moves.get(&(vec![0], 1)), Some(&vec![1]));
        assert_eq!(cops.moves.len(), 1);
    }

    #[test]
    fn no_strategy_on_c4_with_one_cop() {
        let c4 = generate(&Family::Cycle(4), None).unwrap();
        let res = solve_k_copwin(&c4, 1).unwrap();
        assert_eq!(extract_strategies(&res).unwrap_err(), SolveError::NoStrategy { k: 1 });
    }

    #[test]
    fn moves_decrease_rank_by_one() {
        let g = generate(&Family::Petersen, None).unwrap();
        let res = solve_k_copwin(&g, 3).unwrap();
        let (cops, _) = extract_strategies(&res).unwrap();
        for ((from, r), to) in &cops.moves {
            let a = res.rank(from, *r, Turn::Cops).unwrap();
            let b = res.rank(to, *r, Turn::Robber).unwrap();
            assert_eq!(a, b + 1);
            assert!(assign_moves(&g, from, to).is_some());
        }
    }

    #[test]
    fn json_round_trip() {
        let c4 = generate(&Family::Cycle(4), None).unwrap();
        let (cops, _) = extract_strategies(&solve_k_copwin(&c4, 2).unwrap()).unwrap();
        let back = CopStrategy::from_json(&cops.to_json().unwrap()).unwrap();
        assert_eq!(back, cops);
    }

    #[test]
    fn assignment_respects_adjacency() {
        let p = generate(&Family::Path(4), None).unwrap();
        assert_eq!(assign_moves(&p, &[3, 0], &[1, 2]), Some(vec![2, 1]));
        assert_eq!(assign_moves(&p, &[0, 0], &[0, 1]), Some(vec![0, 1]));
        assert_eq!(assign_moves(&p, &[0, 3], &[2, 3]), None);
    }
}
