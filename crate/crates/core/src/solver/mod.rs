//! Retrograde analysis of the k-cops-and-robber game.
//!
//! States are `(cop multiset, robber vertex, side to move)`. Ranks count
//! plies to capture under optimal play: capture states have rank 0, a cop
//! state takes the minimum successor rank plus one, a robber state the
//! maximum. States never resolved are robber wins.

use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;

mod dismantle;
mod index;
mod strategy;

pub use dismantle::{dismantle, Dismantling};
pub use index::{multiset_count, MultisetIndex};
pub use strategy::{assign_moves, extract_strategies, CopMove, CopStrategy, RobberStrategy};

pub const DEFAULT_MAX_STATES: u64 = 200_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("the game needs at least one cop")]
    ZeroCops,
    #[error("the game needs a nonempty graph")]
    EmptyGraph,
    #[error("state space of {states} states exceeds the bound of {max}")]
    Capacity { states: u64, max: u64 },
    #[error("{k} cops have no winning strategy on this graph")]
    NoStrategy { k: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Turn {
    Cops,
    Robber,
}

#[derive(Clone, Copy, Debug)]
pub struct SolverConfig {
    pub max_states: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig { max_states: DEFAULT_MAX_STATES }
    }
}

const UNRESOLVED: u32 = u32::MAX;

#[derive(Clone, Debug)]
pub struct SolveResult {
    graph: Graph,
    k: usize,
    index: MultisetIndex,
    ranks: Vec<u32>,
    pub copwin: bool,
    pub best_placement: Option<Vec<usize>>,
}

impl SolveResult {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn states(&self) -> usize {
        self.ranks.len()
    }

    pub fn index(&self) -> &MultisetIndex {
        &self.index
    }

    #[inline]
    fn slot(&self, tuple_rank: usize, robber: usize, turn: Turn) -> usize {
        (tuple_rank * self.graph.order() + robber) * 2 + turn as usize
    }

    /// Rank of a state, `None` for a robber win. `cops` may be in any order.
    pub fn rank(&self, cops: &[usize], robber: usize, turn: Turn) -> Option<u32> {
        let mut sorted = cops.to_vec();
        sorted.sort_unstable();
        self.rank_sorted(&sorted, robber, turn)
    }

    pub(crate) fn rank_sorted(&self, sorted: &[usize], robber: usize, turn: Turn) -> Option<u32> {
        let r = self.ranks[self.slot(self.index.rank(sorted), robber, turn)];
        (r != UNRESOLVED).then_some(r)
    }

    /// Worst case over robber placements against `placement`: `None` if the
    /// robber has a winning reply, else the largest rank it can force.
    pub fn placement_value(&self, placement: &[usize]) -> Option<u32> {
        let mut sorted = placement.to_vec();
        sorted.sort_unstable();
        let mut worst = 0;
        for r in 0..self.graph.order() {
            worst = worst.max(self.rank_sorted(&sorted, r, Turn::Cops)?);
        }
        Some(worst)
    }

    /// Count of cop-win states per rank, plus robber-win states under `None`.
    pub fn ranks_histogram(&self) -> BTreeMap<Option<u32>, u64> {
        let mut hist = BTreeMap::new();
        for &r in &self.ranks {
            *hist.entry((r != UNRESOLVED).then_some(r)).or_insert(0) += 1;
        }
        hist
    }

    /// Checks the rank recurrences at every state; returns the first violation.
    pub fn check_rank_recurrences(&self) -> Result<(), String> {
        let n = self.graph.order();
        let mut moves = MoveGen::new(&self.graph, &self.index);
        for t in 0..self.index.len() {
            let cops: Vec<usize> = self.index.tuple(t).iter().map(|&c| c as usize).collect();
            for r in 0..n {
                let capture = cops.contains(&r);
                for turn in [Turn::Cops, Turn::Robber] {
                    let here = self.ranks[self.slot(t, r, turn)];
                    if capture {
                        if here != 0 {
                            return Err(format!("capture state {cops:?},{r} has rank {here}"));
                        }
                        continue;
                    }
                    if here == 0 {
                        return Err(format!("non-capture state {cops:?},{r},{turn:?} has rank 0"));
                    }
                    let succ: Vec<u32> = match turn {
                        Turn::Cops => {
                            moves.successors(t).iter().map(|&s| self.ranks[self.slot(s, r, Turn::Robber)]).collect()
                        }
                        Turn::Robber => std::iter::once(r)
                            .chain(self.graph.neighbors(r).iter().copied())
                            .map(|r2| self.ranks[self.slot(t, r2, Turn::Cops)])
                            .collect(),
                    };
                    let expect = match turn {
                        Turn::Cops => succ.iter().copied().min().map(|m| if m == UNRESOLVED { m } else { m + 1 }),
                        Turn::Robber => succ.iter().copied().max().map(|m| if m == UNRESOLVED { m } else { m + 1 }),
                    };
                    if expect != Some(here) {
                        return Err(format!("state {cops:?},{r},{turn:?}: rank {here}, recurrence gives {expect:?}"));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Cop successor generation: every cop independently stays or steps to a
/// neighbour; results are canonicalised and deduplicated.
pub(crate) struct MoveGen<'a> {
    graph: &'a Graph,
    index: &'a MultisetIndex,
    stamp: Vec<u32>,
    epoch: u32,
    out: Vec<usize>,
    buf: Vec<usize>,
    sorted: Vec<usize>,
}

impl<'a> MoveGen<'a> {
    pub(crate) fn new(graph: &'a Graph, index: &'a MultisetIndex) -> Self {
        MoveGen {
            graph,
            index,
            stamp: vec![0; index.len()],
            epoch: 0,
            out: Vec::new(),
            buf: vec![0; index.k()],
            sorted: vec![0; index.k()],
        }
    }

    /// Distinct tuple ranks reachable in one cop move from tuple `t`.
    pub(crate) fn successors(&mut self, t: usize) -> &[usize] {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.fill(0);
            self.epoch = 1;
        }
        self.out.clear();
        let k = self.index.k();
        let from: Vec<usize> = self.index.tuple(t).iter().map(|&c| c as usize).collect();
        // odometer over closed neighbourhoods; choice 0 = stay
        let mut choice = vec![0usize; k];
        loop {
            for i in 0..k {
                self.buf[i] = if choice[i] == 0 { from[i] } else { self.graph.neighbors(from[i])[choice[i] - 1] };
            }
            self.sorted.copy_from_slice(&self.buf);
            self.sorted.sort_unstable();
            let r = self.index.rank(&self.sorted);
            if self.stamp[r] != self.epoch {
                self.stamp[r] = self.epoch;
                self.out.push(r);
            }
            let mut i = 0;
            loop {
                if i == k {
                    return &self.out;
                }
                choice[i] += 1;
                if choice[i] <= self.graph.degree(from[i]) {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
        }
    }
}

/// Decides whether `k` cops win on `g` and classifies every state.
pub fn solve_k_copwin(g: &Graph, k: usize) -> Result<SolveResult, SolveError> {
    solve_with(g, k, &SolverConfig::default())
}

pub fn solve_with(g: &Graph, k: usize, config: &SolverConfig) -> Result<SolveResult, SolveError> {
    if k == 0 {
        return Err(SolveError::ZeroCops);
    }
    let n = g.order();
    if n == 0 {
        return Err(SolveError::EmptyGraph);
    }
    let states = multiset_count(n, k).and_then(|c| c.checked_mul(2 * n as u64)).unwrap_or(u64::MAX);
    if states > config.max_states || states > u32::MAX as u64 {
        return Err(SolveError::Capacity { states, max: config.max_states.min(u32::MAX as u64) });
    }

    let index = MultisetIndex::new(n, k);
    let slot = |t: usize, r: usize, turn: Turn| (t * n + r) * 2 + turn as usize;
    let mut ranks = vec![UNRESOLVED; states as usize];
    // remaining unresolved successors of each robber-to-move state
    let mut pending = vec![0u32; index.len() * n];
    let mut queue: VecDeque<u32> = VecDeque::new();

    for t in 0..index.len() {
        let cops = index.tuple(t);
        for r in 0..n {
            if cops.contains(&(r as u32)) {
                for turn in [Turn::Cops, Turn::Robber] {
                    ranks[slot(t, r, turn)] = 0;
                    queue.push_back(slot(t, r, turn) as u32);
                }
            } else {
                pending[t * n + r] = g.degree(r) as u32 + 1;
            }
        }
    }

    let mut moves = MoveGen::new(g, &index);
    while let Some(s) = queue.pop_front() {
        let s = s as usize;
        let depth = ranks[s];
        let turn = s & 1;
        let t = s / 2 / n;
        let r = s / 2 % n;
        if turn == Turn::Cops as usize {
            // predecessors: robber-to-move states (t, r0) with r0 in N[r]
            for r0 in std::iter::once(r).chain(g.neighbors(r).iter().copied()) {
                let p = slot(t, r0, Turn::Robber);
                if ranks[p] != UNRESOLVED {
                    continue;
                }
                let c = &mut pending[t * n + r0];
                *c -= 1;
                if *c == 0 {
                    ranks[p] = depth + 1;
                    queue.push_back(p as u32);
                }
            }
        } else {
            // predecessors: cop-to-move states (t0, r); cop moves are symmetric
            for &t0 in moves.successors(t) {
                let p = slot(t0, r, Turn::Cops);
                if ranks[p] == UNRESOLVED {
                    ranks[p] = depth + 1;
                    queue.push_back(p as u32);
                }
            }
        }
    }

    let mut result = SolveResult { graph: g.clone(), k, index, ranks, copwin: false, best_placement: None };
    let mut best: Option<(u32, Vec<usize>)> = None;
    for t in 0..result.index.len() {
        let placement: Vec<usize> = result.index.tuple(t).iter().map(|&c| c as usize).collect();
        if let Some(v) = result.placement_value(&placement) {
            let better = match &best {
                None => true,
                Some((bv, bp)) => (v, &placement) < (*bv, bp),
            };
            if better {
                best = Some((v, placement));
            }
        }
    }
    if let Some((_, p)) = best {
        result.copwin = true;
        result.best_placement = Some(p);
    }
    Ok(result)
}

/// Smallest `k` such that `k` cops win, with the solve at that `k`.
/// `k = 1` is decided by dismantling; larger values by ascending solves.
pub fn cop_number(g: &Graph) -> Result<(usize, SolveResult), SolveError> {
    cop_number_with(g, &SolverConfig::default())
}

pub fn cop_number_with(g: &Graph, config: &SolverConfig) -> Result<(usize, SolveResult), SolveError> {
    if g.order() == 0 {
        return Err(SolveError::EmptyGraph);
    }
    if matches!(dismantle(g), Dismantling::Order { .. }) {
        let res = solve_with(g, 1, config)?;
        debug_assert!(res.copwin);
        return Ok((1, res));
    }
    // a dominating set is always a winning placement
    let upper = g.greedy_dominating_set().len();
    for k in 2..upper {
        let res = solve_with(g, k, config)?;
        if res.copwin {
            return Ok((k, res));
        }
    }
    let k = upper.max(2);
    let res = solve_with(g, k, config)?;
    debug_assert!(res.copwin);
    Ok((k, res))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};

    fn fam(f: Family) -> Graph {
        generate(&f, None).unwrap()
    }

    #[test]
    fn complete_graphs_need_one_cop() {
        for n in 1..7 {
            let res = solve_k_copwin(&fam(Family::Complete(n)), 1).unwrap();
            assert!(res.copwin);
            for c in 0..n {
                for r in 0..n {
                    assert!(res.rank(&[c], r, Turn::Cops).unwrap() <= 1);
                }
            }
        }
    }

    #[test]
    fn four_cycle() {
        let c4 = fam(Family::Cycle(4));
        let one = solve_k_copwin(&c4, 1).unwrap();
        assert!(!one.copwin);
        assert_eq!(one.best_placement, None);
        assert_eq!(one.rank(&[0], 2, Turn::Cops), None);
        assert!(solve_k_copwin(&c4, 2).unwrap().copwin);
        assert_eq!(cop_number(&c4).unwrap().0, 2);
    }

    #[test]
    fn single_vertex() {
        let k1 = Graph::empty(1);
        let (c, res) = cop_number(&k1).unwrap();
        assert_eq!(c, 1);
        assert_eq!(res.best_placement, Some(vec![0]));
        assert_eq!(res.placement_value(&[0]), Some(0));
    }

    #[test]
    fn errors() {
        assert_eq!(solve_k_copwin(&Graph::empty(3), 0).unwrap_err(), SolveError::ZeroCops);
        assert_eq!(solve_k_copwin(&Graph::empty(0), 1).unwrap_err(), SolveError::EmptyGraph);
        let cfg = SolverConfig { max_states: 100 };
        assert_eq!(
            solve_with(&fam(Family::Petersen), 2, &cfg).unwrap_err(),
            SolveError::Capacity { states: 55 * 20, max: 100 }
        );
    }

    #[test]
    fn rank_recurrences_hold() {
        for g in [fam(Family::Petersen), fam(Family::Cycle(5)), fam(Family::Grid { rows: 2, cols: 4 })] {
            for k in 1..=2 {
                solve_k_copwin(&g, k).unwrap().check_rank_recurrences().unwrap();
            }
        }
    }

    #[test]
    fn simultaneous_moves_matter() {
        // two cops on a path: placement matters, stays are legal
        let p = fam(Family::Path(5));
        let res = solve_k_copwin(&p, 2).unwrap();
        assert!(res.copwin);
        assert_eq!(res.placement_value(&[1, 3]), Some(1));
    }

    #[test]
    fn disconnected_graphs() {
        let g = fam(Family::Cycle(4)).disjoint_union(&Graph::empty(1));
        assert_eq!(cop_number(&g).unwrap().0, 3);
        let two_points = Graph::empty(2);
        assert_eq!(cop_number(&two_points).unwrap().0, 2);
    }
}
