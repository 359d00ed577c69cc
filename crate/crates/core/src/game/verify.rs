//! Exhaustive check that a cop player wins against every robber.
//!
//! Explores the graph of cop-to-move positions `(cops, robber, memory)`
//! reachable from any robber placement and any robber moves. The player
//! wins iff this graph is finite and acyclic and every leaf is a capture.

use std::collections::HashMap;

use super::{check_cop_move, check_placement, CopPlayer};
use crate::graph::Graph;

pub const DEFAULT_MAX_NODES: usize = 5_000_000;

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct WinningAnalysis {
    pub winning: bool,
    /// Cop-to-move positions explored.
    pub nodes: usize,
    /// Most cop moves any robber can force before capture (when winning).
    pub longest_capture: Option<usize>,
    pub failure: Option<String>,
}

type Key = (Vec<usize>, usize, Vec<usize>);

struct Node<P> {
    player: P,
    cops: Vec<usize>,
    robber: usize,
}

pub fn verify_winning<P: CopPlayer + Clone>(g: &Graph, cops: &P, k: usize) -> bool {
    analyze_winning(g, cops, k, DEFAULT_MAX_NODES).winning
}

pub fn analyze_winning<P: CopPlayer + Clone>(g: &Graph, cops: &P, k: usize, max_nodes: usize) -> WinningAnalysis {
    let fail = |nodes: usize, why: String| WinningAnalysis {
        winning: false,
        nodes,
        longest_capture: None,
        failure: Some(why),
    };
    if cops.cop_count() != k {
        return fail(0, format!("player controls {} cops, expected {k}", cops.cop_count()));
    }
    let mut root = cops.clone();
    let placement = match root.place() {
        Ok(p) => p,
        Err(e) => return fail(0, e.to_string()),
    };
    if let Err(e) = check_placement(g, k, &placement) {
        return fail(0, e.to_string());
    }

    let mut ids: HashMap<Key, usize> = HashMap::new();
    let mut nodes: Vec<Node<P>> = Vec::new();
    // 0 = unvisited, 1 = on stack, 2 = done
    let mut colour: Vec<u8> = Vec::new();
    let mut longest: Vec<usize> = Vec::new();

    let intern = |player: P,
                  cops: Vec<usize>,
                  robber: usize,
                  ids: &mut HashMap<Key, usize>,
                  nodes: &mut Vec<Node<P>>,
                  colour: &mut Vec<u8>,
                  longest: &mut Vec<usize>| {
        let key = (cops.clone(), robber, player.memory());
        *ids.entry(key).or_insert_with(|| {
            nodes.push(Node { player, cops, robber });
            colour.push(0);
            longest.push(0);
            nodes.len() - 1
        })
    };

    let mut roots = Vec::new();
    for r in 0..g.order() {
        if !placement.contains(&r) {
            roots.push(intern(root.clone(), placement.clone(), r, &mut ids, &mut nodes, &mut colour, &mut longest));
        }
    }

    let mut overall = 0;
    for &start in &roots {
        if colour[start] == 2 {
            overall = overall.max(longest[start]);
            continue;
        }
        // stack of (node, children, next child)
        let mut stack: Vec<(usize, Vec<usize>, usize)> = Vec::new();
        colour[start] = 1;
        stack.push((start, Vec::new(), usize::MAX));
        while let Some(top) = stack.last_mut() {
            let id = top.0;
            if top.2 == usize::MAX {
                // expand: one cop move, then every robber reply
                let mut player = nodes[id].player.clone();
                let (from, r) = (nodes[id].cops.clone(), nodes[id].robber);
                let to = match player.respond(&from, r) {
                    Ok(t) => t,
                    Err(e) => return fail(nodes.len(), e.to_string()),
                };
                if let Err(e) = check_cop_move(g, k, &from, &to) {
                    return fail(nodes.len(), e.to_string());
                }
                let mut children = Vec::new();
                if !to.contains(&r) {
                    for r2 in std::iter::once(r).chain(g.neighbors(r).iter().copied()) {
                        if !to.contains(&r2) {
                            let c =
                                intern(player.clone(), to.clone(), r2, &mut ids, &mut nodes, &mut colour, &mut longest);
                            children.push(c);
                        }
                    }
                }
                if nodes.len() > max_nodes {
                    return fail(nodes.len(), format!("explored more than {max_nodes} positions"));
                }
                let top = stack.last_mut().unwrap();
                top.1 = children;
                top.2 = 0;
                continue;
            }
            if top.2 < top.1.len() {
                let child = top.1[top.2];
                top.2 += 1;
                match colour[child] {
                    0 => {
                        colour[child] = 1;
                        stack.push((child, Vec::new(), usize::MAX));
                    }
                    1 => {
                        let n = &nodes[child];
                        return fail(
                            nodes.len(),
                            format!("robber can cycle forever through cops {:?}, robber {}", n.cops, n.robber),
                        );
                    }
                    _ => {}
                }
                continue;
            }
            let best = top.1.iter().map(|&c| longest[c]).max().unwrap_or(0);
            longest[id] = best + 1;
            colour[id] = 2;
            stack.pop();
        }
        overall = overall.max(longest[start]);
    }
    WinningAnalysis { winning: true, nodes: nodes.len(), longest_capture: Some(overall), failure: None }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::StationaryCops;
    use crate::graph::{generate, Family};
    use crate::solver::{extract_strategies, solve_k_copwin};

    #[test]
    fn extracted_strategies_win() {
        for (f, k) in [(Family::Cycle(4), 2), (Family::Petersen, 3), (Family::Path(6), 1)] {
            let g = generate(&f, None).unwrap();
            let res = solve_k_copwin(&g, k).unwrap();
            let (cops, _) = extract_strategies(&res).unwrap();
            let a = analyze_winning(&g, &&cops, k, DEFAULT_MAX_NODES);
            assert!(a.winning, "{f:?}: {:?}", a.failure);
            let bound = res.placement_value(&cops.placement).unwrap() as usize;
            assert!(a.longest_capture.unwrap() <= bound.div_ceil(2));
        }
    }

    #[test]
    fn lazy_cop_loses() {
        let g = generate(&Family::Cycle(4), None).unwrap();
        assert!(!verify_winning(&g, &StationaryCops(vec![0]), 1));
        assert!(!verify_winning(&g, &StationaryCops(vec![0]), 2));
    }

    #[test]
    fn stationary_dominating_cop_wins() {
        let g = generate(&Family::Complete(4), None).unwrap();
        assert!(!verify_winning(&g, &StationaryCops(vec![0]), 1));
        let all = StationaryCops((0..4).collect());
        let a = analyze_winning(&g, &all, 4, 10);
        assert!(a.winning);
        assert_eq!(a.longest_capture, Some(0));
    }
}
