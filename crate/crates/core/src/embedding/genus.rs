//! Exhaustive minimum Euler genus over all embedding schemes of a graph.
//!
//! Rotations range over all cyclic orders at every vertex (first incident
//! edge fixed). Signs are fixed to `+1` on a BFS spanning tree, which
//! picks one representative per switching class, and range freely over
//! the remaining `E - V + 1` edges.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::faces::Tracer;
use super::{EmbeddingError, EmbeddingScheme};
use crate::graph::Graph;

pub const DEFAULT_GENUS_BUDGET: u128 = 200_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GenusMode {
    Orientable,
    Nonorientable,
    Any,
}

impl std::str::FromStr for GenusMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "orientable" => Ok(GenusMode::Orientable),
            "nonorientable" => Ok(GenusMode::Nonorientable),
            "any" => Ok(GenusMode::Any),
            other => Err(format!("unknown genus mode `{other}`")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenusSearch {
    pub mode: GenusMode,
    pub euler_genus: usize,
    /// `euler_genus / 2` when the witness is orientable.
    pub orientable_genus: Option<usize>,
    pub schemes_examined: u128,
    pub witness: EmbeddingScheme,
}

fn cyclic_orders(items: &[usize]) -> Vec<Vec<usize>> {
    fn permute(rest: &mut Vec<usize>, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            prefix.push(x);
            permute(rest, prefix, out);
            prefix.pop();
            rest.insert(i, x);
        }
    }
    let Some((&first, tail)) = items.split_first() else { return vec![Vec::new()] };
    let mut out = Vec::new();
    permute(&mut tail.to_vec(), &mut vec![first], &mut out);
    out
}

pub fn min_euler_genus(g: &Graph, mode: GenusMode, budget: u128) -> Result<GenusSearch, EmbeddingError> {
    if !g.is_connected() || g.order() == 0 {
        return Err(EmbeddingError::Disconnected);
    }
    let base = EmbeddingScheme::from_graph(g);
    let (_, tree) = base.tree_switching();
    let free: Vec<usize> = (0..base.edges.len()).filter(|&e| !tree[e]).collect();
    if mode == GenusMode::Nonorientable && free.is_empty() {
        return Err(EmbeddingError::NoNonOrientable);
    }
    if free.len() >= 64 {
        return Err(EmbeddingError::Capacity { space: u128::MAX, max: budget });
    }
    let sign_masks: Vec<u64> = match mode {
        GenusMode::Orientable => vec![0],
        GenusMode::Nonorientable => (1..1u64 << free.len()).collect(),
        GenusMode::Any => (0..1u64 << free.len()).collect(),
    };
    let orders: Vec<Vec<Vec<usize>>> = base.rotation.iter().map(|r| cyclic_orders(r)).collect();
    let radices: Vec<u128> = orders.iter().map(|o| o.len() as u128).collect();
    let rotations = radices.iter().try_fold(1u128, |acc, &r| acc.checked_mul(r));
    let space = rotations.and_then(|r| r.checked_mul(sign_masks.len() as u128));
    let (rotations, space) = match (rotations, space) {
        (Some(r), Some(s)) if s <= budget => (r, s),
        (_, s) => return Err(EmbeddingError::Capacity { space: s.unwrap_or(u128::MAX), max: budget }),
    };

    let decode = |mut idx: u128| -> Vec<Vec<usize>> {
        orders
            .iter()
            .zip(&radices)
            .map(|(o, &r)| {
                let d = (idx % r) as usize;
                idx /= r;
                o[d].clone()
            })
            .collect()
    };
    let apply_mask = |signature: &mut [i8], mask: u64| {
        for (bit, &e) in free.iter().enumerate() {
            signature[e] = if mask >> bit & 1 == 1 { -1 } else { 1 };
        }
    };

    let best = (0..rotations as u64)
        .into_par_iter()
        .map_init(Vec::new, |visited, idx| {
            let mut s = EmbeddingScheme { rotation: decode(idx as u128), ..base.clone() };
            let mut best: Option<(usize, u64, u64)> = None;
            for &mask in &sign_masks {
                apply_mask(&mut s.signature, mask);
                let faces = if s.edges.is_empty() { 1 } else { Tracer::new(&s).orbit_count(visited) / 2 };
                let eg = (2 + s.edges.len() as i64 - s.n as i64 - faces as i64) as usize;
                if best.is_none_or(|b| (eg, idx, mask) < b) {
                    best = Some((eg, idx, mask));
                }
            }
            best
        })
        .reduce(
            || None,
            |a, b| match (a, b) {
                (Some(x), Some(y)) => Some(x.min(y)),
                (x, None) => x,
                (None, y) => y,
            },
        )
        .expect("nonempty search space");

    let (eg, idx, mask) = best;
    let mut witness = EmbeddingScheme { rotation: decode(idx as u128), ..base.clone() };
    apply_mask(&mut witness.signature, mask);
    let orientable = mask == 0;
    Ok(GenusSearch {
        mode,
        euler_genus: eg,
        orientable_genus: orientable.then_some(eg / 2),
        schemes_examined: space,
        witness,
    })
}
