//! Strategy transfer along a weak cover: the cops on the base graph shadow
//! a winning game on the cover graph against an imaginary robber that
//! follows the real robber's moves through the fibres.

use super::{CopPlayer, GameError};
use crate::covering::{check_weak_cover, CoveringMap};
use crate::solver::CopStrategy;

#[derive(Clone, Debug)]
pub struct SimulatedCopStrategy<'a> {
    cover: &'a CoveringMap,
    strategy: &'a CopStrategy,
    cover_cops: Vec<usize>,
    imaginary: Option<usize>,
}

/// Wraps a cover-side strategy as a base-side player. The map must pass
/// the weak-cover check and the strategy must be for its source graph.
pub fn transfer_strategy<'a>(
    cover: &'a CoveringMap,
    strategy: &'a CopStrategy,
) -> Result<SimulatedCopStrategy<'a>, GameError> {
    if strategy.graph != cover.source {
        return Err(GameError::GraphMismatch);
    }
    check_weak_cover(&cover.p, &cover.source, &cover.target).map_err(|v| GameError::UncertifiedCover(v.to_string()))?;
    Ok(SimulatedCopStrategy { cover, strategy, cover_cops: Vec::new(), imaginary: None })
}

impl SimulatedCopStrategy<'_> {
    pub fn cover_cops(&self) -> &[usize] {
        &self.cover_cops
    }

    pub fn imaginary_robber(&self) -> Option<usize> {
        self.imaginary
    }

    fn project(&self, vs: &[usize]) -> Vec<usize> {
        vs.iter().map(|&v| self.cover.p[v]).collect()
    }

    // Follow the base robber to `r`: stay if already over `r`, otherwise the
    // smallest neighbour of the imaginary robber lying over `r`.
    fn lift_robber(&mut self, r: usize) -> Result<usize, GameError> {
        let p = &self.cover.p;
        let s = match self.imaginary {
            None => *self.cover.fibre(r).as_slice().first().ok_or(GameError::InvalidCover {
                at: usize::MAX,
                from: r,
                to: r,
            })?,
            Some(s) if p[s] == r => s,
            Some(s) => {
                self.cover.source.neighbors(s).iter().copied().find(|&w| p[w] == r).ok_or(GameError::InvalidCover {
                    at: s,
                    from: p[s],
                    to: r,
                })?
            }
        };
        self.imaginary = Some(s);
        Ok(s)
    }
}

impl CopPlayer for SimulatedCopStrategy<'_> {
    fn cop_count(&self) -> usize {
        self.strategy.k
    }

    fn place(&mut self) -> Result<Vec<usize>, GameError> {
        self.cover_cops = self.strategy.placement.clone();
        self.imaginary = None;
        Ok(self.project(&self.cover_cops))
    }

    fn respond(&mut self, cops: &[usize], robber: usize) -> Result<Vec<usize>, GameError> {
        let s = self.lift_robber(robber)?;
        if self.project(&self.cover_cops) != cops {
            return Err(GameError::ProjectionBroken(format!(
                "cover cops {:?} project to {:?}, base cops are {:?}",
                self.cover_cops,
                self.project(&self.cover_cops),
                cops
            )));
        }
        let next = self
            .strategy
            .respond(&self.cover_cops, s)
            .ok_or_else(|| GameError::StrategyHole { cops: self.cover_cops.clone(), robber: s })?;
        self.cover_cops = next;
        Ok(self.project(&self.cover_cops))
    }

    fn memory(&self) -> Vec<usize> {
        let mut m = self.cover_cops.clone();
        m.push(self.imaginary.unwrap_or(usize::MAX));
        m
    }
}
