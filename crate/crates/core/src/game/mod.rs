//! Playing out games between explicit strategies.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{write_graph6, Graph};
use crate::solver::{CopStrategy, RobberStrategy};

mod transfer;
mod verify;

pub use transfer::{transfer_strategy, SimulatedCopStrategy};
pub use verify::{analyze_winning, verify_winning, WinningAnalysis, DEFAULT_MAX_NODES};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GameError {
    #[error("strategy has no move at cops {cops:?}, robber {robber}")]
    StrategyHole { cops: Vec<usize>, robber: usize },
    #[error("illegal cop move {from:?} -> {to:?}")]
    IllegalCopMove { from: Vec<usize>, to: Vec<usize> },
    #[error("illegal robber move {from} -> {to}")]
    IllegalRobberMove { from: usize, to: usize },
    #[error("expected {expected} cops, strategy produced {got}")]
    WrongCopCount { expected: usize, got: usize },
    #[error("no lift of robber move {from} -> {to} from cover vertex {at}")]
    InvalidCover { at: usize, from: usize, to: usize },
    #[error("covering map rejected: {0}")]
    UncertifiedCover(String),
    #[error("strategy is for a different graph than the cover source")]
    GraphMismatch,
    #[error("projection invariant broken: {0}")]
    ProjectionBroken(String),
    #[error("move limit must be at least 1")]
    ZeroLimit,
}

/// The cop side of a game. Positions are labelled: entry `i` of the
/// returned tuple is where cop `i` goes.
pub trait CopPlayer {
    fn cop_count(&self) -> usize;
    fn place(&mut self) -> Result<Vec<usize>, GameError>;
    fn respond(&mut self, cops: &[usize], robber: usize) -> Result<Vec<usize>, GameError>;
    /// Internal state that influences future moves; empty for positional strategies.
    fn memory(&self) -> Vec<usize> {
        Vec::new()
    }
}

pub trait RobberPlayer {
    fn place(&mut self, cops: &[usize]) -> Result<usize, GameError>;
    fn respond(&mut self, cops: &[usize], robber: usize) -> Result<usize, GameError>;
}

impl<R: RobberPlayer + ?Sized> RobberPlayer for Box<R> {
    fn place(&mut self, cops: &[usize]) -> Result<usize, GameError> {
        (**self).place(cops)
    }

    fn respond(&mut self, cops: &[usize], robber: usize) -> Result<usize, GameError> {
        (**self).respond(cops, robber)
    }
}

impl CopPlayer for &CopStrategy {
    fn cop_count(&self) -> usize {
        self.k
    }

    fn place(&mut self) -> Result<Vec<usize>, GameError> {
        Ok(self.placement.clone())
    }

    fn respond(&mut self, cops: &[usize], robber: usize) -> Result<Vec<usize>, GameError> {
        CopStrategy::respond(self, cops, robber).ok_or_else(|| GameError::StrategyHole { cops: cops.to_vec(), robber })
    }
}

impl RobberPlayer for RobberStrategy<'_> {
    fn place(&mut self, cops: &[usize]) -> Result<usize, GameError> {
        Ok(RobberStrategy::place(self, cops))
    }

    fn respond(&mut self, cops: &[usize], robber: usize) -> Result<usize, GameError> {
        Ok(self.next(cops, robber))
    }
}

/// Cops that never move from a fixed placement.
#[derive(Clone, Debug)]
pub struct StationaryCops(pub Vec<usize>);

impl CopPlayer for StationaryCops {
    fn cop_count(&self) -> usize {
        self.0.len()
    }

    fn place(&mut self) -> Result<Vec<usize>, GameError> {
        Ok(self.0.clone())
    }

    fn respond(&mut self, cops: &[usize], _robber: usize) -> Result<Vec<usize>, GameError> {
        Ok(cops.to_vec())
    }
}

/// Robber replaying a fixed script; stays put once the script runs out.
#[derive(Clone, Debug)]
pub struct ScriptedRobber {
    pub start: usize,
    pub moves: Vec<usize>,
    cursor: usize,
}

impl ScriptedRobber {
    pub fn new(start: usize, moves: Vec<usize>) -> Self {
        ScriptedRobber { start, moves, cursor: 0 }
    }
}

impl RobberPlayer for ScriptedRobber {
    fn place(&mut self, _cops: &[usize]) -> Result<usize, GameError> {
        Ok(self.start)
    }

    fn respond(&mut self, _cops: &[usize], robber: usize) -> Result<usize, GameError> {
        let next = self.moves.get(self.cursor).copied().unwrap_or(robber);
        self.cursor += 1;
        Ok(next)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Placements {
    pub cops: Vec<usize>,
    pub robber: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Move {
    Cops(Vec<usize>),
    Robber(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Capture,
    Timeout,
}

/// Record of a played game. `capture_index` is the number of moves made
/// when the robber was caught (0 = caught at placement).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    pub graph6: String,
    pub k: usize,
    pub placements: Placements,
    pub moves: Vec<Move>,
    pub outcome: Outcome,
    pub capture_index: Option<usize>,
}

impl Transcript {
    /// Number of cop moves made.
    pub fn cop_moves(&self) -> usize {
        self.moves.iter().filter(|m| matches!(m, Move::Cops(_))).count()
    }
}

pub(crate) fn check_cop_move(g: &Graph, k: usize, from: &[usize], to: &[usize]) -> Result<(), GameError> {
    if to.len() != k {
        return Err(GameError::WrongCopCount { expected: k, got: to.len() });
    }
    let legal = from.iter().zip(to).all(|(&a, &b)| a == b || g.has_edge(a, b));
    if legal {
        Ok(())
    } else {
        Err(GameError::IllegalCopMove { from: from.to_vec(), to: to.to_vec() })
    }
}

pub(crate) fn check_placement(g: &Graph, k: usize, cops: &[usize]) -> Result<(), GameError> {
    if cops.len() != k {
        return Err(GameError::WrongCopCount { expected: k, got: cops.len() });
    }
    if let Some(&bad) = cops.iter().find(|&&c| c >= g.order()) {
        return Err(GameError::IllegalCopMove { from: vec![], to: vec![bad] });
    }
    Ok(())
}

/// Plays at most `limit` rounds (cop move then robber move).
pub fn play<C: CopPlayer, R: RobberPlayer>(
    g: &Graph,
    cops: &mut C,
    robber: &mut R,
    limit: usize,
) -> Result<Transcript, GameError> {
    if limit == 0 {
        return Err(GameError::ZeroLimit);
    }
    let k = cops.cop_count();
    let mut pos = cops.place()?;
    check_placement(g, k, &pos)?;
    let mut r = robber.place(&pos)?;
    if r >= g.order() {
        return Err(GameError::IllegalRobberMove { from: r, to: r });
    }
    let mut transcript = Transcript {
        graph6: write_graph6(g).unwrap_or_default(),
        k,
        placements: Placements { cops: pos.clone(), robber: r },
        moves: Vec::new(),
        outcome: Outcome::Timeout,
        capture_index: None,
    };
    let captured = |t: &mut Transcript| {
        t.outcome = Outcome::Capture;
        t.capture_index = Some(t.moves.len());
    };
    if pos.contains(&r) {
        captured(&mut transcript);
        return Ok(transcript);
    }
    for _ in 0..limit {
        let next = cops.respond(&pos, r)?;
        check_cop_move(g, k, &pos, &next)?;
        pos = next;
        transcript.moves.push(Move::Cops(pos.clone()));
        if pos.contains(&r) {
            captured(&mut transcript);
            return Ok(transcript);
        }
        let r2 = robber.respond(&pos, r)?;
        if r2 != r && !g.has_edge(r, r2) {
            return Err(GameError::IllegalRobberMove { from: r, to: r2 });
        }
        r = r2;
        transcript.moves.push(Move::Robber(r));
        if pos.contains(&r) {
            captured(&mut transcript);
            return Ok(transcript);
        }
    }
    Ok(transcript)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};
    use crate::solver::{extract_strategies, solve_k_copwin};

    #[test]
    fn single_vertex_capture_at_placement() {
        let g = Graph::empty(1);
        let t = play(&g, &mut StationaryCops(vec![0]), &mut ScriptedRobber::new(0, vec![]), 5).unwrap();
        assert_eq!(t.outcome, Outcome::Capture);
        assert_eq!(t.capture_index, Some(0));
        assert!(t.moves.is_empty());
    }

    #[test]
    fn edge_capture_on_first_move() {
        let g = generate(&Family::Path(2), None).unwrap();
        let res = solve_k_copwin(&g, 1).unwrap();
        let (cops, robber) = extract_strategies(&res).unwrap();
        let t = play(&g, &mut &cops, &mut { robber }, 10).unwrap();
        assert_eq!(t.placements, Placements { cops: vec![0], robber: 1 });
        assert_eq!(t.moves, vec![Move::Cops(vec![1])]);
        assert_eq!(t.capture_index, Some(1));
    }

    #[test]
    fn c4_two_cops_vs_evasive_robber() {
        let g = generate(&Family::Cycle(4), None).unwrap();
        let res = solve_k_copwin(&g, 2).unwrap();
        let (cops, robber) = extract_strategies(&res).unwrap();
        let t = play(&g, &mut &cops, &mut { robber }, res.states()).unwrap();
        assert_eq!(t.outcome, Outcome::Capture);
        let bound = res.placement_value(&cops.placement).unwrap() as usize;
        assert!(t.moves.len() <= bound);
    }

    #[test]
    fn stationary_cop_times_out_and_illegal_moves_fail() {
        let g = generate(&Family::Cycle(4), None).unwrap();
        let t = play(&g, &mut StationaryCops(vec![0]), &mut ScriptedRobber::new(2, vec![]), 3).unwrap();
        assert_eq!(t.outcome, Outcome::Timeout);
        assert_eq!(t.moves.len(), 6);
        let err = play(&g, &mut StationaryCops(vec![0]), &mut ScriptedRobber::new(2, vec![0]), 3).unwrap_err();
        assert_eq!(err, GameError::IllegalRobberMove { from: 2, to: 0 });
        assert_eq!(
            play(&g, &mut StationaryCops(vec![0]), &mut ScriptedRobber::new(2, vec![]), 0).unwrap_err(),
            GameError::ZeroLimit
        );
    }
}
