//! The abstraction every engine implements, plus the identity and outcome
//! types shared across the crate.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// One of the two players. `P1` always moves first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Player {
    P1,
    P2,
}

impl Player {
    #[inline]
    pub fn opponent(self) -> Player {
        match self {
            Player::P1 => Player::P2,
            Player::P2 => Player::P1,
        }
    }

    #[inline]
    pub fn index(self) -> usize {
        match self {
            Player::P1 => 0,
            Player::P2 => 1,
        }
    }
}

/// Result of a finished game.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Outcome {
    P1Win,
    P2Win,
    Draw,
}

impl Outcome {
    #[inline]
    pub fn win_for(player: Player) -> Outcome {
        match player {
            Player::P1 => Outcome::P1Win,
            Player::P2 => Outcome::P2Win,
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::P1Win => "P1 win",
            Outcome::P2Win => "P2 win",
            Outcome::Draw => "draw",
        })
    }
}

/// Position of a move within the canonical legal-move list of a state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MoveId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GameStatus {
    Ongoing,
    Terminal(Outcome),
}

impl GameStatus {
    pub fn is_terminal(self) -> bool {
        matches!(self, GameStatus::Terminal(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("invalid game configuration: {0}")]
    InvalidConfig(String),
    #[error("no legal moves: the game is over")]
    TerminalState,
    #[error("move index {index} out of range (state has {branching} legal moves)")]
    MoveOutOfRange { index: usize, branching: usize },
    #[error("illegal move {0}")]
    IllegalMove(String),
    #[error("cannot parse move {text:?}: {reason}")]
    ParseMove { text: String, reason: String },
}

/// Common view of a position: who moves next and how many decision plies
/// have been played.
pub trait GameState: Copy + Eq + std::hash::Hash + fmt::Debug + Send + Sync {
    fn side_to_move(&self) -> Player;
    fn ply_count(&self) -> u32;
}

/// Rules of a two-player perfect-information game.
///
/// States are plain values; the game object carries only immutable board
/// parameters, so one instance can be shared by every worker.
///
/// Engines must resolve forced passes internally: a state reports
/// `branching() == 0` exactly when it is terminal.
pub trait Game: Send + Sync {
    type State: GameState;
    type Move: Copy + Eq + fmt::Debug + fmt::Display;

    fn initial_state(&self) -> Self::State;

    /// Number of legal moves, zero iff the state is terminal.
    fn branching(&self, state: &Self::State) -> usize;

    /// The `index`-th legal move in canonical order. Caller guarantees
    /// `index < branching(state)`.
    fn nth_move(&self, state: &Self::State, index: usize) -> Self::Move;

    /// Successor after a move already known to be legal.
    fn successor(&self, state: &Self::State, mv: Self::Move) -> Self::State;

    /// Outcome of a terminal state, `None` while the game is ongoing.
    fn outcome(&self, state: &Self::State) -> Option<Outcome>;

    fn parse_move(&self, text: &str) -> Result<Self::Move, GameError>;

    /// Board as text, one row per line.
    fn render(&self, state: &Self::State) -> String;

    /// Inclusive bounds on the number of decision plies in a complete game.
    fn length_bounds(&self) -> (u32, u32);

    /// Successor of `state` after the `index`-th legal move, without range
    /// checks. Hot path for playouts.
    #[inline]
    fn apply_nth(&self, state: &Self::State, index: usize) -> Self::State {
        let mv = self.nth_move(state, index);
        self.successor(state, mv)
    }

    fn status(&self, state: &Self::State) -> GameStatus {
        match self.outcome(state) {
            Some(o) => GameStatus::Terminal(o),
            None => GameStatus::Ongoing,
        }
    }

    fn legal_moves(&self, state: &Self::State) -> Result<Vec<Self::Move>, GameError> {
        let c = self.branching(state);
        if c == 0 {
            return Err(GameError::TerminalState);
        }
        Ok((0..c).map(|i| self.nth_move(state, i)).collect())
    }

    fn apply(&self, state: &Self::State, mv: MoveId) -> Result<Self::State, GameError> {
        let c = self.branching(state);
        if c == 0 {
            return Err(GameError::TerminalState);
        }
        if mv.0 >= c {
            return Err(GameError::MoveOutOfRange {
                index: mv.0,
                branching: c,
            });
        }
        Ok(self.apply_nth(state, mv.0))
    }

    /// Plays a game-native move, rejecting it if it is not currently legal.
    fn play(&self, state: &Self::State, mv: Self::Move) -> Result<Self::State, GameError> {
        self.move_index(state, mv).map(|i| self.apply_nth(state, i))
    }

    /// Canonical index of a native move in the current legal-move list.
    fn move_index(&self, state: &Self::State, mv: Self::Move) -> Result<usize, GameError> {
        let c = self.branching(state);
        if c == 0 {
            return Err(GameError::TerminalState);
        }
        (0..c)
            .find(|&i| self.nth_move(state, i) == mv)
            .ok_or_else(|| GameError::IllegalMove(mv.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn opponent_alternates() {
        assert_eq!(Player::P1.opponent(), Player::P2);
        assert_eq!(Player::P2.opponent().opponent(), Player::P2);
        assert_eq!(Outcome::win_for(Player::P2), Outcome::P2Win);
    }
}
