use std::fmt;

use serde::{Deserialize, Serialize};

use crate::game::{Game, GameError};
use crate::games::{ConnectN, Othello, TicTacToe};

/// Names a supported game and its board parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "game", rename_all = "lowercase")]
pub enum GameConfig {
    #[serde(rename = "tictactoe")]
    TicTacToe {
        size: usize,
    },
    Connect {
        rows: usize,
        cols: usize,
        connect_k: usize,
    },
    Othello {
        size: usize,
    },
}

/// Receives the concrete engine built from a [`GameConfig`].
pub trait GameVisitor {
    type Output;
    fn visit<G: Game>(self, game: &G) -> Self::Output;
}

impl GameConfig {
    pub fn tictactoe() -> Self {
        GameConfig::TicTacToe { size: 3 }
    }

    pub fn connect4() -> Self {
        GameConfig::Connect {
            rows: 6,
            cols: 7,
            connect_k: 4,
        }
    }

    pub fn othello() -> Self {
        GameConfig::Othello { size: 8 }
    }

    pub fn name(&self) -> &'static str {
        match self {
            GameConfig::TicTacToe { .. } => "tictactoe",
            GameConfig::Connect { .. } => "connect",
            GameConfig::Othello { .. } => "othello",
        }
    }

    /// Checks the board parameters without running anything.
    pub fn validate(&self) -> Result<(), GameError> {
        struct Noop;
        impl GameVisitor for Noop {
            type Output = ();
            fn visit<G: Game>(self, _: &G) {}
        }
        self.dispatch(Noop)
    }

    /// Builds the engine and hands it to `visitor`.
    pub fn dispatch<V: GameVisitor>(&self, visitor: V) -> Result<V::Output, GameError> {
        Ok(match *self {
            GameConfig::TicTacToe { size } => visitor.visit(&TicTacToe::new(size)?),
            GameConfig::Connect {
                rows,
                cols,
                connect_k,
            } => visitor.visit(&ConnectN::new(rows, cols, connect_k)?),
            GameConfig::Othello { size } => visitor.visit(&Othello::new(size)?),
        })
    }
}

impl fmt::Display for GameConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GameConfig::TicTacToe { size } => write!(f, "tic-tac-toe {size}x{size}"),
            GameConfig::Connect {
                rows,
                cols,
                connect_k,
            } => write!(f, "connect-{connect_k} {rows}x{cols}"),
            GameConfig::Othello { size } => write!(f, "othello {size}x{size}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(GameConfig::connect4().validate().is_ok());
        assert!(GameConfig::Connect {
            rows: 6,
            cols: 0,
            connect_k: 4
        }
        .validate()
        .is_err());
        assert!(GameConfig::Othello { size: 5 }.validate().is_err());
        assert_eq!(GameConfig::connect4().to_string(), "connect-4 6x7");
    }
}
