//! Concrete engines.
//!
//! Square-grid games (Tic-Tac-Toe, Othello) name squares as a row letter
//! followed by a 1-based column number: `a1` is the top-left corner and
//! `b3` is the second row, third column. Connect-N moves are 1-based column
//! numbers.

mod connect;
mod othello;
mod tictactoe;

pub use connect::{connect_win_check, ConnectN, ConnectState};
pub use othello::{Othello, OthelloState};
pub use tictactoe::{TicTacToe, TicTacToeState};

use crate::game::GameError;

/// Parses `rowcol` notation such as `b3` into zero-based `(row, col)`.
pub(crate) fn parse_square(text: &str, size: usize) -> Result<(usize, usize), GameError> {
    let err = |reason: &str| GameError::ParseMove {
        text: text.to_string(),
        reason: reason.to_string(),
    };
    let t = text.trim();
    let mut chars = t.chars();
    let row_ch = chars.next().ok_or_else(|| err("empty move"))?;
    if !row_ch.is_ascii_alphabetic() {
        return Err(err("expected a row letter"));
    }
    let row = (row_ch.to_ascii_lowercase() as u8 - b'a') as usize;
    let col: usize = chars
        .as_str()
        .parse()
        .map_err(|_| err("expected a column number after the row letter"))?;
    if row >= size || col == 0 || col > size {
        return Err(err("square is off the board"));
    }
    Ok((row, col - 1))
}

pub(crate) fn format_square(row: usize, col: usize) -> String {
    format!("{}{}", (b'a' + row as u8) as char, col + 1)
}
