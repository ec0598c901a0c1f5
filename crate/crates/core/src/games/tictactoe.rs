use std::fmt;

use crate::game::{Game, GameError, GameState, Outcome, Player};

use super::{format_square, parse_square};

const MAX_SIZE: usize = 5;

/// Tic-Tac-Toe on a `size`×`size` grid; a full row, column or diagonal wins.
///
/// `size = 3` is the ordinary game. Moves are ordered row-major.
#[derive(Debug, Clone)]
pub struct TicTacToe {
    size: usize,
    full: u32,
    /// Winning lines through each cell.
    lines_through: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TicTacToeState {
    x: u32,
    o: u32,
    side: Player,
    ply: u32,
    outcome: Option<Outcome>,
}

impl TicTacToeState {
    pub fn x_cells(&self) -> u32 {
        self.x
    }

    pub fn o_cells(&self) -> u32 {
        self.o
    }
}

impl GameState for TicTacToeState {
    fn side_to_move(&self) -> Player {
        self.side
    }

    fn ply_count(&self) -> u32 {
        self.ply
    }
}

/// A cell index in row-major order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cell {
    index: u8,
    size: u8,
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (i, s) = (self.index as usize, self.size as usize);
        f.write_str(&format_square(i / s, i % s))
    }
}

impl TicTacToe {
    pub fn new(size: usize) -> Result<Self, GameError> {
        if size == 0 || size > MAX_SIZE {
            return Err(GameError::InvalidConfig(format!(
                "tic-tac-toe size must be in 1..={MAX_SIZE}, got {size}"
            )));
        }
        let bit = |r: usize, c: usize| 1u32 << (r * size + c);
        let mut lines = Vec::new();
        for r in 0..size {
            lines.push((0..size).map(|c| bit(r, c)).sum::<u32>());
        }
        for c in 0..size {
            lines.push((0..size).map(|r| bit(r, c)).sum::<u32>());
        }
        lines.push((0..size).map(|i| bit(i, i)).sum::<u32>());
        if size > 1 {
            lines.push((0..size).map(|i| bit(i, size - 1 - i)).sum::<u32>());
        }
        let lines_through = (0..size * size)
            .map(|cell| {
                lines
                    .iter()
                    .copied()
                    .filter(|l| l & (1 << cell) != 0)
                    .collect()
            })
            .collect();
        Ok(TicTacToe {
            size,
            full: (1u32 << (size * size)) - 1,
            lines_through,
        })
    }

    /// The ordinary 3×3 game.
    pub fn standard() -> Self {
        Self::new(3).expect("3x3 is valid")
    }

    pub fn size(&self) -> usize {
        self.size
    }

    fn cell(&self, index: usize) -> Cell {
        Cell {
            index: index as u8,
            size: self.size as u8,
        }
    }

    pub fn cell_at(&self, row: usize, col: usize) -> Cell {
        self.cell(row * self.size + col)
    }
}

impl Game for TicTacToe {
    type State = TicTacToeState;
    type Move = Cell;

    fn initial_state(&self) -> TicTacToeState {
        TicTacToeState {
            x: 0,
            o: 0,
            side: Player::P1,
            ply: 0,
            outcome: None,
        }
    }

    #[inline]
    fn branching(&self, s: &TicTacToeState) -> usize {
        if s.outcome.is_some() {
            0
        } else {
            (self.full & !(s.x | s.o)).count_ones() as usize
        }
    }

    #[inline]
    fn nth_move(&self, s: &TicTacToeState, index: usize) -> Cell {
        let mut empty = self.full & !(s.x | s.o);
        for _ in 0..index {
            empty &= empty - 1;
        }
        self.cell(empty.trailing_zeros() as usize)
    }

    fn successor(&self, s: &TicTacToeState, mv: Cell) -> TicTacToeState {
        let bit = 1u32 << mv.index;
        let mut next = *s;
        let own = match s.side {
            Player::P1 => &mut next.x,
            Player::P2 => &mut next.o,
        };
        *own |= bit;
        let own = *own;
        next.ply += 1;
        next.side = s.side.opponent();
        if self.lines_through[mv.index as usize]
            .iter()
            .any(|&line| line & !own == 0)
        {
            next.outcome = Some(Outcome::win_for(s.side));
        } else if (next.x | next.o) == self.full {
            next.outcome = Some(Outcome::Draw);
        }
        next
    }

    fn outcome(&self, s: &TicTacToeState) -> Option<Outcome> {
        s.outcome
    }

    fn parse_move(&self, text: &str) -> Result<Cell, GameError> {
        let (r, c) = parse_square(text, self.size)?;
        Ok(self.cell_at(r, c))
    }

    fn render(&self, s: &TicTacToeState) -> String {
        let mut out = String::new();
        for r in 0..self.size {
            for c in 0..self.size {
                let bit = 1u32 << (r * self.size + c);
                out.push(if s.x & bit != 0 {
                    'X'
                } else if s.o & bit != 0 {
                    'O'
                } else {
                    '.'
                });
            }
            out.push('\n');
        }
        out
    }

    fn length_bounds(&self) -> (u32, u32) {
        let min = (2 * self.size as u32).saturating_sub(1).max(1);
        (min, (self.size * self.size) as u32)
    }
}
