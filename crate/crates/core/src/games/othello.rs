use std::fmt;

use crate::game::{Game, GameError, GameState, Outcome, Player};

use super::{format_square, parse_square};

const NOT_COL_0: u64 = 0xfefe_fefe_fefe_fefe;
const NOT_COL_7: u64 = 0x7f7f_7f7f_7f7f_7f7f;

/// The eight ray directions as (shift, mask applied after shifting).
/// Positive shifts move towards higher square indices.
const DIRECTIONS: [(i32, u64); 8] = [
    (1, NOT_COL_0),  // east
    (-1, NOT_COL_7), // west
    (8, !0),         // south
    (-8, !0),        // north
    (9, NOT_COL_0),  // south-east
    (7, NOT_COL_7),  // south-west
    (-7, NOT_COL_0), // north-east
    (-9, NOT_COL_7), // north-west
];

#[inline(always)]
fn shift(b: u64, dir: (i32, u64)) -> u64 {
    let (s, mask) = dir;
    if s > 0 {
        (b << s) & mask
    } else {
        (b >> -s) & mask
    }
}

/// Othello on an even `size`×`size` board (4, 6 or 8), black (P1) first.
///
/// Squares are indexed `row * 8 + col` on a 64-bit board regardless of
/// size; cells outside the playing area are never occupied. Moves are
/// ordered row-major by placement square.
///
/// A pass is not a decision: when the opponent has no placement after a
/// move, the mover keeps the turn and `ply_count` counts placements only.
#[derive(Debug, Clone)]
pub struct Othello {
    size: u8,
    region: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OthelloState {
    black: u64,
    white: u64,
    /// Legal placements for the side to move; zero iff the game is over.
    legal: u64,
    side: Player,
    ply: u8,
}

impl GameState for OthelloState {
    fn side_to_move(&self) -> Player {
        self.side
    }

    fn ply_count(&self) -> u32 {
        self.ply as u32
    }
}

impl OthelloState {
    pub fn black(&self) -> u64 {
        self.black
    }

    pub fn white(&self) -> u64 {
        self.white
    }

    pub fn disk_count(&self) -> u32 {
        (self.black | self.white).count_ones()
    }

    #[inline]
    fn own_opp(&self) -> (u64, u64) {
        match self.side {
            Player::P1 => (self.black, self.white),
            Player::P2 => (self.white, self.black),
        }
    }
}

/// A placement square, `row * 8 + col`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Square(pub u8);

impl Square {
    pub fn new(row: usize, col: usize) -> Self {
        Square((row * 8 + col) as u8)
    }

    pub fn row(self) -> usize {
        self.0 as usize / 8
    }

    pub fn col(self) -> usize {
        self.0 as usize % 8
    }

    #[inline]
    pub fn bit(self) -> u64 {
        1u64 << self.0
    }
}

impl fmt::Display for Square {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_square(self.row(), self.col()))
    }
}

/// All placements available to `own` against `opp`.
#[inline]
fn placements(own: u64, opp: u64, empty: u64) -> u64 {
    let mut moves = 0;
    for dir in DIRECTIONS {
        let mut run = shift(own, dir) & opp;
        for _ in 0..5 {
            run |= shift(run, dir) & opp;
        }
        moves |= shift(run, dir) & empty;
    }
    moves
}

#[inline]
fn flips_for(own: u64, opp: u64, square: u64) -> u64 {
    let mut flipped = 0;
    for dir in DIRECTIONS {
        let mut run = 0;
        let mut cur = shift(square, dir);
        while cur & opp != 0 {
            run |= cur;
            cur = shift(cur, dir);
        }
        if cur & own != 0 {
            flipped |= run;
        }
    }
    flipped
}

impl Othello {
    pub fn new(size: usize) -> Result<Self, GameError> {
        if !(4..=8).contains(&size) || !size.is_multiple_of(2) {
            return Err(GameError::InvalidConfig(format!(
                "othello board size must be 4, 6 or 8, got {size}"
            )));
        }
        let region = (0..size)
            .flat_map(|r| (0..size).map(move |c| Square::new(r, c).bit()))
            .fold(0, |a, b| a | b);
        Ok(Othello {
            size: size as u8,
            region,
        })
    }

    pub fn standard() -> Self {
        Self::new(8).expect("8x8 is valid")
    }

    pub fn size(&self) -> usize {
        self.size as usize
    }

    #[inline]
    fn empty(&self, black: u64, white: u64) -> u64 {
        self.region & !(black | white)
    }

    /// Opponent disks flipped by the side to move placing on `square`.
    /// An empty set means the placement is illegal.
    pub fn othello_flips(&self, state: &OthelloState, square: Square) -> u64 {
        let (own, opp) = state.own_opp();
        if (own | opp) & square.bit() != 0 || self.region & square.bit() == 0 {
            return 0;
        }
        flips_for(own, opp, square.bit())
    }

    /// Builds a state from rows of `B`, `W` and `.`, top row first. The
    /// placement count is inferred from the number of disks; `side` is the
    /// player due to move, which passes if it has no placement.
    pub fn state_from_rows(&self, rows: &[&str], side: Player) -> Result<OthelloState, GameError> {
        let size = self.size as usize;
        let bad = |msg: String| GameError::InvalidConfig(msg);
        if rows.len() != size {
            return Err(bad(format!("expected {size} rows, got {}", rows.len())));
        }
        let (mut black, mut white) = (0u64, 0u64);
        for (r, line) in rows.iter().enumerate() {
            let cells: Vec<char> = line.chars().filter(|c| !c.is_whitespace()).collect();
            if cells.len() != size {
                return Err(bad(format!(
                    "row {r} has {} cells, expected {size}",
                    cells.len()
                )));
            }
            for (c, ch) in cells.into_iter().enumerate() {
                let b = Square::new(r, c).bit();
                match ch {
                    'B' | 'b' => black |= b,
                    'W' | 'w' => white |= b,
                    '.' => {}
                    other => return Err(bad(format!("unexpected cell {other:?}"))),
                }
            }
        }
        let disks = (black | white).count_ones();
        if disks < 4 {
            return Err(bad(
                "a position holds at least the four starting disks".into()
            ));
        }
        Ok(self.settle(black, white, side, (disks - 4) as u8))
    }

    /// Hands the turn to `side`, or to its opponent if `side` must pass.
    #[inline]
    fn settle(&self, black: u64, white: u64, side: Player, ply: u8) -> OthelloState {
        let empty = self.empty(black, white);
        let (own, opp) = match side {
            Player::P1 => (black, white),
            Player::P2 => (white, black),
        };
        let mut state = OthelloState {
            black,
            white,
            legal: placements(own, opp, empty),
            side,
            ply,
        };
        if state.legal == 0 {
            let other = placements(opp, own, empty);
            if other != 0 {
                state.side = side.opponent();
                state.legal = other;
            }
        }
        state
    }
}

impl Game for Othello {
    type State = OthelloState;
    type Move = Square;

    fn initial_state(&self) -> OthelloState {
        let lo = self.size as usize / 2 - 1;
        let hi = lo + 1;
        let white = Square::new(lo, lo).bit() | Square::new(hi, hi).bit();
        let black = Square::new(lo, hi).bit() | Square::new(hi, lo).bit();
        self.settle(black, white, Player::P1, 0)
    }

    #[inline]
    fn branching(&self, s: &OthelloState) -> usize {
        s.legal.count_ones() as usize
    }

    #[inline]
    fn nth_move(&self, s: &OthelloState, index: usize) -> Square {
        let mut legal = s.legal;
        for _ in 0..index {
            legal &= legal - 1;
        }
        Square(legal.trailing_zeros() as u8)
    }

    #[inline]
    fn successor(&self, s: &OthelloState, mv: Square) -> OthelloState {
        let (own, opp) = s.own_opp();
        let flipped = flips_for(own, opp, mv.bit());
        let own = own | flipped | mv.bit();
        let opp = opp & !flipped;
        let (black, white) = match s.side {
            Player::P1 => (own, opp),
            Player::P2 => (opp, own),
        };
        self.settle(black, white, s.side.opponent(), s.ply + 1)
    }

    fn outcome(&self, s: &OthelloState) -> Option<Outcome> {
        if s.legal != 0 {
            return None;
        }
        let (b, w) = (s.black.count_ones(), s.white.count_ones());
        Some(match b.cmp(&w) {
            std::cmp::Ordering::Greater => Outcome::P1Win,
            std::cmp::Ordering::Less => Outcome::P2Win,
            std::cmp::Ordering::Equal => Outcome::Draw,
        })
    }

    fn parse_move(&self, text: &str) -> Result<Square, GameError> {
        let (r, c) = parse_square(text, self.size as usize)?;
        Ok(Square::new(r, c))
    }

    /// `B` black (P1), `W` white (P2), `.` empty.
    fn render(&self, s: &OthelloState) -> String {
        let size = self.size as usize;
        let mut out = String::with_capacity(size * (size + 1));
        for r in 0..size {
            for c in 0..size {
                let b = Square::new(r, c).bit();
                out.push(if s.black & b != 0 {
                    'B'
                } else if s.white & b != 0 {
                    'W'
                } else {
                    '.'
                });
            }
            out.push('\n');
        }
        out
    }

    fn length_bounds(&self) -> (u32, u32) {
        let n = self.size as u32;
        (0, n * n - 4)
    }
}
