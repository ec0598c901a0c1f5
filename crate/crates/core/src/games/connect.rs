use std::fmt;

use crate::game::{Game, GameError, GameState, Outcome, Player};

/// Connect-N: disks drop into `cols` columns of height `rows`; `connect_k`
/// in a row, column or diagonal wins. Moves are ordered by ascending column.
///
/// Bitboard layout: column `c` owns bits `c*(rows+1) .. c*(rows+1)+rows`,
/// bottom cell first, with one spare bit on top of each column.
#[derive(Debug, Clone)]
pub struct ConnectN {
    rows: u8,
    cols: u8,
    connect_k: u8,
    /// Top cell of every column.
    top: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ConnectState {
    /// Disks of P1.
    p1: u64,
    /// All disks.
    mask: u64,
    rows: u8,
    cols: u8,
    connect_k: u8,
    side: Player,
    ply: u16,
    outcome: Option<Outcome>,
}

impl GameState for ConnectState {
    fn side_to_move(&self) -> Player {
        self.side
    }

    fn ply_count(&self) -> u32 {
        self.ply as u32
    }
}

impl ConnectState {
    #[inline]
    fn stride(&self) -> u32 {
        self.rows as u32 + 1
    }

    #[inline]
    fn bit(&self, col: u32, row: u32) -> u64 {
        1u64 << (col * self.stride() + row)
    }

    pub fn height(&self, col: usize) -> usize {
        let column = ((1u64 << self.rows) - 1) << (col as u32 * self.stride());
        (self.mask & column).count_ones() as usize
    }

    /// Owner of the disk at `(col, row)`, row 0 being the bottom.
    pub fn disk(&self, col: usize, row: usize) -> Option<Player> {
        let b = self.bit(col as u32, row as u32);
        if self.mask & b == 0 {
            None
        } else if self.p1 & b != 0 {
            Some(Player::P1)
        } else {
            Some(Player::P2)
        }
    }
}

/// A column, zero-based internally, displayed 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Column(pub u8);

impl fmt::Display for Column {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0 as u32 + 1)
    }
}

/// True iff the top disk of `last_move_column` is part of at least
/// `connect_k` consecutive same-colour disks in some line. Only cells on the
/// four lines through that disk are examined.
pub fn connect_win_check(state: &ConnectState, last_move_column: usize) -> bool {
    let col = last_move_column as i32;
    let height = state.height(last_move_column);
    if height == 0 {
        return false;
    }
    let row = height as i32 - 1;
    let own = if state.p1 & state.bit(col as u32, row as u32) != 0 {
        state.p1
    } else {
        state.mask ^ state.p1
    };
    let (rows, cols) = (state.rows as i32, state.cols as i32);
    let k = state.connect_k as i32;
    let occupied = |c: i32, r: i32| {
        c >= 0 && c < cols && r >= 0 && r < rows && own & state.bit(c as u32, r as u32) != 0
    };
    for (dc, dr) in [(0, 1), (1, 0), (1, 1), (1, -1)] {
        let mut run = 1;
        let (mut c, mut r) = (col + dc, row + dr);
        while run < k && occupied(c, r) {
            run += 1;
            c += dc;
            r += dr;
        }
        let (mut c, mut r) = (col - dc, row - dr);
        while run < k && occupied(c, r) {
            run += 1;
            c -= dc;
            r -= dr;
        }
        if run >= k {
            return true;
        }
    }
    false
}

impl ConnectN {
    pub fn new(rows: usize, cols: usize, connect_k: usize) -> Result<Self, GameError> {
        if rows == 0 || cols == 0 || connect_k == 0 {
            return Err(GameError::InvalidConfig(format!(
                "connect board needs rows, cols, k >= 1 (got {rows}x{cols}, k={connect_k})"
            )));
        }
        if (rows + 1) * cols > 64 {
            return Err(GameError::InvalidConfig(format!(
                "connect board {rows}x{cols} too large: (rows+1)*cols must be at most 64"
            )));
        }
        if connect_k > rows.max(cols) {
            return Err(GameError::InvalidConfig(format!(
                "k={connect_k} can never be connected on a {rows}x{cols} board"
            )));
        }
        let stride = rows + 1;
        let top = (0..cols).fold(0u64, |acc, c| acc | 1u64 << (c * stride + rows - 1));
        Ok(ConnectN {
            rows: rows as u8,
            cols: cols as u8,
            connect_k: connect_k as u8,
            top,
        })
    }

    /// Six rows, seven columns, four to connect.
    pub fn standard() -> Self {
        Self::new(6, 7, 4).expect("6x7 is valid")
    }

    pub fn rows(&self) -> usize {
        self.rows as usize
    }

    pub fn cols(&self) -> usize {
        self.cols as usize
    }

    pub fn connect_k(&self) -> usize {
        self.connect_k as usize
    }

    #[inline]
    fn open_tops(&self, s: &ConnectState) -> u64 {
        self.top & !s.mask
    }
}

impl Game for ConnectN {
    type State = ConnectState;
    type Move = Column;

    fn initial_state(&self) -> ConnectState {
        ConnectState {
            p1: 0,
            mask: 0,
            rows: self.rows,
            cols: self.cols,
            connect_k: self.connect_k,
            side: Player::P1,
            ply: 0,
            outcome: None,
        }
    }

    #[inline]
    fn branching(&self, s: &ConnectState) -> usize {
        if s.outcome.is_some() {
            0
        } else {
            self.open_tops(s).count_ones() as usize
        }
    }

    #[inline]
    fn nth_move(&self, s: &ConnectState, index: usize) -> Column {
        let mut open = self.open_tops(s);
        for _ in 0..index {
            open &= open - 1;
        }
        Column((open.trailing_zeros() / (self.rows as u32 + 1)) as u8)
    }

    #[inline]
    fn successor(&self, s: &ConnectState, mv: Column) -> ConnectState {
        let col = mv.0 as u32;
        let bottom = 1u64 << (col * (self.rows as u32 + 1));
        let mut next = *s;
        next.mask = s.mask | (s.mask + bottom);
        if s.side == Player::P1 {
            next.p1 |= next.mask ^ s.mask;
        }
        next.ply += 1;
        next.side = s.side.opponent();
        if connect_win_check(&next, col as usize) {
            next.outcome = Some(Outcome::win_for(s.side));
        } else if next.ply as usize == self.rows as usize * self.cols as usize {
            next.outcome = Some(Outcome::Draw);
        }
        next
    }

    fn outcome(&self, s: &ConnectState) -> Option<Outcome> {
        s.outcome
    }

    fn parse_move(&self, text: &str) -> Result<Column, GameError> {
        let t = text.trim();
        let col: usize = t.parse().map_err(|_| GameError::ParseMove {
            text: t.to_string(),
            reason: "expected a 1-based column number".into(),
        })?;
        if col == 0 || col > self.cols as usize {
            return Err(GameError::ParseMove {
                text: t.to_string(),
                reason: format!("column must be in 1..={}", self.cols),
            });
        }
        Ok(Column((col - 1) as u8))
    }

    /// Top row first; `Y` is P1 (yellow), `R` is P2 (red).
    fn render(&self, s: &ConnectState) -> String {
        let mut out = String::new();
        for row in (0..self.rows as usize).rev() {
            for col in 0..self.cols as usize {
                out.push(match s.disk(col, row) {
                    Some(Player::P1) => 'Y',
                    Some(Player::P2) => 'R',
                    None => '.',
                });
            }
            out.push('\n');
        }
        out
    }

    fn length_bounds(&self) -> (u32, u32) {
        (
            2 * self.connect_k as u32 - 1,
            self.rows as u32 * self.cols as u32,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{GameStatus, MoveId};

    fn drop_all(game: &ConnectN, cols: &[usize]) -> ConnectState {
        cols.iter().fold(game.initial_state(), |s, &c| {
            game.play(&s, Column(c as u8 - 1)).unwrap()
        })
    }

    #[test]
    fn initial_position() {
        let g = ConnectN::standard();
        let s = g.initial_state();
        assert_eq!(g.legal_moves(&s).unwrap().len(), 7);
        assert_eq!(g.status(&s), GameStatus::Ongoing);
        assert_eq!(s.side_to_move(), Player::P1);
    }

    #[test]
    fn disk_lands_at_bottom() {
        let g = ConnectN::standard();
        let s = g.apply(&g.initial_state(), MoveId(3)).unwrap();
        assert_eq!(s.disk(3, 0), Some(Player::P1));
        assert_eq!(s.height(3), 1);
        assert_eq!(s.ply_count(), 1);
        assert!(!connect_win_check(&s, 3));
    }

    #[test]
    fn vertical_four_wins() {
        let g = ConnectN::standard();
        let s = drop_all(&g, &[1, 2, 1, 2, 1, 2, 1]);
        assert!(connect_win_check(&s, 0));
        assert_eq!(g.status(&s), GameStatus::Terminal(Outcome::P1Win));
        assert_eq!(s.ply_count(), 7);
    }

    #[test]
    fn diagonal_win_for_second_player() {
        let g = ConnectN::standard();
        // Red builds a / diagonal from column 1 to column 4.
        let moves = [2, 1, 3, 2, 3, 4, 4, 3, 4];
        let s = drop_all(&g, &moves);
        assert_eq!(g.status(&s), GameStatus::Ongoing);
        let s = g.play(&s, Column(3)).unwrap();
        assert!(connect_win_check(&s, 3));
        assert_eq!(g.status(&s), GameStatus::Terminal(Outcome::P2Win));
    }

    #[test]
    fn full_column_is_not_offered() {
        let g = ConnectN::new(2, 2, 2).unwrap();
        let s = drop_all(&g, &[1]);
        assert_eq!(g.branching(&s), 2);
        let s = drop_all(&g, &[1, 1]);
        let moves = g.legal_moves(&s).unwrap();
        assert_eq!(moves, vec![Column(1)]);
        assert!(g.play(&s, Column(0)).is_err());
    }

    #[test]
    fn full_board_without_connection_is_draw() {
        let g = ConnectN::new(1, 3, 2).unwrap();
        let s = drop_all(&g, &[1, 2, 3]);
        assert_eq!(g.render(&s), "YRY\n");
        assert_eq!(g.status(&s), GameStatus::Terminal(Outcome::Draw));
    }

    #[test]
    fn rejects_invalid_boards() {
        assert!(ConnectN::new(0, 7, 4).is_err());
        assert!(ConnectN::new(6, 0, 4).is_err());
        assert!(ConnectN::new(8, 8, 4).is_err());
        assert!(ConnectN::new(2, 2, 3).is_err());
        assert!(g_parse("0").is_err());
        assert!(g_parse("8").is_err());
        assert_eq!(g_parse("7").unwrap(), Column(6));
    }

    fn g_parse(t: &str) -> Result<Column, GameError> {
        ConnectN::standard().parse_move(t)
    }
}
