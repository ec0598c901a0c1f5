use gts_core::games::{Othello, TicTacToe};
use gts_core::trace::replay_config;
use gts_core::{Game, GameConfig, GameState, GameStatus, Outcome, Player};

const TIC_TAC_TOE: &str = include_str!("../../../data/tictactoe_example.txt");
const CONNECT_FOUR: &str = include_str!("../../../data/connect4_example.txt");
const OTHELLO_FINAL: &str = include_str!("../../../data/othello_example_final.txt");

#[test]
fn tic_tac_toe_example_frames() {
    let t = replay_config(&GameConfig::tictactoe(), TIC_TAC_TOE).unwrap();
    assert_eq!(t.branching_factors(), [9, 8, 7, 6, 5, 4, 3, 2, 1]);
    assert_eq!(t.n_plies, 9);
    assert_eq!(t.weight, 362880.into());
    assert_eq!(t.outcome, Some(Outcome::P1Win));
    let frames: Vec<&str> = t.steps.iter().map(|s| s.board.as_str()).collect();
    assert_eq!(frames[0], ".X.\n...\n...\n");
    assert_eq!(frames[1], ".X.\nO..\n...\n");
    assert_eq!(frames[2], "XX.\nO..\n...\n");
    assert_eq!(frames[3], "XX.\nO.O\n...\n");
    assert_eq!(frames[4], "XX.\nO.O\nX..\n");
    assert_eq!(frames[6], "XX.\nOXO\nXO.\n");
    assert_eq!(frames[7], "XXO\nOXO\nXO.\n");
    assert_eq!(frames[8], "XXO\nOXO\nXOX\n");
    assert_eq!(t.steps[0].mover, Player::P1);
    assert_eq!(t.steps[1].mover, Player::P2);
}

#[test]
fn connect_four_example_ends_at_ply_21() {
    let t = replay_config(&GameConfig::connect4(), CONNECT_FOUR).unwrap();
    assert_eq!(t.n_plies, 21);
    assert_eq!(t.outcome, Some(Outcome::P1Win));
    // No earlier ply ended the game, and ply 1 is the bottom of column 4.
    assert_eq!(t.steps[0].board.lines().last(), Some("...Y..."));
    let x = t.weight.to_f64();
    assert!((x / 5.59e17 - 1.0).abs() < 0.005, "X = {x:e}");
    let final_board: Vec<&str> = t.steps[20].board.lines().collect();
    assert_eq!(
        final_board,
        [".......", "...R...", ".YYYR..", ".YRRR..", ".YRRYR.", "YYRYYYR"]
    );
}

#[test]
fn othello_example_final_board_is_white_win() {
    let rows: Vec<&str> = OTHELLO_FINAL
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .collect();
    let g = Othello::standard();
    let s = g.state_from_rows(&rows, Player::P1).unwrap();
    assert_eq!(s.ply_count(), 60);
    assert_eq!(g.status(&s), GameStatus::Terminal(Outcome::P2Win));
}

#[test]
fn scripted_moves_respect_x_count_invariant() {
    let g = TicTacToe::standard();
    let t = replay_config(&GameConfig::tictactoe(), TIC_TAC_TOE).unwrap();
    for step in &t.steps {
        let xs = step.board.matches('X').count() as u32;
        let os = step.board.matches('O').count() as u32;
        assert!(xs - os <= 1);
        assert_eq!(xs, step.ply.div_ceil(2));
    }
    assert_eq!(g.length_bounds(), (5, 9));
}
