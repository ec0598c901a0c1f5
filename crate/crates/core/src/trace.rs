//! Replaying a scripted game and recording its branching factors.
//!
//! Script format: one move per line, `#` starts a comment, blank lines are
//! ignored. A move is either game-native notation (`4` for a Connect-N
//! column, `b3` for a Tic-Tac-Toe or Othello square) or `@i` for the `i`-th
//! move (zero-based) of the canonical legal-move list.

use num_bigint::BigUint;
use thiserror::Error;

use crate::config::{GameConfig, GameVisitor};
use crate::game::{Game, GameError, GameState, MoveId, Outcome, Player};
use crate::oracle::BigCount;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScriptMove {
    Native(String),
    Index(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScriptLine {
    /// 1-based line number in the script.
    pub line: usize,
    pub mv: ScriptMove,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReplayError {
    #[error("line {line}: cannot parse {text:?} as a canonical index")]
    BadIndex { line: usize, text: String },
    #[error("ply {ply} (line {line}): {source}")]
    Move {
        ply: u32,
        line: usize,
        #[source]
        source: GameError,
    },
    #[error(transparent)]
    Config(#[from] GameError),
}

pub fn parse_script(text: &str) -> Result<Vec<ScriptLine>, ReplayError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let mv = match body.strip_prefix('@') {
            Some(idx) => {
                ScriptMove::Index(idx.trim().parse().map_err(|_| ReplayError::BadIndex {
                    line: i + 1,
                    text: body.to_string(),
                })?)
            }
            None => ScriptMove::Native(body.to_string()),
        };
        out.push(ScriptLine { line: i + 1, mv });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceStep {
    /// Decision ply just played, 1-based.
    pub ply: u32,
    pub mover: Player,
    pub notation: String,
    /// Number of legal moves the mover had.
    pub branching: usize,
    /// Product of branching factors so far.
    pub weight: BigCount,
    pub board: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trace {
    pub initial_board: String,
    pub steps: Vec<TraceStep>,
    pub n_plies: u32,
    pub weight: BigCount,
    /// `None` if the script stops before the game ends.
    pub outcome: Option<Outcome>,
}

impl Trace {
    pub fn branching_factors(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.branching).collect()
    }
}

pub fn replay<G: Game>(game: &G, script: &[ScriptLine]) -> Result<Trace, ReplayError> {
    let mut state = game.initial_state();
    let mut weight = BigUint::from(1u32);
    let mut steps = Vec::with_capacity(script.len());
    for line in script {
        let ply = state.ply_count() + 1;
        let wrap = |source| ReplayError::Move {
            ply,
            line: line.line,
            source,
        };
        let branching = game.branching(&state);
        let mover = state.side_to_move();
        let index = match &line.mv {
            ScriptMove::Native(text) => {
                let mv = game.parse_move(text).map_err(wrap)?;
                game.move_index(&state, mv).map_err(wrap)?
            }
            ScriptMove::Index(i) => *i,
        };
        let next = game.apply(&state, MoveId(index)).map_err(wrap)?;
        weight *= BigUint::from(branching);
        steps.push(TraceStep {
            ply,
            mover,
            notation: game.nth_move(&state, index).to_string(),
            branching,
            weight: BigCount(weight.clone()),
            board: game.render(&next),
        });
        state = next;
    }
    Ok(Trace {
        initial_board: game.render(&game.initial_state()),
        steps,
        n_plies: state.ply_count(),
        weight: BigCount(weight),
        outcome: game.outcome(&state),
    })
}

/// Parses and replays `script` on the game named by `config`.
pub fn replay_config(config: &GameConfig, script: &str) -> Result<Trace, ReplayError> {
    struct Replay(Vec<ScriptLine>);
    impl GameVisitor for Replay {
        type Output = Result<Trace, ReplayError>;
        fn visit<G: Game>(self, game: &G) -> Self::Output {
            replay(game, &self.0)
        }
    }
    config.dispatch(Replay(parse_script(script)?))?
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn script_parsing() {
        let s = parse_script("# header\n4\n\n  @2  # third move\nb3\n").unwrap();
        assert_eq!(
            s,
            vec![
                ScriptLine {
                    line: 2,
                    mv: ScriptMove::Native("4".into())
                },
                ScriptLine {
                    line: 4,
                    mv: ScriptMove::Index(2)
                },
                ScriptLine {
                    line: 5,
                    mv: ScriptMove::Native("b3".into())
                },
            ]
        );
        assert!(matches!(
            parse_script("@x"),
            Err(ReplayError::BadIndex { line: 1, .. })
        ));
    }

    #[test]
    fn empty_script_is_initial_frame() {
        let t = replay_config(&GameConfig::tictactoe(), "# nothing\n").unwrap();
        assert!(t.steps.is_empty());
        assert_eq!(t.weight, 1.into());
        assert_eq!(t.n_plies, 0);
        assert_eq!(t.outcome, None);
        assert_eq!(t.initial_board, "...\n...\n...\n");
    }

    #[test]
    fn illegal_move_names_the_ply() {
        let err = replay_config(&GameConfig::tictactoe(), "a1\na1\n").unwrap_err();
        assert!(
            matches!(
                err,
                ReplayError::Move {
                    ply: 2,
                    line: 2,
                    ..
                }
            ),
            "{err}"
        );
        let err = replay_config(&GameConfig::connect4(), "@7\n").unwrap_err();
        assert!(matches!(err, ReplayError::Move { ply: 1, .. }));
    }

    #[test]
    fn index_and_native_moves_agree() {
        let a = replay_config(&GameConfig::connect4(), "4\n4\n1\n").unwrap();
        let b = replay_config(&GameConfig::connect4(), "@3\n@3\n@0\n").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.branching_factors(), [7, 7, 7]);
        assert_eq!(a.weight, 343.into());
    }
}
