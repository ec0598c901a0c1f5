use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gts_core::GameConfig;

use crate::CliError;

/// Estimate game-tree size by random playouts, and compute exact
/// ground-truth counts and bounds.
#[derive(Debug, Parser)]
#[command(name = "gts", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Monte Carlo estimate of game-tree size, average length and outcome rates.
    Estimate(EstimateArgs),
    /// Exact census of a small game tree by full enumeration.
    Exact(ExactArgs),
    /// Exact upper bound on the number of games.
    Bound(BoundArgs),
    /// Replay a move script, printing every frame and the running weight.
    Replay(ReplayArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GameName {
    Tictactoe,
    Connect,
    Othello,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Stat {
    Gts,
    Agl,
    Draw,
    P1,
    P2,
}

#[derive(Debug, Clone, Args)]
pub struct GameArgs {
    #[arg(long, value_enum)]
    pub game: GameName,
    /// Connect rows [default: 6].
    #[arg(long)]
    pub rows: Option<usize>,
    /// Connect columns [default: 7].
    #[arg(long)]
    pub cols: Option<usize>,
    /// Disks in a row needed to win at Connect [default: 4].
    #[arg(long)]
    pub k: Option<usize>,
    /// Board side for Tic-Tac-Toe [default: 3] or Othello [default: 8].
    #[arg(long)]
    pub size: Option<usize>,
}

impl GameArgs {
    pub fn config(&self) -> Result<GameConfig, CliError> {
        let unused = |flags: &[(&str, bool)]| -> Result<(), CliError> {
            match flags.iter().find(|(_, set)| *set) {
                Some((name, _)) => Err(CliError::Usage(format!(
                    "--{name} does not apply to --game {}",
                    self.game.to_possible_value().unwrap().get_name()
                ))),
                None => Ok(()),
            }
        };
        let config = match self.game {
            GameName::Tictactoe => {
                unused(&[
                    ("rows", self.rows.is_some()),
                    ("cols", self.cols.is_some()),
                    ("k", self.k.is_some()),
                ])?;
                GameConfig::TicTacToe {
                    size: self.size.unwrap_or(3),
                }
            }
            GameName::Connect => {
                unused(&[("size", self.size.is_some())])?;
                GameConfig::Connect {
                    rows: self.rows.unwrap_or(6),
                    cols: self.cols.unwrap_or(7),
                    connect_k: self.k.unwrap_or(4),
                }
            }
            GameName::Othello => {
                unused(&[
                    ("rows", self.rows.is_some()),
                    ("cols", self.cols.is_some()),
                    ("k", self.k.is_some()),
                ])?;
                GameConfig::Othello {
                    size: self.size.unwrap_or(8),
                }
            }
        };
        config
            .validate()
            .map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(config)
    }
}

#[derive(Debug, Clone, Args)]
pub struct EstimateArgs {
    #[command(flatten)]
    pub game: GameArgs,
    /// Playouts per trial.
    #[arg(long, default_value_t = 10_000)]
    pub samples: u64,
    /// Independent trials; the standard error is taken across trials.
    #[arg(long, default_value_t = 10)]
    pub trials: usize,
    /// Master seed. A random seed is chosen and printed when omitted.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Worker threads [default: all available cores].
    #[arg(long, env = "GTS_WORKERS")]
    pub workers: Option<usize>,
    /// Statistics to report.
    #[arg(long, value_enum, value_delimiter = ',', default_values_t = [Stat::Gts, Stat::Agl, Stat::Draw, Stat::P1, Stat::P2])]
    pub stats: Vec<Stat>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Also print per-trial values (text format).
    #[arg(short, long, action = clap::ArgAction::Count)]
    pub verbose: u8,
}

#[derive(Debug, Clone, Args)]
pub struct ExactArgs {
    #[command(flatten)]
    pub game: GameArgs,
    /// Maximum number of tree nodes to visit before giving up.
    #[arg(long, default_value_t = gts_core::oracle::DEFAULT_NODE_BUDGET)]
    pub node_budget: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct BoundArgs {
    #[command(flatten)]
    pub game: GameArgs,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Also print the per-length terms (Connect).
    #[arg(short, long, action = clap::ArgAction::Count)]
    pub verbose: u8,
}

#[derive(Debug, Clone, Args)]
pub struct ReplayArgs {
    #[command(flatten)]
    pub game: GameArgs,
    /// Move script: one move per line, `#` comments, `@i` for the i-th
    /// canonical move.
    #[arg(long)]
    pub script: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}
