//! Game-tree size estimation by uniformly random playouts.
//!
//! A random game reached by picking every move uniformly among the legal
//! ones is weighted by the product of the branching factors it met. The
//! average weight over many games converges to the number of distinct games,
//! and weighted ratios give the average game length and outcome rates.
//!
//! The crate provides:
//!
//! - [`game`]: the [`Game`] trait every engine implements.
//! - [`games`]: Tic-Tac-Toe, Connect-N and Othello engines.
//! - [`estimator`]: deterministic, parallel playout estimation.
//! - [`oracle`]: exact game-tree census and exact upper bounds.
//! - [`stats`]: compensated summation and standard errors.
//! - [`trace`]: replaying scripted games with their weights.

pub mod config;
pub mod estimator;
pub mod game;
pub mod games;
pub mod oracle;
pub mod stats;
pub mod trace;

pub use config::{GameConfig, GameVisitor};
pub use estimator::{estimate, EstimateError, EstimateReport, PlayoutRecord, RunPlan, TrialSums};
pub use game::{Game, GameError, GameState, GameStatus, MoveId, Outcome, Player};
pub use oracle::{BigCount, ExactCensus, OracleError};
pub use stats::{mean_sem, MeanSem};
