//! Single-worker playout throughput.
//!
//! ```text
//! cargo run --release -p gts-core --example throughput -- [game] [playouts]
//! ```
//!
//! `game` is `connect` (default), `othello` or `tictactoe`.

use std::time::Instant;

use gts_core::estimator::{run_block, RngStream, UniformPolicy};
use gts_core::games::{ConnectN, Othello, TicTacToe};
use gts_core::Game;

fn bench<G: Game>(name: &str, game: &G, n: u64) {
    let mut rng = RngStream::new(0x5eed);
    let start = Instant::now();
    let sums = run_block(game, &UniformPolicy, n, &mut rng).expect("finite weights");
    let secs = start.elapsed().as_secs_f64();
    println!(
        "{name}: {n} playouts in {secs:.3} s = {:.3e} playouts/s/worker (mean weight {:.4e})",
        n as f64 / secs,
        sums.sum_x.value() / n as f64
    );
}

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let game = args.get(1).map(String::as_str).unwrap_or("connect");
    let n: u64 = args
        .get(2)
        .and_then(|s| s.parse().ok())
        .unwrap_or(1_000_000);
    match game {
        "connect" => bench("connect-4 6x7", &ConnectN::standard(), n),
        "othello" => bench("othello 8x8", &Othello::standard(), n),
        "tictactoe" => bench("tic-tac-toe", &TicTacToe::standard(), n),
        other => eprintln!("unknown game {other:?}"),
    }
}
