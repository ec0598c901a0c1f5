use std::io::Write as _;
use std::process::ExitCode;

use clap::Parser;
use gts_core::estimator::{estimate, EstimateError, RunPlan};
use gts_core::oracle::{
    column_orderings, connect_arrangement_bound, exact_census, factorial_bound, BigCount,
    ExactCensus, OracleError,
};
use gts_core::trace::replay_config;
use gts_core::{Game, GameConfig, GameVisitor};

use gts_cli::args::{BoundArgs, Cli, Command, EstimateArgs, ExactArgs, Format, ReplayArgs};
use gts_cli::{report, CliError};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Estimate(a) => run_estimate(a),
        Command::Exact(a) => run_exact(a),
        Command::Bound(a) => run_bound(a),
        Command::Replay(a) => run_replay(a),
    };
    match result.and_then(|out| {
        std::io::stdout()
            .lock()
            .write_all(out.as_bytes())
            .map_err(|e| CliError::Failed(format!("writing output: {e}")))
    }) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("gts: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn run_estimate(a: EstimateArgs) -> Result<String, CliError> {
    let config = a.game.config()?;
    if a.samples == 0 {
        return Err(CliError::Usage("--samples must be at least 1".into()));
    }
    if a.trials < 2 {
        return Err(CliError::Usage(
            "--trials must be at least 2 to estimate a standard error".into(),
        ));
    }
    let workers = a.workers.unwrap_or_else(default_workers);
    if workers == 0 {
        return Err(CliError::Usage("--workers must be at least 1".into()));
    }
    let (master_seed, seed_was_random) = match a.seed {
        Some(s) => (s, false),
        None => (rand::random(), true),
    };
    let plan = RunPlan {
        samples: a.samples,
        trials: a.trials,
        master_seed,
        workers,
    };
    let r = estimate(&config, plan).map_err(|e| match e {
        EstimateError::TooFewTrials(_) | EstimateError::NoWorkers | EstimateError::NoSamples => {
            CliError::Usage(e.to_string())
        }
        e => CliError::Failed(e.to_string()),
    })?;
    let mut stats = a.stats;
    stats.sort();
    stats.dedup();
    Ok(match a.format {
        Format::Text => report::estimate_text(&r, &stats, seed_was_random, a.verbose > 0),
        Format::Json => report::JsonReport::new(&r, &stats, seed_was_random).render(),
        Format::Csv => report::estimate_csv(&r).map_err(|e| CliError::Failed(e.to_string()))?,
    })
}

struct Census(u64);

impl GameVisitor for Census {
    type Output = Result<ExactCensus, OracleError>;
    fn visit<G: Game>(self, game: &G) -> Self::Output {
        exact_census(game, self.0)
    }
}

fn run_exact(a: ExactArgs) -> Result<String, CliError> {
    let config = a.game.config()?;
    let census = config
        .dispatch(Census(a.node_budget))
        .map_err(|e| CliError::Usage(e.to_string()))?
        .map_err(|e| match e {
            OracleError::BudgetExceeded { .. } => CliError::Budget(e),
            e => CliError::Failed(e.to_string()),
        })?;
    match a.format {
        Format::Text => Ok(report::exact_text(&config, &census)),
        Format::Json => Ok(report::exact_json(&config, &census)),
        Format::Csv => Err(CliError::Usage(
            "exact supports --format text or json".into(),
        )),
    }
}

/// The bound for `config`, a description of it, and its per-length terms.
fn bound_for(config: &GameConfig) -> (BigCount, String, Vec<(usize, BigCount)>) {
    match *config {
        GameConfig::Connect {
            rows,
            cols,
            connect_k,
        } => {
            let first = (2 * connect_k).saturating_sub(1).min(rows * cols);
            let terms = column_orderings(rows, cols)
                .into_iter()
                .enumerate()
                .skip(first)
                .collect();
            (
                connect_arrangement_bound(rows, cols, connect_k),
                format!(
                    "sum over N = {first}..={} of disk orderings into columns",
                    rows * cols
                ),
                terms,
            )
        }
        GameConfig::TicTacToe { size } => {
            let open = (size * size) as u32;
            (
                factorial_bound(open),
                format!("{open}! square orderings"),
                Vec::new(),
            )
        }
        GameConfig::Othello { size } => {
            let open = (size * size - 4) as u32;
            (
                factorial_bound(open),
                format!("{open}! empty-square orderings"),
                Vec::new(),
            )
        }
    }
}

fn run_bound(a: BoundArgs) -> Result<String, CliError> {
    let config = a.game.config()?;
    let (bound, kind, terms) = bound_for(&config);
    let terms = if a.verbose > 0 { terms } else { Vec::new() };
    match a.format {
        Format::Text => Ok(report::bound_text(&config, &kind, &bound, &terms)),
        Format::Json => Ok(report::bound_json(&config, &kind, &bound)),
        Format::Csv => Err(CliError::Usage(
            "bound supports --format text or json".into(),
        )),
    }
}

fn run_replay(a: ReplayArgs) -> Result<String, CliError> {
    let config = a.game.config()?;
    let script = std::fs::read_to_string(&a.script)
        .map_err(|e| CliError::Failed(format!("{}: {e}", a.script.display())))?;
    let trace = replay_config(&config, &script).map_err(|e| CliError::Failed(e.to_string()))?;
    match a.format {
        Format::Text => Ok(report::replay_text(&config, &trace)),
        Format::Json => Ok(report::replay_json(&config, &trace)),
        Format::Csv => Err(CliError::Usage(
            "replay supports --format text or json".into(),
        )),
    }
}
