//! Random playouts and the importance-sampling estimates built from them.
//!
//! A playout picks every move uniformly among the legal ones, so a game `g`
//! with branching factors `c_1..c_N` is generated with probability
//! `1 / Π c_j`. Its weight `X(g) = Π c_j` therefore has expectation equal to
//! the number of games, and weighted ratios give average length and outcome
//! rates.
//!
//! # Determinism
//!
//! Each trial of `n` playouts is cut into blocks of [`BLOCK_SIZE`]
//! playouts. Block `b` of trial `t` draws from its own stream seeded by
//! [`stream_seed`]`(master_seed, t, b)`, and block sums are merged in
//! ascending block order. Workers only decide who computes which block, so
//! results are bit-identical for any worker count.

use std::time::{Duration, Instant};

use rand::{Rng, RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::config::{GameConfig, GameVisitor};
use crate::game::{Game, GameError, GameState, Outcome};
use crate::stats::{self, complete_rates, CompensatedAccumulator, MeanSem, StatsError};

/// Playouts per independently seeded block.
pub const BLOCK_SIZE: u64 = 4096;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EstimateError {
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Stats(#[from] StatsError),
    #[error("samples per trial must be at least 1")]
    NoSamples,
    #[error("at least 2 trials are needed for a standard error, got {0}")]
    TooFewTrials(usize),
    #[error("worker count must be at least 1")]
    NoWorkers,
    #[error("playout weight overflowed the double range (trial {trial}, block {block})")]
    WeightOverflow { trial: u64, block: u64 },
    #[error("could not start worker pool: {0}")]
    Pool(String),
}

/// SplitMix64 output function: a bijective 64-bit avalanche mix.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

const GOLDEN_GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

/// Seed of the stream for block `block` of trial `trial`:
/// `mix64(mix64(mix64(master) + γ·(trial+1)) + γ·(block+1))` with
/// wrapping arithmetic and γ the 64-bit golden-ratio constant.
pub fn stream_seed(master_seed: u64, trial: u64, block: u64) -> u64 {
    let t = mix64(master_seed).wrapping_add(GOLDEN_GAMMA.wrapping_mul(trial.wrapping_add(1)));
    mix64(mix64(t).wrapping_add(GOLDEN_GAMMA.wrapping_mul(block.wrapping_add(1))))
}

/// A seeded SplitMix64 stream (64-bit state).
#[derive(Debug, Clone)]
pub struct RngStream(SplitMix64);

impl RngStream {
    pub fn new(seed: u64) -> Self {
        RngStream(SplitMix64::seed_from_u64(seed))
    }

    pub fn for_block(master_seed: u64, trial: u64, block: u64) -> Self {
        Self::new(stream_seed(master_seed, trial, block))
    }

    /// Unbiased uniform index in `0..bound` (widening multiply with
    /// rejection, no modulo bias).
    #[inline]
    pub fn below(&mut self, bound: u32) -> u32 {
        self.0.gen_range(0..bound)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }
}

/// A chosen move and the inverse of the probability it was chosen with.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Selection {
    pub index: usize,
    pub inverse_probability: f64,
}

/// How a playout picks among `branching` legal moves. The playout weight is
/// the product of the returned inverse probabilities.
pub trait MovePolicy: Sync {
    fn select(&self, branching: usize, rng: &mut RngStream) -> Selection;
}

#[derive(Debug, Clone, Copy, Default)]
pub struct UniformPolicy;

impl MovePolicy for UniformPolicy {
    #[inline]
    fn select(&self, branching: usize, rng: &mut RngStream) -> Selection {
        let index = if branching == 1 {
            0
        } else {
            rng.below(branching as u32) as usize
        };
        Selection {
            index,
            inverse_probability: branching as f64,
        }
    }
}

/// One random game.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlayoutRecord {
    /// Decision plies `N`.
    pub n_plies: u32,
    /// `X = Π c_j` under the uniform policy.
    pub weight: f64,
    pub outcome: Outcome,
}

/// Plays one game from the initial position under `policy`.
///
/// Returns `None` if the weight leaves the finite double range.
#[inline]
pub fn playout_with<G: Game, P: MovePolicy>(
    game: &G,
    policy: &P,
    rng: &mut RngStream,
) -> Option<PlayoutRecord> {
    let mut state = game.initial_state();
    let mut weight = 1.0f64;
    loop {
        let c = game.branching(&state);
        if c == 0 {
            break;
        }
        let pick = policy.select(c, rng);
        weight *= pick.inverse_probability;
        state = game.apply_nth(&state, pick.index);
    }
    if !weight.is_finite() {
        return None;
    }
    Some(PlayoutRecord {
        n_plies: state.ply_count(),
        weight,
        outcome: game.outcome(&state).expect("terminal state has an outcome"),
    })
}

/// Uniform random playout.
pub fn playout<G: Game>(game: &G, rng: &mut RngStream) -> Result<PlayoutRecord, EstimateError> {
    playout_with(game, &UniformPolicy, rng)
        .ok_or(EstimateError::WeightOverflow { trial: 0, block: 0 })
}

/// Weighted sums over the playouts of one trial (or one block of it).
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct TrialSums {
    pub n: u64,
    /// Σ X
    pub sum_x: CompensatedAccumulator,
    /// Σ N·X
    pub sum_y: CompensatedAccumulator,
    /// Σ X over drawn games.
    pub sum_draw: CompensatedAccumulator,
    pub sum_p1: CompensatedAccumulator,
    pub sum_p2: CompensatedAccumulator,
}

impl TrialSums {
    #[inline]
    pub fn record(&mut self, p: &PlayoutRecord) {
        self.n += 1;
        self.sum_x.add(p.weight);
        self.sum_y.add(p.n_plies as f64 * p.weight);
        match p.outcome {
            Outcome::Draw => self.sum_draw.add(p.weight),
            Outcome::P1Win => self.sum_p1.add(p.weight),
            Outcome::P2Win => self.sum_p2.add(p.weight),
        }
    }

    pub fn merge(&mut self, other: &TrialSums) {
        self.n += other.n;
        self.sum_x.merge(&other.sum_x);
        self.sum_y.merge(&other.sum_y);
        self.sum_draw.merge(&other.sum_draw);
        self.sum_p1.merge(&other.sum_p1);
        self.sum_p2.merge(&other.sum_p2);
    }

    /// Per-trial statistics: gts = ΣX/n and the weighted ratios.
    pub fn statistics(&self) -> Result<TrialStatistics, StatsError> {
        let x = self.sum_x.value();
        let draw = stats::trial_ratio(self.sum_draw.value(), x)?;
        let p1 = stats::trial_ratio(self.sum_p1.value(), x)?;
        let (draw_rate, p1_win_rate, p2_win_rate) = complete_rates(draw, p1);
        Ok(TrialStatistics {
            gts: x / self.n as f64,
            agl: stats::trial_ratio(self.sum_y.value(), x)?,
            draw_rate,
            p1_win_rate,
            p2_win_rate,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrialStatistics {
    pub gts: f64,
    pub agl: f64,
    pub draw_rate: f64,
    pub p1_win_rate: f64,
    pub p2_win_rate: f64,
}

impl TrialStatistics {
    /// `draw + p1 + p2`, in that order. Exactly 1.0 by construction.
    pub fn rate_sum(&self) -> f64 {
        self.draw_rate + self.p1_win_rate + self.p2_win_rate
    }
}

/// Runs `n` playouts sequentially from one stream.
pub fn run_block<G: Game, P: MovePolicy>(
    game: &G,
    policy: &P,
    n: u64,
    rng: &mut RngStream,
) -> Option<TrialSums> {
    let mut sums = TrialSums::default();
    for _ in 0..n {
        sums.record(&playout_with(game, policy, rng)?);
    }
    Some(sums)
}

fn blocks(n: u64) -> u64 {
    n.div_ceil(BLOCK_SIZE)
}

fn block_len(n: u64, block: u64) -> u64 {
    (n - block * BLOCK_SIZE).min(BLOCK_SIZE)
}

fn pool(workers: usize) -> Result<rayon::ThreadPool, EstimateError> {
    if workers == 0 {
        return Err(EstimateError::NoWorkers);
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| EstimateError::Pool(e.to_string()))
}

/// Runs every trial, each split into seeded blocks computed on `workers`
/// threads and merged in ascending block order.
pub fn run_trials<G: Game, P: MovePolicy>(
    game: &G,
    policy: &P,
    n: u64,
    trials: usize,
    master_seed: u64,
    workers: usize,
) -> Result<Vec<TrialSums>, EstimateError> {
    if n == 0 {
        return Err(EstimateError::NoSamples);
    }
    let per_trial = blocks(n);
    let jobs: Vec<(u64, u64)> = (0..trials as u64)
        .flat_map(|t| (0..per_trial).map(move |b| (t, b)))
        .collect();
    let partials: Vec<Result<TrialSums, EstimateError>> = pool(workers)?.install(|| {
        jobs.par_iter()
            .map(|&(trial, block)| {
                let mut rng = RngStream::for_block(master_seed, trial, block);
                run_block(game, policy, block_len(n, block), &mut rng)
                    .ok_or(EstimateError::WeightOverflow { trial, block })
            })
            .collect()
    });
    let mut out = Vec::with_capacity(trials);
    let mut iter = partials.into_iter();
    for _ in 0..trials {
        let mut sums = TrialSums::default();
        for _ in 0..per_trial {
            sums.merge(&iter.next().expect("one partial per job")?);
        }
        out.push(sums);
    }
    Ok(out)
}

/// One trial of `n` uniform playouts.
pub fn run_trial<G: Game>(
    game: &G,
    n: u64,
    master_seed: u64,
    trial: u64,
    workers: usize,
) -> Result<TrialSums, EstimateError> {
    if n == 0 {
        return Err(EstimateError::NoSamples);
    }
    let per_trial = blocks(n);
    let partials: Vec<Option<TrialSums>> = pool(workers)?.install(|| {
        (0..per_trial)
            .into_par_iter()
            .map(|block| {
                let mut rng = RngStream::for_block(master_seed, trial, block);
                run_block(game, &UniformPolicy, block_len(n, block), &mut rng)
            })
            .collect()
    });
    let mut sums = TrialSums::default();
    for (block, part) in partials.into_iter().enumerate() {
        let part = part.ok_or(EstimateError::WeightOverflow {
            trial,
            block: block as u64,
        })?;
        sums.merge(&part);
    }
    Ok(sums)
}

/// Size and seeding of an estimation run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunPlan {
    /// Playouts per trial.
    pub samples: u64,
    pub trials: usize,
    pub master_seed: u64,
    pub workers: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EstimateReport {
    pub config: GameConfig,
    pub plan: RunPlan,
    pub gts: MeanSem,
    pub agl: MeanSem,
    pub draw_rate: MeanSem,
    pub p1_win_rate: MeanSem,
    pub p2_win_rate: MeanSem,
    pub per_trial: Vec<TrialStatistics>,
    pub wall_time: Duration,
}

impl EstimateReport {
    /// Sum of the three rate estimates, `draw + p1 + p2`.
    pub fn rate_sum(&self) -> f64 {
        self.draw_rate.mean + self.p1_win_rate.mean + self.p2_win_rate.mean
    }
}

/// Generic estimate over an already-built engine.
pub fn estimate_game<G: Game>(
    game: &G,
    config: GameConfig,
    plan: RunPlan,
) -> Result<EstimateReport, EstimateError> {
    if plan.trials < 2 {
        return Err(EstimateError::TooFewTrials(plan.trials));
    }
    let start = Instant::now();
    let sums = run_trials(
        game,
        &UniformPolicy,
        plan.samples,
        plan.trials,
        plan.master_seed,
        plan.workers,
    )?;
    let per_trial = sums
        .iter()
        .map(TrialSums::statistics)
        .collect::<Result<Vec<_>, _>>()?;
    let column = |f: fn(&TrialStatistics) -> f64| -> Result<MeanSem, StatsError> {
        stats::mean_sem(&per_trial.iter().map(f).collect::<Vec<_>>())
    };
    let draw_rate = column(|t| t.draw_rate)?;
    let p1_win_rate = column(|t| t.p1_win_rate)?;
    let mut p2_win_rate = column(|t| t.p2_win_rate)?;
    p2_win_rate.mean = complete_rates(draw_rate.mean, p1_win_rate.mean).2;
    Ok(EstimateReport {
        config,
        plan,
        gts: column(|t| t.gts)?,
        agl: column(|t| t.agl)?,
        draw_rate,
        p1_win_rate,
        p2_win_rate,
        per_trial,
        wall_time: start.elapsed(),
    })
}

/// Estimates game-tree size and the related statistics for `config`.
pub fn estimate(config: &GameConfig, plan: RunPlan) -> Result<EstimateReport, EstimateError> {
    struct Run(GameConfig, RunPlan);
    impl GameVisitor for Run {
        type Output = Result<EstimateReport, EstimateError>;
        fn visit<G: Game>(self, game: &G) -> Self::Output {
            estimate_game(game, self.0, self.1)
        }
    }
    config.dispatch(Run(*config, plan))?
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::{ConnectN, Othello, TicTacToe};
    use std::sync::Mutex;

    /// Uniform policy that also records every branching factor it sees.
    struct Recording(Mutex<Vec<usize>>);

    impl MovePolicy for Recording {
        fn select(&self, branching: usize, rng: &mut RngStream) -> Selection {
            self.0.lock().unwrap().push(branching);
            UniformPolicy.select(branching, rng)
        }
    }

    #[test]
    fn stream_seeds_differ() {
        let a = stream_seed(1, 0, 0);
        assert_ne!(a, stream_seed(1, 0, 1));
        assert_ne!(a, stream_seed(1, 1, 0));
        assert_ne!(a, stream_seed(2, 0, 0));
        assert_eq!(a, stream_seed(1, 0, 0));
        // Swapping trial and block indices gives a different stream.
        assert_ne!(stream_seed(5, 1, 2), stream_seed(5, 2, 1));
    }

    #[test]
    fn mix64_known_values() {
        // First outputs of SplitMix64 seeded with 0 are mix64(γ), mix64(2γ).
        assert_eq!(mix64(GOLDEN_GAMMA), 0xe220_a839_7b1d_cdaf);
        assert_eq!(mix64(GOLDEN_GAMMA.wrapping_mul(2)), 0x6e78_9e6a_a1b9_65f4);
    }

    #[test]
    fn below_is_roughly_uniform() {
        let mut rng = RngStream::new(99);
        let mut counts = [0u32; 7];
        for _ in 0..70_000 {
            counts[rng.below(7) as usize] += 1;
        }
        for c in counts {
            assert!((9_400..10_600).contains(&c), "{counts:?}");
        }
    }

    #[test]
    fn weights_are_products_of_branching_factors() {
        let g = TicTacToe::standard();
        let mut rng = RngStream::new(3);
        for _ in 0..500 {
            let rec = Recording(Mutex::new(Vec::new()));
            let p = playout_with(&g, &rec, &mut rng).unwrap();
            let factors = rec.0.into_inner().unwrap();
            assert_eq!(factors.len() as u32, p.n_plies);
            let product: u64 = factors.iter().map(|&c| c as u64).product();
            assert_eq!(p.weight.round() as u64, product);
            assert!(p.weight >= 1.0);
            assert!((5..=9).contains(&p.n_plies));
        }
    }

    #[test]
    fn single_playout_trial() {
        let g = TicTacToe::standard();
        let sums = run_trial(&g, 1, 11, 0, 1).unwrap();
        let mut rng = RngStream::for_block(11, 0, 0);
        let p = playout(&g, &mut rng).unwrap();
        assert_eq!(sums.n, 1);
        assert_eq!(sums.sum_x.value(), p.weight);
        assert_eq!(sums.sum_y.value(), p.weight * p.n_plies as f64);
    }

    #[test]
    fn trial_is_independent_of_worker_count() {
        let g = ConnectN::standard();
        let one = run_trial(&g, 3 * BLOCK_SIZE + 17, 5, 2, 1).unwrap();
        let many = run_trial(&g, 3 * BLOCK_SIZE + 17, 5, 2, 8).unwrap();
        assert_eq!(one, many);
        let all = run_trials(&g, &UniformPolicy, 3 * BLOCK_SIZE + 17, 3, 5, 3).unwrap();
        assert_eq!(all[2], one);
    }

    #[test]
    fn outcome_sums_partition_total() {
        let g = TicTacToe::standard();
        let s = run_trial(&g, 5000, 8, 0, 2).unwrap();
        let parts = s.sum_draw.value() + s.sum_p1.value() + s.sum_p2.value();
        // Integer weights below 2^53 sum exactly.
        assert_eq!(parts, s.sum_x.value());
        assert!(s.sum_y.value() >= 5.0 * s.sum_x.value());
    }

    #[test]
    fn estimate_rejects_bad_plans() {
        let cfg = GameConfig::TicTacToe { size: 3 };
        let plan = RunPlan {
            samples: 10,
            trials: 1,
            master_seed: 0,
            workers: 1,
        };
        assert_eq!(estimate(&cfg, plan), Err(EstimateError::TooFewTrials(1)));
        let plan = RunPlan {
            trials: 2,
            samples: 0,
            ..plan
        };
        assert_eq!(estimate(&cfg, plan), Err(EstimateError::NoSamples));
        let plan = RunPlan {
            samples: 5,
            workers: 0,
            ..plan
        };
        assert_eq!(estimate(&cfg, plan), Err(EstimateError::NoWorkers));
    }

    #[test]
    fn tic_tac_toe_estimate_is_sane() {
        let report = estimate(
            &GameConfig::TicTacToe { size: 3 },
            RunPlan {
                samples: 2000,
                trials: 10,
                master_seed: 42,
                workers: 2,
            },
        )
        .unwrap();
        assert!((report.gts.mean - 255168.0).abs() < 5.0 * report.gts.sem + 1.0);
        assert!((5.0..=9.0).contains(&report.agl.mean));
        assert_eq!(report.rate_sum(), 1.0);
        for t in &report.per_trial {
            assert_eq!(t.rate_sum(), 1.0);
        }
    }

    #[test]
    fn othello_playouts_stay_within_bounds() {
        let g = Othello::standard();
        let mut rng = RngStream::new(1);
        for _ in 0..200 {
            let p = playout(&g, &mut rng).unwrap();
            assert!(p.n_plies <= 60);
            assert!(p.weight >= 1.0 && p.weight.is_finite());
        }
    }
}
