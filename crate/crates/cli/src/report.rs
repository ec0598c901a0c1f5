//! Text, JSON and CSV renderings of run results.
//!
//! The estimate JSON has three top-level objects: `config` (what was run),
//! `results` (one `{estimate, sem, unit}` entry per statistic) and
//! `provenance` (seed, workers, version, method, wall time). Key order is
//! fixed by the struct definitions and floats use shortest round-trip
//! formatting, so identical runs give identical bytes apart from
//! `wall_time_secs`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use gts_core::oracle::{census_agl, rational_to_f64, BigCount, ExactCensus};
use gts_core::trace::Trace;
use gts_core::{EstimateReport, GameConfig, MeanSem};
use serde::{Deserialize, Serialize};

use crate::args::Stat;

pub const SEM_METHOD: &str =
    "per-trial statistics; mean and sample standard deviation / sqrt(trials) across trials";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JsonReport {
    pub config: RunConfigJson,
    pub results: Results,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfigJson {
    #[serde(flatten)]
    pub game: GameConfig,
    pub samples: u64,
    pub trials: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StatJson {
    pub estimate: f64,
    pub sem: f64,
    pub unit: Unit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Unit {
    Games,
    Plies,
    Fraction,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Results {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub gts: Option<StatJson>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub agl: Option<StatJson>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub draw_rate: Option<StatJson>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub p1_win_rate: Option<StatJson>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub p2_win_rate: Option<StatJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub seed: u64,
    pub seed_was_random: bool,
    pub workers: usize,
    pub version: String,
    pub sem_method: String,
    pub wall_time_secs: f64,
}

fn stat(m: &MeanSem, unit: Unit) -> StatJson {
    StatJson {
        estimate: m.mean,
        sem: m.sem,
        unit,
    }
}

impl JsonReport {
    pub fn new(report: &EstimateReport, stats: &[Stat], seed_was_random: bool) -> Self {
        let pick = |s: Stat, m: &MeanSem, unit| stats.contains(&s).then(|| stat(m, unit));
        JsonReport {
            config: RunConfigJson {
                game: report.config,
                samples: report.plan.samples,
                trials: report.plan.trials,
            },
            results: Results {
                gts: pick(Stat::Gts, &report.gts, Unit::Games),
                agl: pick(Stat::Agl, &report.agl, Unit::Plies),
                draw_rate: pick(Stat::Draw, &report.draw_rate, Unit::Fraction),
                p1_win_rate: pick(Stat::P1, &report.p1_win_rate, Unit::Fraction),
                p2_win_rate: pick(Stat::P2, &report.p2_win_rate, Unit::Fraction),
            },
            provenance: Provenance {
                seed: report.plan.master_seed,
                seed_was_random,
                workers: report.plan.workers,
                version: env!("CARGO_PKG_VERSION").to_string(),
                sem_method: SEM_METHOD.to_string(),
                wall_time_secs: report.wall_time.as_secs_f64(),
            },
        }
    }

    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// Four significant digits in scientific notation.
pub fn sci(x: f64) -> String {
    format!("{x:.3e}")
}

pub fn estimate_text(
    report: &EstimateReport,
    stats: &[Stat],
    seed_was_random: bool,
    verbose: bool,
) -> String {
    let mut out = String::new();
    let plan = &report.plan;
    let _ = writeln!(out, "game:    {}", report.config);
    let _ = writeln!(
        out,
        "run:     {} playouts x {} trials, {} workers",
        plan.samples, plan.trials, plan.workers
    );
    let _ = writeln!(
        out,
        "seed:    {}{}",
        plan.master_seed,
        if seed_was_random {
            " (chosen at random; pass --seed to reproduce)"
        } else {
            ""
        }
    );
    let rows = [
        (Stat::Gts, "gts", &report.gts, " games"),
        (Stat::Agl, "agl", &report.agl, " plies"),
        (Stat::Draw, "draw rate", &report.draw_rate, ""),
        (Stat::P1, "P1 win rate", &report.p1_win_rate, ""),
        (Stat::P2, "P2 win rate", &report.p2_win_rate, ""),
    ];
    for (s, name, m, unit) in rows {
        if stats.contains(&s) {
            let _ = writeln!(out, "{name:<12} {} ± {}{unit}", sci(m.mean), sci(m.sem));
        }
    }
    if verbose {
        let _ = writeln!(out, "per trial (gts, agl, draw, p1, p2):");
        for (i, t) in report.per_trial.iter().enumerate() {
            let _ = writeln!(
                out,
                "  {i:>4}  {}  {}  {}  {}  {}",
                sci(t.gts),
                sci(t.agl),
                sci(t.draw_rate),
                sci(t.p1_win_rate),
                sci(t.p2_win_rate)
            );
        }
    }
    let _ = writeln!(out, "± is the standard error: {SEM_METHOD}");
    let _ = writeln!(out, "wall time: {:.3} s", report.wall_time.as_secs_f64());
    out
}

#[derive(Debug, Serialize)]
struct CsvRow {
    trial: usize,
    samples: u64,
    gts: f64,
    agl: f64,
    draw_rate: f64,
    p1_win_rate: f64,
    p2_win_rate: f64,
}

/// One row per trial, full precision.
pub fn estimate_csv(report: &EstimateReport) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for (trial, t) in report.per_trial.iter().enumerate() {
        w.serialize(CsvRow {
            trial,
            samples: report.plan.samples,
            gts: t.gts,
            agl: t.agl,
            draw_rate: t.draw_rate,
            p1_win_rate: t.p1_win_rate,
            p2_win_rate: t.p2_win_rate,
        })?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv is utf-8"))
}

#[derive(Debug, Serialize)]
struct ExactJson<'a> {
    config: &'a GameConfig,
    leaves: &'a BigCount,
    draws: &'a BigCount,
    p1_wins: &'a BigCount,
    p2_wins: &'a BigCount,
    length_histogram: &'a BTreeMap<u32, BigCount>,
    total_plies: BigCount,
    agl: AglJson,
    nodes: u64,
}

#[derive(Debug, Serialize)]
struct AglJson {
    numerator: String,
    denominator: String,
    value: f64,
}

pub fn exact_json(config: &GameConfig, census: &ExactCensus) -> String {
    let agl = census_agl(census).expect("a finished game tree has leaves");
    let doc = ExactJson {
        config,
        leaves: &census.leaves,
        draws: &census.draws,
        p1_wins: &census.p1_wins,
        p2_wins: &census.p2_wins,
        length_histogram: &census.length_histogram,
        total_plies: census.total_plies(),
        agl: AglJson {
            numerator: agl.numer().to_string(),
            denominator: agl.denom().to_string(),
            value: rational_to_f64(&agl),
        },
        nodes: census.nodes,
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("census serializes");
    s.push('\n');
    s
}

pub fn exact_text(config: &GameConfig, census: &ExactCensus) -> String {
    let agl = census_agl(census).expect("a finished game tree has leaves");
    let mut out = String::new();
    let _ = writeln!(out, "game:    {config}");
    let _ = writeln!(out, "leaves:  {}", census.leaves);
    let _ = writeln!(out, "draws:   {}", census.draws);
    let _ = writeln!(out, "P1 wins: {}", census.p1_wins);
    let _ = writeln!(out, "P2 wins: {}", census.p2_wins);
    let _ = writeln!(out, "length histogram:");
    for (len, n) in &census.length_histogram {
        let _ = writeln!(out, "  {len:>3}: {n}");
    }
    let _ = writeln!(
        out,
        "agl:     {}/{} = {} ≈ {:.4}",
        census.total_plies(),
        census.leaves,
        agl,
        rational_to_f64(&agl)
    );
    let _ = writeln!(out, "nodes visited: {}", census.nodes);
    out
}

#[derive(Debug, Serialize)]
struct BoundJson<'a> {
    config: &'a GameConfig,
    kind: &'a str,
    bound: &'a BigCount,
    scientific: String,
}

pub fn bound_json(config: &GameConfig, kind: &str, bound: &BigCount) -> String {
    let mut s = serde_json::to_string_pretty(&BoundJson {
        config,
        kind,
        bound,
        scientific: bound.scientific(4),
    })
    .expect("bound serializes");
    s.push('\n');
    s
}

pub fn bound_text(
    config: &GameConfig,
    kind: &str,
    bound: &BigCount,
    terms: &[(usize, BigCount)],
) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "game:  {config}");
    let _ = writeln!(out, "bound: {kind}");
    for (n, t) in terms {
        let _ = writeln!(out, "  T_{n} = {t}");
    }
    let _ = writeln!(out, "{bound}");
    let _ = writeln!(out, "≈ {}", bound.scientific(4));
    out
}

pub fn replay_text(config: &GameConfig, trace: &Trace) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "game: {config}");
    let _ = writeln!(out, "ply 0");
    out.push_str(&trace.initial_board);
    for step in &trace.steps {
        let _ = writeln!(
            out,
            "\nply {}: {:?} plays {}  c = {}  X = {}",
            step.ply, step.mover, step.notation, step.branching, step.weight
        );
        out.push_str(&step.board);
    }
    let outcome = trace
        .outcome
        .map(|o| o.to_string())
        .unwrap_or_else(|| "unfinished".into());
    let _ = writeln!(
        out,
        "\nN = {}, X = {} (≈ {}), outcome: {outcome}",
        trace.n_plies,
        trace.weight,
        trace.weight.scientific(3)
    );
    out
}

#[derive(Debug, Serialize)]
struct ReplayJson<'a> {
    config: &'a GameConfig,
    n_plies: u32,
    weight: &'a BigCount,
    outcome: Option<String>,
    steps: Vec<StepJson<'a>>,
}

#[derive(Debug, Serialize)]
struct StepJson<'a> {
    ply: u32,
    mover: String,
    notation: &'a str,
    branching: usize,
    weight: &'a BigCount,
    board: Vec<&'a str>,
}

pub fn replay_json(config: &GameConfig, trace: &Trace) -> String {
    let doc = ReplayJson {
        config,
        n_plies: trace.n_plies,
        weight: &trace.weight,
        outcome: trace.outcome.map(|o| o.to_string()),
        steps: trace
            .steps
            .iter()
            .map(|s| StepJson {
                ply: s.ply,
                mover: format!("{:?}", s.mover),
                notation: &s.notation,
                branching: s.branching,
                weight: &s.weight,
                board: s.board.lines().collect(),
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("trace serializes");
    s.push('\n');
    s
}
