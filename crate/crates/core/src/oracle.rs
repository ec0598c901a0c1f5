//! Exact ground truth: full game-tree census for small games and exact
//! combinatorial upper bounds on the number of games.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::game::{Game, GameState, Outcome};

/// Default node budget for [`exact_census`]: about 10^9 visited nodes.
pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000_000;

/// Exact nonnegative integer.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct BigCount(pub BigUint);

impl BigCount {
    pub fn zero() -> Self {
        BigCount(BigUint::zero())
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::INFINITY)
    }

    /// Scientific rendering with `digits` significant digits, computed from
    /// the exact decimal expansion (e.g. `4.065e31`).
    pub fn scientific(&self, digits: usize) -> String {
        let s = self.0.to_str_radix(10);
        if s.len() <= 1 {
            return format!("{s}e0");
        }
        let exp = s.len() - 1;
        let digits = digits.max(1).min(s.len());
        // Round half up on the decimal string.
        let mut head: Vec<u8> = s.as_bytes()[..digits].iter().map(|b| b - b'0').collect();
        let mut exp = exp;
        if s.as_bytes().get(digits).is_some_and(|&b| b >= b'5') {
            let mut i = head.len();
            loop {
                if i == 0 {
                    head.insert(0, 1);
                    head.pop();
                    exp += 1;
                    break;
                }
                i -= 1;
                if head[i] == 9 {
                    head[i] = 0;
                } else {
                    head[i] += 1;
                    break;
                }
            }
        }
        let mut out = String::new();
        out.push((b'0' + head[0]) as char);
        if head.len() > 1 {
            out.push('.');
            out.extend(head[1..].iter().map(|d| (b'0' + d) as char));
        }
        format!("{out}e{exp}")
    }
}

impl From<u64> for BigCount {
    fn from(v: u64) -> Self {
        BigCount(BigUint::from(v))
    }
}

impl fmt::Display for BigCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl Serialize for BigCount {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(&self.0)
    }
}

/// Leaf counts of a complete game tree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactCensus {
    pub leaves: BigCount,
    pub draws: BigCount,
    pub p1_wins: BigCount,
    pub p2_wins: BigCount,
    /// Number of games by decision-ply count.
    pub length_histogram: BTreeMap<u32, BigCount>,
    /// Nodes visited, leaves included.
    pub nodes: u64,
}

impl ExactCensus {
    /// Σ length × count over the histogram.
    pub fn total_plies(&self) -> BigCount {
        BigCount(
            self.length_histogram
                .iter()
                .map(|(len, n)| BigUint::from(*len) * &n.0)
                .sum(),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error(
        "node budget of {budget} exceeded after {nodes} nodes and {leaves} complete games; \
         raise --node-budget to continue"
    )]
    BudgetExceeded {
        budget: u64,
        nodes: u64,
        leaves: u64,
    },
    #[error("census has no leaves")]
    EmptyCensus,
}

struct Walk {
    budget: u64,
    nodes: u64,
    by_outcome: [u64; 3],
    by_length: BTreeMap<u32, u64>,
}

impl Walk {
    fn leaves(&self) -> u64 {
        self.by_outcome.iter().sum()
    }

    fn visit<G: Game>(&mut self, game: &G, state: &G::State) -> Result<(), OracleError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(OracleError::BudgetExceeded {
                budget: self.budget,
                nodes: self.nodes - 1,
                leaves: self.leaves(),
            });
        }
        let c = game.branching(state);
        if c == 0 {
            let slot = match game.outcome(state).expect("terminal state has an outcome") {
                Outcome::Draw => 0,
                Outcome::P1Win => 1,
                Outcome::P2Win => 2,
            };
            self.by_outcome[slot] += 1;
            *self.by_length.entry(state.ply_count()).or_default() += 1;
            return Ok(());
        }
        for i in 0..c {
            let child = game.apply_nth(state, i);
            self.visit(game, &child)?;
        }
        Ok(())
    }
}

/// Depth-first count of every root-to-leaf path (every distinct game). No
/// transpositions are merged. Aborts once more than `node_budget` nodes have
/// been visited.
pub fn exact_census<G: Game>(game: &G, node_budget: u64) -> Result<ExactCensus, OracleError> {
    let mut walk = Walk {
        budget: node_budget,
        nodes: 0,
        by_outcome: [0; 3],
        by_length: BTreeMap::new(),
    };
    walk.visit(game, &game.initial_state())?;
    let [draws, p1, p2] = walk.by_outcome;
    Ok(ExactCensus {
        leaves: BigCount::from(walk.leaves()),
        draws: draws.into(),
        p1_wins: p1.into(),
        p2_wins: p2.into(),
        length_histogram: walk
            .by_length
            .into_iter()
            .map(|(k, v)| (k, v.into()))
            .collect(),
        nodes: walk.nodes,
    })
}

/// Exact average game length Σ length·count / leaves, in lowest terms.
pub fn census_agl(census: &ExactCensus) -> Result<BigRational, OracleError> {
    if census.leaves.0.is_zero() {
        return Err(OracleError::EmptyCensus);
    }
    Ok(BigRational::new(
        BigInt::from(census.total_plies().0),
        BigInt::from(census.leaves.0.clone()),
    ))
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Number of orderings of `n` labelled disks into `cols` columns of
/// capacity `rows`, for every `n` in `0..=rows*cols`.
///
/// Equivalently `n! [x^n] (Σ_{i=0}^{rows} x^i / i!)^cols`, evaluated by exact
/// dynamic programming over columns: placing `i` disks in a new column
/// chooses which `i` of the `n + i` labels it receives.
pub fn column_orderings(rows: usize, cols: usize) -> Vec<BigCount> {
    let max = rows * cols;
    let binom = pascal(max);
    let mut ways = vec![BigUint::zero(); max + 1];
    ways[0] = BigUint::one();
    for filled_cols in 0..cols {
        let reach = filled_cols * rows;
        let mut next = vec![BigUint::zero(); max + 1];
        for (n, w) in ways.iter().enumerate().take(reach + 1) {
            if w.is_zero() {
                continue;
            }
            for i in 0..=rows {
                next[n + i] += w * &binom[n + i][i];
            }
        }
        ways = next;
    }
    ways.into_iter().map(BigCount).collect()
}

fn pascal(max: usize) -> Vec<Vec<BigUint>> {
    let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(max + 1);
    for n in 0..=max {
        let mut row = vec![BigUint::one(); n + 1];
        for k in 1..n {
            row[k] = &rows[n - 1][k - 1] + &rows[n - 1][k];
        }
        rows.push(row);
    }
    rows
}

/// Upper bound on the number of Connect-N games: every game of `N` plies is
/// an ordering of `N` labelled disks into the columns, and no game ends
/// before `min(2k - 1, rows*cols)` plies.
pub fn connect_arrangement_bound(rows: usize, cols: usize, connect_k: usize) -> BigCount {
    let orderings = column_orderings(rows, cols);
    let full = rows * cols;
    let first = (2 * connect_k).saturating_sub(1).min(full);
    BigCount(orderings[first..].iter().map(|t| &t.0).sum())
}

/// `open_squares!`, the count of all orders in which the squares can be
/// filled.
pub fn factorial_bound(open_squares: u32) -> BigCount {
    BigCount((1..=open_squares).map(BigUint::from).product())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::{ConnectN, TicTacToe};

    #[test]
    fn tic_tac_toe_census() {
        let c = exact_census(&TicTacToe::standard(), DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(c.leaves, 255168.into());
        assert_eq!(c.draws, 46080.into());
        assert_eq!(c.p1_wins, 131184.into());
        assert_eq!(c.p2_wins, 77904.into());
        let hist: Vec<(u32, u64)> = c
            .length_histogram
            .iter()
            .map(|(k, v)| (*k, v.0.to_u64().unwrap()))
            .collect();
        assert_eq!(
            hist,
            [(5, 1440), (6, 5328), (7, 47952), (8, 72576), (9, 127872)]
        );
        let agl = census_agl(&c).unwrap();
        // 5*1440 + 6*5328 + 7*47952 + 8*72576 + 9*127872 = 2106288.
        assert_eq!(c.total_plies(), 2106288.into());
        assert_eq!(agl, BigRational::new(2106288.into(), 255168.into()));
        assert!((rational_to_f64(&agl) - 8.254515).abs() < 1e-6);
    }

    #[test]
    fn one_cell_board_has_one_game() {
        let c = exact_census(&TicTacToe::new(1).unwrap(), 10).unwrap();
        assert_eq!(c.leaves, 1.into());
        assert_eq!(c.p1_wins, 1.into());
    }

    #[test]
    fn budget_guard_fires() {
        let err = exact_census(&ConnectN::standard(), 1000).unwrap_err();
        assert!(matches!(
            err,
            OracleError::BudgetExceeded { budget: 1000, .. }
        ));
        assert!(err.to_string().contains("--node-budget"));
    }

    #[test]
    fn agl_of_uniform_histogram() {
        let c = ExactCensus {
            leaves: 10.into(),
            draws: 10.into(),
            p1_wins: BigCount::zero(),
            p2_wins: BigCount::zero(),
            length_histogram: [(5, 10.into())].into_iter().collect(),
            nodes: 0,
        };
        assert_eq!(census_agl(&c).unwrap(), BigRational::from_integer(5.into()));
        let empty = ExactCensus {
            leaves: BigCount::zero(),
            length_histogram: BTreeMap::new(),
            ..c
        };
        assert_eq!(census_agl(&empty), Err(OracleError::EmptyCensus));
    }

    #[test]
    fn connect_four_bound() {
        assert_eq!(
            connect_arrangement_bound(6, 7, 4).to_string(),
            "40645234186579304685384521259174"
        );
        assert_eq!(connect_arrangement_bound(6, 7, 4).scientific(3), "4.06e31");
    }

    #[test]
    fn tiny_bounds() {
        assert_eq!(connect_arrangement_bound(1, 2, 1), 4.into());
        // No win possible: only complete fillings count.
        for c in 1..=6u32 {
            assert_eq!(
                connect_arrangement_bound(1, c as usize, c as usize + 1),
                factorial_bound(c)
            );
        }
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial_bound(0), 1.into());
        assert_eq!(factorial_bound(9), 362880.into());
        let f60 = factorial_bound(60);
        assert_eq!(f60.to_string().len(), 82);
        assert_eq!(f60.scientific(3), "8.32e81");
        for n in 1..=30 {
            assert_eq!(
                factorial_bound(n).0,
                BigUint::from(n) * factorial_bound(n - 1).0
            );
        }
    }

    #[test]
    fn scientific_rounding() {
        assert_eq!(BigCount::from(9999).scientific(2), "1.0e4");
        assert_eq!(BigCount::from(7).scientific(3), "7e0");
        assert_eq!(BigCount::from(123456).scientific(4), "1.235e5");
        assert_eq!(BigCount::from(100).scientific(1), "1e2");
    }
}
