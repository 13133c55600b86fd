//! Closed-tour TSP solving and TSPLIB benchmarking.
//!
//! Two solvers share one generic interface over any [`Weight`]: the
//! double-tree 2-approximation and a deterministic local search
//! (nearest neighbor, 2-opt, or-opt, seeded double-bridge restarts).

mod bench;
mod local_search;
mod tsplib;
mod two_approx;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{Matrix, Weight};

pub use bench::{
    format_table, load_optima, run_benchmark, tsp_files_in, write_csv, BenchConfig, BenchFailure,
    BenchInstance, BenchReport, BenchRow, CSV_HEADER,
};
pub use local_search::{local_search_tour, nearest_neighbor_tour, LocalSearchOptions};
pub use tsplib::{parse_tsplib, tsplib_distance, TspInstance, WeightKind};
pub use two_approx::two_approx_tour;

/// A closed tour: `order` visits every node once and returns to `order[0]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tour<W> {
    pub order: Vec<usize>,
    pub cost: W,
}

impl<W: Weight> Tour<W> {
    pub(crate) fn from_order(m: &Matrix<W>, order: Vec<usize>) -> Self {
        let cost = closed_cost(m, &order);
        Self { order, cost }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolverKind {
    TwoApprox,
    LocalSearch,
}

impl SolverKind {
    pub const ALL: [SolverKind; 2] = [SolverKind::LocalSearch, SolverKind::TwoApprox];

    pub fn as_str(self) -> &'static str {
        match self {
            SolverKind::TwoApprox => "two_approx",
            SolverKind::LocalSearch => "local_search",
        }
    }

    /// Runs this solver on `m` starting from `start`.
    pub fn solve<W: Weight>(
        self,
        m: &Matrix<W>,
        start: usize,
        options: &LocalSearchOptions,
    ) -> Result<Tour<W>> {
        match self {
            SolverKind::TwoApprox => two_approx_tour(m, start),
            SolverKind::LocalSearch => local_search_tour(m, start, options),
        }
    }
}

impl fmt::Display for SolverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SolverKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "two_approx" => Ok(SolverKind::TwoApprox),
            "local_search" => Ok(SolverKind::LocalSearch),
            other => Err(Error::InvalidInput(format!(
                "unknown solver {other:?}, expected two_approx or local_search"
            ))),
        }
    }
}

fn closed_cost<W: Weight>(m: &Matrix<W>, order: &[usize]) -> W {
    let n = order.len();
    (0..n).fold(W::ZERO, |acc, t| acc + m.get(order[t], order[(t + 1) % n]))
}

/// Length of the closed tour `order` over `m`.
pub fn tour_cost<W: Weight>(m: &Matrix<W>, order: &[usize]) -> Result<W> {
    check_permutation(order, m.n())?;
    Ok(closed_cost(m, order))
}

pub(crate) fn check_permutation(order: &[usize], n: usize) -> Result<()> {
    if order.len() != n {
        return Err(Error::InvalidInput(format!(
            "tour has {} nodes, expected {n}",
            order.len()
        )));
    }
    let mut seen = vec![false; n];
    for &v in order {
        if v >= n || std::mem::replace(&mut seen[v], true) {
            return Err(Error::InvalidInput(format!(
                "tour is not a permutation (node {v})"
            )));
        }
    }
    Ok(())
}

/// `100 × (cost − optimal) / optimal`.
pub fn percent_gap(cost: f64, optimal: f64) -> Result<f64> {
    if optimal <= 0.0 || !optimal.is_finite() {
        return Err(Error::InvalidInput(format!(
            "optimal cost must be positive, got {optimal}"
        )));
    }
    Ok(100.0 * (cost - optimal) / optimal)
}

pub(crate) fn check_start(n: usize, start: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidInput(
            "cannot build a tour over zero nodes".into(),
        ));
    }
    if start >= n {
        return Err(Error::InvalidInput(format!(
            "start node {start} out of range for n={n}"
        )));
    }
    Ok(())
}
