//! Dense square matrices of edge weights shared by the planner and the TSP solvers.

use std::cmp::Ordering;
use std::fmt::Debug;
use std::ops::{Add, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Scalar edge weight. Implemented for integer TSPLIB distances and
/// real-valued road distances in meters.
pub trait Weight:
    Copy + Debug + PartialEq + PartialOrd + Add<Output = Self> + Sub<Output = Self> + Send + Sync
{
    const ZERO: Self;

    /// Total order used for deterministic tie-breaking.
    fn total_cmp(&self, other: &Self) -> Ordering;

    /// True when a move with this cost delta strictly shortens a tour.
    fn is_improvement(delta: Self) -> bool;

    fn to_f64(self) -> f64;
}

impl Weight for i64 {
    const ZERO: Self = 0;

    fn total_cmp(&self, other: &Self) -> Ordering {
        self.cmp(other)
    }

    fn is_improvement(delta: Self) -> bool {
        delta < 0
    }

    fn to_f64(self) -> f64 {
        self as f64
    }
}

impl Weight for f64 {
    const ZERO: Self = 0.0;

    fn total_cmp(&self, other: &Self) -> Ordering {
        f64::total_cmp(self, other)
    }

    // Float deltas below this are rounding noise and would let local search cycle.
    fn is_improvement(delta: Self) -> bool {
        delta < -1e-9
    }

    fn to_f64(self) -> f64 {
        self
    }
}

/// Row-major `n × n` matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Matrix<W> {
    n: usize,
    data: Vec<W>,
}

impl<W: Weight> Matrix<W> {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![W::ZERO; n * n],
        }
    }

    /// Builds a matrix from rows, rejecting ragged input.
    pub fn from_rows(rows: Vec<Vec<W>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidInput(format!(
                    "matrix row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            data.extend(row);
        }
        Ok(Self { n, data })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> W) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> W {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, w: W) {
        self.data[i * self.n + j] = w;
    }

    pub fn row(&self, i: usize) -> &[W] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    /// First `(i, j)` with `m[i][j] != m[j][i]`, if any.
    pub fn first_asymmetry(&self) -> Option<(usize, usize)> {
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if self.get(i, j) != self.get(j, i) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Principal submatrix over `nodes`, in the given order.
    pub fn submatrix(&self, nodes: &[usize]) -> Self {
        Self::from_fn(nodes.len(), |a, b| self.get(nodes[a], nodes[b]))
    }

    pub fn to_f64(&self) -> Matrix<f64> {
        Matrix {
            n: self.n,
            data: self.data.iter().map(|w| w.to_f64()).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ragged_rows_rejected() {
        assert!(Matrix::<i64>::from_rows(vec![vec![0, 1], vec![1]]).is_err());
    }

    #[test]
    fn submatrix_follows_node_order() {
        let m = Matrix::from_fn(4, |i, j| (i * 10 + j) as i64);
        let s = m.submatrix(&[3, 1]);
        assert_eq!(s.get(0, 1), 31);
        assert_eq!(s.get(1, 0), 13);
        assert_eq!(m.first_asymmetry(), Some((0, 1)));
    }

    #[test]
    fn float_improvement_ignores_rounding_noise() {
        assert!(!<f64 as Weight>::is_improvement(-1e-12));
        assert!(<f64 as Weight>::is_improvement(-1e-3));
        assert!(<i64 as Weight>::is_improvement(-1));
    }
}
