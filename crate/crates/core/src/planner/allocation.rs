use crate::error::{Error, Result};
use crate::graph::{Tree, VertexSet};
use crate::matrix::Weight;

/// Goods per node in units of persons served.
#[derive(Debug, Clone, PartialEq)]
pub struct Allocation {
    pub fractional: Vec<f64>,
    /// Largest-remainder rounding of `fractional`; sums exactly to total population.
    pub integral: Vec<u64>,
}

/// Each warehouse keeps its own demand plus an equal share of the demand of
/// every non-warehouse tree neighbor. Shares accumulate across neighbors.
pub fn allocate_resources<W: Weight>(
    tree: &Tree<W>,
    warehouses: &VertexSet,
    populations: &[u64],
) -> Result<Allocation> {
    let n = tree.n();
    if populations.len() != n {
        return Err(Error::InvalidInput(format!(
            "expected {n} populations, got {}",
            populations.len()
        )));
    }
    let mut fractional: Vec<f64> = (0..n)
        .map(|j| {
            if warehouses.contains(j) {
                populations[j] as f64
            } else {
                0.0
            }
        })
        .collect();
    for i in (0..n).filter(|&i| !warehouses.contains(i)) {
        let serving: Vec<usize> = tree
            .neighbors(i)
            .iter()
            .copied()
            .filter(|&j| warehouses.contains(j))
            .collect();
        if serving.is_empty() {
            return Err(Error::InvalidInput(format!(
                "node {i} has no adjacent warehouse in the tree; warehouses must cover every tree edge"
            )));
        }
        let share = populations[i] as f64 / serving.len() as f64;
        for j in serving {
            fractional[j] += share;
        }
    }
    let total: u64 = populations.iter().sum();
    let integral = largest_remainder(&fractional, warehouses, total);
    Ok(Allocation {
        fractional,
        integral,
    })
}

fn largest_remainder(values: &[f64], support: &VertexSet, total: u64) -> Vec<u64> {
    let mut out = vec![0u64; values.len()];
    let mut order: Vec<(f64, usize)> = Vec::with_capacity(support.len());
    let mut assigned: u64 = 0;
    for j in support.iter() {
        let floor = values[j].floor();
        out[j] = floor as u64;
        assigned += out[j];
        order.push((values[j] - floor, j));
    }
    if order.is_empty() {
        return out;
    }
    // Biggest remainders first, lower id on ties.
    order.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
    let mut k = 0;
    while assigned < total {
        out[order[k % order.len()].1] += 1;
        assigned += 1;
        k += 1;
    }
    // Only reachable through float error pushing floors past the exact total.
    let mut k = order.len();
    while assigned > total {
        k = if k == 0 { order.len() - 1 } else { k - 1 };
        let j = order[k].1;
        if out[j] > 0 {
            out[j] -= 1;
            assigned -= 1;
        }
    }
    out
}
