use std::time::{Duration, Instant};

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::matrix::{Matrix, Weight};

use super::{check_start, closed_cost, Tour};

#[derive(Debug, Clone, PartialEq)]
pub struct LocalSearchOptions {
    /// Wall-clock cap. Output is deterministic unless this cap is hit.
    pub time_budget: Duration,
    /// Seeds the double-bridge restarts.
    pub seed: u64,
    /// Number of double-bridge restarts; `None` picks a size-dependent default.
    pub kicks: Option<usize>,
}

impl Default for LocalSearchOptions {
    fn default() -> Self {
        Self {
            time_budget: Duration::from_secs(10),
            seed: 0,
            kicks: None,
        }
    }
}

impl LocalSearchOptions {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }

    fn kicks_for(&self, n: usize) -> usize {
        if n < 8 {
            return 0;
        }
        self.kicks.unwrap_or_else(|| (100 + 10 * n).min(2500))
    }
}

/// Greedy nearest-neighbor tour from `start`; ties go to the lower node id.
pub fn nearest_neighbor_tour<W: Weight>(m: &Matrix<W>, start: usize) -> Result<Tour<W>> {
    check_start(m.n(), start)?;
    let n = m.n();
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut cur = start;
    visited[cur] = true;
    order.push(cur);
    for _ in 1..n {
        let next = (0..n)
            .filter(|&v| !visited[v])
            .min_by(|&a, &b| m.get(cur, a).total_cmp(&m.get(cur, b)).then(a.cmp(&b)))
            .expect("unvisited node remains");
        visited[next] = true;
        order.push(next);
        cur = next;
    }
    Ok(Tour::from_order(m, order))
}

/// Nearest-neighbor construction, best-improvement 2-opt and or-opt to a
/// joint local optimum, then seeded double-bridge restarts that keep the
/// best tour found. The returned tour starts at `start`.
pub fn local_search_tour<W: Weight>(
    m: &Matrix<W>,
    start: usize,
    options: &LocalSearchOptions,
) -> Result<Tour<W>> {
    let nn = nearest_neighbor_tour(m, start)?;
    let n = m.n();
    let deadline = Instant::now() + options.time_budget;

    let mut best = nn.order;
    descend(m, &mut best, deadline);
    let mut best_cost = closed_cost(m, &best);

    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    for _ in 0..options.kicks_for(n) {
        if Instant::now() >= deadline {
            break;
        }
        let mut cand = double_bridge(&best, &mut rng);
        descend(m, &mut cand, deadline);
        let cost = closed_cost(m, &cand);
        if W::is_improvement(cost - best_cost) {
            best = cand;
            best_cost = cost;
        }
    }

    let at = best
        .iter()
        .position(|&v| v == start)
        .expect("start is in tour");
    best.rotate_left(at);
    Ok(Tour::from_order(m, best))
}

fn descend<W: Weight>(m: &Matrix<W>, tour: &mut Vec<usize>, deadline: Instant) {
    loop {
        two_opt(m, tour, deadline);
        if !or_opt(m, tour, deadline) {
            break;
        }
    }
}

/// Applies best-improving 2-opt moves until none is left.
fn two_opt<W: Weight>(m: &Matrix<W>, tour: &mut [usize], deadline: Instant) -> bool {
    let n = tour.len();
    if n < 4 {
        return false;
    }
    let mut changed = false;
    loop {
        let mut best: Option<(W, usize, usize)> = None;
        for i in 0..n - 2 {
            let (a, b) = (tour[i], tour[i + 1]);
            let ab = m.get(a, b);
            for j in (i + 2)..n {
                if i == 0 && j == n - 1 {
                    continue;
                }
                let (c, d) = (tour[j], tour[(j + 1) % n]);
                let delta = m.get(a, c) + m.get(b, d) - ab - m.get(c, d);
                if W::is_improvement(delta) && best.is_none_or(|(bd, _, _)| delta < bd) {
                    best = Some((delta, i, j));
                }
            }
        }
        match best {
            Some((_, i, j)) => {
                tour[i + 1..=j].reverse();
                changed = true;
            }
            None => return changed,
        }
        if Instant::now() >= deadline {
            return changed;
        }
    }
}

struct OrMove<W> {
    delta: W,
    start: usize,
    len: usize,
    after: usize,
    reversed: bool,
}

/// Applies best-improving or-opt moves (segments of 1 to 3 nodes, either
/// orientation) until none is left.
fn or_opt<W: Weight>(m: &Matrix<W>, tour: &mut Vec<usize>, deadline: Instant) -> bool {
    let n = tour.len();
    let mut changed = false;
    loop {
        let mut best: Option<OrMove<W>> = None;
        for len in 1..=3usize {
            if n < len + 3 {
                break;
            }
            for i in 0..n {
                let p = tour[(i + n - 1) % n];
                let s0 = tour[i];
                let sl = tour[(i + len - 1) % n];
                let nx = tour[(i + len) % n];
                let removal = m.get(p, s0) + m.get(sl, nx) - m.get(p, nx);
                // rest[k] = tour[(i + len + k) % n]; its closing edge rest[r-1] -> rest[0]
                // is (p, nx), which would just undo the removal.
                let r = n - len;
                for k in 0..r - 1 {
                    let a = tour[(i + len + k) % n];
                    let b = tour[(i + len + k + 1) % n];
                    let ab = m.get(a, b);
                    let fwd = m.get(a, s0) + m.get(sl, b) - ab - removal;
                    let mut consider = |delta: W, reversed: bool| {
                        if W::is_improvement(delta)
                            && best.as_ref().is_none_or(|bm| delta < bm.delta)
                        {
                            best = Some(OrMove {
                                delta,
                                start: i,
                                len,
                                after: k,
                                reversed,
                            });
                        }
                    };
                    consider(fwd, false);
                    if len > 1 {
                        let rev = m.get(a, sl) + m.get(s0, b) - ab - removal;
                        consider(rev, true);
                    }
                }
            }
        }
        let Some(mv) = best else {
            return changed;
        };
        let mut segment: Vec<usize> = (0..mv.len).map(|t| tour[(mv.start + t) % n]).collect();
        if mv.reversed {
            segment.reverse();
        }
        let rest: Vec<usize> = (0..n - mv.len)
            .map(|k| tour[(mv.start + mv.len + k) % n])
            .collect();
        tour.clear();
        tour.extend_from_slice(&rest[..=mv.after]);
        tour.extend_from_slice(&segment);
        tour.extend_from_slice(&rest[mv.after + 1..]);
        changed = true;
        if Instant::now() >= deadline {
            return changed;
        }
    }
}

/// Reconnects three random cut points as `A C B D`.
fn double_bridge(tour: &[usize], rng: &mut ChaCha8Rng) -> Vec<usize> {
    let n = tour.len();
    let mut cuts: Vec<usize> = sample(rng, n - 1, 3).into_iter().map(|c| c + 1).collect();
    cuts.sort_unstable();
    let (p1, p2, p3) = (cuts[0], cuts[1], cuts[2]);
    let mut out = Vec::with_capacity(n);
    out.extend_from_slice(&tour[..p1]);
    out.extend_from_slice(&tour[p2..p3]);
    out.extend_from_slice(&tour[p1..p2]);
    out.extend_from_slice(&tour[p3..]);
    out
}
