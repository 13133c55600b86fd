//! Brute-force reference implementations used as test oracles. Each one is
//! deliberately naive and shares no code with the library under test.
#![allow(dead_code)]

use optima_core::Matrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random points in `[0, 1000)²` and their Euclidean distance matrix.
pub fn random_euclidean(rng: &mut ChaCha8Rng, n: usize) -> (Vec<(f64, f64)>, Matrix<f64>) {
    let pts: Vec<(f64, f64)> = (0..n)
        .map(|_| (rng.random_range(0.0..1000.0), rng.random_range(0.0..1000.0)))
        .collect();
    let m = Matrix::from_fn(n, |i, j| {
        let (dx, dy) = (pts[i].0 - pts[j].0, pts[i].1 - pts[j].1);
        (dx * dx + dy * dy).sqrt()
    });
    (pts, m)
}

/// Decodes a Prüfer sequence into the edge list of a labelled tree on `seq.len() + 2` nodes.
pub fn prufer_tree(seq: &[usize]) -> Vec<(usize, usize)> {
    let n = seq.len() + 2;
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &s in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf, s));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

pub fn random_tree_edges(rng: &mut ChaCha8Rng, n: usize) -> Vec<(usize, usize)> {
    if n == 1 {
        return vec![];
    }
    if n == 2 {
        return vec![(0, 1)];
    }
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.random_range(0..n)).collect();
    prufer_tree(&seq)
}

/// Minimum total weight over every labelled spanning tree (Cayley enumeration).
pub fn brute_force_mst_weight(m: &Matrix<f64>) -> f64 {
    let n = m.n();
    if n <= 1 {
        return 0.0;
    }
    if n == 2 {
        return m.get(0, 1);
    }
    let mut best = f64::INFINITY;
    let mut seq = vec![0usize; n - 2];
    loop {
        let w: f64 = prufer_tree(&seq).iter().map(|&(u, v)| m.get(u, v)).sum();
        best = best.min(w);
        let mut k = 0;
        loop {
            if k == seq.len() {
                return best;
            }
            seq[k] += 1;
            if seq[k] < n {
                break;
            }
            seq[k] = 0;
            k += 1;
        }
    }
}

/// Size of the smallest vertex subset touching every edge, by subset enumeration.
pub fn brute_force_vertex_cover_size(n: usize, edges: &[(usize, usize)]) -> usize {
    (0u32..1 << n)
        .filter(|mask| {
            edges
                .iter()
                .all(|&(u, v)| mask >> u & 1 == 1 || mask >> v & 1 == 1)
        })
        .map(|mask| mask.count_ones() as usize)
        .min()
        .unwrap()
}

/// Exact closed-tour optimum by enumerating every permutation that fixes node 0.
pub fn brute_force_tsp(m: &Matrix<f64>) -> f64 {
    let n = m.n();
    if n <= 1 {
        return 0.0;
    }
    let mut rest: Vec<usize> = (1..n).collect();
    let mut best = f64::INFINITY;
    permute(&mut rest, 0, &mut |p| {
        let mut cost = m.get(0, p[0]) + m.get(p[p.len() - 1], 0);
        for w in p.windows(2) {
            cost += m.get(w[0], w[1]);
        }
        best = best.min(cost);
    });
    best
}

fn permute(xs: &mut [usize], k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == xs.len() {
        visit(xs);
        return;
    }
    for i in k..xs.len() {
        xs.swap(k, i);
        permute(xs, k + 1, visit);
        xs.swap(k, i);
    }
}

/// All-pairs shortest paths by Floyd-Warshall over an undirected edge list.
pub fn floyd_warshall(n: usize, edges: &[(usize, usize, f64)]) -> Vec<Vec<f64>> {
    let mut d = vec![vec![f64::INFINITY; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0.0;
    }
    for &(u, v, w) in edges {
        if w < d[u][v] {
            d[u][v] = w;
            d[v][u] = w;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

/// Definition of the warehouse service cost evaluated directly.
pub fn direct_service_cost(w: &[usize], m: &Matrix<f64>) -> f64 {
    (0..m.n())
        .filter(|i| !w.contains(i))
        .map(|i| w.iter().map(|&j| m.get(i, j)).fold(f64::INFINITY, f64::min))
        .sum()
}

/// Minimum two-cluster inertia over every split of `pts` into two non-empty groups.
pub fn best_two_partition(pts: &[(f64, f64)]) -> (f64, Vec<bool>) {
    let n = pts.len();
    let sse = |group: &[(f64, f64)]| {
        let k = group.len() as f64;
        let (mx, my) = group
            .iter()
            .fold((0.0, 0.0), |a, p| (a.0 + p.0 / k, a.1 + p.1 / k));
        group
            .iter()
            .map(|p| (p.0 - mx).powi(2) + (p.1 - my).powi(2))
            .sum::<f64>()
    };
    let mut best = (f64::INFINITY, vec![]);
    // Node 0 is pinned to side A so each split is visited once.
    for mask in 0u32..1 << (n - 1) {
        let side: Vec<bool> = (0..n).map(|i| i > 0 && mask >> (i - 1) & 1 == 1).collect();
        if side.iter().all(|&b| !b) {
            continue;
        }
        let a: Vec<(f64, f64)> = (0..n).filter(|&i| !side[i]).map(|i| pts[i]).collect();
        let b: Vec<(f64, f64)> = (0..n).filter(|&i| side[i]).map(|i| pts[i]).collect();
        let total = sse(&a) + sse(&b);
        if total < best.0 {
            best = (total, side);
        }
    }
    best
}

pub fn is_permutation(order: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    order.len() == n
        && order
            .iter()
            .all(|&v| v < n && !std::mem::replace(&mut seen[v], true))
}
