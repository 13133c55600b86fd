//! Seeded K-means over raw `(lat, lon)` degree pairs with plain Euclidean distance.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

pub const MAX_ITERATIONS: usize = 300;

#[derive(Debug, Clone, PartialEq)]
pub struct ClusterAssignment {
    pub k: usize,
    /// Cluster index per input point.
    pub labels: Vec<usize>,
    pub centroids: Vec<(f64, f64)>,
    pub iterations: usize,
    /// Sum of squared distances to assigned centroids, in degrees².
    pub inertia: f64,
    /// Inertia after each Lloyd iteration.
    pub inertia_history: Vec<f64>,
}

impl ClusterAssignment {
    pub fn members(&self, cluster: usize) -> Vec<usize> {
        (0..self.labels.len())
            .filter(|&i| self.labels[i] == cluster)
            .collect()
    }
}

fn dist2(a: (f64, f64), b: (f64, f64)) -> f64 {
    let (dx, dy) = (a.0 - b.0, a.1 - b.1);
    dx * dx + dy * dy
}

fn nearest(p: (f64, f64), centroids: &[(f64, f64)]) -> usize {
    let mut best = 0;
    for (c, &cen) in centroids.iter().enumerate().skip(1) {
        if dist2(p, cen) < dist2(p, centroids[best]) {
            best = c;
        }
    }
    best
}

fn inertia(points: &[(f64, f64)], labels: &[usize], centroids: &[(f64, f64)]) -> f64 {
    points
        .iter()
        .zip(labels)
        .map(|(&p, &l)| dist2(p, centroids[l]))
        .sum()
}

/// Greedy k-means++: each new center is the best of a few D²-weighted draws.
fn seed_centroids(points: &[(f64, f64)], k: usize, rng: &mut ChaCha8Rng) -> Vec<(f64, f64)> {
    let n = points.len();
    let trials = 2 + (k as f64).ln().floor() as usize;
    let mut chosen = vec![false; n];
    let first = rng.random_range(0..n);
    chosen[first] = true;
    let mut centers = vec![points[first]];
    let mut closest: Vec<f64> = points.iter().map(|&p| dist2(p, points[first])).collect();

    while centers.len() < k {
        let potential: f64 = closest.iter().sum();
        let pick = if potential <= 0.0 {
            // Every remaining point sits on a center already.
            (0..n).find(|&i| !chosen[i]).expect("k <= n")
        } else {
            let mut best: Option<(f64, usize)> = None;
            for _ in 0..trials {
                let target = rng.random::<f64>() * potential;
                let mut acc = 0.0;
                let mut cand = None;
                for (i, &w) in closest.iter().enumerate() {
                    if w <= 0.0 {
                        continue;
                    }
                    acc += w;
                    cand = Some(i);
                    if acc > target {
                        break;
                    }
                }
                let cand = cand.expect("positive potential has a positive weight");
                let pot: f64 = closest
                    .iter()
                    .zip(points)
                    .map(|(&c, &p)| c.min(dist2(p, points[cand])))
                    .sum();
                if best.is_none_or(|(b, _)| pot < b) {
                    best = Some((pot, cand));
                }
            }
            best.expect("at least one trial").1
        };
        chosen[pick] = true;
        centers.push(points[pick]);
        for (c, &p) in closest.iter_mut().zip(points) {
            *c = c.min(dist2(p, points[pick]));
        }
    }
    centers
}

/// Moves, for each empty cluster, the point farthest from its centroid
/// (taken from a cluster with at least two members) into it.
fn repair_empty(points: &[(f64, f64)], labels: &mut [usize], centroids: &[(f64, f64)]) {
    let k = centroids.len();
    let mut sizes = vec![0usize; k];
    for &l in labels.iter() {
        sizes[l] += 1;
    }
    for e in 0..k {
        if sizes[e] > 0 {
            continue;
        }
        let mut far: Option<(f64, usize)> = None;
        for (i, &p) in points.iter().enumerate() {
            if sizes[labels[i]] < 2 {
                continue;
            }
            let d = dist2(p, centroids[labels[i]]);
            if far.is_none_or(|(fd, _)| d > fd) {
                far = Some((d, i));
            }
        }
        let (_, i) = far.expect("k <= n leaves a cluster with two members");
        sizes[labels[i]] -= 1;
        labels[i] = e;
        sizes[e] = 1;
    }
}

fn means(points: &[(f64, f64)], labels: &[usize], k: usize) -> Vec<(f64, f64)> {
    let mut sum = vec![(0.0, 0.0); k];
    let mut count = vec![0usize; k];
    for (&p, &l) in points.iter().zip(labels) {
        sum[l].0 += p.0;
        sum[l].1 += p.1;
        count[l] += 1;
    }
    sum.into_iter()
        .zip(count)
        .map(|((x, y), c)| (x / c as f64, y / c as f64))
        .collect()
}

/// Lloyd iterations from greedy k-means++ seeding until the assignment stops
/// changing or [`MAX_ITERATIONS`] is reached. Deterministic in `(points, k, seed)`.
pub fn cluster_assignments(
    points: &[(f64, f64)],
    k: usize,
    seed: u64,
) -> Result<ClusterAssignment> {
    if k == 0 {
        return Err(Error::InvalidInput("k must be at least 1".into()));
    }
    if k > points.len() {
        return Err(Error::InvalidInput(format!(
            "k = {k} exceeds the number of points ({})",
            points.len()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let seeds = seed_centroids(points, k, &mut rng);
    let mut labels: Vec<usize> = points.iter().map(|&p| nearest(p, &seeds)).collect();
    repair_empty(points, &mut labels, &seeds);
    let mut centroids;

    let mut history = Vec::new();
    let mut iterations = 0;
    loop {
        centroids = means(points, &labels, k);
        history.push(inertia(points, &labels, &centroids));
        iterations += 1;
        if iterations >= MAX_ITERATIONS {
            break;
        }
        let mut next: Vec<usize> = points.iter().map(|&p| nearest(p, &centroids)).collect();
        repair_empty(points, &mut next, &centroids);
        if next == labels {
            break;
        }
        labels = next;
    }

    Ok(ClusterAssignment {
        k,
        inertia: *history.last().expect("one iteration ran"),
        labels,
        centroids,
        iterations,
        inertia_history: history,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k_equals_n_gives_zero_inertia() {
        let pts = [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (5.0, 5.0)];
        let c = cluster_assignments(&pts, 4, 11).unwrap();
        assert_eq!(c.inertia, 0.0);
        let mut labels = c.labels.clone();
        labels.sort_unstable();
        assert_eq!(labels, vec![0, 1, 2, 3]);
    }

    #[test]
    fn duplicate_points_still_fill_every_cluster() {
        let pts = [(1.0, 1.0); 3];
        let c = cluster_assignments(&pts, 3, 0).unwrap();
        for cl in 0..3 {
            assert_eq!(c.members(cl).len(), 1);
        }
        assert_eq!(c.inertia, 0.0);
    }

    #[test]
    fn k_one_centroid_is_mean() {
        let pts = [(14.0, 121.0), (15.0, 122.0), (16.0, 120.0)];
        let c = cluster_assignments(&pts, 1, 5).unwrap();
        assert_eq!(c.labels, vec![0, 0, 0]);
        assert!((c.centroids[0].0 - 15.0).abs() < 1e-12);
        assert!((c.centroids[0].1 - 121.0).abs() < 1e-12);
    }

    #[test]
    fn invalid_k() {
        let pts = [(0.0, 0.0), (1.0, 1.0)];
        assert!(cluster_assignments(&pts, 0, 1).is_err());
        assert!(cluster_assignments(&pts, 3, 1).is_err());
    }

    #[test]
    fn same_seed_same_result() {
        let pts: Vec<(f64, f64)> = (0..30)
            .map(|i| ((i * 7 % 11) as f64, (i * 5 % 13) as f64))
            .collect();
        assert_eq!(
            cluster_assignments(&pts, 4, 99).unwrap(),
            cluster_assignments(&pts, 4, 99).unwrap()
        );
    }
}
