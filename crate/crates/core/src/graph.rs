//! Exact graph primitives: minimum spanning tree over a complete graph,
//! minimum vertex cover on a tree, and preorder traversal.
//!
//! Every routine is deterministic. Equal-weight edges are ordered by
//! `(min(u, v), max(u, v))`, children are visited in ascending id order, and
//! the vertex-cover DP prefers leaving a child out of the cover on ties.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{Matrix, Weight};

/// A spanning tree over nodes `0..n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Tree<W> {
    n: usize,
    edges: Vec<(usize, usize, W)>,
    adjacency: Vec<Vec<usize>>,
}

impl<W: Weight> Tree<W> {
    /// Validates that `edges` form a spanning tree of `0..n`.
    pub fn new(n: usize, edges: Vec<(usize, usize, W)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput(
                "tree must have at least one node".into(),
            ));
        }
        if edges.len() != n - 1 {
            return Err(Error::InvalidInput(format!(
                "tree on {n} nodes needs {} edges, got {}",
                n - 1,
                edges.len()
            )));
        }
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v, w) in &edges {
            if u >= n || v >= n || u == v {
                return Err(Error::InvalidInput(format!("invalid tree edge ({u}, {v})")));
            }
            if w.total_cmp(&W::ZERO) == Ordering::Less {
                return Err(Error::InvalidInput(format!(
                    "negative weight on edge ({u}, {v})"
                )));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for nbrs in &mut adjacency {
            nbrs.sort_unstable();
        }
        let tree = Self {
            n,
            edges,
            adjacency,
        };
        if tree.reachable_from(0) != n {
            return Err(Error::InvalidInput(
                "tree edges do not connect all nodes".into(),
            ));
        }
        Ok(tree)
    }

    fn reachable_from(&self, root: usize) -> usize {
        let mut seen = vec![false; self.n];
        let mut stack = vec![root];
        seen[root] = true;
        let mut count = 0;
        while let Some(u) = stack.pop() {
            count += 1;
            for &v in &self.adjacency[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        count
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize, W)] {
        &self.edges
    }

    /// Neighbors of `u`, ascending.
    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adjacency[u]
    }

    pub fn total_weight(&self) -> W {
        self.edges.iter().fold(W::ZERO, |acc, e| acc + e.2)
    }

    /// Parent array and a DFS order (parents before children) for the tree rooted at `root`.
    fn rooted(&self, root: usize) -> (Vec<usize>, Vec<usize>) {
        let mut parent = vec![usize::MAX; self.n];
        let mut order = Vec::with_capacity(self.n);
        let mut stack = vec![root];
        parent[root] = root;
        while let Some(u) = stack.pop() {
            order.push(u);
            for &v in self.adjacency[u].iter().rev() {
                if parent[v] == usize::MAX {
                    parent[v] = u;
                    stack.push(v);
                }
            }
        }
        (parent, order)
    }
}

/// Sorted set of node ids.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(BTreeSet<usize>);

impl VertexSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.contains(&v)
    }

    pub fn insert(&mut self, v: usize) -> bool {
        self.0.insert(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// True when every tree edge has an endpoint in the set.
    pub fn covers<W: Weight>(&self, tree: &Tree<W>) -> bool {
        tree.edges()
            .iter()
            .all(|&(u, v, _)| self.contains(u) || self.contains(v))
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}

fn edge_cmp<W: Weight>(a: &(W, usize, usize), b: &(W, usize, usize)) -> Ordering {
    let ends = |e: &(W, usize, usize)| (e.1.min(e.2), e.1.max(e.2));
    a.0.total_cmp(&b.0).then(ends(a).cmp(&ends(b)))
}

/// Minimum spanning tree of the complete graph described by `d` (Prim, O(n²)).
///
/// Edges compare by `(weight, min endpoint, max endpoint)`, a strict total
/// order, so the returned tree is the unique minimum under that order.
pub fn minimum_spanning_tree<W: Weight>(d: &Matrix<W>) -> Tree<W> {
    let n = d.n();
    assert!(n >= 1, "minimum_spanning_tree needs at least one node");
    let mut in_tree = vec![false; n];
    // best[v] = (weight, tree endpoint, v) of the cheapest edge into v
    let mut best: Vec<Option<(W, usize, usize)>> = vec![None; n];
    let mut edges = Vec::with_capacity(n - 1);
    in_tree[0] = true;
    for (v, b) in best.iter_mut().enumerate().skip(1) {
        *b = Some((d.get(0, v), 0, v));
    }
    for _ in 1..n {
        let mut pick: Option<(W, usize, usize)> = None;
        for cand in best.iter().flatten() {
            if in_tree[cand.2] {
                continue;
            }
            let better = match &pick {
                None => true,
                Some(p) => edge_cmp(cand, p) == Ordering::Less,
            };
            if better {
                pick = Some(*cand);
            }
        }
        let (w, u, v) = pick.expect("complete graph has a crossing edge");
        in_tree[v] = true;
        edges.push((u.min(v), u.max(v), w));
        for x in 0..n {
            if in_tree[x] {
                continue;
            }
            let cand = (d.get(v, x), v, x);
            let replace = match &best[x] {
                None => true,
                Some(cur) => edge_cmp(&cand, cur) == Ordering::Less,
            };
            if replace {
                best[x] = Some(cand);
            }
        }
    }
    Tree::new(n, edges).expect("prim output is a spanning tree")
}

/// Minimum-cardinality vertex cover of a tree by two-state DP rooted at node 0.
pub fn tree_min_vertex_cover<W: Weight>(tree: &Tree<W>) -> VertexSet {
    let n = tree.n();
    let (parent, order) = tree.rooted(0);
    // with[v]: cover size of v's subtree with v in the cover; without[v]: v left out.
    let mut with = vec![1usize; n];
    let mut without = vec![0usize; n];
    for &v in order.iter().rev() {
        for &c in tree.neighbors(v) {
            if parent[c] == v && c != v {
                with[v] += with[c].min(without[c]);
                without[v] += with[c];
            }
        }
    }
    let mut chosen = vec![false; n];
    chosen[0] = with[0] < without[0];
    for &v in &order {
        for &c in tree.neighbors(v) {
            if parent[c] == v && c != v {
                chosen[c] = !chosen[v] || with[c] < without[c];
            }
        }
    }
    (0..n).filter(|&v| chosen[v]).collect()
}

/// Preorder walk from `root`, visiting children in ascending id order.
pub fn preorder<W: Weight>(tree: &Tree<W>, root: usize) -> Result<Vec<usize>> {
    if root >= tree.n() {
        return Err(Error::InvalidInput(format!(
            "root {root} out of range for tree on {} nodes",
            tree.n()
        )));
    }
    Ok(tree.rooted(root).1)
}
