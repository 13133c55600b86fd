use crate::error::Result;
use crate::graph::{minimum_spanning_tree, preorder};
use crate::matrix::{Matrix, Weight};

use super::{check_start, Tour};

/// Double-tree 2-approximation: preorder walk of the minimum spanning tree
/// from `start`, skipping repeated nodes, closed back to `start`.
///
/// The factor-2 bound only holds when `m` satisfies the triangle inequality;
/// that is not checked here.
pub fn two_approx_tour<W: Weight>(m: &Matrix<W>, start: usize) -> Result<Tour<W>> {
    check_start(m.n(), start)?;
    let tree = minimum_spanning_tree(m);
    let order = preorder(&tree, start)?;
    Ok(Tour::from_order(m, order))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equilateral_triangle() {
        let m = Matrix::from_fn(3, |i, j| i64::from(i != j));
        let t = two_approx_tour(&m, 0).unwrap();
        assert_eq!(t.cost, 3);
        assert_eq!(t.order[0], 0);
    }

    #[test]
    fn walk_starts_at_requested_node() {
        // Points on a line 0..5; MST is the path, preorder from 2 is [2, 1, 0, 3, 4].
        let m = Matrix::from_fn(5, |i, j| (i as i64 - j as i64).abs());
        let t = two_approx_tour(&m, 2).unwrap();
        assert_eq!(t.order, vec![2, 1, 0, 3, 4]);
        assert_eq!(t.cost, 1 + 1 + 3 + 1 + 2);
        assert!(two_approx_tour(&m, 5).is_err());
    }
}
