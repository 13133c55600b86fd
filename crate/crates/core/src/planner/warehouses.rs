use crate::error::{Error, Result};
use crate::graph::{minimum_spanning_tree, tree_min_vertex_cover, Tree, VertexSet};
use crate::region::DistanceMatrix;

/// Selected relief warehouses together with the spanning tree that chose them.
#[derive(Debug, Clone, PartialEq)]
pub struct WarehousePlan {
    pub warehouses: VertexSet,
    pub mst: Tree<f64>,
    pub service_cost_m: f64,
}

impl WarehousePlan {
    /// Warehouses adjacent to `node` in the spanning tree.
    pub fn serving(&self, node: usize) -> Vec<usize> {
        self.mst
            .neighbors(node)
            .iter()
            .copied()
            .filter(|&j| self.warehouses.contains(j))
            .collect()
    }
}

/// Warehouse selection: minimum spanning tree of the complete distance
/// graph, then a minimum vertex cover of that tree.
pub fn select_warehouses(d: &DistanceMatrix) -> WarehousePlan {
    let mst = minimum_spanning_tree(d);
    let warehouses = tree_min_vertex_cover(&mst);
    let service_cost_m = if d.n() == 1 {
        0.0
    } else {
        service_cost(&warehouses, d).expect("a cover of a tree with edges is non-empty")
    };
    WarehousePlan {
        warehouses,
        mst,
        service_cost_m,
    }
}

/// Sum over non-warehouse nodes of the distance to their nearest warehouse.
pub fn service_cost(w: &VertexSet, d: &DistanceMatrix) -> Result<f64> {
    let n = d.n();
    if let Some(bad) = w.iter().find(|&j| j >= n) {
        return Err(Error::InvalidInput(format!(
            "warehouse {bad} out of range for n={n}"
        )));
    }
    if w.is_empty() && n > 0 {
        return Err(Error::InvalidInput(
            "service cost needs at least one warehouse when demand points exist".into(),
        ));
    }
    let mut total = 0.0;
    for i in (0..n).filter(|&i| !w.contains(i)) {
        let nearest = w
            .iter()
            .map(|j| d.get(i, j))
            .min_by(f64::total_cmp)
            .expect("non-empty warehouse set");
        total += nearest;
    }
    Ok(total)
}
