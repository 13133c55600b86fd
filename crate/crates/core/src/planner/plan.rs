use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::region::{complete_distance_graph, RegionGraph};
use crate::tsp::{LocalSearchOptions, SolverKind};

use super::{allocate_resources, cluster_assignments, select_warehouses};

/// Everything that, together with the region, determines a plan.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlanParams {
    pub k_trucks: usize,
    pub seed: u64,
    pub solver: SolverKind,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionSummary {
    pub settlements: usize,
    /// SHA-256 of the canonical region JSON.
    pub digest: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanAllocation {
    /// Keyed by warehouse id; non-warehouses always receive zero and are omitted.
    pub fractional: BTreeMap<usize, f64>,
    pub integral: BTreeMap<usize, u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TruckRoute {
    pub truck: usize,
    /// Ascending warehouse ids in this territory.
    pub warehouses: Vec<usize>,
    /// K-means centroid as `[lat, lon]`.
    pub centroid: [f64; 2],
    /// Closed tour over `warehouses`, starting at the lowest id.
    pub tour: Vec<usize>,
    pub tour_cost_m: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KMeansSummary {
    pub iterations: usize,
    pub inertia: f64,
}

/// A complete relief-distribution plan. Contains no timestamps so that the
/// same inputs always serialize to the same bytes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Plan {
    pub params: PlanParams,
    pub region: RegionSummary,
    pub warehouses: Vec<usize>,
    /// MST edges as `[u, v, meters]` with `u < v`.
    pub mst_edges: Vec<(usize, usize, f64)>,
    pub service_cost_m: f64,
    pub allocation: PlanAllocation,
    pub clusters: Vec<TruckRoute>,
    pub kmeans: KMeansSummary,
    pub seed: u64,
}

impl Plan {
    pub fn total_tour_cost_m(&self) -> f64 {
        self.clusters.iter().map(|c| c.tour_cost_m).sum()
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json_pretty(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plan serializes");
        s.push('\n');
        s
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(crate::region::json_error)
    }
}

/// Runs the full pipeline: road distances, warehouse selection, allocation,
/// truck territories over the warehouses, then one closed tour per territory.
pub fn build_plan(region: &RegionGraph, params: &PlanParams) -> Result<Plan> {
    build_plan_with(region, params, &LocalSearchOptions::with_seed(params.seed))
}

/// As [`build_plan`] with explicit local search settings. The seed inside
/// `options` is used for tour restarts; `params.seed` drives K-means.
pub fn build_plan_with(
    region: &RegionGraph,
    params: &PlanParams,
    options: &LocalSearchOptions,
) -> Result<Plan> {
    if params.k_trucks == 0 {
        return Err(Error::InvalidInput("k_trucks must be at least 1".into()));
    }
    let d = complete_distance_graph(region)?;
    let selection = select_warehouses(&d);

    // A one-settlement region has an empty cover; that settlement is its own depot.
    let warehouses: Vec<usize> = if region.len() == 1 {
        vec![0]
    } else {
        selection.warehouses.to_vec()
    };
    if params.k_trucks > warehouses.len() {
        return Err(Error::TrucksOutOfRange {
            requested: params.k_trucks,
            warehouses: warehouses.len(),
        });
    }

    let populations = region.populations();
    let allocation = if region.len() == 1 {
        PlanAllocation {
            fractional: BTreeMap::from([(0, populations[0] as f64)]),
            integral: BTreeMap::from([(0, populations[0])]),
        }
    } else {
        let a = allocate_resources(&selection.mst, &selection.warehouses, &populations)?;
        PlanAllocation {
            fractional: warehouses.iter().map(|&j| (j, a.fractional[j])).collect(),
            integral: warehouses.iter().map(|&j| (j, a.integral[j])).collect(),
        }
    };

    let settlements = region.settlements();
    let points: Vec<(f64, f64)> = warehouses
        .iter()
        .map(|&j| (settlements[j].lat, settlements[j].lon))
        .collect();
    let km = cluster_assignments(&points, params.k_trucks, params.seed)?;

    let mut clusters = Vec::with_capacity(km.k);
    for c in 0..km.k {
        let members: Vec<usize> = km.members(c).into_iter().map(|i| warehouses[i]).collect();
        let sub = d.submatrix(&members);
        let tour = params.solver.solve(&sub, 0, options)?;
        clusters.push(TruckRoute {
            truck: c,
            tour: tour.order.iter().map(|&i| members[i]).collect(),
            warehouses: members,
            centroid: [km.centroids[c].0, km.centroids[c].1],
            tour_cost_m: tour.cost,
        });
    }

    Ok(Plan {
        params: *params,
        region: RegionSummary {
            settlements: region.len(),
            digest: region.digest(),
        },
        warehouses,
        mst_edges: selection.mst.edges().to_vec(),
        service_cost_m: selection.service_cost_m,
        allocation,
        clusters,
        kmeans: KMeansSummary {
            iterations: km.iterations,
            inertia: km.inertia,
        },
        seed: params.seed,
    })
}
