//! What-if edits applied to a stored plan.

use std::collections::BTreeSet;

use optima_core::planner::PlanParams;
use optima_core::region::{RegionGraph, RoadEdge, Settlement};
use optima_core::tsp::SolverKind;
use serde::Deserialize;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NewRoad {
    /// Id of an existing settlement in the plan's region.
    pub to: usize,
    pub length_m: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NewSettlement {
    pub name: String,
    pub lat: f64,
    pub lon: f64,
    pub population: u64,
    #[serde(default)]
    pub roads: Vec<NewRoad>,
}

/// Body of `PATCH /plans/{id}`. Absent fields keep the current value.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlanPatch {
    pub k_trucks: Option<usize>,
    pub seed: Option<u64>,
    pub solver: Option<SolverKind>,
    #[serde(default)]
    pub add_settlements: Vec<NewSettlement>,
    #[serde(default)]
    pub remove_settlement_ids: Vec<usize>,
}

impl PlanPatch {
    pub fn edits_region(&self) -> bool {
        !self.add_settlements.is_empty() || !self.remove_settlement_ids.is_empty()
    }

    pub fn params(&self, current: &PlanParams) -> PlanParams {
        PlanParams {
            k_trucks: self.k_trucks.unwrap_or(current.k_trucks),
            seed: self.seed.unwrap_or(current.seed),
            solver: self.solver.unwrap_or(current.solver),
        }
    }

    /// Builds the edited region. Removed settlements take their roads with
    /// them; survivors are renumbered in their original order and new
    /// settlements are appended. Road targets refer to ids of `region`.
    pub fn apply(&self, region: &RegionGraph) -> Result<RegionGraph, String> {
        let n = region.len();
        let removed: BTreeSet<usize> = self.remove_settlement_ids.iter().copied().collect();
        if let Some(&bad) = removed.iter().find(|&&id| id >= n) {
            return Err(format!("cannot remove unknown settlement {bad}"));
        }
        let mut new_id = vec![None; n];
        let mut settlements = Vec::with_capacity(n + self.add_settlements.len());
        for s in region.settlements() {
            if !removed.contains(&s.id) {
                new_id[s.id] = Some(settlements.len());
                settlements.push(Settlement {
                    id: settlements.len(),
                    ..s.clone()
                });
            }
        }
        let mut roads: Vec<RoadEdge> = region
            .roads()
            .iter()
            .filter_map(|r| {
                Some(RoadEdge {
                    u: new_id[r.u]?,
                    v: new_id[r.v]?,
                    length_m: r.length_m,
                })
            })
            .collect();
        for add in &self.add_settlements {
            let id = settlements.len();
            for road in &add.roads {
                let target = new_id.get(road.to).copied().flatten().ok_or_else(|| {
                    format!(
                        "new settlement {:?} links to missing settlement {}",
                        add.name, road.to
                    )
                })?;
                roads.push(RoadEdge {
                    u: target,
                    v: id,
                    length_m: road.length_m,
                });
            }
            settlements.push(Settlement {
                id,
                name: add.name.clone(),
                lat: add.lat,
                lon: add.lon,
                population: add.population,
            });
        }
        RegionGraph::new(settlements, roads).map_err(|e| e.to_string())
    }
}
