//! Warehouse selection, resource allocation, truck territories and the full
//! plan pipeline.

mod allocation;
mod kmeans;
mod plan;
mod warehouses;

pub use allocation::{allocate_resources, Allocation};
pub use kmeans::{cluster_assignments, ClusterAssignment, MAX_ITERATIONS};
pub use plan::{
    build_plan, build_plan_with, KMeansSummary, Plan, PlanAllocation, PlanParams, RegionSummary,
    TruckRoute,
};
pub use warehouses::{select_warehouses, service_cost, WarehousePlan};
