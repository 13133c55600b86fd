//! Python bindings: `import optima`.

use std::collections::BTreeMap;
use std::fs::File;
use std::time::Duration;

use optima_core::graph::{Tree, VertexSet};
use optima_core::planner::{self, PlanParams};
use optima_core::region::{self, RegionGraph};
use optima_core::tsp::{self, LocalSearchOptions, SolverKind};
use optima_core::{Error, Matrix};
use pyo3::exceptions::{PyOSError, PyValueError};
use pyo3::prelude::*;

/// `(warehouses, service_cost, mst_edges)`
type Selection = (Vec<usize>, f64, Vec<(usize, usize, f64)>);
/// `(labels, centroids, iterations, inertia)`
type KMeansResult = (Vec<usize>, Vec<(f64, f64)>, usize, f64);

fn to_py(err: Error) -> PyErr {
    match err {
        Error::Io(e) => PyOSError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn open(path: &str) -> PyResult<File> {
    File::open(path).map_err(|e| PyOSError::new_err(format!("{path}: {e}")))
}

fn solver(name: &str) -> PyResult<SolverKind> {
    name.parse().map_err(to_py)
}

fn options(seed: u64, budget_s: f64) -> PyResult<LocalSearchOptions> {
    if !(budget_s > 0.0 && budget_s.is_finite()) {
        return Err(PyValueError::new_err(
            "budget_s must be a positive number of seconds",
        ));
    }
    Ok(LocalSearchOptions {
        time_budget: Duration::from_secs_f64(budget_s),
        ..LocalSearchOptions::with_seed(seed)
    })
}

fn matrix<W: optima_core::Weight>(rows: Vec<Vec<W>>) -> PyResult<Matrix<W>> {
    Matrix::from_rows(rows).map_err(to_py)
}

/// A validated region: settlements and the roads between them.
#[pyclass(module = "optima", frozen)]
struct Region {
    inner: RegionGraph,
}

#[pymethods]
impl Region {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Self {
            inner: RegionGraph::from_json_str(text).map_err(to_py)?,
        })
    }

    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        Ok(Self {
            inner: region::load_region(open(path)?).map_err(to_py)?,
        })
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    #[getter]
    fn populations(&self) -> Vec<u64> {
        self.inner.populations()
    }

    /// `(lat, lon)` per settlement.
    #[getter]
    fn coordinates(&self) -> Vec<(f64, f64)> {
        self.inner
            .settlements()
            .iter()
            .map(|s| (s.lat, s.lon))
            .collect()
    }

    #[getter]
    fn names(&self) -> Vec<String> {
        self.inner
            .settlements()
            .iter()
            .map(|s| s.name.clone())
            .collect()
    }

    fn digest(&self) -> String {
        self.inner.digest()
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.inner).expect("region serializes")
    }

    /// Shortest road distance in meters between every pair of settlements.
    fn distance_matrix(&self) -> PyResult<Vec<Vec<f64>>> {
        let d = region::complete_distance_graph(&self.inner).map_err(to_py)?;
        Ok((0..d.n()).map(|i| d.row(i).to_vec()).collect())
    }

    fn __repr__(&self) -> String {
        format!(
            "Region(settlements={}, roads={})",
            self.inner.len(),
            self.inner.roads().len()
        )
    }
}

#[pyclass(module = "optima", frozen, get_all)]
struct TruckRoute {
    truck: usize,
    warehouses: Vec<usize>,
    centroid: (f64, f64),
    tour: Vec<usize>,
    tour_cost_m: f64,
}

#[pymethods]
impl TruckRoute {
    fn __repr__(&self) -> String {
        format!(
            "TruckRoute(truck={}, warehouses={:?}, tour_cost_m={:.1})",
            self.truck, self.warehouses, self.tour_cost_m
        )
    }
}

/// A full distribution plan.
#[pyclass(module = "optima", frozen)]
struct Plan {
    inner: planner::Plan,
}

#[pymethods]
impl Plan {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Self {
            inner: planner::Plan::from_json_str(text).map_err(to_py)?,
        })
    }

    fn to_json(&self) -> String {
        self.inner.to_json_pretty()
    }

    #[getter]
    fn k_trucks(&self) -> usize {
        self.inner.params.k_trucks
    }

    #[getter]
    fn seed(&self) -> u64 {
        self.inner.seed
    }

    #[getter]
    fn solver(&self) -> &'static str {
        self.inner.params.solver.as_str()
    }

    #[getter]
    fn warehouses(&self) -> Vec<usize> {
        self.inner.warehouses.clone()
    }

    #[getter]
    fn service_cost_m(&self) -> f64 {
        self.inner.service_cost_m
    }

    #[getter]
    fn mst_edges(&self) -> Vec<(usize, usize, f64)> {
        self.inner.mst_edges.clone()
    }

    #[getter]
    fn allocation_fractional(&self) -> BTreeMap<usize, f64> {
        self.inner.allocation.fractional.clone()
    }

    #[getter]
    fn allocation_integral(&self) -> BTreeMap<usize, u64> {
        self.inner.allocation.integral.clone()
    }

    #[getter]
    fn clusters(&self) -> Vec<TruckRoute> {
        self.inner
            .clusters
            .iter()
            .map(|c| TruckRoute {
                truck: c.truck,
                warehouses: c.warehouses.clone(),
                centroid: (c.centroid[0], c.centroid[1]),
                tour: c.tour.clone(),
                tour_cost_m: c.tour_cost_m,
            })
            .collect()
    }

    #[getter]
    fn total_tour_cost_m(&self) -> f64 {
        self.inner.total_tour_cost_m()
    }

    fn __eq__(&self, other: &Plan) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!(
            "Plan(warehouses={}, trucks={}, service_cost_m={:.1})",
            self.inner.warehouses.len(),
            self.inner.clusters.len(),
            self.inner.service_cost_m
        )
    }
}

/// Build a plan: warehouses, allocation, truck territories and tours.
#[pyfunction]
#[pyo3(signature = (region, k_trucks, seed = 0, solver = "local_search", budget_s = 10.0))]
fn build_plan(
    py: Python<'_>,
    region: &Region,
    k_trucks: usize,
    seed: u64,
    solver: &str,
    budget_s: f64,
) -> PyResult<Plan> {
    let params = PlanParams {
        k_trucks,
        seed,
        solver: self::solver(solver)?,
    };
    let opts = options(seed, budget_s)?;
    let inner = py
        .detach(|| planner::build_plan_with(&region.inner, &params, &opts))
        .map_err(to_py)?;
    Ok(Plan { inner })
}

/// Returns `(warehouses, service_cost, mst_edges)` for a symmetric distance matrix.
#[pyfunction]
fn select_warehouses(d: Vec<Vec<f64>>) -> PyResult<Selection> {
    let plan = planner::select_warehouses(&matrix(d)?);
    Ok((
        plan.warehouses.to_vec(),
        plan.service_cost_m,
        plan.mst.edges().to_vec(),
    ))
}

/// Sum over non-warehouse nodes of the distance to their nearest warehouse.
#[pyfunction]
fn service_cost(warehouses: Vec<usize>, d: Vec<Vec<f64>>) -> PyResult<f64> {
    let w: VertexSet = warehouses.into_iter().collect();
    planner::service_cost(&w, &matrix(d)?).map_err(to_py)
}

/// Returns `(fractional, integral)` per node for a tree given as `(u, v)` edges.
#[pyfunction]
fn allocate_resources(
    n: usize,
    tree_edges: Vec<(usize, usize)>,
    warehouses: Vec<usize>,
    populations: Vec<u64>,
) -> PyResult<(Vec<f64>, Vec<u64>)> {
    let tree = Tree::new(
        n,
        tree_edges.into_iter().map(|(u, v)| (u, v, 1i64)).collect(),
    )
    .map_err(to_py)?;
    let w: VertexSet = warehouses.into_iter().collect();
    let a = planner::allocate_resources(&tree, &w, &populations).map_err(to_py)?;
    Ok((a.fractional, a.integral))
}

/// Returns `(labels, centroids, iterations, inertia)`.
#[pyfunction]
#[pyo3(signature = (points, k, seed = 0))]
fn kmeans(points: Vec<(f64, f64)>, k: usize, seed: u64) -> PyResult<KMeansResult> {
    let c = planner::cluster_assignments(&points, k, seed).map_err(to_py)?;
    Ok((c.labels, c.centroids, c.iterations, c.inertia))
}

/// Closed tour over a distance matrix. Returns `(order, cost)`.
#[pyfunction]
#[pyo3(signature = (d, start = 0, solver = "local_search", seed = 0, budget_s = 10.0))]
fn solve_tsp(
    py: Python<'_>,
    d: Vec<Vec<f64>>,
    start: usize,
    solver: &str,
    seed: u64,
    budget_s: f64,
) -> PyResult<(Vec<usize>, f64)> {
    let m = matrix(d)?;
    let kind = self::solver(solver)?;
    let opts = options(seed, budget_s)?;
    let tour = py.detach(|| kind.solve(&m, start, &opts)).map_err(to_py)?;
    Ok((tour.order, tour.cost))
}

/// A parsed TSPLIB instance with integer distances.
#[pyclass(module = "optima", frozen)]
struct TspInstance {
    inner: tsp::TspInstance,
}

#[pymethods]
impl TspInstance {
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(Self {
            inner: tsp::parse_tsplib(text.as_bytes()).map_err(to_py)?,
        })
    }

    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        Ok(Self {
            inner: tsp::parse_tsplib(open(path)?).map_err(to_py)?,
        })
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name.clone()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n
    }

    fn distance(&self, i: usize, j: usize) -> PyResult<i64> {
        tsp::tsplib_distance(&self.inner, i, j).map_err(to_py)
    }

    fn matrix(&self) -> Vec<Vec<i64>> {
        let m = self.inner.matrix();
        (0..m.n()).map(|i| m.row(i).to_vec()).collect()
    }

    /// Returns `(order, cost)` with 0-based node indices.
    #[pyo3(signature = (solver = "local_search", start = 0, seed = 0, budget_s = 10.0))]
    fn solve(
        &self,
        py: Python<'_>,
        solver: &str,
        start: usize,
        seed: u64,
        budget_s: f64,
    ) -> PyResult<(Vec<usize>, i64)> {
        let m = self.inner.matrix();
        let kind = self::solver(solver)?;
        let opts = options(seed, budget_s)?;
        let tour = py.detach(|| kind.solve(&m, start, &opts)).map_err(to_py)?;
        Ok((tour.order, tour.cost))
    }

    fn __repr__(&self) -> String {
        format!(
            "TspInstance(name={:?}, n={})",
            self.inner.name, self.inner.n
        )
    }
}

#[pymodule]
fn optima(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Region>()?;
    m.add_class::<Plan>()?;
    m.add_class::<TruckRoute>()?;
    m.add_class::<TspInstance>()?;
    m.add_function(wrap_pyfunction!(build_plan, m)?)?;
    m.add_function(wrap_pyfunction!(select_warehouses, m)?)?;
    m.add_function(wrap_pyfunction!(service_cost, m)?)?;
    m.add_function(wrap_pyfunction!(allocate_resources, m)?)?;
    m.add_function(wrap_pyfunction!(kmeans, m)?)?;
    m.add_function(wrap_pyfunction!(solve_tsp, m)?)?;
    m.add("EARTH_RADIUS_M", region::EARTH_RADIUS_M)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
