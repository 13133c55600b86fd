//! Region data model: settlements with population and coordinates, the road
//! network between them, and the complete shortest-road-distance matrix
//! that every planning stage consumes.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::io::Read;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Mean Earth radius used for great-circle distances.
pub const EARTH_RADIUS_M: f64 = 6_371_000.0;

/// Complete symmetric matrix of shortest road distances in meters.
pub type DistanceMatrix = Matrix<f64>;

/// A demand point (evacuation center) with its displaced population.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Settlement {
    pub id: usize,
    pub name: String,
    pub lat: f64,
    pub lon: f64,
    pub population: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RoadEdge {
    pub u: usize,
    pub v: usize,
    pub length_m: f64,
}

/// On-disk shape of a region file before validation.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegionDocument {
    pub settlements: Vec<Settlement>,
    #[serde(default)]
    pub roads: Vec<RoadEdge>,
}

/// A validated region. Ids are dense, 0-based and match list position.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RegionDocument")]
pub struct RegionGraph {
    settlements: Vec<Settlement>,
    roads: Vec<RoadEdge>,
}

impl TryFrom<RegionDocument> for RegionGraph {
    type Error = Error;

    fn try_from(doc: RegionDocument) -> Result<Self> {
        RegionGraph::new(doc.settlements, doc.roads)
    }
}

impl RegionGraph {
    pub fn new(settlements: Vec<Settlement>, roads: Vec<RoadEdge>) -> Result<Self> {
        if settlements.is_empty() {
            return Err(Error::InvalidRegion(
                "region must have at least 1 settlement".into(),
            ));
        }
        let n = settlements.len();
        let mut seen = vec![false; n];
        for (pos, s) in settlements.iter().enumerate() {
            if s.id < n && seen[s.id] {
                return Err(Error::InvalidRegion(format!(
                    "duplicate settlement id {}",
                    s.id
                )));
            }
            if s.id != pos {
                return Err(Error::InvalidRegion(format!(
                    "settlement ids must be dense and in file order: expected id {pos}, found {}",
                    s.id
                )));
            }
            seen[s.id] = true;
            if !(-90.0..=90.0).contains(&s.lat) || !(-180.0..=180.0).contains(&s.lon) {
                return Err(Error::InvalidRegion(format!(
                    "settlement {} ({}) has out-of-range coordinate ({}, {})",
                    s.id, s.name, s.lat, s.lon
                )));
            }
        }
        for (k, r) in roads.iter().enumerate() {
            for end in [r.u, r.v] {
                if end >= n {
                    return Err(Error::InvalidRegion(format!(
                        "road {k} ({}-{}) references unknown settlement {end}",
                        r.u, r.v
                    )));
                }
            }
            if r.u == r.v {
                return Err(Error::InvalidRegion(format!(
                    "road {k} is a self-loop on {}",
                    r.u
                )));
            }
            if !(r.length_m.is_finite() && r.length_m > 0.0) {
                return Err(Error::InvalidRegion(format!(
                    "road {k} ({}-{}) must have positive length, got {}",
                    r.u, r.v, r.length_m
                )));
            }
        }
        Ok(Self { settlements, roads })
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let doc: RegionDocument = serde_json::from_str(s).map_err(json_error)?;
        doc.try_into()
    }

    pub fn settlements(&self) -> &[Settlement] {
        &self.settlements
    }

    pub fn roads(&self) -> &[RoadEdge] {
        &self.roads
    }

    pub fn len(&self) -> usize {
        self.settlements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.settlements.is_empty()
    }

    pub fn populations(&self) -> Vec<u64> {
        self.settlements.iter().map(|s| s.population).collect()
    }

    /// Hex SHA-256 of the canonical JSON encoding; identifies the region inside plans.
    pub fn digest(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("region serializes");
        hex::encode(Sha256::digest(bytes))
    }
}

pub(crate) fn json_error(e: serde_json::Error) -> Error {
    let line = (e.line() > 0).then_some(e.line());
    Error::parse(line, e.to_string())
}

/// Reads and validates a region document.
pub fn load_region(mut source: impl Read) -> Result<RegionGraph> {
    let mut text = String::new();
    source.read_to_string(&mut text)?;
    RegionGraph::from_json_str(&text)
}

/// Great-circle distance between two `(lat, lon)` points in degrees.
pub fn haversine_m(a: (f64, f64), b: (f64, f64)) -> f64 {
    let (lat1, lon1) = (a.0.to_radians(), a.1.to_radians());
    let (lat2, lon2) = (b.0.to_radians(), b.1.to_radians());
    let h = ((lat2 - lat1) / 2.0).sin().powi(2)
        + lat1.cos() * lat2.cos() * ((lon2 - lon1) / 2.0).sin().powi(2);
    2.0 * EARTH_RADIUS_M * h.sqrt().min(1.0).asin()
}

#[derive(PartialEq)]
struct Dist(f64);

impl Eq for Dist {}

impl PartialOrd for Dist {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dist {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.total_cmp(&other.0)
    }
}

fn dijkstra(adj: &[Vec<(usize, f64)>], source: usize) -> Vec<f64> {
    let mut dist = vec![f64::INFINITY; adj.len()];
    let mut heap = BinaryHeap::new();
    dist[source] = 0.0;
    heap.push(Reverse((Dist(0.0), source)));
    while let Some(Reverse((Dist(d), u))) = heap.pop() {
        if d > dist[u] {
            continue;
        }
        for &(v, w) in &adj[u] {
            let nd = d + w;
            if nd < dist[v] {
                dist[v] = nd;
                heap.push(Reverse((Dist(nd), v)));
            }
        }
    }
    dist
}

/// Builds the complete distance graph: shortest road distances when the
/// region has roads, great-circle distances otherwise.
pub fn complete_distance_graph(region: &RegionGraph) -> Result<DistanceMatrix> {
    let n = region.len();
    let pts: Vec<(f64, f64)> = region.settlements.iter().map(|s| (s.lat, s.lon)).collect();
    if region.roads.is_empty() {
        return Ok(Matrix::from_fn(n, |i, j| {
            if i == j {
                0.0
            } else {
                haversine_m(pts[i.min(j)], pts[i.max(j)])
            }
        }));
    }

    let mut adj = vec![Vec::new(); n];
    for r in &region.roads {
        adj[r.u].push((r.v, r.length_m));
        adj[r.v].push((r.u, r.length_m));
    }
    let mut d = Matrix::zeros(n);
    for i in 0..n {
        let row = dijkstra(&adj, i);
        if let Some(j) = row.iter().position(|x| x.is_infinite()) {
            return Err(Error::Disconnected {
                from: i.min(j),
                to: i.max(j),
            });
        }
        // Each unordered pair takes the value found from its lower endpoint
        // so the matrix is exactly symmetric.
        for (j, &dist) in row.iter().enumerate().skip(i + 1) {
            d.set(i, j, dist);
            d.set(j, i, dist);
        }
    }
    Ok(d)
}
