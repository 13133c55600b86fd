//! File-backed document store: one JSON file per region and per plan.
//!
//! Writes go through a single lock and land via write-to-temp plus rename,
//! so readers only ever observe complete documents.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use optima_core::planner::{Plan, PlanParams};
use optima_core::region::RegionGraph;
use serde::{Deserialize, Serialize};
use uuid::Uuid;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PlanStatus {
    Ready,
    Superseded,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StoredRegion {
    pub region_id: String,
    pub created_at: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub derived_from: Option<String>,
    pub region: RegionGraph,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StoredPlan {
    pub plan_id: String,
    pub region_id: String,
    pub status: PlanStatus,
    /// Store-wide commit counter; larger is newer.
    pub seq: u64,
    pub created_at: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub supersedes: Option<String>,
    pub plan: Plan,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionSummary {
    pub region_id: String,
    pub created_at: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub derived_from: Option<String>,
    pub settlements: usize,
}

/// What `GET /regions/{id}/plans` lists.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanSummary {
    pub plan_id: String,
    pub region_id: String,
    pub status: PlanStatus,
    pub seq: u64,
    pub created_at: String,
    pub params: PlanParams,
    pub warehouses: usize,
    pub service_cost_m: f64,
    pub total_tour_cost_m: f64,
}

impl From<&StoredPlan> for PlanSummary {
    fn from(p: &StoredPlan) -> Self {
        Self {
            plan_id: p.plan_id.clone(),
            region_id: p.region_id.clone(),
            status: p.status,
            seq: p.seq,
            created_at: p.created_at.clone(),
            params: p.plan.params,
            warehouses: p.plan.warehouses.len(),
            service_cost_m: p.plan.service_cost_m,
            total_tour_cost_m: p.plan.total_tour_cost_m(),
        }
    }
}

#[derive(Debug)]
pub struct Store {
    root: PathBuf,
    /// Guards every mutation; holds the last issued sequence number.
    writer: Mutex<u64>,
}

fn now() -> String {
    chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Millis, true)
}

/// Ids become file names, so only canonical UUIDs are accepted.
fn valid_id(id: &str) -> bool {
    Uuid::parse_str(id).is_ok_and(|u| u.hyphenated().to_string() == id)
}

fn invalid_data(e: impl std::error::Error + Send + Sync + 'static) -> io::Error {
    io::Error::new(io::ErrorKind::InvalidData, e)
}

fn write_atomic(path: &Path, bytes: &[u8]) -> io::Result<()> {
    let tmp = path.with_extension("json.tmp");
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)
}

fn read_if_exists(path: &Path) -> io::Result<Option<Vec<u8>>> {
    match fs::read(path) {
        Ok(b) => Ok(Some(b)),
        Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(None),
        Err(e) => Err(e),
    }
}

/// Pretty JSON with a trailing newline; the exact bytes stored on disk.
pub fn document<T: Serialize>(value: &T) -> Vec<u8> {
    let mut bytes = serde_json::to_vec_pretty(value).expect("documents serialize");
    bytes.push(b'\n');
    bytes
}

impl Store {
    /// Opens (creating if needed) a store rooted at `root`.
    pub fn open(root: impl Into<PathBuf>) -> io::Result<Self> {
        let root = root.into();
        fs::create_dir_all(root.join("regions"))?;
        fs::create_dir_all(root.join("plans"))?;
        let store = Self {
            root,
            writer: Mutex::new(0),
        };
        let last = store.all_plans()?.iter().map(|p| p.seq).max().unwrap_or(0);
        *store.writer.lock().expect("fresh lock") = last;
        Ok(store)
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    fn region_path(&self, id: &str) -> PathBuf {
        self.root.join("regions").join(format!("{id}.json"))
    }

    fn plan_path(&self, id: &str) -> PathBuf {
        self.root.join("plans").join(format!("{id}.json"))
    }

    pub fn insert_region(
        &self,
        region: RegionGraph,
        derived_from: Option<String>,
    ) -> io::Result<StoredRegion> {
        let stored = StoredRegion {
            region_id: Uuid::new_v4().to_string(),
            created_at: now(),
            derived_from,
            region,
        };
        let _guard = self.writer.lock().expect("store lock poisoned");
        write_atomic(&self.region_path(&stored.region_id), &document(&stored))?;
        Ok(stored)
    }

    /// Raw persisted bytes of a region document.
    pub fn region_bytes(&self, id: &str) -> io::Result<Option<Vec<u8>>> {
        if !valid_id(id) {
            return Ok(None);
        }
        read_if_exists(&self.region_path(id))
    }

    /// All regions as `{region_id, created_at, derived_from, settlements}`, oldest first.
    pub fn region_summaries(&self) -> io::Result<Vec<RegionSummary>> {
        let mut out = Vec::new();
        for entry in fs::read_dir(self.root.join("regions"))? {
            let path = entry?.path();
            if path.extension().is_some_and(|e| e == "json") {
                let r: StoredRegion =
                    serde_json::from_slice(&fs::read(&path)?).map_err(invalid_data)?;
                out.push(RegionSummary {
                    settlements: r.region.len(),
                    region_id: r.region_id,
                    created_at: r.created_at,
                    derived_from: r.derived_from,
                });
            }
        }
        out.sort_by(|a, b| (&a.created_at, &a.region_id).cmp(&(&b.created_at, &b.region_id)));
        Ok(out)
    }

    pub fn region(&self, id: &str) -> io::Result<Option<StoredRegion>> {
        self.region_bytes(id)?
            .map(|b| serde_json::from_slice(&b).map_err(invalid_data))
            .transpose()
    }

    /// Raw persisted bytes of a plan document.
    pub fn plan_bytes(&self, id: &str) -> io::Result<Option<Vec<u8>>> {
        if !valid_id(id) {
            return Ok(None);
        }
        read_if_exists(&self.plan_path(id))
    }

    pub fn plan(&self, id: &str) -> io::Result<Option<StoredPlan>> {
        self.plan_bytes(id)?
            .map(|b| serde_json::from_slice(&b).map_err(invalid_data))
            .transpose()
    }

    fn all_plans(&self) -> io::Result<Vec<StoredPlan>> {
        let mut out = Vec::new();
        for entry in fs::read_dir(self.root.join("plans"))? {
            let path = entry?.path();
            if path.extension().is_some_and(|e| e == "json") {
                out.push(serde_json::from_slice(&fs::read(&path)?).map_err(invalid_data)?);
            }
        }
        Ok(out)
    }

    /// Plans of one region, newest first.
    pub fn plans_for(&self, region_id: &str) -> io::Result<Vec<StoredPlan>> {
        let mut plans: Vec<StoredPlan> = self
            .all_plans()?
            .into_iter()
            .filter(|p| p.region_id == region_id)
            .collect();
        plans.sort_by_key(|p| std::cmp::Reverse(p.seq));
        Ok(plans)
    }

    /// Persists `plan` as the new `ready` plan of `region_id`. The plan named
    /// by `supersedes`, and any other ready plan of the same region with the
    /// same parameters, are marked superseded.
    pub fn commit_plan(
        &self,
        region_id: &str,
        plan: Plan,
        supersedes: Option<&str>,
    ) -> io::Result<StoredPlan> {
        let mut seq = self.writer.lock().expect("store lock poisoned");
        *seq += 1;
        let stored = StoredPlan {
            plan_id: Uuid::new_v4().to_string(),
            region_id: region_id.to_string(),
            status: PlanStatus::Ready,
            seq: *seq,
            created_at: now(),
            supersedes: supersedes.map(str::to_string),
            plan,
        };
        let stale: Vec<StoredPlan> = self
            .all_plans()?
            .into_iter()
            .filter(|p| p.status == PlanStatus::Ready)
            .filter(|p| {
                Some(p.plan_id.as_str()) == supersedes
                    || (p.region_id == stored.region_id && p.plan.params == stored.plan.params)
            })
            .collect();
        write_atomic(&self.plan_path(&stored.plan_id), &document(&stored))?;
        for mut old in stale {
            old.status = PlanStatus::Superseded;
            write_atomic(&self.plan_path(&old.plan_id), &document(&old))?;
        }
        Ok(stored)
    }
}
