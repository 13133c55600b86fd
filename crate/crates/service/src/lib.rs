//! REST planning service: regions and plans as resources, backed by JSON
//! documents on local disk.
//!
//! Routes:
//! - `GET /healthz`
//! - `POST /regions`, `GET /regions`, `GET /regions/{id}`
//! - `POST /regions/{id}/plans`, `GET /regions/{id}/plans`
//! - `GET /plans/{id}`, `PATCH /plans/{id}`

mod api;
mod error;
mod patch;
mod store;

use std::future::Future;
use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;

pub use api::router;
pub use error::ApiError;
pub use patch::{NewRoad, NewSettlement, PlanPatch};
pub use store::{
    document, PlanStatus, PlanSummary, RegionSummary, Store, StoredPlan, StoredRegion,
};

pub const DEFAULT_BIND_ADDR: &str = "127.0.0.1:8080";
pub const DEFAULT_DATA_DIR: &str = "optima-data";

#[derive(Debug, Clone, PartialEq)]
pub struct ServiceConfig {
    pub bind: SocketAddr,
    pub data_dir: PathBuf,
}

impl ServiceConfig {
    /// Reads `OPTIMA_BIND_ADDR` and `OPTIMA_DATA_DIR`, falling back to defaults.
    pub fn from_env() -> Result<Self, String> {
        let bind = std::env::var("OPTIMA_BIND_ADDR").unwrap_or_else(|_| DEFAULT_BIND_ADDR.into());
        let bind = bind
            .parse()
            .map_err(|e| format!("invalid OPTIMA_BIND_ADDR {bind:?}: {e}"))?;
        let data_dir = std::env::var_os("OPTIMA_DATA_DIR")
            .map(PathBuf::from)
            .unwrap_or_else(|| DEFAULT_DATA_DIR.into());
        Ok(Self { bind, data_dir })
    }
}

/// Serves the API on an already bound listener until `shutdown` resolves.
pub async fn serve(
    listener: tokio::net::TcpListener,
    store: Arc<Store>,
    shutdown: impl Future<Output = ()> + Send + 'static,
) -> std::io::Result<()> {
    tracing::info!(addr = ?listener.local_addr()?, data_dir = %store.root().display(), "serving");
    axum::serve(listener, router(store))
        .with_graceful_shutdown(shutdown)
        .await
}
