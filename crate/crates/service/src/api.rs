use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{Path, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::get;
use axum::{Json, Router};
use optima_core::planner::{build_plan, PlanParams};
use optima_core::region::RegionGraph;
use optima_core::tsp::SolverKind;
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::json;

use crate::error::ApiError;
use crate::patch::PlanPatch;
use crate::store::{document, PlanStatus, PlanSummary, Store};

type ApiResult = Result<Response, ApiError>;

/// Body of `POST /regions/{id}/plans`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PlanRequest {
    k_trucks: usize,
    #[serde(default)]
    seed: u64,
    #[serde(default = "default_solver")]
    solver: SolverKind,
}

fn default_solver() -> SolverKind {
    SolverKind::LocalSearch
}

pub fn router(store: Arc<Store>) -> Router {
    Router::new()
        .route("/healthz", get(healthz))
        .route("/regions", get(list_regions).post(create_region))
        .route("/regions/{id}", get(get_region))
        .route("/regions/{id}/plans", get(list_plans).post(create_plan))
        .route("/plans/{id}", get(get_plan).patch(update_plan))
        .with_state(store)
}

fn json_response(status: StatusCode, bytes: Vec<u8>) -> Response {
    (status, [(header::CONTENT_TYPE, "application/json")], bytes).into_response()
}

fn parse_body<T: DeserializeOwned>(body: &Bytes) -> Result<T, ApiError> {
    serde_json::from_slice(body)
        .map_err(|e| ApiError::bad_request(format!("invalid request body: {e}")))
}

fn check_trucks(params: &PlanParams) -> Result<(), ApiError> {
    if params.k_trucks == 0 {
        return Err(ApiError::unprocessable(
            "invalid_params",
            "k_trucks must be at least 1",
        ));
    }
    Ok(())
}

/// Runs store access and planning off the async executor.
async fn blocking<T: Send + 'static>(
    f: impl FnOnce() -> Result<T, ApiError> + Send + 'static,
) -> Result<T, ApiError> {
    tokio::task::spawn_blocking(f)
        .await
        .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "internal", e.to_string()))?
}

async fn healthz() -> Json<serde_json::Value> {
    Json(json!({"status": "ok"}))
}

async fn create_region(State(store): State<Arc<Store>>, body: Bytes) -> ApiResult {
    blocking(move || {
        let text = std::str::from_utf8(&body).map_err(|e| ApiError::bad_request(e.to_string()))?;
        let region =
            RegionGraph::from_json_str(text).map_err(|e| ApiError::from_planner(e, false))?;
        let stored = store
            .insert_region(region, None)
            .map_err(ApiError::storage)?;
        Ok(json_response(StatusCode::CREATED, document(&stored)))
    })
    .await
}

async fn list_regions(State(store): State<Arc<Store>>) -> ApiResult {
    blocking(move || {
        let regions = store.region_summaries().map_err(ApiError::storage)?;
        Ok(json_response(StatusCode::OK, document(&regions)))
    })
    .await
}

async fn get_region(State(store): State<Arc<Store>>, Path(id): Path<String>) -> ApiResult {
    blocking(
        move || match store.region_bytes(&id).map_err(ApiError::storage)? {
            Some(bytes) => Ok(json_response(StatusCode::OK, bytes)),
            None => Err(ApiError::not_found("region", &id)),
        },
    )
    .await
}

async fn create_plan(
    State(store): State<Arc<Store>>,
    Path(region_id): Path<String>,
    body: Bytes,
) -> ApiResult {
    blocking(move || {
        let stored_region = store
            .region(&region_id)
            .map_err(ApiError::storage)?
            .ok_or_else(|| ApiError::not_found("region", &region_id))?;
        let req: PlanRequest = parse_body(&body)?;
        let params = PlanParams {
            k_trucks: req.k_trucks,
            seed: req.seed,
            solver: req.solver,
        };
        check_trucks(&params)?;
        let plan = build_plan(&stored_region.region, &params)
            .map_err(|e| ApiError::from_planner(e, false))?;
        let stored = store
            .commit_plan(&region_id, plan, None)
            .map_err(ApiError::storage)?;
        Ok(json_response(StatusCode::CREATED, document(&stored)))
    })
    .await
}

async fn list_plans(State(store): State<Arc<Store>>, Path(region_id): Path<String>) -> ApiResult {
    blocking(move || {
        if store
            .region_bytes(&region_id)
            .map_err(ApiError::storage)?
            .is_none()
        {
            return Err(ApiError::not_found("region", &region_id));
        }
        let plans = store.plans_for(&region_id).map_err(ApiError::storage)?;
        let summaries: Vec<PlanSummary> = plans.iter().map(PlanSummary::from).collect();
        Ok(json_response(StatusCode::OK, document(&summaries)))
    })
    .await
}

async fn get_plan(State(store): State<Arc<Store>>, Path(id): Path<String>) -> ApiResult {
    blocking(
        move || match store.plan_bytes(&id).map_err(ApiError::storage)? {
            Some(bytes) => Ok(json_response(StatusCode::OK, bytes)),
            None => Err(ApiError::not_found("plan", &id)),
        },
    )
    .await
}

async fn update_plan(
    State(store): State<Arc<Store>>,
    Path(plan_id): Path<String>,
    body: Bytes,
) -> ApiResult {
    blocking(move || {
        let old = store
            .plan(&plan_id)
            .map_err(ApiError::storage)?
            .ok_or_else(|| ApiError::not_found("plan", &plan_id))?;
        if old.status == PlanStatus::Superseded {
            return Err(ApiError::new(
                StatusCode::CONFLICT,
                "plan_superseded",
                format!("plan {plan_id} is superseded; patch the current plan instead"),
            ));
        }
        let patch: PlanPatch = parse_body(&body)?;
        let params = patch.params(&old.plan.params);
        check_trucks(&params)?;
        let source = store
            .region(&old.region_id)
            .map_err(ApiError::storage)?
            .ok_or_else(|| ApiError::not_found("region", &old.region_id))?;

        let region = if patch.edits_region() {
            patch
                .apply(&source.region)
                .map_err(|m| ApiError::unprocessable("invalid_patch", m))?
        } else {
            source.region
        };
        let plan = build_plan(&region, &params).map_err(|e| ApiError::from_planner(e, true))?;
        let region_id = if patch.edits_region() {
            store
                .insert_region(region, Some(old.region_id.clone()))
                .map_err(ApiError::storage)?
                .region_id
        } else {
            old.region_id.clone()
        };
        let stored = store
            .commit_plan(&region_id, plan, Some(&plan_id))
            .map_err(ApiError::storage)?;
        Ok(json_response(StatusCode::CREATED, document(&stored)))
    })
    .await
}
