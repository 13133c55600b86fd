use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::Json;
use serde_json::json;

/// An HTTP error rendered as `{"error": {"code", "message"}}`.
#[derive(Debug)]
pub struct ApiError {
    pub status: StatusCode,
    pub code: &'static str,
    pub message: String,
}

impl ApiError {
    pub fn new(status: StatusCode, code: &'static str, message: impl Into<String>) -> Self {
        Self {
            status,
            code,
            message: message.into(),
        }
    }

    pub fn not_found(what: &str, id: &str) -> Self {
        Self::new(
            StatusCode::NOT_FOUND,
            "not_found",
            format!("{what} {id} not found"),
        )
    }

    pub fn bad_request(message: impl Into<String>) -> Self {
        Self::new(StatusCode::BAD_REQUEST, "invalid_body", message)
    }

    pub fn unprocessable(code: &'static str, message: impl Into<String>) -> Self {
        Self::new(StatusCode::UNPROCESSABLE_ENTITY, code, message)
    }

    pub fn storage(err: impl std::fmt::Display) -> Self {
        Self::new(
            StatusCode::INSUFFICIENT_STORAGE,
            "storage_failure",
            err.to_string(),
        )
    }

    /// Maps a planning failure. `patch` selects 422 for errors that stem
    /// from an invalid patch rather than from stored state.
    pub fn from_planner(err: optima_core::Error, patch: bool) -> Self {
        use optima_core::Error as E;
        match err {
            E::TrucksOutOfRange { .. } => {
                Self::unprocessable("trucks_out_of_range", err.to_string())
            }
            E::Disconnected { .. } if patch => {
                Self::unprocessable("invalid_patch", err.to_string())
            }
            E::Disconnected { .. } => {
                Self::new(StatusCode::CONFLICT, "region_disconnected", err.to_string())
            }
            E::Parse { .. } | E::InvalidRegion(_) if !patch => Self::bad_request(err.to_string()),
            E::Parse { .. } | E::InvalidRegion(_) => {
                Self::unprocessable("invalid_patch", err.to_string())
            }
            E::Io(e) => Self::storage(e),
            E::Unsupported(_) | E::InvalidInput(_) => {
                Self::unprocessable("invalid_params", err.to_string())
            }
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let body = json!({"error": {"code": self.code, "message": self.message}});
        (self.status, Json(body)).into_response()
    }
}
