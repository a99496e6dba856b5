use axum::extract::rejection::JsonRejection;
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::Json;
use serde::Serialize;

use tsol_core::Error;

/// Error body: `{"error": <code>, "message": <text>}`.
#[derive(Debug, Clone, Serialize)]
pub struct ApiError {
    #[serde(skip)]
    pub status: StatusCode,
    pub error: &'static str,
    pub message: String,
}

impl ApiError {
    pub fn new(status: StatusCode, error: &'static str, message: impl Into<String>) -> Self {
        ApiError {
            status,
            error,
            message: message.into(),
        }
    }

    pub fn not_found(message: impl Into<String>) -> Self {
        Self::new(StatusCode::NOT_FOUND, "not_found", message)
    }

    pub fn bad_params(message: impl Into<String>) -> Self {
        Self::new(StatusCode::UNPROCESSABLE_ENTITY, "bad_params", message)
    }
}

impl From<Error> for ApiError {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::IllegalMove(_) | Error::IllegalMoveAt { .. } => "illegal_move",
            Error::NotSameOrbit => "not_same_orbit",
            Error::TooLarge(_) | Error::CapExceeded { .. } => "too_large",
            Error::NotABasis { .. } => "not_a_basis",
            Error::NotTep { .. } => "not_tep",
            Error::Internal(_) => {
                return Self::new(StatusCode::INTERNAL_SERVER_ERROR, "internal", e.to_string())
            }
            _ => "bad_params",
        };
        Self::new(StatusCode::UNPROCESSABLE_ENTITY, code, e.to_string())
    }
}

impl From<JsonRejection> for ApiError {
    fn from(r: JsonRejection) -> Self {
        Self::new(StatusCode::BAD_REQUEST, "bad_request", r.body_text())
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        if self.status.is_server_error() {
            log::error!("{}: {}", self.error, self.message);
        } else {
            log::debug!("{} {}: {}", self.status.as_u16(), self.error, self.message);
        }
        (self.status, Json(self)).into_response()
    }
}
