//! HTTP/JSON service over the solitaire library. Every handler calls pure
//! library code; the only shared state is the session store of named
//! patterns.

pub mod error;
mod handlers;

use std::collections::BTreeMap;
use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::{Arc, Mutex};

use axum::routing::{get, post};
use axum::Router;
use tower_http::services::ServeDir;

use tsol_core::Pattern;

pub use error::ApiError;
pub use tsol_api as api;

/// Default and maximum vertex cap for `/api/orbit-count`.
pub const ORBIT_CAP: usize = 1_000_000;

#[derive(Debug, Clone)]
pub struct AppState {
    pub sessions: Arc<Mutex<BTreeMap<String, Pattern>>>,
    pub orbit_cap: usize,
}

impl Default for AppState {
    fn default() -> Self {
        AppState {
            sessions: Arc::default(),
            orbit_cap: ORBIT_CAP,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Config {
    pub addr: Option<SocketAddr>,
    /// Directory of static assets served under `/`.
    pub static_dir: Option<PathBuf>,
    pub orbit_cap: Option<usize>,
}

pub fn router(state: AppState) -> Router {
    Router::new()
        .route("/api/health", get(handlers::health))
        .route("/api/fill", post(handlers::fill_pattern))
        .route("/api/moves", post(handlers::moves))
        .route("/api/apply", post(handlers::apply))
        .route("/api/normal-form", post(handlers::normal_form_of))
        .route("/api/normalize-path", post(handlers::normalize_path))
        .route("/api/path", post(handlers::path))
        .route("/api/orbit-count", post(handlers::orbit_count))
        .route("/api/tep/complete", post(handlers::tep_complete))
        .route("/api/preset/{name}", get(handlers::preset))
        .route("/api/session", get(handlers::session_list))
        .route(
            "/api/session/{name}",
            get(handlers::session_get)
                .put(handlers::session_put)
                .delete(handlers::session_delete),
        )
        .with_state(state)
}

pub fn app(config: &Config) -> Router {
    let state = AppState {
        orbit_cap: config.orbit_cap.unwrap_or(ORBIT_CAP),
        ..AppState::default()
    };
    let r = router(state);
    match &config.static_dir {
        Some(dir) => r.fallback_service(ServeDir::new(dir)),
        None => r,
    }
}

pub const DEFAULT_ADDR: ([u8; 4], u16) = ([127, 0, 0, 1], 8080);

pub async fn bind(config: &Config) -> std::io::Result<tokio::net::TcpListener> {
    let addr = config.addr.unwrap_or_else(|| SocketAddr::from(DEFAULT_ADDR));
    tokio::net::TcpListener::bind(addr).await
}

/// Serves on `listener` until `shutdown` resolves.
pub async fn run(
    listener: tokio::net::TcpListener,
    config: &Config,
    shutdown: impl std::future::Future<Output = ()> + Send + 'static,
) -> std::io::Result<()> {
    log::info!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, app(config)).with_graceful_shutdown(shutdown).await
}

/// Binds, then serves until interrupted.
pub async fn serve(config: Config) -> std::io::Result<()> {
    let listener = bind(&config).await?;
    run(listener, &config, async {
        let _ = tokio::signal::ctrl_c().await;
        log::info!("shutting down");
    })
    .await
}
