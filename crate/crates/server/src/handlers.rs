use axum::extract::rejection::JsonRejection;
use axum::extract::{Path, Query, State};
use axum::http::StatusCode;
use axum::Json;
use serde::Deserialize;

use tsol_core::explorer::{orbit_bfs, random_walk};
use tsol_core::lattice::{apply_move, edges_of_triangle, legal_moves};
use tsol_core::normalform::{normal_form, p_nk};
use tsol_core::pathfinder::{path_between, to_normal_form};
use tsol_core::{Error, Move, MoveSequence, NormalForm, Pattern, Point};

use crate::api::*;
use crate::error::ApiError;
use crate::AppState;

type Reply<T> = Result<Json<T>, ApiError>;

/// Largest pattern the path endpoints accept.
pub const PATH_MAX_POINTS: usize = 256;
/// Largest triangle for TEP completion.
pub const TEP_MAX_N: i64 = 64;

fn guard_path(p: &Pattern) -> Result<(), ApiError> {
    if p.len() > PATH_MAX_POINTS {
        return Err(Error::TooLarge(format!("{} points, paths are served up to {PATH_MAX_POINTS}", p.len())).into());
    }
    Ok(())
}

/// Runs library code off the async workers.
async fn blocking<T, F>(f: F) -> Reply<T>
where
    T: Send + 'static,
    F: FnOnce() -> Result<T, ApiError> + Send + 'static,
{
    match tokio::task::spawn_blocking(f).await {
        Ok(r) => r.map(Json),
        Err(e) => Err(Error::Internal(e.to_string()).into()),
    }
}

pub async fn health() -> Json<Health> {
    Json(Health {
        status: "ok".into(),
        version: env!("CARGO_PKG_VERSION").into(),
    })
}

pub async fn fill_pattern(body: Result<Json<Pattern>, JsonRejection>) -> Reply<FillResponse> {
    let Json(p) = body?;
    blocking(move || Ok(FillResponse::of(&p)))
    .await
}

pub async fn moves(body: Result<Json<Pattern>, JsonRejection>) -> Reply<Vec<Move>> {
    let Json(p) = body?;
    Ok(Json(legal_moves(&p)))
}

pub async fn apply(body: Result<Json<ApplyRequest>, JsonRejection>) -> Reply<ApplyResponse> {
    let Json(req) = body?;
    let pattern = apply_move(&req.pattern, &req.mv)?;
    Ok(Json(ApplyResponse { pattern }))
}

pub async fn normal_form_of(body: Result<Json<Pattern>, JsonRejection>) -> Reply<NormalForm> {
    let Json(p) = body?;
    blocking(move || Ok(normal_form(&p))).await
}

pub async fn normalize_path(body: Result<Json<Pattern>, JsonRejection>) -> Reply<MoveSequence> {
    let Json(p) = body?;
    guard_path(&p)?;
    blocking(move || {
        let seq = to_normal_form(&p)?;
        let end = seq.replay()?;
        if end != normal_form(&p).realize() {
            return Err(Error::Internal("path does not end on the normal form".into()).into());
        }
        Ok(seq)
    })
    .await
}

pub async fn path(body: Result<Json<PathRequest>, JsonRejection>) -> Reply<MoveSequence> {
    let Json(req) = body?;
    guard_path(&req.from)?;
    guard_path(&req.to)?;
    blocking(move || {
        let seq = path_between(&req.from, &req.to)?;
        if seq.replay()? != req.to {
            return Err(Error::Internal("path does not end on the target".into()).into());
        }
        Ok(seq)
    })
    .await
}

pub async fn orbit_count(
    State(state): State<AppState>,
    body: Result<Json<OrbitCountRequest>, JsonRejection>,
) -> Reply<OrbitCountResponse> {
    let Json(req) = body?;
    let cap = req.cap.unwrap_or(state.orbit_cap);
    if cap > state.orbit_cap {
        return Err(ApiError::bad_params(format!(
            "cap {cap} exceeds the server limit {}",
            state.orbit_cap
        )));
    }
    blocking(move || {
        let count = orbit_bfs(&req.pattern, cap)?.len();
        Ok(OrbitCountResponse { count, cap })
    })
    .await
}

pub async fn tep_complete(body: Result<Json<TepCompleteRequest>, JsonRejection>) -> Reply<TepCompleteResponse> {
    let Json(req) = body?;
    if req.n > TEP_MAX_N {
        return Err(Error::TooLarge(format!("T_{}, completion is served up to T_{TEP_MAX_N}", req.n)).into());
    }
    blocking(move || {
        let fam = req.family()?;
        Ok(TepCompleteResponse::of(&fam, &assignment_of(&req.assignment), req.n)?)
    })
    .await
}

#[derive(Debug, Deserialize)]
pub struct PresetQuery {
    #[serde(default)]
    seed: u64,
}

/// Largest `n` a preset may ask for.
const PRESET_MAX_N: i64 = 64;

pub async fn preset(Path(name): Path<String>, Query(q): Query<PresetQuery>) -> Reply<Preset> {
    let unknown = || ApiError::not_found(format!("unknown preset {name:?}"));
    let nums: Vec<i64> = name
        .split('-')
        .skip(1)
        .map(|s| s.parse().map_err(|_| unknown()))
        .collect::<Result<_, _>>()?;
    if nums.first().is_some_and(|&n| !(1..=PRESET_MAX_N).contains(&n)) {
        return Err(ApiError::bad_params(format!("preset sizes go from 1 to {PRESET_MAX_N}")));
    }
    let kind = name.split('-').next().unwrap_or_default();
    let (patterns, excess) = match (kind, nums.as_slice()) {
        ("line", &[n]) => (vec![Pattern::line(n as usize)], Pattern::new()),
        ("edges", &[n]) => {
            let (h, v, d) = edges_of_triangle(n, Point::ORIGIN)?;
            (vec![h, d, v], Pattern::new())
        }
        ("pnk", &[n, k]) => {
            let p = p_nk(n, k as usize, Point::ORIGIN)?;
            let excess = p.difference(&Pattern::line(n as usize));
            (vec![p], excess)
        }
        ("random", &[n]) => {
            let steps = (4 * n * n) as usize;
            (vec![random_walk(&Pattern::line(n as usize), steps, q.seed)], Pattern::new())
        }
        _ => return Err(unknown()),
    };
    Ok(Json(Preset { name, patterns, excess }))
}

pub async fn session_list(State(state): State<AppState>) -> Json<SessionList> {
    let names = state.sessions.lock().unwrap().keys().cloned().collect();
    Json(SessionList { names })
}

pub async fn session_get(State(state): State<AppState>, Path(name): Path<String>) -> Reply<Pattern> {
    let sessions = state.sessions.lock().unwrap();
    sessions
        .get(&name)
        .cloned()
        .map(Json)
        .ok_or_else(|| ApiError::not_found(format!("no session {name:?}")))
}

pub async fn session_put(
    State(state): State<AppState>,
    Path(name): Path<String>,
    body: Result<Json<Pattern>, JsonRejection>,
) -> Result<StatusCode, ApiError> {
    let Json(p) = body?;
    let fresh = state.sessions.lock().unwrap().insert(name, p).is_none();
    Ok(if fresh { StatusCode::CREATED } else { StatusCode::NO_CONTENT })
}

pub async fn session_delete(State(state): State<AppState>, Path(name): Path<String>) -> Result<StatusCode, ApiError> {
    match state.sessions.lock().unwrap().remove(&name) {
        Some(_) => Ok(StatusCode::NO_CONTENT),
        None => Err(ApiError::not_found(format!("no session {name:?}"))),
    }
}
