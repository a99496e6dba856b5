//! Typed calls against a running `tsol serve`.
//!
//! ```no_run
//! # async fn demo() -> Result<(), tsol_client::ClientError> {
//! let c = tsol_client::Client::new("http://127.0.0.1:8080")?;
//! let nf = c.normal_form(&tsol_core::Pattern::line(5)).await?;
//! assert_eq!(nf.parts.len(), 1);
//! # Ok(()) }
//! ```

use reqwest::{Method, StatusCode};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use tsol_api::*;
use tsol_core::tep::Assignment;
use tsol_core::{Move, MoveSequence, NormalForm, Pattern};

pub use tsol_api as api;

#[derive(Debug, thiserror::Error)]
pub enum ClientError {
    #[error("bad base url {0:?}")]
    BadUrl(String),
    #[error("transport: {0}")]
    Transport(#[from] reqwest::Error),
    /// The service answered with an error body.
    #[error("{message}")]
    Api { status: u16, code: String, message: String },
}

impl ClientError {
    /// The service's error code, e.g. `not_same_orbit`.
    pub fn code(&self) -> Option<&str> {
        match self {
            ClientError::Api { code, .. } => Some(code),
            _ => None,
        }
    }
}

#[derive(Deserialize)]
struct ErrorBody {
    error: String,
    message: String,
}

#[derive(Debug, Clone)]
pub struct Client {
    base: String,
    http: reqwest::Client,
}

impl Client {
    pub fn new(base: &str) -> Result<Self, ClientError> {
        let base = base.trim_end_matches('/');
        if !(base.starts_with("http://") || base.starts_with("https://")) {
            return Err(ClientError::BadUrl(base.to_string()));
        }
        Ok(Client { base: base.to_string(), http: reqwest::Client::new() })
    }

    pub fn base(&self) -> &str {
        &self.base
    }

    async fn send(&self, method: Method, path: &str, body: Option<&(impl Serialize + ?Sized)>) -> Result<reqwest::Response, ClientError> {
        let mut req = self.http.request(method, format!("{}{path}", self.base));
        if let Some(b) = body {
            req = req.json(b);
        }
        let resp = req.send().await?;
        if resp.status().is_success() {
            return Ok(resp);
        }
        let status = resp.status().as_u16();
        let text = resp.text().await?;
        Err(match serde_json::from_str::<ErrorBody>(&text) {
            Ok(e) => ClientError::Api { status, code: e.error, message: e.message },
            Err(_) => ClientError::Api { status, code: "http".into(), message: format!("HTTP {status}: {text}") },
        })
    }

    async fn call<T: DeserializeOwned>(&self, method: Method, path: &str, body: Option<&(impl Serialize + ?Sized)>) -> Result<T, ClientError> {
        Ok(self.send(method, path, body).await?.json().await?)
    }

    async fn post<B: Serialize + ?Sized, T: DeserializeOwned>(&self, path: &str, body: &B) -> Result<T, ClientError> {
        self.call(Method::POST, path, Some(body)).await
    }

    async fn get<T: DeserializeOwned>(&self, path: &str) -> Result<T, ClientError> {
        self.call(Method::GET, path, None::<&()>).await
    }

    pub async fn health(&self) -> Result<Health, ClientError> {
        self.get("/api/health").await
    }

    pub async fn fill(&self, p: &Pattern) -> Result<FillResponse, ClientError> {
        self.post("/api/fill", p).await
    }

    pub async fn moves(&self, p: &Pattern) -> Result<Vec<Move>, ClientError> {
        self.post("/api/moves", p).await
    }

    pub async fn apply(&self, p: &Pattern, mv: Move) -> Result<Pattern, ClientError> {
        let req = ApplyRequest { pattern: p.clone(), mv };
        let r: ApplyResponse = self.post("/api/apply", &req).await?;
        Ok(r.pattern)
    }

    pub async fn normal_form(&self, p: &Pattern) -> Result<NormalForm, ClientError> {
        self.post("/api/normal-form", p).await
    }

    pub async fn normalize_path(&self, p: &Pattern) -> Result<MoveSequence, ClientError> {
        self.post("/api/normalize-path", p).await
    }

    pub async fn path(&self, from: &Pattern, to: &Pattern) -> Result<MoveSequence, ClientError> {
        let req = PathRequest { from: from.clone(), to: to.clone() };
        self.post("/api/path", &req).await
    }

    pub async fn orbit_count(&self, p: &Pattern, cap: Option<usize>) -> Result<OrbitCountResponse, ClientError> {
        let req = OrbitCountRequest { pattern: p.clone(), cap };
        self.post("/api/orbit-count", &req).await
    }

    pub async fn tep_complete(&self, rule: &str, n: i64, a: &Assignment) -> Result<TepCompleteResponse, ClientError> {
        let req = TepCompleteRequest { rule: rule.to_string(), n, assignment: cells_of(a) };
        self.post("/api/tep/complete", &req).await
    }

    pub async fn preset(&self, name: &str, seed: Option<u64>) -> Result<Preset, ClientError> {
        match seed {
            Some(s) => self.get(&format!("/api/preset/{name}?seed={s}")).await,
            None => self.get(&format!("/api/preset/{name}")).await,
        }
    }

    pub async fn sessions(&self) -> Result<Vec<String>, ClientError> {
        let l: SessionList = self.get("/api/session").await?;
        Ok(l.names)
    }

    pub async fn session(&self, name: &str) -> Result<Pattern, ClientError> {
        self.get(&format!("/api/session/{name}")).await
    }

    /// Stores `p`; true when the name was new.
    pub async fn save_session(&self, name: &str, p: &Pattern) -> Result<bool, ClientError> {
        let r = self.send(Method::PUT, &format!("/api/session/{name}"), Some(p)).await?;
        Ok(r.status() == StatusCode::CREATED)
    }

    pub async fn delete_session(&self, name: &str) -> Result<(), ClientError> {
        self.send(Method::DELETE, &format!("/api/session/{name}"), None::<&()>).await?;
        Ok(())
    }
}
