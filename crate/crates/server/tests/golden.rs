//! Golden-file tests: each `tests/golden/*.json` holds one request, the
//! expected status and body, and the schema the body must satisfy.
//! `UPDATE_GOLDEN=1` rewrites the expected parts from the live router.

use std::path::{Path, PathBuf};

use axum::body::Body;
use axum::http::{Request, StatusCode};
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

use tsol_server::{router, AppState};

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn schema_doc() -> Value {
    let text = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas/api.schema.json")).unwrap();
    serde_json::from_str(&text).unwrap()
}

/// Validator for one definition of the published schema.
pub fn validator(def: &str) -> jsonschema::Validator {
    let mut doc = schema_doc();
    doc["$ref"] = json!(format!("#/$defs/{def}"));
    jsonschema::validator_for(&doc).unwrap()
}

async fn call(method: &str, path: &str, body: Option<&Value>) -> (StatusCode, Value) {
    let req = Request::builder().method(method).uri(path);
    let req = match body {
        Some(b) => req
            .header("content-type", "application/json")
            .body(Body::from(b.to_string()))
            .unwrap(),
        None => req.body(Body::empty()).unwrap(),
    };
    let resp = router(AppState::default()).oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    let value = if bytes.is_empty() { Value::Null } else { serde_json::from_slice(&bytes).unwrap() };
    (status, value)
}

#[tokio::test]
async fn golden_files() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut files: Vec<PathBuf> = std::fs::read_dir(golden_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .collect();
    files.sort();
    assert!(files.len() >= 20, "golden cases missing");
    for file in files {
        let name = file.file_stem().unwrap().to_string_lossy().into_owned();
        let mut case: Value = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
        let (status, body) = call(
            case["method"].as_str().unwrap(),
            case["path"].as_str().unwrap(),
            case.get("body"),
        )
        .await;
        let schema = validator(case["schema"].as_str().unwrap());
        if let Err(e) = schema.validate(&body) {
            panic!("{name}: response violates the schema: {e}\n{body:#}");
        }
        if update {
            case["status"] = json!(status.as_u16());
            case["response"] = body;
            std::fs::write(&file, serde_json::to_string_pretty(&case).unwrap() + "\n").unwrap();
            continue;
        }
        assert_eq!(status.as_u16() as u64, case["status"].as_u64().unwrap(), "{name}: status");
        assert_eq!(body, case["response"], "{name}: body");
    }
}

#[tokio::test]
async fn request_bodies_match_their_schemas() {
    let pairs = [
        ("/api/apply", "ApplyRequest"),
        ("/api/path", "PathRequest"),
        ("/api/orbit-count", "OrbitCountRequest"),
        ("/api/tep/complete", "TepCompleteRequest"),
        ("/api/fill", "Pattern"),
        ("/api/moves", "Pattern"),
        ("/api/normal-form", "Pattern"),
        ("/api/normalize-path", "Pattern"),
    ];
    for entry in std::fs::read_dir(golden_dir()).unwrap() {
        let case: Value = serde_json::from_str(&std::fs::read_to_string(entry.unwrap().path()).unwrap()).unwrap();
        let Some(body) = case.get("body") else { continue };
        let def = pairs.iter().find(|(p, _)| *p == case["path"]).map(|(_, d)| *d).unwrap();
        if case["status"] == 400 {
            assert!(!validator(def).is_valid(body), "{body} should be rejected by {def}");
        } else {
            assert!(validator(def).is_valid(body), "{body} violates {def}");
        }
    }
}
