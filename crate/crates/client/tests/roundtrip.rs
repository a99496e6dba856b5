//! The client against a live service on an ephemeral port, compared with
//! direct library calls.

use std::net::SocketAddr;

use tsol_client::{Client, ClientError};
use tsol_core::filling::fill;
use tsol_core::lattice::{apply_move, legal_moves};
use tsol_core::normalform::{normal_form, p_nk};
use tsol_core::tep::Assignment;
use tsol_core::{Pattern, Point};
use tsol_server::Config;

async fn service() -> Client {
    let config = Config {
        addr: Some(SocketAddr::from(([127, 0, 0, 1], 0))),
        orbit_cap: Some(10_000),
        ..Config::default()
    };
    let listener = tsol_server::bind(&config).await.unwrap();
    let addr = listener.local_addr().unwrap();
    tokio::spawn(async move { tsol_server::run(listener, &config, std::future::pending()).await });
    Client::new(&format!("http://{addr}/")).unwrap()
}

#[tokio::test(flavor = "multi_thread", worker_threads = 2)]
async fn endpoints_agree_with_the_library() {
    let c = service().await;
    assert_eq!(c.health().await.unwrap().status, "ok");

    let p = p_nk(4, 2, Point::new(1, -3)).unwrap();
    let f = c.fill(&p).await.unwrap();
    assert_eq!(f.filling, fill(&p));
    assert_eq!(f.excess, 2);
    assert_eq!(c.normal_form(&p).await.unwrap(), normal_form(&p));

    let moves = c.moves(&p).await.unwrap();
    assert_eq!(moves, legal_moves(&p));
    assert_eq!(c.apply(&p, moves[0]).await.unwrap(), apply_move(&p, &moves[0]).unwrap());

    let seq = c.normalize_path(&p).await.unwrap();
    assert_eq!(seq.replay().unwrap(), normal_form(&p).realize());
    let q = tsol_core::explorer::random_walk(&p, 30, 5);
    let seq = c.path(&p, &q).await.unwrap();
    assert_eq!((seq.start.clone(), seq.replay().unwrap()), (p.clone(), q));

    let r = c.orbit_count(&Pattern::line(2), None).await.unwrap();
    assert_eq!((r.count, r.cap), (3, 10_000));
}

#[tokio::test(flavor = "multi_thread", worker_threads = 2)]
async fn errors_carry_status_and_code() {
    let c = service().await;
    let two = Pattern::line(2);
    let err = c.path(&two, &Pattern::line(3)).await.unwrap_err();
    assert!(matches!(&err, ClientError::Api { status: 422, .. }), "{err:?}");
    assert_eq!(err.code(), Some("not_same_orbit"));
    assert_eq!(err.to_string(), "not in the same orbit");

    let bogus = tsol_core::Move::between(Point::new(5, 5), Point::new(6, 5)).unwrap();
    assert_eq!(c.apply(&two, bogus).await.unwrap_err().code(), Some("illegal_move"));
    assert_eq!(c.orbit_count(&two, Some(10_001)).await.unwrap_err().code(), Some("bad_params"));
    assert_eq!(c.preset("nope", None).await.unwrap_err().code(), Some("not_found"));
    assert_eq!(c.session("missing").await.unwrap_err().code(), Some("not_found"));

    assert!(matches!(Client::new("localhost:1"), Err(ClientError::BadUrl(_))));
    let dead = Client::new("http://127.0.0.1:9").unwrap();
    assert!(matches!(dead.health().await, Err(ClientError::Transport(_))));
}

#[tokio::test(flavor = "multi_thread", worker_threads = 2)]
async fn presets_sessions_and_completion() {
    let c = service().await;
    let pre = c.preset("pnk-4-1", None).await.unwrap();
    assert_eq!(pre.patterns, vec![p_nk(4, 1, Point::ORIGIN).unwrap()]);
    let a = c.preset("random-4", Some(3)).await.unwrap();
    assert_eq!(a.patterns, c.preset("random-4", Some(3)).await.unwrap().patterns);

    assert!(c.save_session("b", &Pattern::line(3)).await.unwrap());
    assert!(c.save_session("a", &Pattern::line(1)).await.unwrap());
    assert!(!c.save_session("a", &Pattern::line(2)).await.unwrap());
    assert_eq!(c.sessions().await.unwrap(), ["a", "b"]);
    assert_eq!(c.session("a").await.unwrap(), Pattern::line(2));
    c.delete_session("a").await.unwrap();
    assert_eq!(c.sessions().await.unwrap(), ["b"]);

    let line: Assignment = Pattern::line(3).iter().zip([1, 0, 1]).collect();
    let r = c.tep_complete("xor", 3, &line).await.unwrap();
    assert!(r.complete && r.valid && r.basis);
    assert_eq!(r.assignment.len(), 6);
    assert_eq!(c.tep_complete("nand", 3, &line).await.unwrap_err().code(), Some("bad_params"));
}
