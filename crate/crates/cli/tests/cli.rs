//! The `tsol` binary end to end: outputs, exit statuses, determinism and the
//! `--remote` round trip through a spawned `tsol serve`.

use std::io::{BufRead, BufReader};
use std::path::{Path, PathBuf};
use std::process::{Child, Command, Output, Stdio};

use tsol_core::format::{parse_move_sequence, parse_pattern};
use tsol_core::lattice::edges_of_triangle;
use tsol_core::tep::{basis_change, CompiledChange, Rule};
use tsol_core::Point;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn tsol(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tsol")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = tsol(args);
    assert!(o.status.success(), "tsol {args:?}: {}", stderr(&o));
    stdout(&o)
}

fn f(name: &str) -> String {
    fixture(name).to_string_lossy().into_owned()
}

#[test]
fn orbit_of_l2_has_three_patterns() {
    assert_eq!(ok(&["orbit", "--line", "2", "--count"]), "3\n");
    assert_eq!(ok(&["orbit", "--line", "4", "--count"]), "122\n");
    let listing = ok(&["orbit", "--line", "2"]);
    assert_eq!(listing.matches("# vertex").count(), 3);
    assert!(listing.starts_with("# vertex 0 distance 0\n0 1\n1 1\n"));
}

#[test]
fn normal_form_of_lines() {
    assert_eq!(ok(&["normal-form", "-i", &f("line5.pts")]), "part 0 0 n=5 k=0\n");
    assert_eq!(ok(&["normal-form", "-i", &f("line5_high.pts")]), "part 0 4 n=5 k=0\n");
    assert_eq!(ok(&["normal-form", "--pnk", "4", "2"]), "part 0 0 n=4 k=2\n");
    let j: serde_json::Value = serde_json::from_str(&ok(&["normal-form", "--line", "3", "--json"])).unwrap();
    assert_eq!(j, serde_json::json!({"parts": [{"v": [0, 0], "n": 3, "k": 0}]}));
}

#[test]
fn path_across_orbits_exits_2() {
    let o = tsol(&["path", "-i", &f("a.pts"), "-o", &f("b.pts")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("not in the same orbit"), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
}

#[test]
fn path_output_replays_to_the_target() {
    let dir = tempfile::tempdir().unwrap();
    let (h, v, _) = edges_of_triangle(5, Point::new(3, -2)).unwrap();
    let (hp, vp) = (dir.path().join("h.pts"), dir.path().join("v.pts"));
    std::fs::write(&hp, tsol_core::format::render_pattern(&h)).unwrap();
    std::fs::write(&vp, serde_json::to_string(&v).unwrap()).unwrap();
    let text = ok(&["path", "-i", hp.to_str().unwrap(), "--to", vp.to_str().unwrap()]);
    let seq = parse_move_sequence(&text).unwrap();
    assert_eq!(seq.start, h);
    assert_eq!(seq.replay().unwrap(), v);
    assert!(!seq.moves.is_empty());

    let to_nf = parse_move_sequence(&ok(&["path", "--pnk", "4", "1"])).unwrap();
    assert!(to_nf.moves.is_empty(), "P_4,1 is its own representative");
}

#[test]
fn outputs_are_byte_deterministic() {
    let runs: [&[&str]; 7] = [
        &["orbit", "--line", "3"],
        &["path", "-i", &f("line5.pts"), "--to", &f("edge5_v.pts")],
        &["census", "--max-n", "4", "--exact-up-to", "4", "--json"],
        &["excess-sets", "--pnk", "4", "2"],
        &["fill", "--pnk", "5", "3", "--json"],
        &["diameter", "--line", "4"],
        &["tep-compile", "--line", "3", "--to", &f("b.pts"), "--rule", "add-mod-3", "-n", "3"],
    ];
    for args in runs {
        assert_eq!(ok(args), ok(args), "tsol {args:?}");
    }
}

#[test]
fn census_and_diameter() {
    let text = ok(&["census", "--max-n", "4", "--exact-up-to", "4"]);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], "n orbit_size lower_3nfact upper_expr diameter exact");
    assert!(rows[2].starts_with("2 3 3 "));
    assert!(rows[4].starts_with("4 122 69 "), "{}", rows[4]);
    assert!(rows[4].ends_with(" true"));
    assert_eq!(ok(&["diameter", "--line", "3"]), "4\n");
    assert_eq!(ok(&["diameter", "--line", "2", "--json"]).trim(), "{\n  \"diameter\": 1\n}");
}

#[test]
fn fill_and_excess_sets() {
    assert_eq!(ok(&["fill", "--pnk", "3", "1", "--ascii"]), "# origin 0 0\n###\n.##\n..#\n");
    let filled = parse_pattern(&ok(&["fill", "-i", &f("a.pts")])).unwrap();
    assert_eq!(filled.len(), 3);
    assert_eq!(ok(&["excess-sets", "--pnk", "3", "1"]), "-\n1 2\n2 2\n2 1\n");
    assert_eq!(ok(&["excess-sets", "--pnk", "3", "1", "--max-card", "0"]), "-\n");
    assert_eq!(ok(&["excess-sets", "--pnk", "3", "1", "--maximal"]), "1 2\n2 2\n2 1\n");
}

#[test]
fn out_flag_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("nf.txt");
    assert_eq!(ok(&["normal-form", "--line", "4", "-o", out.to_str().unwrap()]), "");
    assert_eq!(std::fs::read_to_string(out).unwrap(), "part 0 0 n=4 k=0\n");
}

#[test]
fn tep_completion_and_compilation() {
    let dir = tempfile::tempdir().unwrap();
    let asg = dir.path().join("line.asg");
    std::fs::write(&asg, "0 2 1\n1 2 0\n2 2 1\n").unwrap();
    let text = ok(&["tep-complete", "-i", asg.to_str().unwrap(), "--rule", "xor", "-n", "3"]);
    assert!(text.ends_with("# complete=true valid=true basis=true\n"), "{text}");
    assert_eq!(text.lines().count(), 7);

    let family = dir.path().join("xor.tep");
    std::fs::write(&family, "alphabet 2\n0 0 0\n0 1 1\n1 0 1\n1 1 0\n").unwrap();
    let by_file = ok(&["tep-complete", "-i", asg.to_str().unwrap(), "--rule", family.to_str().unwrap(), "-n", "3"]);
    assert_eq!(by_file, text);

    // compiled permutations agree with direct completion
    let (h, v, _) = edges_of_triangle(4, Point::ORIGIN).unwrap();
    let vp = dir.path().join("v.pts");
    std::fs::write(&vp, tsol_core::format::render_pattern(&v)).unwrap();
    let json = ok(&["tep-compile", "--line", "4", "--to", vp.to_str().unwrap(), "--rule", "add-mod-3", "-n", "4", "--json"]);
    let change: CompiledChange = serde_json::from_str(&json).unwrap();
    let fam = Rule::AddMod(3).family().unwrap();
    let p: tsol_core::tep::Assignment = h.iter().zip([2, 0, 1, 1]).collect();
    assert_eq!(change.apply(&p).unwrap(), basis_change(&fam, &h, &v, 4, &p).unwrap());
    let text = ok(&["tep-compile", "--line", "4", "--to", vp.to_str().unwrap(), "--rule", "add-mod-3", "-n", "4"]);
    assert_eq!(text.lines().filter(|l| l.starts_with("perm ")).count(), change.permutations.len());
}

#[test]
fn exit_statuses() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.pts");
    std::fs::write(&bad, "0 0\n0 zero\n").unwrap();
    let o = tsol(&["fill", "-i", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));

    assert_eq!(tsol(&["fill", "-i", "/nonexistent/p.pts"]).status.code(), Some(1));
    assert_eq!(tsol(&["fill"]).status.code(), Some(1), "no input is a usage error");
    assert_eq!(tsol(&["fill", "--line", "3", "--pnk", "3", "0"]).status.code(), Some(1));
    assert_eq!(tsol(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(tsol(&["--help"]).status.code(), Some(0));
    assert_eq!(tsol(&["diameter", "--line", "3", "--remote", "http://127.0.0.1:9"]).status.code(), Some(1));

    // domain errors
    assert_eq!(tsol(&["normal-form", "--pnk", "3", "9"]).status.code(), Some(2));
    assert_eq!(tsol(&["orbit", "--line", "5", "--count", "--cap", "100"]).status.code(), Some(2));
    let asg = dir.path().join("a.asg");
    std::fs::write(&asg, "0 2 0\n").unwrap();
    assert_eq!(tsol(&["tep-complete", "-i", asg.to_str().unwrap(), "--rule", "nand", "-n", "3"]).status.code(), Some(2));
}

#[test]
fn reads_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_tsol"))
        .args(["normal-form", "-i", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    use std::io::Write;
    child.stdin.take().unwrap().write_all(b"5 5\n6 5\n").unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(stdout(&o), "part 5 4 n=2 k=0\n");
}

struct Server(Child, String);

impl Drop for Server {
    fn drop(&mut self) {
        let _ = self.0.kill();
        let _ = self.0.wait();
    }
}

fn serve(extra: &[&str]) -> Server {
    let mut child = Command::new(env!("CARGO_BIN_EXE_tsol"))
        .args(["serve", "--port", "0"])
        .args(extra)
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut line = String::new();
    BufReader::new(child.stderr.take().unwrap()).read_line(&mut line).unwrap();
    let url = line.trim().strip_prefix("tsol: serving on ").expect(&line).to_string();
    Server(child, url)
}

#[test]
fn remote_runs_match_local_runs() {
    let server = serve(&["--cap", "1000"]);
    let url = server.1.as_str();
    let dir = tempfile::tempdir().unwrap();
    let asg = dir.path().join("a.asg");
    std::fs::write(&asg, "0 2 1\n2 2 1\n").unwrap();
    let cases: [&[&str]; 7] = [
        &["fill", "--pnk", "5", "2", "--json"],
        &["fill", "-i", &f("a.pts"), "--ascii"],
        &["normal-form", "-i", &f("line5_high.pts")],
        &["path", "-i", &f("line5.pts"), "--to", &f("edge5_v.pts")],
        &["path", "--pnk", "4", "3"],
        &["orbit", "--line", "3", "--count", "--cap", "1000"],
        &["tep-complete", "-i", asg.to_str().unwrap(), "--rule", "xor", "-n", "3"],
    ];
    for args in cases {
        let remote: Vec<&str> = args.iter().copied().chain(["--remote", url]).collect();
        assert_eq!(ok(&remote), ok(args), "tsol {args:?}");
    }

    let o = tsol(&["path", "-i", &f("a.pts"), "-o", &f("b.pts"), "--remote", url]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("not in the same orbit"));
    let o = tsol(&["orbit", "--line", "4", "--count", "--cap", "5000", "--remote", url]);
    assert_eq!(o.status.code(), Some(2), "cap above the server limit");
    assert_eq!(tsol(&["orbit", "--line", "3", "--remote", url]).status.code(), Some(1));
}

#[test]
fn taken_port_exits_1() {
    let held = std::net::TcpListener::bind("127.0.0.1:0").unwrap();
    let port = held.local_addr().unwrap().port().to_string();
    let o = tsol(&["serve", "--port", &port]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("cannot listen"), "{}", stderr(&o));
}

#[test]
fn log_level_from_env() {
    let o = Command::new(env!("CARGO_BIN_EXE_tsol"))
        .args(["path", "--pnk", "4", "1"])
        .env("TSOL_LOG", "info")
        .output()
        .unwrap();
    assert!(stderr(&o).contains("0 moves"), "{}", stderr(&o));
    let quiet = tsol(&["path", "--pnk", "4", "1"]);
    assert!(quiet.stderr.is_empty());
}
