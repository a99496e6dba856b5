use std::fmt::Write as _;
use std::io::{Read, Write};
use std::net::SocketAddr;
use std::path::{Path, PathBuf};

use serde::Serialize;

use tsol_api::{assignment_of, FillResponse, OrbitCountResponse, TepCompleteResponse};
use tsol_client::Client;
use tsol_core::explorer::{census, diameter, orbit_bfs};
use tsol_core::filling::{excess_sets, maximal_excess_sets};
use tsol_core::format::{parse_pattern, render_ascii, render_move_sequence, render_normal_form, render_pattern};
use tsol_core::normalform::{normal_form, p_nk};
use tsol_core::pathfinder::{path_between, to_normal_form};
use tsol_core::tep::{compile_basis_change, parse_assignment, render_assignment, CompiledChange, Rule, TepFamily};
use tsol_core::{Error, Pattern, Point};

use crate::fail::Failure;
use crate::{Cli, Cmd, Output, Source};

/// Default vertex cap for orbit enumeration.
pub const DEFAULT_CAP: usize = 5_000_000;

type Res<T> = Result<T, Failure>;

fn read_input(path: &Path) -> Res<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::io(path, e))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| Failure::io(path, e))
}

/// `.pts` text, or a JSON pattern when the file starts with `{`.
fn read_pattern(path: &Path) -> Res<Pattern> {
    let text = read_input(path)?;
    if text.trim_start().starts_with('{') {
        return serde_json::from_str(&text).map_err(|e| {
            Failure::Core(Error::Parse { line: e.line(), msg: format!("{}: {e}", path.display()) })
        });
    }
    parse_pattern(&text).map_err(|e| match e {
        Error::Parse { line, msg } => Failure::Core(Error::Parse { line, msg: format!("{}: {msg}", path.display()) }),
        e => e.into(),
    })
}

fn load(src: &Source) -> Res<Pattern> {
    if let Some(path) = &src.input {
        return read_pattern(path);
    }
    if let Some(n) = src.line {
        return Ok(Pattern::line(n));
    }
    match src.pnk.as_deref() {
        Some(&[n, k]) => {
            let k = usize::try_from(k).map_err(|_| Failure::Usage(format!("--pnk: k must be non-negative, got {k}")))?;
            Ok(p_nk(n, k, Point::ORIGIN)?)
        }
        _ => Err(Failure::Usage("give one of --in, --line or --pnk".into())),
    }
}

/// A rule spec, or a family file of `alphabet <k>` and triples.
fn load_rule(spec: &str) -> Res<TepFamily> {
    let path = Path::new(spec);
    if path.is_file() {
        return Ok(TepFamily::parse(&read_input(path)?)?);
    }
    Ok(spec.parse::<Rule>()?.family()?)
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn emit(out: Option<&PathBuf>, text: &str) -> Res<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::io(path, e)),
        None => {
            let mut stdout = std::io::stdout().lock();
            match stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Failure::io(Path::new("<stdout>"), e)),
                _ => Ok(()),
            }
        }
    }
}

fn write_out(out: &Output, text: &str) -> Res<()> {
    emit(out.out.as_ref(), text)
}

/// Blocks on one request to the service.
fn remote<T, F>(url: &str, call: impl FnOnce(Client) -> F) -> Res<T>
where
    F: std::future::Future<Output = Result<T, tsol_client::ClientError>>,
{
    let client = Client::new(url)?;
    let rt = tokio::runtime::Builder::new_current_thread()
        .enable_all()
        .build()
        .map_err(|e| Failure::Io(format!("runtime: {e}")))?;
    log::debug!("remote call to {}", client.base());
    Ok(rt.block_on(call(client))?)
}

fn local_only(what: &str) -> Failure {
    Failure::Usage(format!("{what} is only computed locally; drop --remote"))
}

pub fn run(cli: Cli) -> Res<()> {
    let url = cli.remote.as_deref();
    match cli.cmd {
        Cmd::Fill { src, out, ascii } => {
            let p = load(&src)?;
            let r = match url {
                Some(u) => remote(u, |c| async move { c.fill(&p).await })?,
                None => FillResponse::of(&p),
            };
            let text = if out.json {
                json(&r)
            } else if ascii {
                render_ascii(&r.filling)
            } else {
                render_pattern(&r.filling)
            };
            write_out(&out, &text)
        }
        Cmd::NormalForm { src, out } => {
            let p = load(&src)?;
            let nf = match url {
                Some(u) => remote(u, |c| async move { c.normal_form(&p).await })?,
                None => normal_form(&p),
            };
            write_out(&out, &if out.json { json(&nf) } else { render_normal_form(&nf) })
        }
        Cmd::Path { src, to, json: as_json } => {
            let p = load(&src)?;
            let q = to.as_deref().map(read_pattern).transpose()?;
            let seq = match (url, q) {
                (Some(u), Some(q)) => remote(u, |c| async move { c.path(&p, &q).await })?,
                (Some(u), None) => remote(u, |c| async move { c.normalize_path(&p).await })?,
                (None, Some(q)) => path_between(&p, &q)?,
                (None, None) => to_normal_form(&p)?,
            };
            log::info!("{} moves", seq.len());
            emit(None, &if as_json { json(&seq) } else { render_move_sequence(&seq) })
        }
        Cmd::Orbit { src, out, count, cap } => {
            let p = load(&src)?;
            if count {
                let r = match url {
                    Some(u) => remote(u, |c| async move { c.orbit_count(&p, Some(cap)).await })?,
                    None => OrbitCountResponse { count: orbit_bfs(&p, cap)?.len(), cap },
                };
                return write_out(&out, &if out.json { json(&r) } else { format!("{}\n", r.count) });
            }
            if url.is_some() {
                return Err(local_only("listing an orbit (without --count)"));
            }
            let g = orbit_bfs(&p, cap)?;
            write_out(&out, &render_orbit(g.vertices().zip(g.distances().iter().copied()), out.json))
        }
        Cmd::Diameter { src, out, cap } => {
            if url.is_some() {
                return Err(local_only("diameter"));
            }
            let d = diameter(&load(&src)?, cap)?;
            let text = if out.json { json(&serde_json::json!({ "diameter": d })) } else { format!("{d}\n") };
            write_out(&out, &text)
        }
        Cmd::Census { max_n, exact_up_to, cap, out } => {
            if url.is_some() {
                return Err(local_only("census"));
            }
            let rows = census(max_n, exact_up_to, cap)?;
            if out.json {
                return write_out(&out, &json(&rows));
            }
            let mut text = String::from("n orbit_size lower_3nfact upper_expr diameter exact\n");
            for r in &rows {
                let _ = writeln!(
                    text,
                    "{} {} {} {:.3} {} {}",
                    r.n, r.orbit_size, r.lower_bound_3nfact, r.upper_bound_expr, r.diameter, r.diameter_exact
                );
            }
            write_out(&out, &text)
        }
        Cmd::ExcessSets { src, out, max_card, maximal } => {
            if url.is_some() {
                return Err(local_only("excess-sets"));
            }
            let p = load(&src)?;
            let sets = if maximal {
                maximal_excess_sets(&p)?
            } else {
                excess_sets(&p, max_card.unwrap_or(p.len()))?
            };
            write_out(&out, &if out.json { json(&sets) } else { render_sets(&sets) })
        }
        Cmd::TepComplete { input, rule, n, out } => {
            let a = parse_assignment(&read_input(&input)?)?;
            let r = match url {
                Some(u) => remote(u, |c| async move { c.tep_complete(&rule, n, &a).await })?,
                None => TepCompleteResponse::of(&load_rule(&rule)?, &a, n)?,
            };
            if out.json {
                return write_out(&out, &json(&r));
            }
            let mut text = render_assignment(&assignment_of(&r.assignment));
            let _ = writeln!(text, "# complete={} valid={} basis={}", r.complete, r.valid, r.basis);
            write_out(&out, &text)
        }
        Cmd::TepCompile { src, to, rule, n, out } => {
            if url.is_some() {
                return Err(local_only("tep-compile"));
            }
            let change = compile_basis_change(&load_rule(&rule)?, &load(&src)?, &read_pattern(&to)?, n)?;
            write_out(&out, &if out.json { json(&change) } else { render_change(&change) })
        }
        Cmd::Serve { port, static_dir, cap } => {
            if url.is_some() {
                return Err(Failure::Usage("serve does not take --remote".into()));
            }
            serve(port, static_dir, cap)
        }
    }
}

fn render_orbit(vertices: impl Iterator<Item = (Pattern, u32)>, as_json: bool) -> String {
    #[derive(Serialize)]
    struct Vertex {
        distance: u32,
        pattern: Pattern,
    }
    let vs: Vec<Vertex> = vertices.map(|(pattern, distance)| Vertex { distance, pattern }).collect();
    if as_json {
        return json(&vs);
    }
    let mut text = String::new();
    for (i, v) in vs.iter().enumerate() {
        let _ = writeln!(text, "# vertex {i} distance {}", v.distance);
        text.push_str(&render_pattern(&v.pattern));
    }
    text
}

/// One set per line, points as `x y` separated by `; `, `-` for the empty set.
fn render_sets(sets: &[Pattern]) -> String {
    let mut text = String::new();
    for s in sets {
        if s.is_empty() {
            text.push('-');
        }
        let pts: Vec<String> = s.iter().map(|c| format!("{} {}", c.x, c.y)).collect();
        text.push_str(&pts.join("; "));
        text.push('\n');
    }
    text
}

/// `source`/`target` slot lines, then one `perm <i> <j>` line per
/// permutation listing the images of `(0,0), (0,1), ...` as `a,b`.
fn render_change(c: &CompiledChange) -> String {
    let mut text = format!("alphabet {}\n", c.alphabet);
    for (tag, order) in [("source", &c.source_order), ("target", &c.target_order)] {
        for p in order {
            let _ = writeln!(text, "{tag} {} {}", p.x, p.y);
        }
    }
    for p in &c.permutations {
        let images: Vec<String> = p.table.iter().map(|(a, b)| format!("{a},{b}")).collect();
        let _ = writeln!(text, "perm {} {} {}", p.i, p.j, images.join(" "));
    }
    let _ = writeln!(text, "# {} permutations, {} from moves", c.permutations.len(), c.move_permutations);
    text
}

fn serve(port: u16, static_dir: Option<PathBuf>, cap: Option<usize>) -> Res<()> {
    let config = tsol_server::Config {
        addr: Some(SocketAddr::from(([127, 0, 0, 1], port))),
        static_dir,
        orbit_cap: cap,
    };
    let rt = tokio::runtime::Runtime::new().map_err(|e| Failure::Io(format!("runtime: {e}")))?;
    rt.block_on(async {
        let listener = tsol_server::bind(&config)
            .await
            .map_err(|e| Failure::Io(format!("cannot listen on port {port}: {e}")))?;
        let addr = listener.local_addr().map_err(|e| Failure::Io(e.to_string()))?;
        eprintln!("tsol: serving on http://{addr}");
        tsol_server::run(listener, &config, async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
        .map_err(|e| Failure::Io(e.to_string()))
    })
}
