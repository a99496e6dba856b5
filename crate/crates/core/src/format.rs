//! Text encodings: `.pts` point lists, ASCII boards, normal forms and move
//! sequences.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::lattice::{Move, Pattern, Point};
use crate::normalform::{NormalForm, NormalPart};
use crate::pathfinder::MoveSequence;

fn parse_int(s: &str, line: usize, what: &str) -> Result<i64> {
    s.parse::<i64>().map_err(|_| Error::Parse {
        line,
        msg: format!("bad {what} {s:?}"),
    })
}

/// One point per line as `<x> <y>`; blank lines and `#` comments are skipped.
pub fn parse_pattern(text: &str) -> Result<Pattern> {
    let mut p = Pattern::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let (x, y) = line.split_once(' ').ok_or_else(|| Error::Parse {
            line: i + 1,
            msg: format!("expected \"<x> <y>\", got {line:?}"),
        })?;
        let pt = Point::new(parse_int(x, i + 1, "x")?, parse_int(y, i + 1, "y")?);
        if !p.insert(pt) {
            return Err(Error::Parse {
                line: i + 1,
                msg: format!("duplicate point {pt}"),
            });
        }
    }
    Ok(p)
}

pub fn render_pattern(p: &Pattern) -> String {
    let mut out = String::with_capacity(p.len() * 6);
    for c in p.iter() {
        let _ = writeln!(out, "{} {}", c.x, c.y);
    }
    out
}

/// `#` for stones, `.` for empty cells, top row first, over the tight
/// bounding box whose lower-left corner is given in the header.
pub fn render_ascii(p: &Pattern) -> String {
    let Some((lo, hi)) = p.bounds() else {
        return "# origin 0 0\n".to_string();
    };
    let mut out = format!("# origin {} {}\n", lo.x, lo.y);
    for y in (lo.y..=hi.y).rev() {
        for x in lo.x..=hi.x {
            out.push(if p.contains(Point::new(x, y)) { '#' } else { '.' });
        }
        out.push('\n');
    }
    out
}

/// Lines `part <vx> <vy> n=<n> k=<k>`.
pub fn render_normal_form(nf: &NormalForm) -> String {
    let mut out = String::new();
    for p in &nf.parts {
        let _ = writeln!(out, "part {} {} n={} k={}", p.v.x, p.v.y, p.n, p.k);
    }
    out
}

pub fn parse_normal_form(text: &str) -> Result<NormalForm> {
    let mut parts = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let err = || Error::Parse {
            line: i + 1,
            msg: format!("expected \"part <vx> <vy> n=<n> k=<k>\", got {line:?}"),
        };
        let f: Vec<&str> = line.split(' ').collect();
        let ["part", vx, vy, n, k] = f[..] else { return Err(err()) };
        let n = n.strip_prefix("n=").ok_or_else(err)?;
        let k = k.strip_prefix("k=").ok_or_else(err)?;
        parts.push(NormalPart {
            v: Point::new(parse_int(vx, i + 1, "vx")?, parse_int(vy, i + 1, "vy")?),
            n: parse_int(n, i + 1, "n")?,
            k: parse_int(k, i + 1, "k")?.try_into().map_err(|_| err())?,
        });
    }
    Ok(NormalForm { parts })
}

/// The `.pts` block of the start pattern, then `move <vx> <vy> <fx> <fy> <tx> <ty>` lines.
pub fn render_move_sequence(seq: &MoveSequence) -> String {
    let mut out = render_pattern(&seq.start);
    for m in &seq.moves {
        let _ = writeln!(
            out,
            "move {} {} {} {} {} {}",
            m.anchor.x, m.anchor.y, m.from.x, m.from.y, m.to.x, m.to.y
        );
    }
    out
}

pub fn parse_move_sequence(text: &str) -> Result<MoveSequence> {
    let mut start = String::new();
    let mut moves = Vec::new();
    let mut offset = None;
    for (i, line) in text.lines().enumerate() {
        if let Some(rest) = line.strip_prefix("move ") {
            offset.get_or_insert(i);
            let v: Vec<i64> = rest
                .split(' ')
                .map(|s| parse_int(s, i + 1, "coordinate"))
                .collect::<Result<_>>()?;
            let [vx, vy, fx, fy, tx, ty] = v[..] else {
                return Err(Error::Parse {
                    line: i + 1,
                    msg: "a move has six coordinates".into(),
                });
            };
            moves.push(Move {
                anchor: Point::new(vx, vy),
                from: Point::new(fx, fy),
                to: Point::new(tx, ty),
            });
        } else if offset.is_some() && !line.trim().is_empty() {
            return Err(Error::Parse {
                line: i + 1,
                msg: "points must precede the moves".into(),
            });
        } else {
            start.push_str(line);
            start.push('\n');
        }
    }
    Ok(MoveSequence {
        start: parse_pattern(&start)?,
        moves,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::legal_moves;

    #[test]
    fn pts_examples() {
        assert_eq!(parse_pattern("0 1\n1 1\n").unwrap(), Pattern::from([(0, 1), (1, 1)]));
        assert_eq!(parse_pattern("").unwrap(), Pattern::new());
        assert_eq!(
            parse_pattern("1 two\n"),
            Err(Error::Parse { line: 1, msg: "bad y \"two\"".into() })
        );
        assert!(matches!(parse_pattern("# c\n\n0 0\n0 0\n"), Err(Error::Parse { line: 4, .. })));
        assert!(matches!(parse_pattern("0  0\n"), Err(Error::Parse { line: 1, .. })));
        let p = Pattern::from([(3, -1), (-2, 7), (0, 0)]);
        assert_eq!(render_pattern(&p), "-2 7\n0 0\n3 -1\n");
        assert_eq!(parse_pattern(&render_pattern(&p)).unwrap(), p);
    }

    #[test]
    fn ascii_board() {
        let p = Pattern::from([(0, 1), (1, 0)]);
        assert_eq!(render_ascii(&p), "# origin 0 0\n#.\n.#\n");
        let l = Pattern::line(3).translate(Point::new(-1, 2));
        assert_eq!(render_ascii(&l), "# origin -1 4\n###\n");
    }

    #[test]
    fn normal_form_text() {
        let nf = NormalForm {
            parts: vec![NormalPart { v: Point::new(0, 4), n: 5, k: 0 }],
        };
        assert_eq!(render_normal_form(&nf), "part 0 4 n=5 k=0\n");
        assert_eq!(parse_normal_form(&render_normal_form(&nf)).unwrap(), nf);
    }

    #[test]
    fn move_sequence_text() {
        let p = Pattern::from([(0, 1), (1, 1)]);
        let seq = MoveSequence { start: p.clone(), moves: legal_moves(&p)[..1].to_vec() };
        let text = render_move_sequence(&seq);
        assert_eq!(text, "0 1\n1 1\nmove 0 0 0 1 1 0\n");
        assert_eq!(parse_move_sequence(&text).unwrap(), seq);
        assert!(parse_move_sequence("0 0\nmove 1 2 3\n").is_err());
    }
}
