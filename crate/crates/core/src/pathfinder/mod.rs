//! Explicit move sequences: between edges of a triangle, from any pattern to
//! its normal form, and between two patterns of the same orbit.

pub mod executor;
pub mod fetch;
pub mod frame;
pub mod maneuvers;
pub mod merge;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::filling::TriangleDecomposition;
use crate::lattice::{replay_moves, Edge, Move, Pattern, Point, Triangle};
use crate::normalform::normal_form;

use executor::Executor;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveSequence {
    pub start: Pattern,
    pub moves: Vec<Move>,
}

impl MoveSequence {
    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    /// The end pattern, or the index of the first illegal move.
    pub fn replay(&self) -> Result<Pattern> {
        replay_moves(&self.start, &self.moves)
    }

    /// The same path walked backwards, starting from `end`.
    pub fn reversed(&self, end: Pattern) -> MoveSequence {
        MoveSequence {
            start: end,
            moves: self.moves.iter().rev().map(|m| m.reversed()).collect(),
        }
    }
}

pub fn replay(seq: &MoveSequence) -> Result<Pattern> {
    seq.replay()
}

/// Moves carrying the line on edge `from` of `v + T_n` onto edge `to`.
pub fn edge_rotation(n: i64, v: Point, from: Edge, to: Edge) -> Result<MoveSequence> {
    let tri = Triangle::new(v, n)?;
    let start: Pattern = tri.edge(from).into_iter().collect();
    let mut ex = Executor::new(&start);
    let mut world = start.clone();
    ex.run(&mut world, &merge::rotation_plan(&tri, from, to))?;
    Ok(MoveSequence {
        start,
        moves: ex.into_moves(),
    })
}

/// Moves from `p` to the realized normal form of its orbit.
pub fn to_normal_form(p: &Pattern) -> Result<MoveSequence> {
    let nf = normal_form(p);
    if *p == nf.realize() {
        return Ok(MoveSequence {
            start: p.clone(),
            moves: Vec::new(),
        });
    }
    // an edge of its own triangle rotates straight onto the top edge
    if let [part] = nf.parts[..] {
        for e in [Edge::Vertical, Edge::Diagonal] {
            let edge: Pattern = part.triangle().edge(e).into_iter().collect();
            if edge == *p {
                return edge_rotation(part.n, part.v, e, Edge::Horizontal);
            }
        }
    }
    let mut ex = Executor::new(p);
    merge::merge_lines(&mut ex, p)?;
    for tri in TriangleDecomposition::of(p).parts {
        let local: Pattern = ex
            .board()
            .iter()
            .filter(|&c| tri.contains(c))
            .map(|c| c - tri.anchor)
            .collect();
        let moves = fetch::gather_excess(&local, tri.size)?;
        ex.push_moves(moves.into_iter().map(|m| Move {
            anchor: m.anchor + tri.anchor,
            from: m.from + tri.anchor,
            to: m.to + tri.anchor,
        }));
    }
    Ok(MoveSequence {
        start: p.clone(),
        moves: cancel_backtracks(ex.into_moves()),
    })
}

/// Drops every move that is immediately undone. The states before and after
/// such a pair coincide, so what remains is still legal.
pub fn cancel_backtracks(moves: Vec<Move>) -> Vec<Move> {
    let mut out: Vec<Move> = Vec::with_capacity(moves.len());
    for m in moves {
        if out.last() == Some(&m.reversed()) {
            out.pop();
        } else {
            out.push(m);
        }
    }
    out
}

/// Moves from `p` to `q` through their common normal form.
pub fn path_between(p: &Pattern, q: &Pattern) -> Result<MoveSequence> {
    let nf = normal_form(p);
    if p.len() != q.len() || nf != normal_form(q) {
        return Err(Error::NotSameOrbit);
    }
    let mut moves = to_normal_form(p)?.moves;
    moves.extend(to_normal_form(q)?.reversed(nf.realize()).moves);
    Ok(MoveSequence {
        start: p.clone(),
        moves: cancel_backtracks(moves),
    })
}
