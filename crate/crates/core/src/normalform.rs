//! Orbit identification and the canonical representative `∪ v_i + P_{n_i,k_i}`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::filling::{components, fill_with, Schedule};
use crate::lattice::{Pattern, Point, Triangle};

/// One part of a normal form: the line of length `n` on top of `v + T_n`
/// with `k` excess stones packed below it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NormalPart {
    pub v: Point,
    pub n: i64,
    pub k: usize,
}

impl NormalPart {
    pub fn triangle(&self) -> Triangle {
        Triangle {
            anchor: self.v,
            size: self.n,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NormalForm {
    pub parts: Vec<NormalPart>,
}

impl NormalForm {
    /// The pattern `∪ v_i + P_{n_i,k_i}`.
    pub fn realize(&self) -> Pattern {
        let mut out = Pattern::new();
        for part in &self.parts {
            let piece = p_nk(part.n, part.k, part.v).expect("normal form parts are in range");
            for c in piece.iter() {
                out.insert(c);
            }
        }
        out
    }

    pub fn excess(&self) -> usize {
        self.parts.iter().map(|p| p.k).sum()
    }

    pub fn line_total(&self) -> i64 {
        self.parts.iter().map(|p| p.n).sum()
    }
}

/// Largest `k` for which `P_{n,k}` exists: every cell under the line.
pub fn max_excess(n: i64) -> usize {
    (n * (n - 1) / 2) as usize
}

/// Cells below the line of `T_n` at the origin, in the order excess stones
/// occupy them: rows from just under the line downward, each right to left.
pub fn excess_slots(n: i64) -> impl Iterator<Item = Point> {
    (0..n - 1)
        .rev()
        .flat_map(move |b| (n - 1 - b..n).rev().map(move |a| Point::new(a, b)))
}

/// `v + P_{n,k}`.
pub fn p_nk(n: i64, k: usize, v: Point) -> Result<Pattern> {
    if n < 1 {
        return Err(Error::BadSize(n));
    }
    if k > max_excess(n) {
        return Err(Error::BadParams(format!(
            "k = {k} exceeds n(n-1)/2 = {} for n = {n}",
            max_excess(n)
        )));
    }
    Ok((0..n)
        .map(|a| Point::new(a, n - 1))
        .chain(excess_slots(n).take(k))
        .map(|p| p + v)
        .collect())
}

/// Normal form of `p`.
pub fn normal_form(p: &Pattern) -> NormalForm {
    normal_form_counted(p).0
}

/// Normal form together with the number of cell visits spent computing it.
pub fn normal_form_counted(p: &Pattern) -> (NormalForm, usize) {
    let (f, stats) = fill_with(p, Schedule::Queue);
    let mut visits = stats.visits;
    let comps = components(&f);
    let mut owner: HashMap<Point, usize> = HashMap::with_capacity(f.len());
    let mut tris = Vec::with_capacity(comps.len());
    for (i, comp) in comps.iter().enumerate() {
        let mut lo = comp[0];
        let mut hi_x = comp[0].x;
        for &c in comp {
            lo.x = lo.x.min(c.x);
            lo.y = lo.y.min(c.y);
            hi_x = hi_x.max(c.x);
            owner.insert(c, i);
        }
        visits += comp.len() * 7;
        tris.push(Triangle {
            anchor: lo,
            size: hi_x - lo.x + 1,
        });
    }
    let mut count = vec![0usize; tris.len()];
    for c in p.iter() {
        count[owner[&c]] += 1;
        visits += 1;
    }
    let mut parts: Vec<NormalPart> = tris
        .iter()
        .zip(count)
        .map(|(t, c)| NormalPart {
            v: t.anchor,
            n: t.size,
            k: c - t.size as usize,
        })
        .collect();
    parts.sort_by_key(|p| p.v);
    (NormalForm { parts }, visits)
}

pub fn same_orbit(p: &Pattern, q: &Pattern) -> bool {
    p.len() == q.len() && normal_form(p) == normal_form(q)
}
