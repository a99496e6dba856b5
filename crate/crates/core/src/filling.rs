//! The filling closure, its triangle decomposition, excess and excess sets.

use std::collections::VecDeque;

use rustc_hash::FxHashSet as HashSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{neighbourhood, triangle_through, Pattern, Point, Triangle};

/// Largest pattern accepted by the excess-set enumerators.
pub const EXCESS_SET_LIMIT: usize = 24;

/// Order in which pending completions are processed. The closure does not
/// depend on it; both exist so that can be checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Schedule {
    Queue,
    Stack,
}

/// Work counters for one closure run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FillStats {
    /// Neighbour probes made while scanning added cells.
    pub visits: usize,
    /// Cells added by completion.
    pub added: usize,
}

/// `φ(P)`: the least superset of `P` closed under completing doubly occupied triangles.
pub fn fill(p: &Pattern) -> Pattern {
    fill_with(p, Schedule::Stack).0
}

/// Closure with an explicit schedule and work counters.
///
/// Each cell is scanned once, when it enters the set: every neighbour already
/// present determines one triangle whose third cell gets completed. A triangle
/// only becomes doubly occupied when its second cell arrives, so this catches
/// every completion.
pub fn fill_with(p: &Pattern, schedule: Schedule) -> (Pattern, FillStats) {
    let mut set: HashSet<Point> = p.iter().collect();
    let mut work: VecDeque<Point> = p.iter().collect();
    let mut stats = FillStats::default();
    loop {
        let x = match schedule {
            Schedule::Queue => work.pop_front(),
            Schedule::Stack => work.pop_back(),
        };
        let Some(x) = x else { break };
        for y in neighbourhood(x) {
            stats.visits += 1;
            if !set.contains(&y) {
                continue;
            }
            let (_, z) = triangle_through(x, y).expect("neighbours share a triangle");
            if set.insert(z) {
                stats.added += 1;
                work.push_back(z);
            }
        }
    }
    (set.into_iter().collect(), stats)
}

/// True when no triangle inside `f` has exactly two cells of `f`.
pub fn is_closed(f: &Pattern) -> bool {
    f.iter().all(|x| {
        neighbourhood(x)
            .into_iter()
            .filter(|&y| f.contains(y))
            .all(|y| f.contains(triangle_through(x, y).unwrap().1))
    })
}

/// The non-touching triangles making up a filling, with the excess of the
/// pattern that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangleDecomposition {
    pub parts: Vec<Triangle>,
    pub total_filled: usize,
    pub excess_per_part: Vec<usize>,
}

impl TriangleDecomposition {
    /// Decomposes `fill(p)` and counts the stones of `p` in each part.
    pub fn of(p: &Pattern) -> Self {
        let f = fill(p);
        let parts = decompose_parts(&f).expect("a filling always decomposes");
        let excess_per_part = parts
            .iter()
            .map(|t| p.iter().filter(|&c| t.contains(c)).count() - t.size as usize)
            .collect();
        TriangleDecomposition {
            parts,
            total_filled: f.len(),
            excess_per_part,
        }
    }

    pub fn size_sum(&self) -> i64 {
        self.parts.iter().map(|t| t.size).sum()
    }
}

/// Splits a filling into its touching-components and checks each one is a triangle.
pub fn decompose(f: &Pattern) -> Result<TriangleDecomposition> {
    let parts = decompose_parts(f)?;
    if !is_closed(f) {
        return Err(Error::NotAFilling("a triangle has exactly two filled cells".into()));
    }
    let excess_per_part = parts
        .iter()
        .map(|t| t.cell_count() - t.size as usize)
        .collect();
    Ok(TriangleDecomposition {
        parts,
        total_filled: f.len(),
        excess_per_part,
    })
}

/// Touching-components of `f`, each checked to be a translated triangle,
/// sorted by anchor in `(y desc, x asc)` order.
pub fn components(f: &Pattern) -> Vec<Vec<Point>> {
    let mut seen: HashSet<Point> = HashSet::with_capacity_and_hasher(f.len(), Default::default());
    let mut out = Vec::new();
    for s in f.iter() {
        if !seen.insert(s) {
            continue;
        }
        let mut stack = vec![s];
        let mut comp = Vec::new();
        while let Some(x) = stack.pop() {
            comp.push(x);
            for y in neighbourhood(x) {
                if f.contains(y) && seen.insert(y) {
                    stack.push(y);
                }
            }
        }
        out.push(comp);
    }
    out
}

fn decompose_parts(f: &Pattern) -> Result<Vec<Triangle>> {
    let mut parts = Vec::new();
    for comp in components(f) {
        let min_x = comp.iter().map(|p| p.x).min().unwrap();
        let min_y = comp.iter().map(|p| p.y).min().unwrap();
        let max_x = comp.iter().map(|p| p.x).max().unwrap();
        let max_y = comp.iter().map(|p| p.y).max().unwrap();
        let n = max_x - min_x + 1;
        let t = Triangle::new(Point::new(min_x, min_y), n)?;
        if max_y - min_y + 1 != n
            || comp.len() != t.cell_count()
            || !comp.iter().all(|&c| t.contains(c))
        {
            return Err(Error::NotAFilling(format!(
                "component at {} is not a triangle",
                Point::new(min_x, max_y)
            )));
        }
        parts.push(t);
    }
    parts.sort_by_key(|t| t.anchor);
    Ok(parts)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExcessReport {
    pub excess: usize,
    /// `(part index, excess)` for every part of the decomposition.
    pub per_part: Vec<(usize, usize)>,
}

/// `e(P) = |P| - Σ k_i`.
pub fn excess(p: &Pattern) -> ExcessReport {
    let d = TriangleDecomposition::of(p);
    ExcessReport {
        excess: d.excess_per_part.iter().sum(),
        per_part: d.excess_per_part.iter().copied().enumerate().collect(),
    }
}

/// Whether `fill(p)` is a single triangle of size `|p|`.
pub fn is_fill_matrix(p: &Pattern) -> bool {
    if p.is_empty() {
        return false;
    }
    let d = TriangleDecomposition::of(p);
    d.parts.len() == 1 && d.parts[0].size as usize == p.len()
}

/// Closure over a fixed cell universe, as bitmasks. The universe is
/// `fill(P)`; every triangle meeting it in two cells lies inside it.
struct LocalFill {
    triples: Vec<[usize; 3]>,
    /// Indices into `triples` of the triangles through each cell.
    through: Vec<Vec<usize>>,
    small: Option<Vec<u128>>,
    words: usize,
}

impl LocalFill {
    fn new(universe: &[Point]) -> Self {
        let index = |p: &Point| universe.binary_search(p).ok();
        let mut anchors: Vec<Point> = universe
            .iter()
            .flat_map(|&p| crate::lattice::anchors_containing(p))
            .collect();
        anchors.sort_unstable();
        anchors.dedup();
        let triples: Vec<[usize; 3]> = anchors
            .into_iter()
            .filter_map(|v| {
                let c = crate::lattice::triangle_at(v);
                Some([index(&c[0])?, index(&c[1])?, index(&c[2])?])
            })
            .collect();
        let mut through = vec![Vec::new(); universe.len()];
        for (t, cells) in triples.iter().enumerate() {
            for &c in cells {
                through[c].push(t);
            }
        }
        let small = (universe.len() <= 128)
            .then(|| triples.iter().map(|t| t.iter().fold(0u128, |m, &i| m | 1 << i)).collect());
        LocalFill {
            triples,
            through,
            small,
            words: universe.len().div_ceil(64),
        }
    }

    /// Closure over at most 128 cells, one bit each.
    fn close_small(tris: &[u128], mut bits: u128) -> u128 {
        loop {
            let before = bits;
            for &t in tris {
                // exactly two of the three cells: at least two, not all
                let m = bits & t;
                if m != t && m & m.wrapping_sub(1) != 0 {
                    bits |= t;
                }
            }
            if bits == before {
                return bits;
            }
        }
    }

    fn close(&self, bits: &mut [u64]) {
        let get = |b: &[u64], i: usize| b[i / 64] >> (i % 64) & 1 == 1;
        let mut work: Vec<usize> = (0..self.through.len()).filter(|&i| get(bits, i)).collect();
        while let Some(c) = work.pop() {
            for &t in &self.through[c] {
                let tri = self.triples[t];
                if tri.iter().filter(|&&i| get(bits, i)).count() == 2 {
                    let z = tri.iter().copied().find(|&i| !get(bits, i)).unwrap();
                    bits[z / 64] |= 1 << (z % 64);
                    work.push(z);
                }
            }
        }
    }
}

/// All `U ⊆ P` with `|U| <= max_card` and `fill(P \ U) = fill(P)`, sorted by
/// cardinality, then by point list. Always contains the empty set.
pub fn excess_sets(p: &Pattern, max_card: usize) -> Result<Vec<Pattern>> {
    let (pts, masks) = excess_masks(p, max_card)?;
    let mut sets: Vec<Vec<Point>> = masks.into_iter().map(|m| select(&pts, m)).collect();
    sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(sets.into_iter().map(Pattern::from).collect())
}

fn select(pts: &[Point], mask: u32) -> Vec<Point> {
    (0..pts.len()).filter(|&j| mask >> j & 1 == 1).map(|j| pts[j]).collect()
}

/// Excess sets as bitmasks over `p.points()`, in discovery order.
fn excess_masks(p: &Pattern, max_card: usize) -> Result<(Vec<Point>, Vec<u32>)> {
    if p.len() > EXCESS_SET_LIMIT {
        return Err(Error::TooLarge(format!(
            "{} points, excess sets are enumerated up to {}",
            p.len(),
            EXCESS_SET_LIMIT
        )));
    }
    let pts = p.points();
    let f = fill(p);
    let sizes: i64 = decompose_parts(&f).expect("a filling always decomposes").iter().map(|t| t.size).sum();
    let bound = (p.len() - sizes as usize).min(max_card);
    let universe = f.points();
    let local = LocalFill::new(&universe);
    let idx: Vec<usize> = pts
        .iter()
        .map(|q| universe.binary_search(q).expect("P is inside its filling"))
        .collect();

    let mut bits = vec![0u64; local.words];
    let mut is_excess = |mask: u32| -> bool {
        if let Some(tris) = &local.small {
            let kept = idx.iter().enumerate().filter(|&(j, _)| mask >> j & 1 == 0);
            let start = kept.fold(0u128, |m, (_, &i)| m | 1 << i);
            let closed = LocalFill::close_small(tris, start);
            return idx.iter().enumerate().all(|(j, &i)| mask >> j & 1 == 0 || closed >> i & 1 == 1);
        }
        bits.fill(0);
        for (j, &i) in idx.iter().enumerate() {
            if mask >> j & 1 == 0 {
                bits[i / 64] |= 1 << (i % 64);
            }
        }
        local.close(&mut bits);
        idx.iter()
            .enumerate()
            .all(|(j, &i)| mask >> j & 1 == 0 || bits[i / 64] >> (i % 64) & 1 == 1)
    };

    // excess sets are closed downward, so a depth-first walk that only
    // extends excess sets with larger indices visits each of them once
    let mut found = vec![0u32];
    let mut stack = vec![(0u32, 0usize)];
    while let Some((mask, next)) = stack.pop() {
        if mask.count_ones() as usize >= bound {
            continue;
        }
        for j in next..pts.len() {
            let m = mask | 1 << j;
            if is_excess(m) {
                found.push(m);
                stack.push((m, j + 1));
            }
        }
    }
    Ok((pts, found))
}

/// The inclusion-maximal excess sets, sorted like [`excess_sets`].
pub fn maximal_excess_sets(p: &Pattern) -> Result<Vec<Pattern>> {
    let (pts, masks) = excess_masks(p, p.len())?;
    let lookup: HashSet<u32> = masks.iter().copied().collect();
    let mut sets: Vec<Vec<Point>> = masks
        .iter()
        .filter(|&&m| (0..pts.len()).all(|j| m >> j & 1 == 1 || !lookup.contains(&(m | 1 << j))))
        .map(|&m| select(&pts, m))
        .collect();
    sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(sets.into_iter().map(Pattern::from).collect())
}
