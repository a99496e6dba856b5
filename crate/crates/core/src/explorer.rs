//! Exhaustive desk-scale exploration of orbits.
//!
//! Every orbit stays inside the filling of its source, so states are encoded
//! as bitmasks over the cells of that filling (at most 128 of them), indexed
//! in reading order.

use std::collections::hash_map::Entry;
use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rustc_hash::FxHashMap as HashMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::filling::fill;
use crate::lattice::{anchors_containing, apply_move_in_place, legal_moves, triangle_at, Pattern, Point, Triangle};

pub const DEFAULT_VERTEX_CAP: usize = 5_000_000;

/// Largest triangle whose cells fit in one mask.
pub const MAX_DENSE_SIZE: i64 = 15;

/// A fixed universe of at most 128 cells and the triangles inside it.
#[derive(Debug, Clone)]
pub struct Dense {
    cells: Vec<Point>,
    index: HashMap<Point, u32>,
    triangles: Vec<u128>,
}

impl Dense {
    pub fn new(universe: &Pattern) -> Result<Self> {
        if universe.len() > 128 {
            return Err(Error::TooLarge(format!("{} cells, at most 128 fit a state word", universe.len())));
        }
        let cells = universe.points();
        let index: HashMap<Point, u32> = cells.iter().enumerate().map(|(i, &p)| (p, i as u32)).collect();
        let mut anchors: Vec<Point> = cells.iter().flat_map(|&p| anchors_containing(p)).collect();
        anchors.sort();
        anchors.dedup();
        let triangles = anchors
            .into_iter()
            .filter_map(|v| {
                triangle_at(v)
                    .iter()
                    .try_fold(0u128, |m, c| index.get(c).map(|&i| m | 1 << i))
            })
            .collect();
        Ok(Dense { cells, index, triangles })
    }

    /// Universe `T_n` at the origin.
    pub fn triangle(n: i64) -> Result<Self> {
        if n > MAX_DENSE_SIZE {
            return Err(Error::TooLarge(format!("T_{n} has more than 128 cells")));
        }
        Dense::new(&Triangle::new(Point::ORIGIN, n)?.pattern())
    }

    pub fn cells(&self) -> &[Point] {
        &self.cells
    }

    pub fn encode(&self, p: &Pattern) -> Result<u128> {
        p.iter().try_fold(0u128, |m, c| {
            self.index
                .get(&c)
                .map(|&i| m | 1 << i)
                .ok_or_else(|| Error::BadParams(format!("{c} lies outside the universe")))
        })
    }

    pub fn decode(&self, mask: u128) -> Pattern {
        bits(mask).map(|i| self.cells[i]).collect()
    }

    /// States one move away.
    #[inline]
    pub fn for_each_neighbour(&self, s: u128, mut f: impl FnMut(u128)) {
        for &t in &self.triangles {
            let occ = s & t;
            if occ.count_ones() == 2 {
                let empty = t & !s;
                let mut rest = occ;
                while rest != 0 {
                    let c = rest & rest.wrapping_neg();
                    f(s ^ c ^ empty);
                    rest ^= c;
                }
            }
        }
    }

    pub fn degree(&self, s: u128) -> usize {
        self.triangles.iter().filter(|&&t| (s & t).count_ones() == 2).count() * 2
    }

    /// Filling of `s` restricted to the universe.
    pub fn close(&self, mut s: u128) -> u128 {
        loop {
            let before = s;
            for &t in &self.triangles {
                if (s & t).count_ones() == 2 {
                    s |= t;
                }
            }
            if s == before {
                return s;
            }
        }
    }

    pub fn full(&self) -> u128 {
        if self.cells.len() == 128 {
            u128::MAX
        } else {
            (1u128 << self.cells.len()) - 1
        }
    }
}

fn bits(mut m: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

/// The orbit of a pattern as an explicit graph, with BFS distances from it.
#[derive(Debug, Clone)]
pub struct OrbitGraph {
    dense: Dense,
    source: u128,
    states: Vec<u128>,
    dist: Vec<u32>,
    index: HashMap<u128, u32>,
}

impl OrbitGraph {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn source(&self) -> Pattern {
        self.dense.decode(self.source)
    }

    pub fn dense(&self) -> &Dense {
        &self.dense
    }

    pub fn states(&self) -> &[u128] {
        &self.states
    }

    pub fn vertices(&self) -> impl Iterator<Item = Pattern> + '_ {
        self.states.iter().map(|&s| self.dense.decode(s))
    }

    pub fn contains(&self, p: &Pattern) -> bool {
        self.dense.encode(p).is_ok_and(|m| self.index.contains_key(&m))
    }

    /// BFS distance from the source.
    pub fn distance(&self, p: &Pattern) -> Option<u32> {
        let m = self.dense.encode(p).ok()?;
        self.index.get(&m).map(|&i| self.dist[i as usize])
    }

    pub fn distances(&self) -> &[u32] {
        &self.dist
    }

    /// Adjacency lists by vertex index.
    pub fn adjacency(&self) -> Vec<Vec<u32>> {
        self.states
            .par_iter()
            .map(|&s| {
                let mut out = Vec::new();
                self.dense.for_each_neighbour(s, |t| out.push(self.index[&t]));
                out
            })
            .collect()
    }

    /// Largest distance from any vertex to any other.
    pub fn diameter(&self) -> u32 {
        let adj = self.adjacency();
        (0..self.len())
            .into_par_iter()
            .map_init(
                || (vec![u32::MAX; adj.len()], VecDeque::new()),
                |(dist, queue), src| {
                    dist.fill(u32::MAX);
                    eccentricity(&adj, src, dist, queue)
                },
            )
            .max()
            .unwrap_or(0)
    }

    /// Double-sweep lower bound on the diameter: two BFS passes only.
    pub fn diameter_lower_bound(&self) -> u32 {
        let adj = self.adjacency();
        let mut dist = vec![u32::MAX; adj.len()];
        let mut queue = VecDeque::new();
        eccentricity(&adj, 0, &mut dist, &mut queue);
        let far = (0..adj.len()).max_by_key(|&i| dist[i]).unwrap_or(0);
        dist.fill(u32::MAX);
        eccentricity(&adj, far, &mut dist, &mut queue)
    }
}

fn eccentricity(adj: &[Vec<u32>], src: usize, dist: &mut [u32], queue: &mut VecDeque<u32>) -> u32 {
    queue.clear();
    dist[src] = 0;
    queue.push_back(src as u32);
    let mut far = 0;
    while let Some(u) = queue.pop_front() {
        let d = dist[u as usize];
        far = d;
        for &w in &adj[u as usize] {
            if dist[w as usize] == u32::MAX {
                dist[w as usize] = d + 1;
                queue.push_back(w);
            }
        }
    }
    far
}

/// Every pattern reachable from `p`, with distances.
pub fn orbit_bfs(p: &Pattern, vertex_cap: usize) -> Result<OrbitGraph> {
    let dense = Dense::new(&fill(p))?;
    let source = dense.encode(p)?;
    let mut index = HashMap::default();
    let mut states = vec![source];
    let mut dist = vec![0u32];
    index.insert(source, 0u32);
    let mut head = 0;
    while head < states.len() {
        let s = states[head];
        let d = dist[head];
        head += 1;
        let mut overflow = false;
        dense.for_each_neighbour(s, |t| {
            if let Entry::Vacant(slot) = index.entry(t) {
                if states.len() >= vertex_cap {
                    overflow = true;
                    return;
                }
                slot.insert(states.len() as u32);
                states.push(t);
                dist.push(d + 1);
            }
        });
        if overflow {
            return Err(Error::CapExceeded { partial: states.len() });
        }
    }
    Ok(OrbitGraph { dense, source, states, dist, index })
}

pub fn diameter(p: &Pattern, vertex_cap: usize) -> Result<u32> {
    Ok(orbit_bfs(p, vertex_cap)?.diameter())
}

/// Walks the `n`-subsets of `T_n` having at most `k` points in their first
/// `k` columns, a property every fill matrix has.
fn column_bounded_subsets(dense: &Dense, n: i64, mut visit: impl FnMut(u128)) {
    let columns: Vec<Vec<u32>> = (0..n)
        .map(|a| (n - 1 - a..n).map(|b| dense.index[&Point::new(a, b)]).collect())
        .collect();
    let mut stack = vec![(0usize, 0u128, 0u32)];
    while let Some((col, mask, used)) = stack.pop() {
        if col == n as usize {
            if used == n as u32 {
                visit(mask);
            }
            continue;
        }
        let cells = &columns[col];
        let room = (col as u32 + 1 - used) as usize;
        for sub in 0u32..1 << cells.len() {
            if sub.count_ones() as usize > room {
                continue;
            }
            let mut m = mask;
            for (i, &c) in cells.iter().enumerate() {
                if sub >> i & 1 == 1 {
                    m |= 1 << c;
                }
            }
            stack.push((col + 1, m, used + sub.count_ones()));
        }
    }
}

/// All `n`-subsets of `T_n` filling `T_n`, sorted by mask.
pub fn enumerate_fill_matrices(n: i64) -> Result<Vec<Pattern>> {
    if !(1..=8).contains(&n) {
        return Err(Error::TooLarge(format!("fill matrices are enumerated for 1 <= n <= 8, got {n}")));
    }
    let dense = Dense::triangle(n)?;
    let full = dense.full();
    let mut found = Vec::new();
    column_bounded_subsets(&dense, n, |m| {
        if dense.close(m) == full {
            found.push(m);
        }
    });
    found.sort_unstable();
    Ok(found.into_iter().map(|m| dense.decode(m)).collect())
}

/// Number of `n`-subsets of `T_n` with at most `k` points in the first `k`
/// columns for every `k`. An upper bound on the size of the line orbit.
pub fn column_property_count(n: i64) -> Result<u64> {
    if !(1..=8).contains(&n) {
        return Err(Error::TooLarge(format!("column counts are enumerated for 1 <= n <= 8, got {n}")));
    }
    let dense = Dense::triangle(n)?;
    let mut count = 0u64;
    column_bounded_subsets(&dense, n, |_| count += 1);
    Ok(count)
}

/// Partition of all `card`-subsets of `T_n` into orbits, each a sorted list of masks.
pub fn orbit_classes(n: i64, card: u32) -> Result<(Dense, Vec<Vec<u128>>)> {
    let dense = Dense::triangle(n)?;
    let size = dense.cells().len() as u32;
    if size > 24 {
        return Err(Error::TooLarge(format!("T_{n} has too many subsets to partition")));
    }
    let subsets: Vec<u128> = (0u128..1 << size).filter(|m| m.count_ones() == card).collect();
    let mut seen: HashMap<u128, ()> = HashMap::with_capacity_and_hasher(subsets.len(), Default::default());
    let mut classes = Vec::new();
    for &s in &subsets {
        if seen.contains_key(&s) {
            continue;
        }
        let mut class = vec![s];
        seen.insert(s, ());
        let mut head = 0;
        while head < class.len() {
            let u = class[head];
            head += 1;
            dense.for_each_neighbour(u, |t| {
                if seen.insert(t, ()).is_none() {
                    class.push(t);
                }
            });
        }
        class.sort_unstable();
        classes.push(class);
    }
    Ok((dense, classes))
}

/// `steps` uniformly random legal moves, reproducible from `seed`. Stops early
/// on a pattern without moves.
pub fn random_walk(p: &Pattern, steps: usize, seed: u64) -> Pattern {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cur = p.clone();
    for _ in 0..steps {
        let moves = legal_moves(&cur);
        let Some(m) = moves.choose(&mut rng) else { break };
        apply_move_in_place(&mut cur, m).expect("listed moves are legal");
    }
    cur
}

/// Principal branch of the Lambert W function on `[-1/e, inf)`.
pub fn lambert_w0(x: f64) -> f64 {
    let branch = -(-1.0f64).exp();
    assert!(x >= branch, "W0 is real only from -1/e");
    if x == 0.0 {
        return 0.0;
    }
    // series around the branch point, log guess for large x
    let mut w = if x < 1.0 {
        let p = (2.0 * (std::f64::consts::E * x + 1.0)).sqrt();
        -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p
    } else {
        let l = x.ln();
        l - l.ln().max(0.0)
    };
    for _ in 0..64 {
        let e = w.exp();
        let f = w * e - x;
        let step = f / (e * (w + 1.0) - (w + 2.0) * f / (2.0 * w + 2.0));
        w -= step;
        if step.abs() <= 1e-15 * (1.0 + w.abs()) {
            break;
        }
    }
    w
}

/// `c = (4 + 2 W0(-2 e^-2)) / (e^3 sqrt(2 pi))`.
pub fn orbit_count_constant() -> f64 {
    let e = std::f64::consts::E;
    (4.0 + 2.0 * lambert_w0(-2.0 * (-2.0f64).exp())) / (e.powi(3) * (2.0 * std::f64::consts::PI).sqrt())
}

/// `c (e/2)^n (n-1)^(n - 5/2)`.
pub fn orbit_count_expression(n: u32) -> f64 {
    let e = std::f64::consts::E;
    let n = n as f64;
    orbit_count_constant() * (e / 2.0).powf(n) * (n - 1.0).powf(n - 2.5)
}

/// `3 n! - 3`, from the corner construction.
pub fn corner_lower_bound(n: u32) -> u128 {
    3 * (1..=n as u128).product::<u128>() - 3
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrbitSizeReport {
    pub n: u32,
    pub orbit_size: usize,
    pub lower_bound_3nfact: u128,
    pub upper_bound_expr: f64,
    /// Exact count of patterns with the column property, when enumerable.
    pub column_property_count: Option<u64>,
    pub lower_holds: bool,
    pub upper_holds: bool,
}

pub fn check_orbit_size_bounds(n: u32, vertex_cap: usize) -> Result<OrbitSizeReport> {
    if n == 0 {
        return Err(Error::BadSize(0));
    }
    let size = orbit_bfs(&Pattern::line(n as usize), vertex_cap)?.len();
    let lower = corner_lower_bound(n);
    let upper = orbit_count_expression(n);
    Ok(OrbitSizeReport {
        n,
        orbit_size: size,
        lower_bound_3nfact: lower,
        upper_bound_expr: upper,
        column_property_count: column_property_count(n as i64).ok(),
        lower_holds: size as u128 >= lower,
        upper_holds: size as f64 <= upper,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CensusRow {
    pub n: u32,
    pub orbit_size: usize,
    pub lower_bound_3nfact: u128,
    pub upper_bound_expr: f64,
    /// Exact when `diameter_exact`, else a double-sweep lower bound.
    pub diameter: u32,
    pub diameter_exact: bool,
}

/// Orbit statistics of the lines `L_1..=L_max_n`. Diameters are exact up to
/// `exact_up_to`.
pub fn census(max_n: u32, exact_up_to: u32, vertex_cap: usize) -> Result<Vec<CensusRow>> {
    (1..=max_n)
        .map(|n| {
            let g = orbit_bfs(&Pattern::line(n as usize), vertex_cap)?;
            let exact = n <= exact_up_to;
            Ok(CensusRow {
                n,
                orbit_size: g.len(),
                lower_bound_3nfact: corner_lower_bound(n),
                upper_bound_expr: orbit_count_expression(n),
                diameter: if exact { g.diameter() } else { g.diameter_lower_bound() },
                diameter_exact: exact,
            })
        })
        .collect()
}
