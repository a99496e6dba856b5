//! Lattice geometry, patterns and legal solitaire moves.
//!
//! Coordinates follow the usual mathematical convention: `x` grows to the
//! right and `y` grows upward. A move acts on a translate `v + T` of the
//! triangle shape `T = {(0,1), (1,1), (1,0)}` holding exactly two stones,
//! and moves one of them onto the empty third cell.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A lattice point. Ordered by `y` descending, then `x` ascending, which is
/// the order every text and JSON encoding uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "[i64; 2]", into = "[i64; 2]")]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0, y: 0 };

    #[inline]
    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }
}

impl Ord for Point {
    fn cmp(&self, other: &Self) -> Ordering {
        other.y.cmp(&self.y).then(self.x.cmp(&other.x))
    }
}

impl PartialOrd for Point {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<[i64; 2]> for Point {
    fn from([x, y]: [i64; 2]) -> Self {
        Point { x, y }
    }
}

impl From<Point> for [i64; 2] {
    fn from(p: Point) -> Self {
        [p.x, p.y]
    }
}

impl From<(i64, i64)> for Point {
    fn from((x, y): (i64, i64)) -> Self {
        Point { x, y }
    }
}

impl Add for Point {
    type Output = Point;
    #[inline]
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    #[inline]
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for Point {
    type Output = Point;
    #[inline]
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Offsets of the triangle shape in move-indexing order: up, up-right, right.
pub const TRIANGLE_SHAPE: [Point; 3] = [Point::new(0, 1), Point::new(1, 1), Point::new(1, 0)];

/// Offsets of the neighbourhood of a cell: every cell sharing a triangle with it.
pub const NEIGHBOUR_OFFSETS: [Point; 6] = [
    Point::new(1, 0),
    Point::new(-1, 0),
    Point::new(0, 1),
    Point::new(0, -1),
    Point::new(1, -1),
    Point::new(-1, 1),
];

/// The three cells of `v + T`, in shape order.
#[inline]
pub fn triangle_at(v: Point) -> [Point; 3] {
    TRIANGLE_SHAPE.map(|t| v + t)
}

/// The six cells that can take part in a triangle move together with `x`.
#[inline]
pub fn neighbourhood(x: Point) -> [Point; 6] {
    NEIGHBOUR_OFFSETS.map(|d| x + d)
}

/// The anchors `v` whose triangle `v + T` contains `x`.
#[inline]
pub fn anchors_containing(x: Point) -> [Point; 3] {
    TRIANGLE_SHAPE.map(|t| x - t)
}

#[inline]
pub fn are_neighbours(a: Point, b: Point) -> bool {
    NEIGHBOUR_OFFSETS.contains(&(b - a))
}

/// Two neighbouring cells lie in exactly one translate of `T`; returns its
/// anchor and the remaining third cell.
pub fn triangle_through(a: Point, b: Point) -> Option<(Point, Point)> {
    for v in anchors_containing(a) {
        let cells = triangle_at(v);
        if cells.contains(&b) && a != b {
            let third = cells.into_iter().find(|&c| c != a && c != b)?;
            return Some((v, third));
        }
    }
    None
}

/// One solitaire move: inside `anchor + T`, the stone on `from` moves to the
/// empty cell `to`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Move {
    pub anchor: Point,
    pub from: Point,
    pub to: Point,
}

impl Move {
    /// Builds the move between two neighbouring cells, deriving the anchor.
    pub fn between(from: Point, to: Point) -> Option<Move> {
        triangle_through(from, to).map(|(anchor, _)| Move { anchor, from, to })
    }

    pub fn reversed(self) -> Move {
        Move {
            anchor: self.anchor,
            from: self.to,
            to: self.from,
        }
    }

    /// The third cell of the triangle, which must stay occupied.
    pub fn pivot(&self) -> Option<Point> {
        triangle_at(self.anchor)
            .into_iter()
            .find(|&c| c != self.from && c != self.to)
    }

    fn well_formed(&self) -> bool {
        let cells = triangle_at(self.anchor);
        self.from != self.to && cells.contains(&self.from) && cells.contains(&self.to)
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} in {} + T", self.from, self.to, self.anchor)
    }
}

/// A finite set of occupied lattice points.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "PatternRepr", into = "PatternRepr")]
pub struct Pattern {
    cells: BTreeSet<Point>,
}

#[derive(Serialize, Deserialize)]
struct PatternRepr {
    cells: Vec<Point>,
}

impl From<PatternRepr> for Pattern {
    fn from(r: PatternRepr) -> Self {
        r.cells.into_iter().collect()
    }
}

impl From<Pattern> for PatternRepr {
    fn from(p: Pattern) -> Self {
        PatternRepr { cells: p.points() }
    }
}

impl Pattern {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    #[inline]
    pub fn contains(&self, p: Point) -> bool {
        self.cells.contains(&p)
    }

    pub fn insert(&mut self, p: Point) -> bool {
        self.cells.insert(p)
    }

    pub fn remove(&mut self, p: Point) -> bool {
        self.cells.remove(&p)
    }

    /// Points in `(y desc, x asc)` order.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = Point> + ExactSizeIterator + '_ {
        self.cells.iter().copied()
    }

    pub fn points(&self) -> Vec<Point> {
        self.iter().collect()
    }

    pub fn translate(&self, by: Point) -> Pattern {
        self.iter().map(|p| p + by).collect()
    }

    pub fn union(&self, other: &Pattern) -> Pattern {
        self.cells.union(&other.cells).copied().collect()
    }

    pub fn intersection(&self, other: &Pattern) -> Pattern {
        self.cells.intersection(&other.cells).copied().collect()
    }

    pub fn difference(&self, other: &Pattern) -> Pattern {
        self.cells.difference(&other.cells).copied().collect()
    }

    pub fn is_subset(&self, other: &Pattern) -> bool {
        self.cells.is_subset(&other.cells)
    }

    /// `(min, max)` corners of the bounding box, `None` when empty.
    pub fn bounds(&self) -> Option<(Point, Point)> {
        let first = self.cells.iter().next()?;
        let mut lo = *first;
        let mut hi = *first;
        for p in &self.cells {
            lo.x = lo.x.min(p.x);
            lo.y = lo.y.min(p.y);
            hi.x = hi.x.max(p.x);
            hi.y = hi.y.max(p.y);
        }
        Some((lo, hi))
    }

    /// The union of the neighbourhoods of the points, including the points themselves.
    pub fn closed_neighbourhood(&self) -> Pattern {
        let mut out = self.clone();
        for p in self.iter() {
            for q in neighbourhood(p) {
                out.insert(q);
            }
        }
        out
    }

    /// Number of stones of `self` in `v + T`.
    #[inline]
    pub fn occupancy(&self, v: Point) -> usize {
        triangle_at(v).iter().filter(|&&c| self.contains(c)).count()
    }

    /// Horizontal line of `n` stones forming the top edge of `T_n` at the origin.
    pub fn line(n: usize) -> Pattern {
        let n = n as i64;
        (0..n).map(|x| Point::new(x, n - 1)).collect()
    }
}

impl FromIterator<Point> for Pattern {
    fn from_iter<I: IntoIterator<Item = Point>>(iter: I) -> Self {
        Pattern {
            cells: iter.into_iter().collect(),
        }
    }
}

impl<'a> IntoIterator for &'a Pattern {
    type Item = &'a Point;
    type IntoIter = std::collections::btree_set::Iter<'a, Point>;
    fn into_iter(self) -> Self::IntoIter {
        self.cells.iter()
    }
}

impl From<Vec<Point>> for Pattern {
    fn from(v: Vec<Point>) -> Self {
        v.into_iter().collect()
    }
}

impl<const N: usize> From<[(i64, i64); N]> for Pattern {
    fn from(v: [(i64, i64); N]) -> Self {
        v.into_iter().map(Point::from).collect()
    }
}

/// Anchors whose triangle meets `p` at all, sorted.
fn candidate_anchors(p: &Pattern) -> BTreeSet<Point> {
    p.iter().flat_map(anchors_containing).collect()
}

/// Every legal move of `p`, anchors in `(y desc, x asc)` order, two moves per
/// doubly occupied anchor.
pub fn legal_moves(p: &Pattern) -> Vec<Move> {
    let mut out = Vec::new();
    for v in candidate_anchors(p) {
        let cells = triangle_at(v);
        let occupied: Vec<Point> = cells.iter().copied().filter(|&c| p.contains(c)).collect();
        if occupied.len() != 2 {
            continue;
        }
        let to = cells.into_iter().find(|&c| !p.contains(c)).expect("one empty cell");
        for from in occupied {
            out.push(Move { anchor: v, from, to });
        }
    }
    out
}

pub fn is_legal(p: &Pattern, m: &Move) -> bool {
    m.well_formed() && p.contains(m.from) && !p.contains(m.to) && p.occupancy(m.anchor) == 2
}

pub fn apply_move(p: &Pattern, m: &Move) -> Result<Pattern> {
    let mut out = p.clone();
    apply_move_in_place(&mut out, m)?;
    Ok(out)
}

pub fn apply_move_in_place(p: &mut Pattern, m: &Move) -> Result<()> {
    if !is_legal(p, m) {
        return Err(Error::IllegalMove(*m));
    }
    p.remove(m.from);
    p.insert(m.to);
    Ok(())
}

/// Applies `moves` in order, reporting the index of the first illegal one.
pub fn replay_moves(start: &Pattern, moves: &[Move]) -> Result<Pattern> {
    let mut p = start.clone();
    for (index, m) in moves.iter().enumerate() {
        if !is_legal(&p, m) {
            return Err(Error::IllegalMoveAt { index, mv: *m });
        }
        p.remove(m.from);
        p.insert(m.to);
    }
    Ok(p)
}

/// A translated size-`n` triangle `anchor + T_n`.
///
/// Equivalently the half-plane intersection `x <= right`, `y <= top`,
/// `x + y >= diag` with `right = anchor.x + n - 1`, `top = anchor.y + n - 1`
/// and `diag = anchor.x + anchor.y + n - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Triangle {
    pub anchor: Point,
    pub size: i64,
}

/// The three edges of a triangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Edge {
    Horizontal,
    Diagonal,
    Vertical,
}

impl Edge {
    pub const ALL: [Edge; 3] = [Edge::Horizontal, Edge::Diagonal, Edge::Vertical];
}

impl std::str::FromStr for Edge {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "horizontal" | "h" | "top" => Ok(Edge::Horizontal),
            "diagonal" | "d" | "diag" => Ok(Edge::Diagonal),
            "vertical" | "v" | "right" => Ok(Edge::Vertical),
            other => Err(Error::BadParams(format!("unknown edge {other:?}"))),
        }
    }
}

impl Triangle {
    pub fn new(anchor: Point, size: i64) -> Result<Self> {
        if size < 1 {
            return Err(Error::BadSize(size));
        }
        Ok(Triangle { anchor, size })
    }

    /// The size-1 triangle holding a single cell.
    pub fn cell(p: Point) -> Self {
        Triangle { anchor: p, size: 1 }
    }

    #[inline]
    pub fn right(&self) -> i64 {
        self.anchor.x + self.size - 1
    }

    #[inline]
    pub fn top(&self) -> i64 {
        self.anchor.y + self.size - 1
    }

    #[inline]
    pub fn diag(&self) -> i64 {
        self.anchor.x + self.anchor.y + self.size - 1
    }

    #[inline]
    pub fn contains(&self, p: Point) -> bool {
        p.x <= self.right() && p.y <= self.top() && p.x + p.y >= self.diag()
    }

    pub fn contains_triangle(&self, other: &Triangle) -> bool {
        other.right() <= self.right() && other.top() <= self.top() && other.diag() >= self.diag()
    }

    pub fn cell_count(&self) -> usize {
        (self.size * (self.size + 1) / 2) as usize
    }

    /// Cells in `(y desc, x asc)` order.
    pub fn cells(&self) -> impl Iterator<Item = Point> + '_ {
        let n = self.size;
        let v = self.anchor;
        (0..n)
            .rev()
            .flat_map(move |b| (n - 1 - b..n).map(move |a| Point::new(v.x + a, v.y + b)))
    }

    pub fn pattern(&self) -> Pattern {
        self.cells().collect()
    }

    /// Edge cells in walking order: the horizontal edge left to right, the
    /// vertical edge top to bottom, the diagonal from its top-left end down.
    pub fn edge(&self, e: Edge) -> Vec<Point> {
        let n = self.size;
        let v = self.anchor;
        match e {
            Edge::Horizontal => (0..n).map(|a| Point::new(v.x + a, v.y + n - 1)).collect(),
            Edge::Vertical => (0..n).rev().map(|b| Point::new(v.x + n - 1, v.y + b)).collect(),
            Edge::Diagonal => (0..n).map(|a| Point::new(v.x + a, v.y + n - 1 - a)).collect(),
        }
    }

    /// Whether `p` lies in the triangle or in its neighbourhood.
    pub fn touches_point(&self, p: Point) -> bool {
        self.contains(p) || neighbourhood(p).into_iter().any(|q| self.contains(q))
    }

    /// Whether the two triangles overlap or touch.
    pub fn meets(&self, other: &Triangle) -> bool {
        let (small, big) = if self.size <= other.size { (self, other) } else { (other, self) };
        Edge::ALL
            .iter()
            .flat_map(|&e| small.edge(e))
            .any(|p| big.touches_point(p))
    }

    pub fn translate(&self, by: Point) -> Triangle {
        Triangle {
            anchor: self.anchor + by,
            size: self.size,
        }
    }
}

impl fmt::Display for Triangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + T_{}", self.anchor, self.size)
    }
}

/// `v + T_n`.
pub fn size_n_triangle(n: i64, v: Point) -> Result<Pattern> {
    Ok(Triangle::new(v, n)?.pattern())
}

/// The horizontal, vertical and diagonal edges of `v + T_n`.
pub fn edges_of_triangle(n: i64, v: Point) -> Result<(Pattern, Pattern, Pattern)> {
    let t = Triangle::new(v, n)?;
    Ok((
        t.edge(Edge::Horizontal).into_iter().collect(),
        t.edge(Edge::Vertical).into_iter().collect(),
        t.edge(Edge::Diagonal).into_iter().collect(),
    ))
}
