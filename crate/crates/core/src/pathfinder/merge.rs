//! First phase: grow lines one stone at a time and merge them so that each
//! triangle of the filling ends up with a line on its top edge.

use crate::error::{Error, Result};
use crate::filling::{components, fill};
use crate::lattice::{Edge, Pattern, Point, Triangle};

use super::executor::Executor;
use super::frame::{Frame, Sym};
use super::maneuvers::{extend_top, top_to_diagonal, Plan};

/// Plan turning the line on edge `from` of `tri` into the line on edge `to`.
pub fn rotation_plan(tri: &Triangle, from: Edge, to: Edge) -> Plan {
    if from == to || tri.size == 1 {
        return Plan::new();
    }
    let g = Sym::ALL
        .into_iter()
        .find(|g| g.edge_image(Edge::Horizontal) == from && g.edge_image(Edge::Diagonal) == to)
        .expect("some symmetry maps top to `from` and diagonal to `to`");
    Frame::new(g, tri.anchor, tri.size).map_plan(&top_to_diagonal(tri.size))
}

/// Frames placing the top edge of `T_s` onto `edge` of `tri`.
fn frames_onto(tri: &Triangle, edge: Edge) -> impl Iterator<Item = Frame> + '_ {
    Sym::ALL
        .into_iter()
        .filter(move |g| g.edge_image(Edge::Horizontal) == edge)
        .map(|g| Frame::new(g, tri.anchor, tri.size))
}

/// Which edge `x` lies just beyond, if it is a ring cell of `tri`.
pub fn ring_side(tri: &Triangle, x: Point) -> Option<Edge> {
    let s = tri.size;
    [Edge::Horizontal, Edge::Vertical, Edge::Diagonal]
        .into_iter()
        .find(|&e| frames_onto(tri, e).any(|f| (-1..s).any(|p| f.map(Point::new(p, s)) == x)))
}

/// Plan extending the line on `edge` of `tri` by the ring cell `x` beyond it,
/// with the grown triangle.
pub fn extension_plan(tri: &Triangle, edge: Edge, x: Point) -> Option<(Plan, Triangle)> {
    let s = tri.size;
    for f in frames_onto(tri, edge) {
        if let Some(p) = (-1..s).find(|&p| f.map(Point::new(p, s)) == x) {
            let grown = f.map_triangle(&Triangle { anchor: Point::new(-1, 0), size: s + 1 });
            return Some((f.map_plan(&extend_top(s, p)), grown));
        }
    }
    None
}

/// A triangle whose stones include a full line along `edge`.
struct Accumulator {
    tri: Triangle,
    edge: Edge,
}

impl Accumulator {
    fn new(tri: Triangle) -> Self {
        Accumulator { tri, edge: Edge::Horizontal }
    }

    fn line(&self) -> Pattern {
        self.tri.edge(self.edge).into_iter().collect()
    }

    fn rotate(&mut self, ex: &mut Executor, to: Edge) -> Result<()> {
        let mut world = self.line();
        ex.run(&mut world, &rotation_plan(&self.tri, self.edge, to))?;
        self.edge = to;
        check(world == self.line(), "rotation missed its edge")
    }

    fn extend(&mut self, ex: &mut Executor, x: Point) -> Result<()> {
        let side = ring_side(&self.tri, x)
            .ok_or_else(|| Error::Internal(format!("{x} is not on the ring of {}", self.tri)))?;
        if self.tri.size == 1 {
            self.edge = side;
        }
        if side != self.edge {
            self.rotate(ex, side)?;
        }
        let mut world = self.line();
        world.insert(x);
        let (plan, grown) = extension_plan(&self.tri, self.edge, x)
            .ok_or_else(|| Error::Internal("no extension frame".into()))?;
        ex.run(&mut world, &plan)?;
        self.tri = grown;
        check(world == self.line(), "extension missed its edge")
    }

    /// Takes in the stones on `slots`, a line lying along an edge of another
    /// triangle that touches this one. Slots are taken outward from the first
    /// touching one, so each is on the ring when its turn comes.
    fn absorb(&mut self, ex: &mut Executor, slots: &[Point]) -> Result<()> {
        let Some(i0) = slots.iter().position(|&c| self.tri.touches_point(c)) else {
            return Err(Error::Internal("absorbed line does not touch".into()));
        };
        for i in (i0..slots.len()).chain((0..i0).rev()) {
            let c = slots[i];
            if self.tri.contains(c) {
                continue;
            }
            check(self.tri.touches_point(c) && ex.contains(c), "slot is not reachable")?;
            self.extend(ex, c)?;
        }
        Ok(())
    }
}

fn check(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Internal(what.into()))
    }
}

fn triangles(f: &Pattern) -> Vec<Triangle> {
    let mut out: Vec<Triangle> = components(f)
        .into_iter()
        .map(|comp| {
            let min_x = comp.iter().map(|p| p.x).min().unwrap();
            let min_y = comp.iter().map(|p| p.y).min().unwrap();
            let max_x = comp.iter().map(|p| p.x).max().unwrap();
            Triangle { anchor: Point::new(min_x, min_y), size: max_x - min_x + 1 }
        })
        .collect();
    out.sort_by_key(|t| t.anchor);
    out
}

/// Adds the stones of `p` one at a time in reading order. A stone already
/// inside the current filling is left alone. Otherwise it starts a fresh
/// line, which absorbs the lines of every triangle the new stone glues
/// together, leaving one line on the top edge of the merged triangle.
pub fn merge_lines(ex: &mut Executor, p: &Pattern) -> Result<()> {
    let mut filled = Pattern::new();
    for x in p.iter() {
        if filled.contains(x) {
            continue;
        }
        let before = triangles(&filled);
        filled.insert(x);
        filled = fill(&filled);
        let target = triangles(&filled)
            .into_iter()
            .find(|t| t.contains(x))
            .expect("x lies in its own filling");
        let mut pending: Vec<Triangle> = before
            .into_iter()
            .filter(|t| target.contains_triangle(t))
            .collect();
        let mut acc = Accumulator::new(Triangle::cell(x));
        while !pending.is_empty() {
            let Some(i) = pending.iter().position(|d| d.meets(&acc.tri)) else {
                return Err(Error::Internal("no blob touches the growing line".into()));
            };
            let d = pending.remove(i);
            if acc.tri.contains_triangle(&d) {
                continue;
            }
            let d_top = d.edge(Edge::Horizontal);
            let acc_top = acc.tri.edge(Edge::Horizontal);
            if d_top.iter().any(|&c| acc.tri.touches_point(c)) {
                acc.absorb(ex, &d_top)?;
            } else if acc_top.iter().any(|&c| d.touches_point(c)) {
                acc = Accumulator::new(d);
                acc.absorb(ex, &acc_top)?;
            } else {
                let mut other = Accumulator::new(d);
                let side = [Edge::Vertical, Edge::Diagonal]
                    .into_iter()
                    .find(|&e| d.edge(e).iter().any(|&c| acc.tri.touches_point(c)))
                    .ok_or_else(|| Error::Internal("touching blobs share no edge".into()))?;
                other.rotate(ex, side)?;
                acc.absorb(ex, &d.edge(side))?;
            }
            acc.rotate(ex, Edge::Horizontal)?;
        }
        check(acc.tri == target, "merged line does not span the filling")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Pattern;

    fn rotate(n: i64, from: Edge, to: Edge) -> Pattern {
        let tri = Triangle { anchor: Point::new(2, 1), size: n };
        let start: Pattern = tri.edge(from).into_iter().collect();
        let mut ex = Executor::new(&start);
        let mut world = start.clone();
        ex.run(&mut world, &rotation_plan(&tri, from, to)).unwrap();
        world
    }

    #[test]
    fn rotations_reach_every_edge() {
        for n in 1..=8 {
            let tri = Triangle { anchor: Point::new(2, 1), size: n };
            for from in Edge::ALL {
                for to in Edge::ALL {
                    let want: Pattern = tri.edge(to).into_iter().collect();
                    assert_eq!(rotate(n, from, to), want, "n={n} {from:?}->{to:?}");
                }
            }
        }
    }

    #[test]
    fn ring_cells_have_one_side() {
        let tri = Triangle { anchor: Point::new(0, 0), size: 3 };
        let ring: Vec<Point> = tri
            .pattern()
            .closed_neighbourhood()
            .difference(&tri.pattern())
            .points();
        assert_eq!(ring.len(), 3 * 4);
        for x in ring {
            let side = ring_side(&tri, x).unwrap();
            let (plan, grown) = extension_plan(&tri, side, x).unwrap();
            assert_eq!(grown.size, 4);
            assert!(grown.contains(x) && grown.contains_triangle(&tri));
            let mut world: Pattern = tri.edge(side).into_iter().collect();
            world.insert(x);
            let mut ex = Executor::new(&world);
            ex.run(&mut world, &plan).unwrap();
            assert_eq!(world, grown.edge(side).into_iter().collect());
        }
        assert_eq!(ring_side(&tri, Point::new(1, 1)), None);
    }

    #[test]
    fn merging_two_lines() {
        // two separate lines glued by a third stone
        let p = Pattern::from([(0, 3), (1, 3), (3, 1), (4, 1), (2, 2)]);
        let mut ex = Executor::new(&p);
        merge_lines(&mut ex, &p).unwrap();
        let f = fill(&p);
        let t = triangles(&f);
        assert_eq!(t.len(), 1);
        let line: Pattern = t[0].edge(Edge::Horizontal).into_iter().collect();
        assert!(line.is_subset(&ex.board()));
    }
}
