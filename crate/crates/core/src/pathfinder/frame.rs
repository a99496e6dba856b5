//! The six lattice symmetries of a triangle and frames placing canonical
//! maneuvers onto an arbitrary triangle and edge.
//!
//! The linear maps below preserve the triangle shape up to translation, so
//! they send legal moves to legal moves. A maneuver written for `T_n` at the
//! origin with its line on the top edge can then be replayed on any edge of
//! any translate.

use crate::lattice::{Edge, Point, Triangle};

/// A linear map `(x, y) -> (a x + b y, c x + d y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sym {
    a: i64,
    b: i64,
    c: i64,
    d: i64,
}

impl Sym {
    pub const IDENTITY: Sym = Sym { a: 1, b: 0, c: 0, d: 1 };

    /// Identity, the two rotations, then the three reflections. Search order
    /// matters only for determinism.
    pub const ALL: [Sym; 6] = [
        Sym::IDENTITY,
        Sym { a: -1, b: -1, c: 1, d: 0 },
        Sym { a: 0, b: 1, c: -1, d: -1 },
        Sym { a: 0, b: 1, c: 1, d: 0 },
        Sym { a: 1, b: 0, c: -1, d: -1 },
        Sym { a: -1, b: -1, c: 0, d: 1 },
    ];

    #[inline]
    pub fn apply(&self, p: Point) -> Point {
        Point::new(self.a * p.x + self.b * p.y, self.c * p.x + self.d * p.y)
    }

    /// Which edge of a triangle the image of edge `e` becomes.
    pub fn edge_image(&self, e: Edge) -> Edge {
        let f = Frame::new(*self, Point::ORIGIN, 3);
        let image: Vec<Point> = {
            let mut v: Vec<Point> = f.triangle_edge(e);
            v.sort();
            v
        };
        let t = Triangle { anchor: Point::ORIGIN, size: 3 };
        Edge::ALL
            .into_iter()
            .find(|&e2| {
                let mut cells = t.edge(e2);
                cells.sort();
                cells == image
            })
            .expect("symmetries permute the edges")
    }
}

/// `p -> g(p) + t`, chosen so that `T_n` at the origin lands on `v + T_n`.
#[derive(Debug, Clone, Copy)]
pub struct Frame {
    g: Sym,
    t: Point,
    n: i64,
}

impl Frame {
    pub fn new(g: Sym, v: Point, n: i64) -> Self {
        let corners = [Point::new(0, n - 1), Point::new(n - 1, n - 1), Point::new(n - 1, 0)]
            .map(|p| g.apply(p));
        let anchor = Point::new(
            corners.iter().map(|p| p.x).min().unwrap(),
            corners.iter().map(|p| p.y).min().unwrap(),
        );
        Frame { g, t: v - anchor, n }
    }

    #[inline]
    pub fn map(&self, p: Point) -> Point {
        self.g.apply(p) + self.t
    }

    pub fn map_plan(&self, plan: &[(Point, Point)]) -> Vec<(Point, Point)> {
        plan.iter().map(|&(a, c)| (self.map(a), self.map(c))).collect()
    }

    /// Image of a triangle given in canonical coordinates.
    pub fn map_triangle(&self, t: &Triangle) -> Triangle {
        let corners = [
            Point::new(0, t.size - 1),
            Point::new(t.size - 1, t.size - 1),
            Point::new(t.size - 1, 0),
        ]
        .map(|p| self.map(p + t.anchor));
        Triangle {
            anchor: Point::new(
                corners.iter().map(|p| p.x).min().unwrap(),
                corners.iter().map(|p| p.y).min().unwrap(),
            ),
            size: t.size,
        }
    }

    fn triangle_edge(&self, e: Edge) -> Vec<Point> {
        Triangle { anchor: Point::ORIGIN, size: self.n }
            .edge(e)
            .into_iter()
            .map(|p| self.map(p))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{legal_moves, Pattern};

    #[test]
    fn symmetries_map_triangles_onto_triangles() {
        for g in Sym::ALL {
            for n in 1..=6 {
                let v = Point::new(3, -7);
                let f = Frame::new(g, v, n);
                let want = Triangle { anchor: v, size: n }.pattern();
                let got: Pattern = Triangle { anchor: Point::ORIGIN, size: n }
                    .cells()
                    .map(|p| f.map(p))
                    .collect();
                assert_eq!(got, want);
            }
        }
    }

    #[test]
    fn symmetries_preserve_moves() {
        let p = Pattern::from([(0, 0), (1, 0), (1, 1), (3, 2), (2, 3)]);
        for g in Sym::ALL {
            let image: Pattern = p.iter().map(|c| g.apply(c)).collect();
            let mut mapped: Vec<(Point, Point)> = legal_moves(&p)
                .into_iter()
                .map(|m| (g.apply(m.from), g.apply(m.to)))
                .collect();
            let mut direct: Vec<(Point, Point)> =
                legal_moves(&image).into_iter().map(|m| (m.from, m.to)).collect();
            mapped.sort();
            direct.sort();
            assert_eq!(mapped, direct);
        }
    }

    #[test]
    fn edge_images_form_permutations() {
        for g in Sym::ALL {
            let mut imgs: Vec<Edge> = Edge::ALL.iter().map(|&e| g.edge_image(e)).collect();
            imgs.sort_by_key(|e| *e as u8);
            assert_eq!(imgs, Edge::ALL.to_vec());
        }
        // every ordered pair of distinct edges is reached by exactly one symmetry
        for e1 in Edge::ALL {
            for e2 in Edge::ALL {
                if e1 == e2 {
                    continue;
                }
                let hits = Sym::ALL
                    .iter()
                    .filter(|g| {
                        g.edge_image(Edge::Horizontal) == e1 && g.edge_image(Edge::Diagonal) == e2
                    })
                    .count();
                assert_eq!(hits, 1);
            }
        }
    }
}
