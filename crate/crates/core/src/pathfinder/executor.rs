//! Replays plans on a board that may hold stones the plan does not know about.
//!
//! A plan is written against a *world*: the subset of stones it cares about.
//! Each step is a legal move of the world. When the target cell is already
//! occupied on the board by a stone outside the world, that stone simply
//! takes over the role of the moving one: the world relabels itself and no
//! board move is made. Otherwise the move is made on the board. Since the
//! world always stays inside the board, every board move is legal.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::lattice::{triangle_through, Move, Pattern, Point};

#[derive(Debug, Clone)]
pub struct Executor {
    board: HashSet<Point>,
    moves: Vec<Move>,
}

impl Executor {
    pub fn new(board: &Pattern) -> Self {
        Executor {
            board: board.iter().collect(),
            moves: Vec::new(),
        }
    }

    pub fn run(&mut self, world: &mut Pattern, plan: &[(Point, Point)]) -> Result<()> {
        for &(a, c) in plan {
            let (anchor, b) = triangle_through(a, c)
                .ok_or_else(|| Error::Internal(format!("plan step {a} -> {c} is not adjacent")))?;
            if !world.contains(a) || !world.contains(b) || world.contains(c) {
                return Err(Error::Internal(format!("plan step {a} -> {c} is illegal in its world")));
            }
            if !self.board.contains(&c) {
                self.board.remove(&a);
                self.board.insert(c);
                self.moves.push(Move { anchor, from: a, to: c });
            }
            world.remove(a);
            world.insert(c);
        }
        Ok(())
    }

    /// Appends moves already known to be legal on the board.
    pub fn push_moves(&mut self, moves: impl IntoIterator<Item = Move>) {
        for m in moves {
            debug_assert!(self.board.contains(&m.from) && !self.board.contains(&m.to));
            self.board.remove(&m.from);
            self.board.insert(m.to);
            self.moves.push(m);
        }
    }

    pub fn contains(&self, p: Point) -> bool {
        self.board.contains(&p)
    }

    pub fn board(&self) -> Pattern {
        self.board.iter().copied().collect()
    }

    pub fn moves(&self) -> &[Move] {
        &self.moves
    }

    pub fn into_moves(self) -> Vec<Move> {
        self.moves
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relabels_onto_occupied_cells() {
        // the plan slides (0,1) to (1,0) inside T, but (1,0) already holds a
        // stone outside the world
        let board = Pattern::from([(0, 1), (1, 1), (1, 0)]);
        let mut world = Pattern::from([(0, 1), (1, 1)]);
        let mut ex = Executor::new(&board);
        ex.run(&mut world, &[(Point::new(0, 1), Point::new(1, 0))]).unwrap();
        assert!(ex.moves().is_empty());
        assert_eq!(world, Pattern::from([(1, 1), (1, 0)]));
        assert_eq!(ex.board(), board);
    }

    #[test]
    fn rejects_plans_illegal_in_their_world() {
        let board = Pattern::from([(0, 1)]);
        let mut world = board.clone();
        let mut ex = Executor::new(&board);
        assert!(ex.run(&mut world, &[(Point::new(0, 1), Point::new(1, 0))]).is_err());
    }
}
