//! Second phase: with a line on top of `T_n`, gather the loose stones into the
//! excess slots of `P_{n,k}` one by one.

use crate::error::{Error, Result};
use crate::lattice::{Pattern, Point};
use crate::normalform::p_nk;

use super::executor::Executor;
use super::maneuvers::fetch;

/// Once the row under the line is full, the rows below it form a smaller
/// triangle whose top row plays the part of the line. Returns its size, the
/// number of its slots already filled and its column shift.
fn sub_frame(n: i64, mut j: i64) -> (i64, i64, i64) {
    let mut m = n;
    let mut shift = 0;
    while j >= m - 1 && m > 1 {
        j -= m - 1;
        m -= 1;
        shift += 1;
    }
    (m, j, shift)
}

/// Moves turning a pattern inside `T_n` at the origin, whose top row is full,
/// into `P_{n,k}`.
pub fn gather_excess(board: &Pattern, n: i64) -> Result<Vec<crate::lattice::Move>> {
    let mut ex = Executor::new(board);
    let mut j = 0i64;
    loop {
        let done = p_nk(n, j as usize, Point::ORIGIN)?;
        let current = ex.board();
        let Some(o) = current
            .iter()
            .filter(|&c| !done.contains(c))
            .max_by_key(|c| (c.y, c.x))
        else {
            return Ok(ex.into_moves());
        };
        let (m, jj, shift) = sub_frame(n, j);
        let offset = Point::new(shift, 0);
        let mut world: Pattern = (0..m).map(|a| Point::new(a + shift, m - 1)).collect();
        world.insert(o);
        let plan: Vec<(Point, Point)> = fetch(m, jj, o - offset)
            .into_iter()
            .map(|(a, c)| (a + offset, c + offset))
            .collect();
        ex.run(&mut world, &plan)?;
        j += 1;
        if !p_nk(n, j as usize, Point::ORIGIN)?.is_subset(&ex.board()) {
            return Err(Error::Internal(format!("excess slot {j} left empty")));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{replay_moves, Triangle};

    #[test]
    fn sub_frames_walk_down_the_rows() {
        assert_eq!(sub_frame(5, 0), (5, 0, 0));
        assert_eq!(sub_frame(5, 3), (5, 3, 0));
        assert_eq!(sub_frame(5, 4), (4, 0, 1));
        assert_eq!(sub_frame(5, 7), (3, 0, 2));
        assert_eq!(sub_frame(5, 9), (2, 0, 3));
    }

    #[test]
    fn every_excess_configuration_under_a_line_is_gathered() {
        for n in 1..=5i64 {
            let tri = Triangle { anchor: Point::ORIGIN, size: n };
            let line = Pattern::line(n as usize);
            let below: Vec<Point> = tri.cells().filter(|&c| !line.contains(c)).collect();
            for mask in 0u32..1 << below.len() {
                let mut board = line.clone();
                for (i, &c) in below.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        board.insert(c);
                    }
                }
                let moves = gather_excess(&board, n).unwrap();
                let end = replay_moves(&board, &moves).unwrap();
                assert_eq!(end, p_nk(n, mask.count_ones() as usize, Point::ORIGIN).unwrap());
            }
        }
    }
}
