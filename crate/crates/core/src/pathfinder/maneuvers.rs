//! Move plans written for `T_n` at the origin with the working line on the
//! top row. A plan is a list of `(from, to)` cell pairs; see
//! [`super::executor::Executor`] for how plans meet occupied cells.

use crate::lattice::Point;

pub type Plan = Vec<(Point, Point)>;

#[inline]
fn step(fx: i64, fy: i64, tx: i64, ty: i64) -> (Point, Point) {
    (Point::new(fx, fy), Point::new(tx, ty))
}

/// Line in row `r` over columns `t..n` moves down one row over `t+1..n`,
/// leaving its leftmost stone behind as a carrier.
pub fn drop(r: i64, t: i64, n: i64) -> Plan {
    (t + 1..n).rev().map(|q| step(q, r, q, r - 1)).collect()
}

/// Inverse of [`drop`]: the line in row `r` over `t..n`, with the carrier at
/// `(t - 1, r + 1)`, moves up to row `r + 1` over `t - 1..n`.
pub fn lift(r: i64, t: i64, n: i64) -> Plan {
    (t..n).map(|q| step(q, r, q, r + 1)).collect()
}

/// [`lift`] while dragging a loose stone from `(a, r - 1)` up to `(a, r)`.
pub fn lift_drag(r: i64, t: i64, n: i64, a: i64) -> Plan {
    let mut p: Plan = (t..a).map(|q| step(q, r, q, r + 1)).collect();
    p.push(step(a, r - 1, a - 1, r));
    p.push(step(a, r, a, r + 1));
    p.extend((a + 1..n).map(|q| step(q, r, q, r + 1)));
    p.push(step(a - 1, r + 1, a, r));
    p.push(step(a - 1, r, a - 1, r + 1));
    p
}

/// Loose stone under the line at `(a, r - 1)` shifts right by one.
pub fn push_right(r: i64, a: i64) -> Plan {
    vec![step(a, r, a + 1, r - 1), step(a, r - 1, a, r)]
}

/// Loose stone under the line at `(a, r - 1)` shifts left by one.
pub fn push_left(r: i64, a: i64) -> Plan {
    vec![step(a - 1, r, a - 1, r - 1), step(a, r - 1, a - 1, r)]
}

/// Top edge of `T_n` onto its anti-diagonal, `n(n-1)/2` moves.
pub fn top_to_diagonal(n: i64) -> Plan {
    (1..n).rev().flat_map(|r| drop(r, n - 1 - r, n)).collect()
}

/// Grows the top line of `T_s` by the stone at `(p, s)` just above it, into
/// the top line of `T_{s+1}` anchored at `(-1, 0)`. Requires `-1 <= p < s`.
pub fn extend_top(s: i64, p: i64) -> Plan {
    let mut plan: Plan = (p + 1..s).map(|q| step(q, s - 1, q, s)).collect();
    plan.extend((0..=p).rev().map(|q| step(q, s - 1, q - 1, s)));
    plan
}

/// Moves the loose stone at column `a` under row `r` to column
/// `max(target, t + 1)`; returns the plan and the final column.
pub fn push_to(r: i64, t: i64, mut a: i64, target: i64) -> (Plan, i64) {
    let goal = target.max(t + 1);
    let mut plan = Plan::new();
    while a < goal {
        plan.extend(push_right(r, a));
        a += 1;
    }
    while a > goal {
        plan.extend(push_left(r, a));
        a -= 1;
    }
    (plan, a)
}

/// Brings the loose stone `o` under the line of `T_n` into slot `j` of the
/// row just below the line, i.e. column `n - 1 - j`. Valid when the previous
/// `j` slots are already filled and every other cell under the line is empty
/// or holds stones below `o` in reading order.
pub fn fetch(n: i64, j: i64, o: Point) -> Plan {
    let target = n - 1 - j;
    let (a, b) = (o.x, o.y);
    if b == n - 2 {
        return push_to(n - 1, 0, a, target).0;
    }
    let mut plan = Plan::new();
    let mut t = 0;
    for r in (b + 2..n).rev() {
        plan.extend(drop(r, t, n));
        t += 1;
    }
    let mut r = b + 1;
    let (p, mut a) = push_to(r, t, a, target);
    plan.extend(p);
    while r < n - 1 {
        plan.extend(lift_drag(r, t, n, a));
        r += 1;
        t -= 1;
        let (p, a2) = push_to(r, t, a, target);
        plan.extend(p);
        a = a2;
    }
    plan
}
