//! Triangular TEP families, completion on `T_n`, bases and basis changes
//! compiled into two-cell permutations.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::filling::fill;
use crate::lattice::{triangle_at, triangle_through, Pattern, Point, Triangle};
use crate::pathfinder::path_between;

pub type Symbol = u32;

/// Accepted symbol triples on `(up, up-right, right)` such that any two
/// positions determine the third.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawFamily", into = "RawFamily")]
pub struct TepFamily {
    alphabet: u32,
    accepted: Vec<[Symbol; 3]>,
    /// `third[missing][x * k + y]`: symbol completing the other two positions
    /// in increasing position order.
    third: [Vec<Symbol>; 3],
}

const PAIRS: [(usize, usize, usize); 3] = [(1, 2, 0), (0, 2, 1), (0, 1, 2)];

/// Checks the unique-extension property on all three position pairs.
pub fn validate_tep(alphabet: u32, accepted: &[[Symbol; 3]]) -> Result<TepFamily> {
    if alphabet == 0 {
        return Err(Error::BadParams("empty alphabet".into()));
    }
    if let Some(t) = accepted.iter().find(|t| t.iter().any(|&s| s >= alphabet)) {
        return Err(Error::BadParams(format!("triple {t:?} uses a symbol outside 0..{alphabet}")));
    }
    let k = alphabet as usize;
    let mut accepted = accepted.to_vec();
    accepted.sort_unstable();
    accepted.dedup();
    let mut third: [Vec<Symbol>; 3] = Default::default();
    for (slot, &(a, b, c)) in third.iter_mut().zip(PAIRS.iter()) {
        let mut hits = vec![Vec::new(); k * k];
        for t in &accepted {
            hits[t[a] as usize * k + t[b] as usize].push(t[c]);
        }
        for (idx, h) in hits.iter().enumerate() {
            if h.len() != 1 {
                return Err(Error::NotTep {
                    positions: (a, b),
                    partial: ((idx / k) as u32, (idx % k) as u32),
                    extensions: h.len(),
                });
            }
        }
        *slot = hits.into_iter().map(|h| h[0]).collect();
    }
    Ok(TepFamily { alphabet, accepted, third })
}

/// A rule `f(a, b)` with triples `(a, b, f(a, b))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    Xor,
    AddMod(u32),
    /// `u a + v b + c mod m`.
    Affine { m: u32, u: u32, v: u32, c: u32 },
}

impl std::str::FromStr for Rule {
    type Err = Error;

    /// `xor`, `add-mod-<m>` or `affine-mod-<m>-<u>-<v>-<c>`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::BadParams(format!("unknown rule {s:?}; use xor, add-mod-M or affine-mod-M-U-V-C"));
        if s == "xor" {
            return Ok(Rule::Xor);
        }
        let nums = |rest: &str| -> Result<Vec<u32>> {
            rest.split('-').map(|x| x.parse::<u32>().map_err(|_| bad())).collect()
        };
        if let Some(rest) = s.strip_prefix("add-mod-") {
            match nums(rest)?[..] {
                [m] if m > 0 => return Ok(Rule::AddMod(m)),
                _ => return Err(bad()),
            }
        }
        if let Some(rest) = s.strip_prefix("affine-mod-") {
            match nums(rest)?[..] {
                [m, u, v, c] if m > 0 => return Ok(Rule::Affine { m, u, v, c }),
                _ => return Err(bad()),
            }
        }
        Err(bad())
    }
}

impl Rule {
    pub fn alphabet(&self) -> u32 {
        match *self {
            Rule::Xor => 2,
            Rule::AddMod(m) => m,
            Rule::Affine { m, .. } => m,
        }
    }

    pub fn apply(&self, a: Symbol, b: Symbol) -> Symbol {
        match *self {
            Rule::Xor => a ^ b,
            Rule::AddMod(m) => (a + b) % m,
            Rule::Affine { m, u, v, c } => ((u as u64 * a as u64 + v as u64 * b as u64 + c as u64) % m as u64) as u32,
        }
    }

    pub fn triples(&self) -> Vec<[Symbol; 3]> {
        let k = self.alphabet();
        (0..k)
            .flat_map(|a| (0..k).map(move |b| [a, b, self.apply(a, b)]))
            .collect()
    }

    pub fn family(&self) -> Result<TepFamily> {
        validate_tep(self.alphabet(), &self.triples())
    }
}

impl TepFamily {
    pub fn alphabet(&self) -> u32 {
        self.alphabet
    }

    pub fn accepted(&self) -> &[[Symbol; 3]] {
        &self.accepted
    }

    /// Symbol at position `missing` completing the other two, given in
    /// increasing position order.
    #[inline]
    pub fn complete_triple(&self, missing: usize, x: Symbol, y: Symbol) -> Symbol {
        self.third[missing][(x * self.alphabet + y) as usize]
    }

    pub fn accepts(&self, t: [Symbol; 3]) -> bool {
        self.complete_triple(2, t[0], t[1]) == t[2]
    }

    /// Parses "alphabet <k>" followed by one triple per line.
    pub fn parse(text: &str) -> Result<TepFamily> {
        let mut alphabet = None;
        let mut triples = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: &str| Error::Parse { line: i + 1, msg: msg.to_string() };
            if alphabet.is_none() {
                let k = line
                    .strip_prefix("alphabet ")
                    .and_then(|k| k.trim().parse::<u32>().ok())
                    .ok_or_else(|| err("expected \"alphabet <k>\""))?;
                alphabet = Some(k);
                continue;
            }
            let t: Vec<Symbol> = line
                .split(' ')
                .map(|x| x.parse::<Symbol>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| err("expected three symbols"))?;
            let t: [Symbol; 3] = t.try_into().map_err(|_| err("expected three symbols"))?;
            triples.push(t);
        }
        let k = alphabet.ok_or(Error::Parse { line: 1, msg: "missing alphabet header".into() })?;
        validate_tep(k, &triples)
    }

    pub fn render(&self) -> String {
        let mut out = format!("alphabet {}\n", self.alphabet);
        for t in &self.accepted {
            let _ = writeln!(out, "{} {} {}", t[0], t[1], t[2]);
        }
        out
    }
}

#[derive(Clone, Serialize, Deserialize)]
struct RawFamily {
    alphabet: u32,
    accepted: Vec<[Symbol; 3]>,
}

impl TryFrom<RawFamily> for TepFamily {
    type Error = Error;
    fn try_from(r: RawFamily) -> Result<Self> {
        validate_tep(r.alphabet, &r.accepted)
    }
}

impl From<TepFamily> for RawFamily {
    fn from(f: TepFamily) -> Self {
        RawFamily { alphabet: f.alphabet, accepted: f.accepted }
    }
}

/// Symbols on a finite set of cells.
pub type Assignment = BTreeMap<Point, Symbol>;

pub fn domain(p: &Assignment) -> Pattern {
    p.keys().copied().collect()
}

/// Parses lines "<x> <y> <symbol>".
pub fn parse_assignment(text: &str) -> Result<Assignment> {
    let mut out = Assignment::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: &str| Error::Parse { line: i + 1, msg: msg.to_string() };
        let parts: Vec<&str> = line.split(' ').collect();
        let [x, y, s] = parts[..] else {
            return Err(err("expected \"<x> <y> <symbol>\""));
        };
        let x = x.parse::<i64>().map_err(|_| err("bad x"))?;
        let y = y.parse::<i64>().map_err(|_| err("bad y"))?;
        let s = s.parse::<Symbol>().map_err(|_| err("bad symbol"))?;
        if out.insert(Point::new(x, y), s).is_some() {
            return Err(err("duplicate point"));
        }
    }
    Ok(out)
}

pub fn render_assignment(a: &Assignment) -> String {
    let mut out = String::new();
    for (p, s) in a {
        let _ = writeln!(out, "{} {} {}", p.x, p.y, s);
    }
    out
}

fn tri(n: i64) -> Result<Triangle> {
    Triangle::new(Point::ORIGIN, n)
}

/// Anchors whose whole triangle lies in `t`.
fn inner_anchors(t: &Triangle) -> Vec<Point> {
    let mut v: Vec<Point> = t
        .cells()
        .flat_map(crate::lattice::anchors_containing)
        .filter(|&a| triangle_at(a).iter().all(|&c| t.contains(c)))
        .collect();
    v.sort();
    v.dedup();
    v
}

/// Forces symbols into every triangle of `T_n` with two assigned cells, until
/// none is left. The domain of the result is `fill(domain(p))`.
pub fn complete(fam: &TepFamily, p: &Assignment, n: i64) -> Result<Assignment> {
    let t = tri(n)?;
    if let Some((&c, _)) = p.iter().find(|(c, _)| !t.contains(**c)) {
        return Err(Error::OutsideDomain(c));
    }
    if let Some((&c, _)) = p.iter().find(|(_, &s)| s >= fam.alphabet) {
        return Err(Error::BadParams(format!("symbol at {c} is outside the alphabet")));
    }
    let mut out = p.clone();
    let mut work: Vec<Point> = p.keys().copied().collect();
    while let Some(x) = work.pop() {
        for y in crate::lattice::neighbourhood(x) {
            let Some(&sy) = out.get(&y) else { continue };
            let (anchor, z) = triangle_through(x, y).expect("neighbours share a triangle");
            if out.contains_key(&z) || !t.contains(z) {
                continue;
            }
            let cells = triangle_at(anchor);
            let pos = |c: Point| cells.iter().position(|&d| d == c).unwrap();
            let mut known = [(pos(x), out[&x]), (pos(y), sy)];
            known.sort();
            let missing = pos(z);
            out.insert(z, fam.complete_triple(missing, known[0].1, known[1].1));
            work.push(z);
        }
    }
    Ok(out)
}

/// Whether every triangle inside `T_n` carries an accepted triple.
pub fn is_valid(fam: &TepFamily, q: &Assignment, n: i64) -> Result<bool> {
    let t = tri(n)?;
    if q.len() != t.cell_count() || !q.keys().all(|&c| t.contains(c)) {
        return Ok(false);
    }
    Ok(inner_anchors(&t)
        .into_iter()
        .all(|a| fam.accepts(triangle_at(a).map(|c| q[&c]))))
}

/// `P ⊆ T_n`, `|P| = n` and `fill(P) = T_n`.
pub fn is_basis(p: &Pattern, n: i64) -> bool {
    let Ok(t) = tri(n) else { return false };
    p.len() as i64 == n && p.iter().all(|c| t.contains(c)) && fill(p) == t.pattern()
}

fn require_basis(p: &Pattern, n: i64) -> Result<()> {
    if is_basis(p, n) {
        Ok(())
    } else {
        Err(Error::NotABasis {
            n,
            detail: format!("{} points not filling T_{n}", p.len()),
        })
    }
}

/// The values on `Q` of the unique completion of `p`.
pub fn basis_change(fam: &TepFamily, p_dom: &Pattern, q_dom: &Pattern, n: i64, p: &Assignment) -> Result<Assignment> {
    require_basis(p_dom, n)?;
    require_basis(q_dom, n)?;
    if domain(p) != *p_dom {
        return Err(Error::BadParams("assignment domain differs from the source basis".into()));
    }
    let full = complete(fam, p, n)?;
    Ok(q_dom.iter().map(|c| (c, full[&c])).collect())
}

/// A bijection of `Σ^n` touching only slots `i` and `j`, given as the image
/// of every pair `(v_i, v_j)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasicPermutation {
    pub i: usize,
    pub j: usize,
    /// `table[x * k + y]` is the new `(v_i, v_j)` for old `(x, y)`.
    pub table: Vec<(Symbol, Symbol)>,
}

impl BasicPermutation {
    pub fn apply(&self, values: &mut [Symbol], k: u32) {
        let (x, y) = self.table[(values[self.i] * k + values[self.j]) as usize];
        values[self.i] = x;
        values[self.j] = y;
    }

    fn swap(i: usize, j: usize, k: u32) -> Self {
        let table = (0..k).flat_map(|x| (0..k).map(move |y| (y, x))).collect();
        BasicPermutation { i, j, table }
    }

    pub fn is_bijection(&self, k: u32) -> bool {
        let mut seen = vec![false; (k * k) as usize];
        self.table.len() == seen.len()
            && self.table.iter().all(|&(x, y)| {
                x < k && y < k && !std::mem::replace(&mut seen[(x * k + y) as usize], true)
            })
    }
}

/// A basis change written as a sequence of basic permutations acting on the
/// values of `P` listed in `source_order`, producing the values of `Q` in
/// `target_order`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompiledChange {
    pub alphabet: u32,
    pub source_order: Vec<Point>,
    pub target_order: Vec<Point>,
    pub permutations: Vec<BasicPermutation>,
    /// How many of the permutations come from solitaire moves; the rest reorder.
    pub move_permutations: usize,
}

impl CompiledChange {
    pub fn run(&self, values: &mut [Symbol]) {
        for p in &self.permutations {
            p.apply(values, self.alphabet);
        }
    }

    pub fn apply(&self, p: &Assignment) -> Result<Assignment> {
        let mut values: Vec<Symbol> = self
            .source_order
            .iter()
            .map(|c| p.get(c).copied().ok_or(Error::OutsideDomain(*c)))
            .collect::<Result<_>>()?;
        self.run(&mut values);
        Ok(self.target_order.iter().copied().zip(values).collect())
    }
}

/// Follows a solitaire path from `P` to `Q`. Each move replaces one cell of
/// the current basis by the third cell of its triangle, so it rewrites one
/// slot as a function of itself and the slot of the pivot.
pub fn compile_basis_change(fam: &TepFamily, p_dom: &Pattern, q_dom: &Pattern, n: i64) -> Result<CompiledChange> {
    require_basis(p_dom, n)?;
    require_basis(q_dom, n)?;
    if fill(p_dom) != fill(q_dom) {
        return Err(Error::NotSameTriangle);
    }
    let k = fam.alphabet;
    let path = path_between(p_dom, q_dom)?;
    let mut slot_of: BTreeMap<Point, usize> = p_dom.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let mut perms = Vec::with_capacity(path.len() + n as usize);
    for m in &path.moves {
        let cells = triangle_at(m.anchor);
        let pivot = m.pivot().ok_or_else(|| Error::Internal("degenerate move".into()))?;
        let pos = |c: Point| cells.iter().position(|&d| d == c).unwrap();
        let (pf, pp, pt) = (pos(m.from), pos(pivot), pos(m.to));
        let i = slot_of.remove(&m.from).ok_or_else(|| Error::Internal("move from an empty slot".into()))?;
        let j = slot_of[&pivot];
        let table = (0..k)
            .flat_map(|x| (0..k).map(move |y| (x, y)))
            .map(|(x, y)| {
                let z = if pf < pp {
                    fam.complete_triple(pt, x, y)
                } else {
                    fam.complete_triple(pt, y, x)
                };
                (z, y)
            })
            .collect();
        perms.push(BasicPermutation { i, j, table });
        slot_of.insert(m.to, i);
    }
    let move_permutations = perms.len();
    // selection sort of the slots into the canonical order of Q
    let target_order = q_dom.points();
    let mut at: Vec<Point> = vec![Point::ORIGIN; n as usize];
    for (&c, &i) in &slot_of {
        at[i] = c;
    }
    for (want, &c) in target_order.iter().enumerate() {
        let have = at.iter().position(|&d| d == c).expect("path ends on Q");
        if have != want {
            perms.push(BasicPermutation::swap(want, have, k));
            at.swap(want, have);
        }
    }
    Ok(CompiledChange {
        alphabet: k,
        source_order: p_dom.points(),
        target_order,
        permutations: perms,
        move_permutations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Edge;

    fn xor() -> TepFamily {
        Rule::Xor.family().unwrap()
    }

    fn assign(v: &[((i64, i64), Symbol)]) -> Assignment {
        v.iter().map(|&(p, s)| (Point::from(p), s)).collect()
    }

    #[test]
    fn family_validation() {
        assert!(validate_tep(2, &Rule::Xor.triples()).is_ok());
        let and: Vec<[Symbol; 3]> = (0..2).flat_map(|a| (0..2).map(move |b| [a, b, a * b])).collect();
        assert!(matches!(validate_tep(2, &and), Err(Error::NotTep { .. })));
        assert!(Rule::AddMod(3).family().is_ok());
        // 2 is not a unit mod 4
        assert!("affine-mod-4-2-1-0".parse::<Rule>().unwrap().family().is_err());
        assert!("affine-mod-5-2-3-1".parse::<Rule>().unwrap().family().is_ok());
        assert!("nope".parse::<Rule>().is_err());
    }

    #[test]
    fn bipermutive_check_matches_unique_extension() {
        // oracle: bijectivity of a -> f(a, b) and b -> f(a, b)
        for m in 1..=6u32 {
            for u in 0..m {
                for v in 0..m {
                    let r = Rule::Affine { m, u, v, c: 1 % m };
                    let bij = (0..m).all(|b| {
                        let mut xs: Vec<u32> = (0..m).map(|a| r.apply(a, b)).collect();
                        let mut ys: Vec<u32> = (0..m).map(|a| r.apply(b, a)).collect();
                        xs.sort();
                        xs.dedup();
                        ys.sort();
                        ys.dedup();
                        xs.len() == m as usize && ys.len() == m as usize
                    });
                    assert_eq!(r.family().is_ok(), bij, "{r:?}");
                }
            }
        }
    }

    #[test]
    fn xor_completion_example() {
        let p = assign(&[((0, 2), 1), ((1, 2), 0), ((2, 2), 1)]);
        let full = complete(&xor(), &p, 3).unwrap();
        assert_eq!(full[&Point::new(1, 1)], 1);
        assert_eq!(full[&Point::new(2, 1)], 1);
        assert_eq!(full[&Point::new(2, 0)], 0);
        assert!(is_valid(&xor(), &full, 3).unwrap());
        assert_eq!(complete(&xor(), &full, 3).unwrap(), full);
        let single = assign(&[((1, 1), 1)]);
        assert_eq!(complete(&xor(), &single, 3).unwrap(), single);
        assert_eq!(
            complete(&xor(), &assign(&[((5, 5), 0)]), 3),
            Err(Error::OutsideDomain(Point::new(5, 5)))
        );
    }

    #[test]
    fn bases() {
        for n in 1..=6 {
            let t = Triangle { anchor: Point::ORIGIN, size: n };
            for e in Edge::ALL {
                assert!(is_basis(&t.edge(e).into_iter().collect(), n));
            }
        }
        assert!(!is_basis(&Triangle { anchor: Point::ORIGIN, size: 2 }.pattern(), 2));
    }

    #[test]
    fn xor_change_top_to_diagonal() {
        let fam = xor();
        let top: Pattern = Pattern::from([(0, 1), (1, 1)]);
        let diag: Pattern = Pattern::from([(0, 1), (1, 0)]);
        let p = assign(&[((0, 1), 1), ((1, 1), 0)]);
        let q = basis_change(&fam, &top, &diag, 2, &p).unwrap();
        assert_eq!(q, assign(&[((0, 1), 1), ((1, 0), 1)]));
        let compiled = compile_basis_change(&fam, &top, &diag, 2).unwrap();
        for x in 0..2 {
            for y in 0..2 {
                let p = assign(&[((0, 1), x), ((1, 1), y)]);
                assert_eq!(compiled.apply(&p).unwrap(), basis_change(&fam, &top, &diag, 2, &p).unwrap());
            }
        }
        let same = compile_basis_change(&fam, &top, &top, 2).unwrap();
        assert!(same.permutations.is_empty());
    }

    #[test]
    fn emitted_permutations_are_bijections() {
        let fam = Rule::AddMod(3).family().unwrap();
        let t = Triangle { anchor: Point::ORIGIN, size: 4 };
        let h: Pattern = t.edge(Edge::Horizontal).into_iter().collect();
        let v: Pattern = t.edge(Edge::Vertical).into_iter().collect();
        let c = compile_basis_change(&fam, &h, &v, 4).unwrap();
        assert!(c.permutations.iter().all(|p| p.is_bijection(3) && p.i != p.j));
    }

    #[test]
    fn family_file_round_trip() {
        let fam = Rule::AddMod(3).family().unwrap();
        assert_eq!(TepFamily::parse(&fam.render()).unwrap(), fam);
        assert!(matches!(TepFamily::parse("alphabet x\n"), Err(Error::Parse { line: 1, .. })));
        let a = assign(&[((0, 2), 1), ((1, 2), 2)]);
        assert_eq!(parse_assignment(&render_assignment(&a)).unwrap(), a);
        assert!(matches!(parse_assignment("0 0 1\n0 0 2\n"), Err(Error::Parse { line: 2, .. })));
    }
}
