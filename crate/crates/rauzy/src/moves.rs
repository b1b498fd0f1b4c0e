//! Rauzy moves (right and left, types 0/1), paths, and the standard-pair walk.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::pair::{Letter, Pair};

#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Side {
    Right,
    Left,
}

/// An elementary move: side and type (the row left unchanged).
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Move {
    pub side: Side,
    pub kind: u8,
}

impl Move {
    pub const R0: Move = Move { side: Side::Right, kind: 0 };
    pub const R1: Move = Move { side: Side::Right, kind: 1 };
    pub const L0: Move = Move { side: Side::Left, kind: 0 };
    pub const L1: Move = Move { side: Side::Left, kind: 1 };
    pub const ALL: [Move; 4] = [Move::R0, Move::R1, Move::L0, Move::L1];

    pub fn right(kind: usize) -> Move {
        Move { side: Side::Right, kind: kind as u8 }
    }

    pub fn left(kind: usize) -> Move {
        Move { side: Side::Left, kind: kind as u8 }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.side {
            Side::Right => 'r',
            Side::Left => 'l',
        };
        write!(f, "{s}{}", self.kind)
    }
}

/// Applies a move without checking irreducibility.
pub fn apply_move_unchecked(p: &Pair, m: Move) -> Pair {
    let e = m.kind as usize;
    let o = 1 - e;
    let n = p.n();
    let mut other = p.row(o).to_vec();
    match m.side {
        Side::Right => {
            // last letter of row o goes right after z = last letter of row e
            let z = p.last(e);
            let x = other.pop().unwrap();
            let at = p.pos(o, z) + 1;
            if at >= n {
                return p.clone();
            }
            other.insert(at, x);
        }
        Side::Left => {
            // first letter of row o goes right before a = first letter of row e
            let a = p.first(e);
            let x = other.remove(0);
            let at = p.pos(o, a) - 1;
            other.insert(at, x);
        }
    }
    if e == 0 {
        p.with_rows(p.row(0).to_vec(), other)
    } else {
        p.with_rows(other, p.row(1).to_vec())
    }
}

/// Applies one Rauzy move; `p` must be irreducible.
pub fn apply_move(p: &Pair, m: Move) -> Result<Pair> {
    if !p.is_irreducible() {
        return Err(Error::Reducible);
    }
    Ok(apply_move_unchecked(p, m))
}

/// A Rauzy path in run-compressed form.
#[derive(Clone, Default, PartialEq, Eq, Hash, Debug)]
pub struct Path {
    runs: Vec<(Move, usize)>,
}

impl Path {
    pub fn new() -> Path {
        Path::default()
    }

    pub fn runs(&self) -> &[(Move, usize)] {
        &self.runs
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    /// Appends `count` copies of `m`, merging with the last run when equal.
    pub fn push(&mut self, m: Move, count: usize) {
        if count == 0 {
            return;
        }
        match self.runs.last_mut() {
            Some((last, k)) if *last == m => *k += count,
            _ => self.runs.push((m, count)),
        }
    }

    pub fn extend(&mut self, other: &Path) {
        for &(m, k) in &other.runs {
            self.push(m, k);
        }
    }

    pub fn from_runs(runs: &[(Move, usize)]) -> Path {
        let mut p = Path::new();
        for &(m, k) in runs {
            p.push(m, k);
        }
        p
    }

    /// Number of runs (the cycle length for alternating right paths).
    pub fn cycle_len(&self) -> usize {
        self.runs.len()
    }

    /// Total number of elementary moves.
    pub fn move_count(&self) -> usize {
        self.runs.iter().map(|r| r.1).sum()
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .runs
            .iter()
            .map(|&(m, k)| if k > 1 { format!("{m}^{k}") } else { m.to_string() })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl FromStr for Path {
    type Err = Error;
    fn from_str(s: &str) -> Result<Path> {
        let mut path = Path::new();
        for tok in s.split_whitespace() {
            let (head, count) = match tok.split_once('^') {
                Some((h, k)) => {
                    let k: usize =
                        k.parse().map_err(|_| Error::Parse(format!("bad exponent in {tok}")))?;
                    if k == 0 {
                        return Err(Error::Parse(format!("zero exponent in {tok}")));
                    }
                    (h, k)
                }
                None => (tok, 1),
            };
            let m = match head {
                "r0" => Move::R0,
                "r1" => Move::R1,
                "l0" => Move::L0,
                "l1" => Move::L1,
                _ => return Err(Error::Parse(format!("unknown move {head}"))),
            };
            path.push(m, count);
        }
        Ok(path)
    }
}

/// Applies the runs of `path` left to right.
pub fn apply_path(p: &Pair, path: &Path) -> Result<Pair> {
    if !p.is_irreducible() {
        return Err(Error::Reducible);
    }
    let mut q = p.clone();
    for &(m, k) in path.runs() {
        for _ in 0..k {
            q = apply_move_unchecked(&q, m);
        }
    }
    Ok(q)
}

/// The pairs at each run boundary, starting with `p`.
pub fn cycle_vertices(p: &Pair, path: &Path) -> Result<Vec<Pair>> {
    if !p.is_irreducible() {
        return Err(Error::Reducible);
    }
    let mut out = vec![p.clone()];
    let mut q = p.clone();
    for &(m, k) in path.runs() {
        for _ in 0..k {
            q = apply_move_unchecked(&q, m);
        }
        out.push(q.clone());
    }
    Ok(out)
}

/// Order of the move `m` at `p`: least `k > 0` with `m^k p = p`.
pub fn move_order(p: &Pair, m: Move) -> usize {
    let mut q = apply_move_unchecked(p, m);
    let mut k = 1;
    while q != *p {
        q = apply_move_unchecked(&q, m);
        k += 1;
    }
    k
}

pub fn is_standard(p: &Pair) -> bool {
    p.is_standard()
}

/// Connects `p` to a standard pair by right moves, following the classical
/// procedure: shrink `n_e = p_{1-e}(z_e)` until it reaches 1, then rotate.
pub fn to_standard(p: &Pair) -> Result<(Pair, Path)> {
    if !p.is_irreducible() {
        return Err(Error::Reducible);
    }
    let n = p.n();
    let mut q = p.clone();
    let mut path = Path::new();
    let run = |q: &mut Pair, path: &mut Path, e: usize, k: usize| {
        for _ in 0..k {
            *q = apply_move_unchecked(q, Move::right(e));
        }
        path.push(Move::right(e), k);
    };
    // 1-based n_e
    let ne = |q: &Pair, e: usize| q.pos(1 - e, q.last(e)) + 1;
    while !q.is_standard() {
        let (n0, n1) = (ne(&q, 0), ne(&q, 1));
        if n0 == 1 || n1 == 1 {
            let e = if n0 == 1 { 0 } else { 1 };
            let a = q.first(e);
            let k = n - (q.pos(1 - e, a) + 1);
            run(&mut q, &mut path, e, k);
            if !q.is_standard() {
                return Err(Error::Internal(format!("standard walk ended at {q}")));
            }
            break;
        }
        let e = if n0 <= n1 { 0 } else { 1 };
        let n_e = ne(&q, e);
        let b: Option<Letter> = q
            .letters()
            .filter(|&b| q.pos(1 - e, b) + 1 > n_e && n_e > q.pos(e, b) + 1)
            .max_by_key(|&b| q.pos(1 - e, b));
        let Some(b) = b else {
            return Err(Error::Internal(format!("no pivot letter for {q}")));
        };
        let k = n - (q.pos(1 - e, b) + 1);
        run(&mut q, &mut path, e, k);
    }
    Ok((q, path))
}

/// Neighbours of `p` across one cycle: every distinct `e^k p`, `k ≥ 1`.
pub fn cycle_neighbours(p: &Pair) -> Vec<(Move, usize, Pair)> {
    let mut out = Vec::new();
    for e in 0..2 {
        let m = Move::right(e);
        let mut q = apply_move_unchecked(p, m);
        let mut k = 1;
        while q != *p {
            out.push((m, k, q.clone()));
            q = apply_move_unchecked(&q, m);
            k += 1;
        }
    }
    out
}

/// Shortest path (in cycles) from `p` to `q` by right moves, if any.
pub fn cycle_path(p: &Pair, q: &Pair) -> Result<Path> {
    if !p.is_irreducible() {
        return Err(Error::Reducible);
    }
    if p == q {
        return Ok(Path::new());
    }
    let mut prev: HashMap<Pair, (Pair, Move, usize)> = HashMap::new();
    let mut queue = VecDeque::from([p.clone()]);
    let mut seen = std::collections::HashSet::from([p.clone()]);
    while let Some(x) = queue.pop_front() {
        for (m, k, y) in cycle_neighbours(&x) {
            if !seen.insert(y.clone()) {
                continue;
            }
            prev.insert(y.clone(), (x.clone(), m, k));
            if y == *q {
                let mut runs = Vec::new();
                let mut cur = y;
                while let Some((from, m, k)) = prev.get(&cur) {
                    runs.push((*m, *k));
                    cur = from.clone();
                }
                runs.reverse();
                return Ok(Path::from_runs(&runs));
            }
            queue.push_back(y);
        }
    }
    Err(Error::NotReachable(format!("{q} is not in the labeled class of {p}")))
}

/// Cycle distance between two members of one labeled class.
pub fn cycle_distance(p: &Pair, q: &Pair) -> Result<usize> {
    cycle_path(p, q).map(|path| path.cycle_len())
}

/// Cycle distance from `p` to the nearest standard pair.
pub fn distance_to_standard(p: &Pair) -> usize {
    let mut dist = HashMap::from([(p.clone(), 0usize)]);
    let mut queue = VecDeque::from([p.clone()]);
    while let Some(x) = queue.pop_front() {
        let d = dist[&x];
        if x.is_standard() {
            return d;
        }
        for (_, _, y) in cycle_neighbours(&x) {
            if !dist.contains_key(&y) {
                dist.insert(y.clone(), d + 1);
                queue.push_back(y);
            }
        }
    }
    unreachable!("every class contains a standard pair")
}
