//! Class invariants S, M, Y, P and the extended-class invariants: the cycle
//! list, the canonical quadratic form and its ARF count.

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pair::{Letter, Pair};

/// A (partial) permutation of the letters of a pair.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LetterPerm {
    map: Vec<Option<Letter>>,
}

impl LetterPerm {
    pub fn get(&self, l: Letter) -> Option<Letter> {
        self.map[l.idx()]
    }

    pub fn apply(&self, l: Letter) -> Letter {
        self.map[l.idx()].expect("letter outside the domain")
    }

    pub fn domain(&self) -> impl Iterator<Item = Letter> + '_ {
        self.map
            .iter()
            .enumerate()
            .filter(|(_, x)| x.is_some())
            .map(|(i, _)| Letter(i as u16))
    }

    pub fn inverse(&self) -> LetterPerm {
        let mut map = vec![None; self.map.len()];
        for a in self.domain() {
            map[self.apply(a).idx()] = Some(a);
        }
        LetterPerm { map }
    }

    /// Cycles, each starting at its earliest letter in the top row of `p`;
    /// cycles are listed in order of those starting letters.
    pub fn cycles(&self, p: &Pair) -> Vec<Vec<Letter>> {
        let mut seen = vec![false; self.map.len()];
        let mut out = Vec::new();
        for &a in p.row(0) {
            if seen[a.idx()] || self.map[a.idx()].is_none() {
                continue;
            }
            let mut cyc = vec![a];
            seen[a.idx()] = true;
            let mut b = self.apply(a);
            while b != a {
                seen[b.idx()] = true;
                cyc.push(b);
                b = self.apply(b);
            }
            out.push(cyc);
        }
        out
    }

    /// Cycle lengths, sorted descending.
    pub fn cycle_lengths(&self, p: &Pair) -> Vec<usize> {
        let mut v: Vec<usize> = self.cycles(p).iter().map(Vec::len).collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }
}

fn check(p: &Pair) -> Result<()> {
    if p.is_irreducible() {
        Ok(())
    } else {
        Err(Error::Reducible)
    }
}

/// S by the three-case formula.
pub fn s_map_formula(p: &Pair) -> LetterPerm {
    let n = p.n();
    let mut map = vec![None; n];
    let z0 = p.last(0);
    let z1 = p.last(1);
    for a in p.letters() {
        let i = p.pos(1, a);
        let img = if i == 0 {
            p.first(0)
        } else if i == p.pos(1, z0) + 1 {
            p.at(0, p.pos(0, z1) + 1)
        } else {
            p.at(0, p.pos(0, p.at(1, i - 1)) + 1)
        };
        map[a.idx()] = Some(img);
    }
    LetterPerm { map }
}

/// Point of the extended alphabet `𝒜 ∪ {◁, ▷}`.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
enum Ext {
    Start,
    End,
    L(Letter),
}

/// S as the first return of `R_{p0} ∘ L_{p1}` to the alphabet.
pub fn s_map_first_return(p: &Pair) -> LetterPerm {
    let n = p.n();
    // L_{p1}: ◁→▷, first→◁, b→pred(b), ▷→last
    let left = |x: Ext| match x {
        Ext::Start => Ext::End,
        Ext::End => Ext::L(p.last(1)),
        Ext::L(b) => match p.pos(1, b) {
            0 => Ext::Start,
            i => Ext::L(p.at(1, i - 1)),
        },
    };
    // R_{p0}: ▷→◁, ◁→first, b→succ(b), last→▷
    let right = |x: Ext| match x {
        Ext::End => Ext::Start,
        Ext::Start => Ext::L(p.first(0)),
        Ext::L(b) => match p.pos(0, b) {
            i if i + 1 == n => Ext::End,
            i => Ext::L(p.at(0, i + 1)),
        },
    };
    let mut map = vec![None; n];
    for a in p.letters() {
        let mut x = right(left(Ext::L(a)));
        let mut steps = 0;
        while !matches!(x, Ext::L(_)) {
            x = right(left(x));
            steps += 1;
            assert!(steps <= 4, "first return did not close");
        }
        if let Ext::L(b) = x {
            map[a.idx()] = Some(b);
        }
    }
    LetterPerm { map }
}

/// The permutation S; both constructions are computed and compared when
/// debug assertions are on.
pub fn s_map(p: &Pair) -> Result<LetterPerm> {
    check(p)?;
    let s = s_map_formula(p);
    if cfg!(debug_assertions) {
        let t = s_map_first_return(p);
        if s != t {
            return Err(Error::Internal(format!("S constructions disagree on {p}")));
        }
    }
    Ok(s)
}

/// Length of the S-cycle through the first top letter.
pub fn m_value(p: &Pair) -> Result<usize> {
    let s = s_map(p)?;
    let a = p.first(0);
    let mut k = 1;
    let mut b = s.apply(a);
    while b != a {
        b = s.apply(b);
        k += 1;
    }
    Ok(k)
}

/// Y: the first return of S on the alphabet minus the first top letter.
pub fn y_map(p: &Pair) -> Result<LetterPerm> {
    let s = s_map(p)?;
    Ok(y_from_s(p, &s))
}

fn y_from_s(p: &Pair, s: &LetterPerm) -> LetterPerm {
    let a = p.first(0);
    let mut map = vec![None; p.n()];
    for b in p.letters().filter(|&b| b != a) {
        let img = if p.pos(1, b) == 0 { s.apply(s.apply(b)) } else { s.apply(b) };
        map[b.idx()] = Some(img);
    }
    LetterPerm { map }
}

/// Lengths of the Y-cycles, sorted descending.
pub fn p_list(p: &Pair) -> Result<Vec<usize>> {
    Ok(y_map(p)?.cycle_lengths(p))
}

/// The canonical quadratic form: `q(e_a) = 1` and the bilinear part is the
/// crossing relation of the pair.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuadForm {
    n: usize,
    crossing: Vec<Vec<bool>>,
}

impl QuadForm {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Crossing relation by letter index.
    pub fn crosses(&self, a: Letter, b: Letter) -> bool {
        self.crossing[a.idx()][b.idx()]
    }

    /// Crossing pairs as letter pairs `(a, b)` with `a < b` by index.
    pub fn crossing_pairs(&self) -> Vec<(Letter, Letter)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.crossing[i][j] {
                    out.push((Letter(i as u16), Letter(j as u16)));
                }
            }
        }
        out
    }

    /// `Q(v)` for a vector given as a bit mask over letter indices.
    pub fn eval(&self, v: u64) -> bool {
        let mut q = v.count_ones() & 1;
        for i in 0..self.n {
            if v >> i & 1 == 1 {
                for j in i + 1..self.n {
                    if v >> j & 1 == 1 && self.crossing[i][j] {
                        q ^= 1;
                    }
                }
            }
        }
        q == 1
    }
}

pub fn quad_form(p: &Pair) -> Result<QuadForm> {
    check(p)?;
    let n = p.n();
    let mut crossing = vec![vec![false; n]; n];
    for a in p.letters() {
        for b in p.letters() {
            let d0 = p.pos(0, a) as isize - p.pos(0, b) as isize;
            let d1 = p.pos(1, a) as isize - p.pos(1, b) as isize;
            crossing[a.idx()][b.idx()] = d0 * d1 < 0;
        }
    }
    Ok(QuadForm { n, crossing })
}

/// Default alphabet cap for exhaustive ARF evaluation.
pub const ARF_CAP: usize = 24;

/// Counts `Q(v) = 1` over `{0..2^len}` offsets from the fixed high part `base`,
/// walking the low `len` bits in Gray-code order.
fn gray_count(adj: &[u64], base: u64, len: usize, q0: bool) -> u64 {
    let mut v = base;
    let mut q = q0;
    let mut count = q as u64;
    for step in 1u64..(1u64 << len) {
        let j = step.trailing_zeros() as usize;
        // flipping bit j changes Q by 1 + <e_j, v>
        let delta = 1 + (adj[j] & v).count_ones();
        if delta & 1 == 1 {
            q = !q;
        }
        v ^= 1 << j;
        count += q as u64;
    }
    count
}

/// `#{v : Q_p(v) = 1}` by exhaustive evaluation, for `n ≤ cap`.
pub fn arf_count_capped(p: &Pair, cap: usize) -> Result<BigUint> {
    let form = quad_form(p)?;
    let n = form.n;
    if n > cap || n > 62 {
        return Err(Error::OutOfRange(format!("ARF enumeration over {n} letters exceeds cap {cap}")));
    }
    let adj: Vec<u64> = (0..n)
        .map(|i| (0..n).filter(|&j| form.crossing[i][j]).fold(0u64, |m, j| m | 1 << j))
        .collect();
    let low = n.min(16);
    let high = n - low;
    let total: u64 = (0u64..(1u64 << high))
        .into_par_iter()
        .map(|h| {
            let base = h << low;
            gray_count(&adj, base, low, form.eval(base))
        })
        .sum();
    Ok(BigUint::from(total))
}

pub fn arf_count(p: &Pair) -> Result<BigUint> {
    arf_count_capped(p, ARF_CAP)
}

/// `2^(N1+2N2+4N4+5N5+1) + (−1)^(N4+N5) · 2^(N1+N2+2N4+3N5)`.
pub fn arf_by_blocks(n1: u32, n2: u32, n4: u32, n5: u32) -> BigUint {
    let one = BigUint::from(1u32);
    let a = &one << (n1 + 2 * n2 + 4 * n4 + 5 * n5 + 1) as usize;
    let b = &one << (n1 + n2 + 2 * n4 + 3 * n5) as usize;
    if (n4 + n5).is_multiple_of(2) {
        a + b
    } else {
        a - b
    }
}

/// Whether a signature carries the class data (with M) or only the extended data.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scope {
    Class,
    Extended,
}
