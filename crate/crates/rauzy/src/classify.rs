//! Types of PWOR pairs, the switch-move normalization reaching one, canonical
//! forms, and the classification predicates built on them.
//!
//! Normalization runs in three stages on a PWOR pair: blocks of size six or
//! more are split, then 4/5-blocks are paired off, then a case machine moves
//! the remaining 3-, 4- and 5-blocks until the chain shape has a Type. Every
//! stage is a list of inner switches whose endpoint is checked against the
//! pattern it claims to reach.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::catalog::{apply_corollary, move_spec, run_spec, Corollary, Direction, MoveSpec};
use crate::error::{Error, Result};
use crate::invariants::{m_value, p_list, Scope};
use crate::moves::Path;
use crate::pair::{canonical_token, Letter, Pair};
use crate::surgery::{extend, restrict, ExtensionSpec};
use crate::switches::{
    apply_switches, chains, chains_of, is_pwor, lift_past, reorder_chains, to_pwor, Chains, Switch,
};

#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum TypeTag {
    T1,
    T2,
    T3,
    T4,
    T5,
}

impl fmt::Display for TypeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for TypeTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<TypeTag> {
        match s.trim_start_matches('T') {
            "1" => Ok(TypeTag::T1),
            "2" => Ok(TypeTag::T2),
            "3" => Ok(TypeTag::T3),
            "4" => Ok(TypeTag::T4),
            "5" => Ok(TypeTag::T5),
            _ => Err(Error::Parse(format!("unknown type {s:?}"))),
        }
    }
}

fn all_twos(c: &[usize]) -> bool {
    c.iter().all(|&s| s == 2)
}

/// `2^m 3 2^l`: exactly one 3-block among 2-blocks.
fn one_three(c: &[usize]) -> bool {
    c.iter().filter(|&&s| s == 3).count() == 1 && c.iter().all(|&s| s == 2 || s == 3)
}

/// The Type of a chain shape (block sizes per chain), if any.
pub fn type_of_shape(shape: &[Vec<usize>]) -> Option<TypeTag> {
    let big: usize = shape.iter().map(Vec::len).sum();
    if big <= 1 {
        return Some(TypeTag::T1);
    }
    let full: Vec<&Vec<usize>> = shape.iter().filter(|c| !c.is_empty()).collect();
    if full.iter().all(|c| all_twos(c)) {
        return Some(TypeTag::T2);
    }
    if full.iter().all(|c| all_twos(c) || one_three(c)) {
        return Some(TypeTag::T3);
    }
    let four = |c: &Vec<usize>| c[0] == 4 && all_twos(&c[1..]);
    if full.iter().filter(|c| four(c)).count() == 1 && full.iter().all(|c| four(c) || all_twos(c)) {
        return Some(TypeTag::T4);
    }
    let five = |c: &Vec<usize>| c[..] == [5];
    if full.iter().filter(|c| five(c)).count() == 1 && full.iter().all(|c| five(c) || c[..] == [2]) {
        return Some(TypeTag::T5);
    }
    None
}

/// The Type of a PWOR pair, read off its finest chain decomposition.
pub fn type_of(p: &Pair) -> Result<Option<TypeTag>> {
    Ok(type_of_shape(&chains(p)?.shape()))
}

/// A block of size ≥ 2 with its 0-based start and chain index.
#[derive(Clone, Debug)]
struct Blk {
    start: usize,
    letters: Vec<Letter>,
    chain: usize,
}

impl Blk {
    fn len(&self) -> usize {
        self.letters.len()
    }

    /// First two and last two letters: the pattern letters of a 4/5-block.
    fn ends4(&self) -> [Letter; 4] {
        let l = &self.letters;
        let k = l.len();
        [l[0], l[1], l[k - 2], l[k - 1]]
    }
}

struct View {
    blocks: Vec<Blk>,
    ch: Chains,
}

impl View {
    fn of(p: &Pair) -> Result<View> {
        let d = is_pwor(p).ok_or(Error::NotPwor)?;
        let mut blocks = Vec::new();
        let mut chain = 0;
        for (b, &k) in d.blocks.iter().zip(&d.boundaries) {
            if b.len() == 1 {
                chain += 1;
            } else {
                blocks.push(Blk { start: k - 1, letters: b.clone(), chain });
            }
        }
        Ok(View { blocks, ch: chains_of(&d) })
    }

    /// The block right before block `i` in its chain.
    fn prev(&self, i: usize) -> Option<usize> {
        (i > 0 && self.blocks[i - 1].chain == self.blocks[i].chain).then(|| i - 1)
    }

    fn next(&self, i: usize) -> Option<usize> {
        (i + 1 < self.blocks.len() && self.blocks[i + 1].chain == self.blocks[i].chain).then_some(i + 1)
    }

    fn sized(&self, len: usize) -> Vec<usize> {
        (0..self.blocks.len()).filter(|&i| self.blocks[i].len() == len).collect()
    }
}

/// A pair together with the switches that reached it.
struct Run {
    pair: Pair,
    seq: Vec<Switch>,
}

impl Run {
    fn new(p: &Pair) -> Run {
        Run { pair: p.clone(), seq: Vec::new() }
    }

    fn take(&mut self, step: (Pair, Vec<Switch>)) {
        self.pair = step.0;
        self.seq.extend(step.1);
    }

    fn done(self) -> (Pair, Vec<Switch>) {
        (self.pair, self.seq)
    }
}

fn spec(id: &str) -> &'static MoveSpec {
    move_spec(id).expect("catalog move")
}

/// Applies `spec` with pattern letters bound to letters of `src`, looked up
/// by token in `p` (which may be a restriction of `src`).
fn run(p: &Pair, spec: &'static MoveSpec, d: Direction, src: &Pair, letters: &[(&str, Letter)]) -> Result<(Pair, Vec<Switch>)> {
    let b: Vec<(&str, &str)> = letters.iter().map(|&(k, l)| (k, src.token(l))).collect();
    run_spec(p, spec, d, &b)
}

fn fwd(p: &Pair, spec: &'static MoveSpec, src: &Pair, letters: &[(&str, Letter)]) -> Result<(Pair, Vec<Switch>)> {
    run(p, spec, Direction::Forward, src, letters)
}

fn internal(what: &str, p: &Pair) -> Error {
    Error::Internal(format!("{what}: {p}"))
}

/// Runs `f` on the restriction of `p` to `a`, `z` and everything after the
/// 1-block `s`, then replays its switches on `p` with the front held in place.
fn after_separator(
    p: &Pair,
    s: Letter,
    f: impl FnOnce(&Pair) -> Result<(Pair, Vec<Switch>)>,
) -> Result<(Pair, Vec<Switch>)> {
    let cut = p.pos(0, s);
    let keep: Vec<Letter> = std::iter::once(p.first(0)).chain(p.row(0)[cut + 1..].iter().copied()).collect();
    let r = restrict(p, &keep)?;
    let (r2, seq) = f(&r)?;
    let (q, lifted) = lift_past(p, s, &seq)?;
    let row = |e: usize| -> Result<Vec<Letter>> {
        let mut out = p.row(e)[..=cut].to_vec();
        for &l in &r2.row(e)[1..] {
            out.push(p.expect_letter(r2.token(l))?);
        }
        Ok(out)
    };
    let expected = p.with_rows(row(0)?, row(1)?);
    if q != expected {
        return Err(Error::Internal(format!("lift past {} reached {q}, expected {expected}", p.token(s))));
    }
    Ok((q, lifted))
}

/// [`after_separator`] at the separator closing chain `j − 1`.
fn on_chains_from(
    p: &Pair,
    j: usize,
    f: impl FnOnce(&Pair) -> Result<(Pair, Vec<Switch>)>,
) -> Result<(Pair, Vec<Switch>)> {
    if j == 0 {
        return f(p);
    }
    let ch = chains(p)?;
    after_separator(p, ch.separators[j - 1], f)
}

/// A corollary run on the row-exchanged pair; switches commute with
/// exchanging the rows, so the same list works on `p` itself.
fn corollary_on_inverse(p: &Pair, c: Corollary, m: usize) -> Result<(Pair, Vec<Switch>)> {
    let (qi, seq) = apply_corollary(&p.inverse(), c, m, 0)?;
    let (q, _) = apply_switches(p, &seq)?;
    if q != qi.inverse() {
        return Err(internal("row exchange does not commute with the switches", p));
    }
    Ok((q, seq))
}

// Splitting large blocks. `m` names the large block `b1..`, `c1`/`ck` the
// ends of a neighbouring block of size ≥ 2; the letters between `b4` and `b5`
// (for blocks of size ≥ 8) and inside the neighbour ride along as filler.

/// Block of size ≥ 8 before another block.
static SPLIT_8_BEFORE: MoveSpec = MoveSpec {
    id: "split:8-before",
    source: "a b1 b2 b3 b4 b5 b6 b7 b8 c1 ck z / z b8 b7 b6 b5 b4 b3 b2 b1 ck c1 a",
    target: "a b1 b8 b3 b6 b5 b4 b7 b2 c1 ck z / z b8 b1 b6 b3 b4 b5 b2 b7 ck c1 a",
    switches: "{b3,ck} {b7,c1} {b2,b5} {b2,b8} {b4,b6} {b1,b4} {b7,c1} {b5,b8} {b3,ck}",
};

/// Block of size ≥ 8 after another block.
static SPLIT_8_AFTER: MoveSpec = MoveSpec {
    id: "split:8-after",
    source: "a c1 ck b1 b2 b3 b4 b5 b6 b7 b8 z / z ck c1 b8 b7 b6 b5 b4 b3 b2 b1 a",
    target: "a c1 ck b1 b8 b3 b6 b5 b4 b7 b2 z / z ck c1 b8 b1 b6 b3 b4 b5 b2 b7 a",
    switches: "{ck,b2} {c1,b5} {b1,b4} {b1,b6} {c1,b3} {ck,b5} {b2,b8} {b4,b7} {b1,b4}",
};

/// Leading 7-block.
static SPLIT_7_FIRST: MoveSpec = MoveSpec {
    id: "split:7-first",
    source: "a b1 b2 b3 b4 b5 b6 b7 c1 ck z / z b7 b6 b5 b4 b3 b2 b1 ck c1 a",
    target: "a b3 b1 b5 b4 b7 b6 b2 c1 ck z / z b1 b3 b7 b4 b5 b2 b6 ck c1 a",
    switches: "{b5,c1} {b1,ck} {b4,b6} {b3,c1} {b5,c1} {b1,ck} {b2,b7}",
};

/// Leading 7-block after a 1-block.
static SPLIT_7_FIRST_S: MoveSpec = MoveSpec {
    id: "split:7-first-s",
    source: "a s b1 b2 b3 b4 b5 b6 b7 c1 ck z / z s b7 b6 b5 b4 b3 b2 b1 ck c1 a",
    target: "a s b3 b1 b5 b4 b7 b6 b2 c1 ck z / z s b1 b3 b7 b4 b5 b2 b6 ck c1 a",
    switches: "{b5,c1} {b1,ck} {b4,b6} {b3,c1} {b5,c1} {b1,ck} {b2,b7} {s,b3}",
};

/// 7-block after the leading block.
static SPLIT_7_LATER: MoveSpec = MoveSpec {
    id: "split:7-later",
    source: "a c1 ck b1 b2 b3 b4 b5 b6 b7 z / z ck c1 b7 b6 b5 b4 b3 b2 b1 a",
    target: "a b5 b3 b7 b1 ck b4 c1 b6 b2 z / z b3 b5 b1 b7 c1 b4 ck b2 b6 a",
    switches: "{c1,b5} {ck,b1} {b2,b7} {b3,b5} {b6,ck} {b3,b4}",
};

/// 7-block after the leading block, which follows a 1-block.
static SPLIT_7_LATER_S: MoveSpec = MoveSpec {
    id: "split:7-later-s",
    source: "a s c1 ck b1 b2 b3 b4 b5 b6 b7 z / z s ck c1 b7 b6 b5 b4 b3 b2 b1 a",
    target: "a s b5 b3 b7 b1 ck b4 c1 b6 b2 z / z s b3 b5 b1 b7 c1 b4 ck b2 b6 a",
    switches: "{c1,b5} {ck,b1} {b2,b7} {b3,b5} {b6,ck} {b3,b4} {s,b4}",
};

/// 6-block before another block.
static SPLIT_6_BEFORE: MoveSpec = MoveSpec {
    id: "split:6-before",
    source: "a b1 b2 b3 b4 b5 b6 c1 ck z / z b6 b5 b4 b3 b2 b1 ck c1 a",
    target: "a b1 b6 b3 b2 b5 b4 c1 ck z / z b6 b1 b4 b5 b2 b3 ck c1 a",
    switches: "{b1,ck} {b4,c1} {b1,b3} {b1,b5} {b2,b6} {b4,c1} {b3,ck}",
};

/// 6-block after another block.
static SPLIT_6_AFTER: MoveSpec = MoveSpec {
    id: "split:6-after",
    source: "a c1 ck b1 b2 b3 b4 b5 b6 z / z ck c1 b6 b5 b4 b3 b2 b1 a",
    target: "a c1 ck b1 b6 b3 b2 b5 b4 z / z ck c1 b6 b1 b4 b5 b2 b3 a",
    switches: "{b3,c1} {b1,ck} {b1,b5} {b2,b4} {b4,b6} {b5,c1} {b3,ck}",
};

// Two steps of the 3-block case machine that are not catalog moves.

/// 5-block right before a 3-block.
static FIVE_BEFORE_THREE: MoveSpec = MoveSpec {
    id: "merge:5-3",
    source: "a b1 b2 b3 b4 b5 c1 c2 c3 z / z b5 b4 b3 b2 b1 c3 c2 c1 a",
    target: "a b1 b5 b3 c1 b4 c3 c2 b2 z / z b5 b1 b3 b4 c1 b2 c2 c3 a",
    switches: "{b1,c3} {b4,c2} {b1,b2} {b3,b5} {c1,c3}",
};

/// 4-block, 1-block, 2-block, 3-block.
static BLOCK_OVER_TWO_THREE: MoveSpec = MoveSpec {
    id: "split:4-s-2-3",
    source: "a b1 b2 b3 b4 s c1 c2 d1 d2 d3 z / z b4 b3 b2 b1 s c2 c1 d3 d2 d1 a",
    target: "a b1 b4 b3 b2 s d1 c1 d3 d2 c2 z / z b4 b1 b2 b3 s c1 d1 c2 d2 d3 a",
    switches: "{b3,d1} {c1,d2} {b2,b4} {c2,d3} {s,d1} {b3,d3} {b4,d2} {b1,b3}",
};

/// Splits blocks of size ≥ 6 until none is left or the pair has Type 1.
fn split_large(p: &Pair, depth: usize) -> Result<(Pair, Vec<Switch>)> {
    if depth > p.n() {
        return Err(internal("block splitting recursed too deep", p));
    }
    let mut r = Run::new(p);
    for _ in 0..4 * p.n() + 8 {
        if type_of(&r.pair)? == Some(TypeTag::T1) {
            return Ok(r.done());
        }
        let v = View::of(&r.pair)?;
        let step = match large_step(&r.pair, &v, depth)? {
            Some(step) => step,
            None => return Ok(r.done()),
        };
        r.take(step);
    }
    Err(internal("block splitting did not finish", &r.pair))
}

fn large_step(p: &Pair, v: &View, depth: usize) -> Result<Option<(Pair, Vec<Switch>)>> {
    let bl = &v.blocks;
    let rightmost = |ok: &dyn Fn(usize) -> bool| (0..bl.len()).rev().find(|&i| ok(bl[i].len()));
    let pick = |i: usize| -> (&Blk, bool) {
        // the nearest other block, preferring the right
        if i + 1 < bl.len() {
            (&bl[i + 1], true)
        } else {
            (&bl[i - 1], false)
        }
    };
    if let Some(i) = rightmost(&|l| l >= 8) {
        let b = &bl[i].letters;
        let m = b.len();
        let (k, right) = pick(i);
        let c = [("c1", k.letters[0]), ("ck", *k.letters.last().unwrap())];
        let mut letters: Vec<(&str, Letter)> =
            ["b1", "b2", "b3", "b4"].into_iter().zip(b[..4].iter().copied()).collect();
        letters.extend(["b5", "b6", "b7", "b8"].into_iter().zip(b[m - 4..].iter().copied()));
        letters.extend(c);
        let s = if right { &SPLIT_8_BEFORE } else { &SPLIT_8_AFTER };
        return fwd(p, s, p, &letters).map(Some);
    }
    if let Some(i) = rightmost(&|l| l == 7) {
        let b = &bl[i].letters;
        let bs = ["b1", "b2", "b3", "b4", "b5", "b6", "b7"];
        if i == 0 {
            let k = &bl[1];
            let mut letters: Vec<(&str, Letter)> = bs.into_iter().zip(b.iter().copied()).collect();
            letters.extend([("c1", k.letters[0]), ("ck", *k.letters.last().unwrap())]);
            let s = if bl[i].start > 1 {
                letters.push(("s", p.at(0, bl[i].start - 1)));
                &SPLIT_7_FIRST_S
            } else {
                &SPLIT_7_FIRST
            };
            return fwd(p, s, p, &letters).map(Some);
        }
        return seven_later(p, &bl[0], &bl[i], depth).map(Some);
    }
    if let Some(i) = rightmost(&|l| l == 6) {
        let b = &bl[i].letters;
        let (k, right) = pick(i);
        let mut letters: Vec<(&str, Letter)> =
            ["b1", "b2", "b3", "b4", "b5", "b6"].into_iter().zip(b.iter().copied()).collect();
        letters.extend([("c1", k.letters[0]), ("ck", *k.letters.last().unwrap())]);
        let s = if right { &SPLIT_6_BEFORE } else { &SPLIT_6_AFTER };
        return fwd(p, s, p, &letters).map(Some);
    }
    Ok(None)
}

/// A 7-block that is not the leading block `c`: after the switch list, the
/// letters `b2 b4 b6`, the old leading block and everything after the
/// 7-block form a PWOR tail; the rest is a smaller pair, normalized on its
/// own and replayed with the tail riding along.
fn seven_later(p: &Pair, c: &Blk, b: &Blk, depth: usize) -> Result<(Pair, Vec<Switch>)> {
    let bs = ["b1", "b2", "b3", "b4", "b5", "b6", "b7"];
    let mut letters: Vec<(&str, Letter)> = bs.into_iter().zip(b.letters.iter().copied()).collect();
    letters.extend([("c1", c.letters[0]), ("ck", *c.letters.last().unwrap())]);
    let s = if c.start > 1 {
        letters.push(("s", p.at(0, c.start - 1)));
        &SPLIT_7_LATER_S
    } else {
        &SPLIT_7_LATER
    };
    let (p1, mut seq) = fwd(p, s, p, &letters)?;
    let mut drop: HashSet<&str> = [1, 3, 5].iter().map(|&i| p.token(b.letters[i])).collect();
    drop.extend(c.letters.iter().map(|&l| p.token(l)));
    drop.extend(p.row(0)[b.start + 7..p.n() - 1].iter().map(|&l| p.token(l)));
    let keep: Vec<Letter> = p1.letters().filter(|&l| !drop.contains(p1.token(l))).collect();
    let q = restrict(&p1, &keep)?;
    if !q.is_standard() {
        return Err(internal("7-block restriction is not standard", &q));
    }
    let walk = to_pwor(&q)?;
    let (q2, tail) = split_large(&walk.pair, depth + 1)?;
    let mut inner = walk.switches;
    inner.extend(tail);
    let (p2, _) = apply_switches(&p1, &inner)?;
    let expected = extend(&q2, &ExtensionSpec::from_restriction(&p1, &keep)?)?;
    if p2 != expected {
        return Err(Error::Internal(format!("7-block recursion reached {p2}, expected {expected}")));
    }
    seq.extend(inner);
    Ok((p2, seq))
}

/// move:43218765-21436587 on two 4/5-blocks: both become 2-blocks (around the middle letter of a 5-block).
fn pair_off(p: &Pair, b: &Blk, c: &Blk) -> Result<(Pair, Vec<Switch>)> {
    let [b1, b2, b3, b4] = b.ends4();
    let [c1, c2, c3, c4] = c.ends4();
    fwd(p, spec("move:43218765-21436587"), p, &[("b1", b1), ("b2", b2), ("b3", b3), ("b4", b4), ("c1", c1), ("c2", c2), ("c3", c3), ("c4", c4)])
}

/// Pairs off 4/5-blocks until at most one is left.
fn pair_big_blocks(p: &Pair) -> Result<(Pair, Vec<Switch>)> {
    let mut r = Run::new(p);
    loop {
        if type_of(&r.pair)? == Some(TypeTag::T1) {
            return Ok(r.done());
        }
        let v = View::of(&r.pair)?;
        let big: Vec<&Blk> = v.blocks.iter().filter(|b| b.len() == 4 || b.len() == 5).collect();
        if big.len() < 2 {
            return Ok(r.done());
        }
        let step = pair_off(&r.pair, big[0], big[1])?;
        r.take(step);
    }
}

/// Reduces a PWOR pair to one that has Type 1 or has all blocks of size at
/// most five with at most one of size four or five.
pub fn reduce_blocks(p: &Pair) -> Result<(Pair, Vec<Switch>)> {
    is_pwor(p).ok_or(Error::NotPwor)?;
    let mut r = Run::new(p);
    r.take(split_large(p, 0)?);
    let step = pair_big_blocks(&r.pair)?;
    r.take(step);
    Ok(r.done())
}

/// move:216543-432165 forward: the 2-block `d` right before the 4/5-block `k` trades
/// places with it.
fn a3_forward(p: &Pair, d: &Blk, k: &Blk) -> Result<(Pair, Vec<Switch>)> {
    let [c1, c2, c3, c4] = k.ends4();
    let l = &d.letters;
    fwd(p, spec("move:216543-432165"), p, &[("b1", l[0]), ("b2", l[1]), ("c1", c1), ("c2", c2), ("c3", c3), ("c4", c4)])
}

/// move:216543-432165 reversed: the 4/5-block `k` and the 2-block `d` right after it
/// become a 2-block followed by a 4-block.
fn a3_reverse(p: &Pair, k: &Blk, d: &Blk) -> Result<(Pair, Vec<Switch>)> {
    let [b1, c4, c1, b2] = k.ends4();
    let l = &d.letters;
    run(p, spec("move:216543-432165"), Direction::Reverse, p, &[("b1", b1), ("b2", b2), ("c1", c1), ("c2", l[1]), ("c3", l[0]), ("c4", c4)])
}

/// move:43216587-21438765 forward: the 4/5-block `k` splits and the adjacent 2-blocks `d`, `e`
/// (somewhere to its right) merge into a 4-block.
fn a4_forward(p: &Pair, k: &Blk, d: &Blk, e: &Blk) -> Result<(Pair, Vec<Switch>)> {
    let [b1, b2, b3, b4] = k.ends4();
    let (d, e) = (&d.letters, &e.letters);
    fwd(p, spec("move:43216587-21438765"), p, &[("b1", b1), ("b2", b2), ("b3", b3), ("b4", b4), ("c1", d[0]), ("c2", d[1]), ("c3", e[0]), ("c4", e[1])])
}

/// move:43216587-21438765 reversed: the adjacent 2-blocks `d`, `e` merge into a 4-block and the
/// 4/5-block `k` (somewhere to their right) splits.
fn a4_reverse(p: &Pair, d: &Blk, e: &Blk, k: &Blk) -> Result<(Pair, Vec<Switch>)> {
    let [c1, c4, c3, c2] = k.ends4();
    let (d, e) = (&d.letters, &e.letters);
    run(p, spec("move:43216587-21438765"), Direction::Reverse, p, &[("b1", d[0]), ("b4", d[1]), ("b3", e[0]), ("b2", e[1]), ("c1", c1), ("c2", c2), ("c3", c3), ("c4", c4)])
}

/// One step towards a Type for a PWOR pair without a Type whose blocks are
/// at most five long, with at most one 4/5-block.
fn type_step(p: &Pair) -> Result<(Pair, Vec<Switch>)> {
    let v = View::of(p)?;
    let bl = &v.blocks;
    if bl.iter().any(|b| b.len() >= 6) {
        return Err(internal("block of size ≥ 6 left after splitting", p));
    }
    let big: Vec<usize> = (0..bl.len()).filter(|&i| bl[i].len() == 4 || bl[i].len() == 5).collect();
    if big.len() >= 2 {
        return pair_off(p, &bl[big[0]], &bl[big[1]]);
    }
    let k = big.first().copied();
    let threes = v.sized(3);
    if threes.is_empty() {
        let k = k.ok_or_else(|| internal("only 2-blocks but no Type", p))?;
        return no_three_step(p, &v, k);
    }
    // two 3-blocks in one chain, unless the 4/5-block sits before the second
    for c in 0..v.ch.len() {
        let in_c: Vec<usize> = threes.iter().copied().filter(|&t| bl[t].chain == c).collect();
        if in_c.len() >= 2 {
            let (x, y) = (in_c[0], in_c[1]);
            if k.is_none_or(|k| !(bl[k].chain == c && k < y)) {
                return two_threes(p, &v, x, y);
            }
        }
    }
    let k = k.ok_or_else(|| internal("only 2- and 3-blocks but no Type", p))?;
    three_and_big_step(p, &v, &threes, k)
}

/// No 3-blocks and a single 4/5-block `k`.
fn no_three_step(p: &Pair, v: &View, k: usize) -> Result<(Pair, Vec<Switch>)> {
    let bl = &v.blocks;
    let kb = &bl[k];
    if kb.len() == 4 {
        let d = v.prev(k).ok_or_else(|| internal("leading 4-block but no Type", p))?;
        return a3_forward(p, &bl[d], kb);
    }
    if let Some(d) = v.next(k) {
        return a3_reverse(p, kb, &bl[d]);
    }
    if let Some(d) = v.prev(k) {
        return a3_forward(p, &bl[d], kb);
    }
    // the 5-block is alone in its chain: borrow two 2-blocks from another chain
    let long: Vec<usize> = (0..v.ch.len()).filter(|&c| v.ch.chains[c].len() >= 2).collect();
    let first_of = |c: usize| (0..bl.len()).find(|&i| bl[i].chain == c).unwrap();
    if let Some(&c) = long.iter().find(|&&c| c > kb.chain) {
        let d = first_of(c);
        return a4_forward(p, kb, &bl[d], &bl[d + 1]);
    }
    if let Some(&c) = long.iter().rev().find(|&&c| c < kb.chain) {
        let d = first_of(c);
        return a4_reverse(p, &bl[d], &bl[d + 1], kb);
    }
    Err(internal("lone 5-block without a chain of two 2-blocks, but no Type", p))
}

/// Two 3-blocks `x`, `y` in one chain, with only 2-blocks before `y`: move:321654-213654
/// splits the chain in two around `y`'s first letter, then each half is
/// straightened.
fn two_threes(p: &Pair, v: &View, x: usize, y: usize) -> Result<(Pair, Vec<Switch>)> {
    let bl = &v.blocks;
    let (xb, yb) = (&bl[x], &bl[y]);
    let before = (0..x).filter(|&i| bl[i].chain == xb.chain).count();
    let between = y - x - 1;
    on_chains_from(p, xb.chain, |r| {
        let (x, y) = (&xb.letters, &yb.letters);
        let (r1, mut seq) =
            fwd(r, spec("move:321654-213654"), p, &[("b1", x[0]), ("b2", x[1]), ("b3", x[2]), ("c1", y[0]), ("c2", y[1]), ("c3", y[2])])?;
        let (r2, s2) = apply_corollary(&r1, Corollary::AbUUba, between, 0)?;
        seq.extend(s2);
        let sep = r2.expect_letter(p.token(y[0]))?;
        let (r3, s3) = after_separator(&r2, sep, |r| apply_corollary(r, Corollary::AbUcCbUa, before, 0))?;
        seq.extend(s3);
        Ok((r3, seq))
    })
}

/// 3-blocks, one 4/5-block `k`, and no chain with two 3-blocks ahead of it.
fn three_and_big_step(p: &Pair, v: &View, threes: &[usize], k: usize) -> Result<(Pair, Vec<Switch>)> {
    let bl = &v.blocks;
    let kb = &bl[k];
    // a 3-block before the 4/5-block: move:3217654-3215476 moves the split to its chain
    if let Some(b) = (0..k).rev().find(|&i| bl[i].len() == 3) {
        let bb = &bl[b];
        let before: Vec<usize> = (0..b).filter(|&i| bl[i].chain == bb.chain).collect();
        let last = before.last().map(|&i| bl[i].letters.clone());
        return on_chains_from(p, bb.chain, |r| {
            let t = &bb.letters;
            let [c1, c2, c3, c4] = kb.ends4();
            let (r1, mut seq) = fwd(
                r,
                spec("move:3217654-3215476"),
                p,
                &[("b1", t[0]), ("b2", t[1]), ("b3", t[2]), ("c1", c1), ("c2", c2), ("c3", c3), ("c4", c4)],
            )?;
            let Some(d) = last else { return Ok((r1, seq)) };
            // (b3 b2 U b1 / b1 b2 U b3), U ending in the 2-block d
            let pair_up = [Switch::inner(p.token(t[1]), p.token(d[0])), Switch::inner(p.token(t[0]), p.token(d[1]))];
            let (r2, _) = apply_switches(&r1, &pair_up)?;
            seq.extend(pair_up);
            let (r3, s3) = corollary_on_inverse(&r2, Corollary::AbUBUa, before.len() - 1)?;
            seq.extend(s3);
            Ok((r3, seq))
        });
    }
    // all 3-blocks come after k; bring any stray one in front of k's chain
    let last_chain = v.ch.len() - 1;
    if let Some(&t) = threes.iter().find(|&&t| bl[t].chain != last_chain && bl[t].chain != kb.chain) {
        let tc = bl[t].chain;
        let mut order: Vec<usize> = (0..last_chain).filter(|&c| c != tc).collect();
        let at = order.iter().position(|&c| c == kb.chain).unwrap();
        order.insert(at, tc);
        return reorder_chains(p, &order);
    }
    // two adjacent 2-blocks after a 3-block absorb the split
    let x = threes[0];
    if let Some(d) = (x + 1..bl.len()).find(|&d| bl[d].len() == 2 && v.next(d).is_some_and(|e| bl[e].len() == 2)) {
        return a4_forward(p, kb, &bl[d], &bl[d + 1]);
    }
    let tb = &bl[x];
    match v.prev(x) {
        Some(i) if i == k => {
            return on_chains_from(p, tb.chain, |r| {
                let c = &tb.letters;
                if kb.len() == 5 {
                    let b = &kb.letters;
                    return fwd(
                        r,
                        &FIVE_BEFORE_THREE,
                        p,
                        &[("b1", b[0]), ("b2", b[1]), ("b3", b[2]), ("b4", b[3]), ("b5", b[4]), ("c1", c[0]), ("c2", c[1]), ("c3", c[2])],
                    );
                }
                let [b1, b2, b3, b4] = kb.ends4();
                let (r1, mut seq) = fwd(
                    r,
                    spec("move:4321765-2143765"),
                    p,
                    &[("b1", b1), ("b2", b2), ("b3", b3), ("b4", b4), ("c1", c[0]), ("c2", c[1]), ("c3", c[2])],
                )?;
                // (b3 U b1 / b1 b3 U) in front
                let before = (0..k).filter(|&i| bl[i].chain == kb.chain).count();
                let (r2, s2) = corollary_on_inverse(&r1, Corollary::AbUBUa, before)?;
                seq.extend(s2);
                Ok((r2, seq))
            });
        }
        Some(i) => {
            if let Some(h) = v.prev(i) {
                if h == k {
                    return a3_reverse(p, kb, &bl[i]);
                }
                return a4_forward(p, kb, &bl[h], &bl[i]);
            }
        }
        None => {}
    }
    // the 3-block leads the last chain, possibly after one 2-block
    if let Some(d) = v.prev(k) {
        return a3_forward(p, &bl[d], kb);
    }
    if kb.chain + 1 != tb.chain {
        let mut order: Vec<usize> = (0..last_chain).filter(|&c| c != kb.chain).collect();
        let at = order.iter().position(|&c| c == tb.chain).unwrap_or(order.len());
        order.insert(at, kb.chain);
        return reorder_chains(p, &order);
    }
    let s = v.ch.separators[kb.chain];
    let lead = v.prev(x).map(|i| bl[i].letters.clone());
    on_chains_from(p, kb.chain, |r| {
        let [b1, b2, b3, b4] = kb.ends4();
        let c = &tb.letters;
        let mut letters = vec![("b1", b1), ("b2", b2), ("b3", b3), ("b4", b4), ("s", s)];
        match &lead {
            None => {
                letters.extend([("c1", c[0]), ("c2", c[1]), ("c3", c[2])]);
                fwd(r, spec("move:43215876-21435876"), p, &letters)
            }
            Some(d) => {
                letters.extend([("c1", d[0]), ("c2", d[1]), ("d1", c[0]), ("d2", c[1]), ("d3", c[2])]);
                fwd(r, &BLOCK_OVER_TWO_THREE, p, &letters)
            }
        }
    })
}

/// A typed pair in the class of the input, with the switches and the full
/// Rauzy path that reach it.
#[derive(Clone, Debug)]
pub struct Normalized {
    pub pair: Pair,
    pub type_tag: TypeTag,
    /// Switches from the standard pair that starts the walk.
    pub switches: Vec<Switch>,
    /// Right moves to a standard pair, followed by the switch paths.
    pub path: Path,
}

/// Connects an irreducible pair to a PWOR pair of some Type.
pub fn normalize_type(p: &Pair) -> Result<Normalized> {
    if !p.is_irreducible() {
        return Err(Error::Reducible);
    }
    let walk = to_pwor(p)?;
    let mut r = Run::new(&walk.pair);
    if type_of(&r.pair)?.is_none() {
        let step = reduce_blocks(&r.pair)?;
        r.take(step);
    }
    let cap = 16 * p.n() + 32;
    for _ in 0..cap {
        if let Some(t) = type_of(&r.pair)? {
            let (_, tail) = apply_switches(&walk.pair, &r.seq)?;
            let mut path = walk.path.clone();
            path.extend(&tail);
            let mut switches = walk.switches;
            switches.extend(r.seq);
            return Ok(Normalized { pair: r.pair, type_tag: t, switches, path });
        }
        let step = type_step(&r.pair)?;
        r.take(step);
    }
    Err(internal("Type normalization did not finish", &r.pair))
}

/// The classifying data of a pair: Type, `P` (descending) and, for the
/// class scope, `M`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct Signature {
    pub scope: Scope,
    pub type_tag: TypeTag,
    pub p_list: Vec<usize>,
    pub m_value: Option<usize>,
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p: Vec<String> = self.p_list.iter().map(usize::to_string).collect();
        write!(f, "{} P={{{}}}", self.type_tag, p.join(","))?;
        if let Some(m) = self.m_value {
            write!(f, " M={m}")?;
        }
        Ok(())
    }
}

pub fn signature(p: &Pair, scope: Scope) -> Result<Signature> {
    let type_tag = normalize_type(p)?.type_tag;
    signature_with(p, scope, type_tag)
}

pub(crate) fn signature_with(p: &Pair, scope: Scope, type_tag: TypeTag) -> Result<Signature> {
    let m_value = match scope {
        Scope::Class => Some(m_value(p)?),
        Scope::Extended => None,
    };
    Ok(Signature { scope, type_tag, p_list: p_list(p)?, m_value })
}

/// Whether two irreducible pairs lie in the same non-labeled class (or
/// extended class).
pub fn same_class(p: &Pair, q: &Pair, scope: Scope) -> Result<bool> {
    if p.n() != q.n() {
        return Ok(false);
    }
    Ok(signature(p, scope)? == signature(q, scope)?)
}

/// The PWOR pair over the canonical alphabet with the given chain shape.
pub fn layout_pair(layout: &[Vec<usize>]) -> Pair {
    let n = 2 + layout.iter().map(|c| c.iter().sum::<usize>()).sum::<usize>() + layout.len() - 1;
    let top: Vec<usize> = (0..n).collect();
    let mut bottom = vec![n - 1];
    let mut next = 1;
    for (i, c) in layout.iter().enumerate() {
        for &len in c {
            bottom.extend((next..next + len).rev());
            next += len;
        }
        if i + 1 < layout.len() {
            bottom.push(next);
            next += 1;
        }
    }
    bottom.push(0);
    let tok = |r: &[usize]| r.iter().map(|&i| canonical_token(i)).collect::<Vec<_>>();
    Pair::from_tokens(&tok(&top), &tok(&bottom)).expect("layout rows are permutations")
}

fn no_such(t: TypeTag, p: &[usize], m: usize) -> Error {
    Error::OutOfRange(format!("no pair of Type {t} has P={p:?}, M={m}"))
}

fn twos(c: usize) -> Vec<usize> {
    vec![2; c]
}

/// Removes one occurrence of `x`.
fn take(list: &mut Vec<usize>, x: usize) -> bool {
    match list.iter().position(|&y| y == x) {
        Some(i) => {
            list.remove(i);
            true
        }
        None => false,
    }
}

/// Candidate chain shapes for a canonical pair, in order of preference.
fn canonical_layouts(t: TypeTag, plist: &[usize], m: usize) -> Result<Vec<Vec<Vec<usize>>>> {
    let err = || no_such(t, plist, m);
    let mut desc = plist.to_vec();
    desc.sort_unstable_by(|a, b| b.cmp(a));
    let odd: Vec<usize> = desc.iter().copied().filter(|v| v % 2 == 1).collect();
    let even: Vec<usize> = desc.iter().copied().filter(|v| v % 2 == 0).collect();
    let n = desc.iter().sum::<usize>() + 1;
    Ok(match t {
        TypeTag::T1 => {
            let rest: Vec<usize> = desc.iter().copied().filter(|&v| v > 1).collect();
            let k = match rest[..] {
                [] => 0,
                [v] => v - 1,
                [h, g] if h == g => 2 * h - 1,
                _ => return Err(err()),
            };
            if n < 2 + k {
                return Err(err());
            }
            let seps = n - 2 - k;
            let block = if k == 0 { vec![] } else { vec![k] };
            let mut last = vec![vec![]; seps];
            last.push(block.clone());
            let mut first = vec![block];
            first.extend(vec![vec![]; seps]);
            if m == 2 {
                vec![first, last]
            } else {
                vec![last, first]
            }
        }
        TypeTag::T2 | TypeTag::T4 => {
            if m < 2 || m % 2 == 1 || !even.is_empty() {
                return Err(err());
            }
            let mut units: Vec<usize> = odd.iter().map(|v| (v - 1) / 2).collect();
            let uk = (m - 2) / 2;
            if !take(&mut units, uk) {
                return Err(err());
            }
            let mut layout: Vec<Vec<usize>> = units.iter().map(|&u| twos(u)).collect();
            layout.push(twos(uk));
            if t == TypeTag::T4 {
                let c = if units.first().is_some_and(|&u| u >= 2) { 0 } else { layout.len() - 1 };
                if layout[c].len() < 2 {
                    return Err(err());
                }
                layout[c].splice(0..2, [4]);
            }
            vec![layout]
        }
        TypeTag::T3 => {
            let two_chains: Vec<Vec<usize>> = odd.iter().map(|v| twos((v - 1) / 2)).collect();
            let three = |l: usize, r: usize| [twos(l), vec![3], twos(r)].concat();
            let mut h: Vec<usize> = even.iter().map(|v| (v - 2) / 2).collect();
            if m.is_multiple_of(2) {
                let mut two_chains = two_chains;
                let last = (m.checked_sub(2).ok_or_else(err)?) / 2;
                let pos = two_chains.iter().position(|c| c.len() == last).ok_or_else(err)?;
                two_chains.remove(pos);
                if h.is_empty() || h.len() % 2 == 1 {
                    return Err(err());
                }
                let mut layout: Vec<Vec<usize>> = h.chunks(2).map(|c| three(c[0], c[1])).collect();
                layout.extend(two_chains);
                layout.push(twos(last));
                vec![layout]
            } else {
                let rk = (m.checked_sub(3).ok_or_else(err)?) / 2;
                if !take(&mut h, rk) || h.len().is_multiple_of(2) {
                    return Err(err());
                }
                let mut layout = two_chains;
                let (pairs, lone) = h.split_at(h.len() - 1);
                layout.extend(pairs.chunks(2).map(|c| three(c[0], c[1])));
                layout.push(three(lone[0], rk));
                vec![layout]
            }
        }
        TypeTag::T5 => {
            let threes = desc.iter().filter(|&&v| v == 3).count();
            let ones = desc.iter().filter(|&&v| v == 1).count();
            if threes < 2 || threes + ones != desc.len() {
                return Err(err());
            }
            let mut layout = vec![vec![5]];
            layout.extend(vec![vec![2]; threes - 2]);
            layout.extend(vec![vec![]; ones]);
            match m {
                2 => vec![layout],
                4 => {
                    layout.reverse();
                    vec![layout]
                }
                _ => return Err(err()),
            }
        }
    })
}

/// The canonical pair with Type `t`, `P = plist` and `M = m`.
pub fn canonical_pair(t: TypeTag, plist: &[usize], m: usize) -> Result<Pair> {
    let mut want = plist.to_vec();
    want.sort_unstable_by(|a, b| b.cmp(a));
    for layout in canonical_layouts(t, plist, m)? {
        if type_of_shape(&layout) != Some(t) {
            continue;
        }
        let q = layout_pair(&layout);
        if p_list(&q)? == want && m_value(&q)? == m {
            return Ok(q);
        }
    }
    Err(no_such(t, plist, m))
}

/// A representative of the non-labeled class of `p` that depends only on
/// its (Type, P, M).
pub fn canonical_form(p: &Pair) -> Result<Pair> {
    let t = normalize_type(p)?.type_tag;
    canonical_pair(t, &p_list(p)?, m_value(p)?)
}

/// A representative of the extended class of `p`: the canonical pair of the
/// class in it whose `M` is one more than the largest entry of `P`.
pub fn canonical_form_extended(p: &Pair) -> Result<Pair> {
    let t = normalize_type(p)?.type_tag;
    let pl = p_list(p)?;
    let m = pl.iter().max().copied().unwrap_or(0) + 1;
    canonical_pair(t, &pl, m)
}

/// Whether a standard pair has the shape
/// `(a w0 w1 … wd w_{d+1} z / z w0 wd … w1 w_{d+1} a)`: the middle words in
/// reverse order, each word kept as it is.
pub fn is_sigma(p: &Pair) -> Result<bool> {
    if !p.is_standard() {
        return Err(Error::NotStandard);
    }
    let n = p.n();
    let (mut top, mut bottom) = (&p.row(0)[1..n - 1], &p.row(1)[1..n - 1]);
    let common = top.iter().zip(bottom).take_while(|(x, y)| x == y).count();
    top = &top[common..];
    bottom = &bottom[common..];
    let common = top.iter().rev().zip(bottom.iter().rev()).take_while(|(x, y)| x == y).count();
    top = &top[..top.len() - common];
    bottom = &bottom[..bottom.len() - common];
    // peel w1 off the front of the top and the back of the bottom
    while !top.is_empty() {
        let Some(at) = bottom.iter().position(|&l| l == top[0]) else { return Ok(false) };
        let w = &bottom[at..];
        if !top.starts_with(w) {
            return Ok(false);
        }
        top = &top[w.len()..];
        bottom = &bottom[..at];
    }
    Ok(true)
}

/// Some letter sits at position `n − 1` (1-based) in both rows.
pub fn is_degenerate_star(p: &Pair) -> bool {
    let n = p.n();
    p.is_standard() && n >= 3 && p.at(0, n - 2) == p.at(1, n - 2)
}

/// The restriction to positions `2..n−1` (dropping `a` and `z`) is
/// irreducible and non-empty.
pub fn is_good(p: &Pair) -> bool {
    let n = p.n();
    if !p.is_standard() || n < 3 {
        return false;
    }
    let tok = |e: usize| p.row(e)[1..n - 1].iter().map(|&l| p.token(l)).collect::<Vec<_>>();
    Pair::from_tokens(&tok(0), &tok(1)).is_ok_and(|q| q.is_irreducible())
}

#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    Good,
    DegenerateStar,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Witness::Good => "good",
            Witness::DegenerateStar => "degenerate*",
        })
    }
}

/// A good or degenerate* pair in the class of `p`: a PWOR pair of the class
/// that is degenerate* or order reversing is returned as is; otherwise one
/// `{c,e}` switch, with `c` leading an earlier block and `e` leading the last
/// block, makes it good.
pub fn find_good_or_degenerate(p: &Pair) -> Result<(Pair, Witness)> {
    if p.n() < 4 {
        return Err(Error::OutOfRange(format!("need at least 4 letters, got {}", p.n())));
    }
    if !p.is_irreducible() {
        return Err(Error::Reducible);
    }
    let q = to_pwor(p)?.pair;
    if is_degenerate_star(&q) {
        return Ok((q, Witness::DegenerateStar));
    }
    if q.is_order_reversing() {
        return Ok((q, Witness::Good));
    }
    let d = is_pwor(&q).ok_or(Error::NotPwor)?;
    let e = d.blocks.last().unwrap()[0];
    // prefer blocks of size ≥ 2 for c, as in the generic shape
    let mut cands: Vec<&Vec<Letter>> = d.blocks[..d.blocks.len() - 1].iter().collect();
    cands.sort_by_key(|b| b.len() < 2);
    for b in cands {
        let s = Switch::inner(q.token(b[0]), q.token(e));
        if let Ok((r, _)) = apply_switches(&q, &[s]) {
            if is_good(&r) {
                return Ok((r, Witness::Good));
            }
        }
    }
    Err(internal("no {c,e} switch gives a good pair", &q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pair::{all_irreducible, pair};

    /// All chain shapes with `n` letters whose blocks have sizes in `sizes`.
    fn layouts(n: usize, sizes: &[usize]) -> Vec<Vec<Vec<usize>>> {
        fn go(left: usize, sizes: &[usize], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if left == 0 {
                out.push(cur.clone());
                return;
            }
            for &s in sizes.iter().chain(&[1]) {
                if s <= left {
                    cur.push(s);
                    go(left - s, sizes, cur, out);
                    cur.pop();
                }
            }
        }
        let mut flat = Vec::new();
        go(n - 2, sizes, &mut Vec::new(), &mut flat);
        flat.into_iter()
            .map(|bs| {
                let mut ch = vec![vec![]];
                for b in bs {
                    if b == 1 {
                        ch.push(vec![]);
                    } else {
                        ch.last_mut().unwrap().push(b);
                    }
                }
                ch
            })
            .collect()
    }

    fn same_invariants(p: &Pair, q: &Pair) {
        assert_eq!(p_list(p).unwrap(), p_list(q).unwrap(), "{p} vs {q}");
        assert_eq!(m_value(p).unwrap(), m_value(q).unwrap(), "{p} vs {q}");
    }

    #[test]
    fn type_examples() {
        assert_eq!(type_of(&pair("a b c z / z c b a")).unwrap(), Some(TypeTag::T1));
        assert_eq!(type_of(&layout_pair(&[vec![2], vec![2]])).unwrap(), Some(TypeTag::T2));
        assert_eq!(type_of(&layout_pair(&[vec![2]])).unwrap(), Some(TypeTag::T1));
        assert_eq!(type_of(&layout_pair(&[vec![2, 3, 2], vec![2]])).unwrap(), Some(TypeTag::T3));
        assert_eq!(type_of(&layout_pair(&[vec![4, 2], vec![2]])).unwrap(), Some(TypeTag::T4));
        assert_eq!(type_of(&layout_pair(&[vec![2, 4]])).unwrap(), None);
        assert_eq!(type_of(&layout_pair(&[vec![5], vec![2], vec![]])).unwrap(), Some(TypeTag::T5));
        assert_eq!(type_of(&layout_pair(&[vec![5], vec![2, 2]])).unwrap(), None);
        assert_eq!(type_of(&layout_pair(&[vec![3, 3]])).unwrap(), None);
        assert_eq!(type_of(&pair("a b c d z / z c d b a")), Err(Error::NotPwor));
    }

    #[test]
    fn eight_block_beside_a_two_block() {
        let p = layout_pair(&[vec![8, 2]]);
        let (q, seq) = reduce_blocks(&p).unwrap();
        assert_eq!(seq.len(), 9);
        assert_eq!(chains(&q).unwrap().shape(), vec![vec![2, 2, 2, 2, 2]]);
        same_invariants(&p, &q);
    }

    #[test]
    fn small_blocks_are_left_alone() {
        let p = layout_pair(&[vec![2, 3], vec![4]]);
        let (q, seq) = reduce_blocks(&p).unwrap();
        assert!(seq.is_empty());
        assert_eq!(p, q);
    }

    #[test]
    fn every_pwor_shape_reduces_and_normalizes() {
        for n in 2..=13 {
            for layout in layouts(n, &[2, 3, 4, 5, 6, 7, 8, 9, 10, 11]) {
                let p = layout_pair(&layout);
                let (q, _) = reduce_blocks(&p).unwrap_or_else(|e| panic!("{p}: {e}"));
                let shape = chains(&q).unwrap().shape();
                let flat: Vec<usize> = shape.concat();
                assert!(
                    type_of_shape(&shape) == Some(TypeTag::T1)
                        || (flat.iter().all(|&s| s <= 5) && flat.iter().filter(|&&s| s >= 4).count() <= 1),
                    "{p} reduced to {q}"
                );
                same_invariants(&p, &q);
                let norm = normalize_type(&p).unwrap_or_else(|e| panic!("{p}: {e}"));
                assert_eq!(type_of(&norm.pair).unwrap(), Some(norm.type_tag));
                let (r, _) = apply_switches(&p, &norm.switches).unwrap();
                assert_eq!(r, norm.pair);
                same_invariants(&p, &norm.pair);
            }
        }
    }

    #[test]
    fn every_small_pair_normalizes() {
        for n in 2..=7 {
            for p in all_irreducible(n) {
                let norm = normalize_type(&p).unwrap_or_else(|e| panic!("{p}: {e}"));
                assert_eq!(crate::moves::apply_path(&p, &norm.path).unwrap(), norm.pair);
                same_invariants(&p, &norm.pair);
            }
        }
    }

    #[test]
    fn two_threes_in_a_chain() {
        let p = layout_pair(&[vec![2, 3, 2, 3, 2]]);
        let norm = normalize_type(&p).unwrap();
        assert_eq!(norm.type_tag, TypeTag::T3);
        same_invariants(&p, &norm.pair);
    }

    #[test]
    fn canonical_t2_ignores_chain_order() {
        let p = layout_pair(&[vec![2], vec![2, 2], vec![], vec![2]]);
        let q = layout_pair(&[vec![], vec![2, 2], vec![2], vec![2]]);
        assert_eq!(m_value(&p).unwrap(), m_value(&q).unwrap());
        assert_eq!(canonical_form(&p).unwrap(), canonical_form(&q).unwrap());
    }

    #[test]
    fn canonical_form_is_idempotent_and_keeps_the_signature() {
        for n in 2..=7 {
            for p in all_irreducible(n) {
                let c = canonical_form(&p).unwrap_or_else(|e| panic!("{p}: {e}"));
                assert_eq!(canonical_form(&c).unwrap(), c);
                assert_eq!(signature(&c, Scope::Class).unwrap(), signature(&p, Scope::Class).unwrap());
                let x = canonical_form_extended(&p).unwrap_or_else(|e| panic!("{p}: {e}"));
                assert_eq!(signature(&x, Scope::Extended).unwrap(), signature(&p, Scope::Extended).unwrap());
                let m = p_list(&p).unwrap()[0] + 1;
                if m_value(&p).unwrap() == m {
                    assert_eq!(x, canonical_form(&p).unwrap());
                }
            }
        }
    }

    #[test]
    fn signature_examples() {
        let s = signature(&pair("a b c z / z c b a"), Scope::Class).unwrap();
        assert_eq!((s.type_tag, s.p_list, s.m_value), (TypeTag::T1, vec![3], Some(4)));
        let s = signature(&pair("a b c z / z b c a"), Scope::Class).unwrap();
        assert_eq!((s.type_tag, s.p_list, s.m_value), (TypeTag::T1, vec![1, 1, 1], Some(2)));
        let s = signature(&pair("a b c z / z b c a"), Scope::Extended).unwrap();
        assert_eq!(s.m_value, None);
        assert!(!same_class(&pair("a b c z / z c b a"), &pair("a b c z / z b c a"), Scope::Class).unwrap());
        assert!(same_class(&pair("a b c / c b a"), &pair("x y w / w y x"), Scope::Class).unwrap());
    }

    #[test]
    fn sigma_examples() {
        assert!(is_sigma(&pair("a b c d z / z d c b a")).unwrap());
        assert!(is_sigma(&pair("a b c z / z b c a")).unwrap());
        assert!(is_sigma(&pair("a b c d e z / z c d b e a")).unwrap());
        assert!(!is_sigma(&layout_pair(&[vec![2], vec![2]])).unwrap());
        assert_eq!(is_sigma(&pair("a b / a b")), Err(Error::NotStandard));
    }

    #[test]
    fn good_and_degenerate_examples() {
        let p = pair("a b c z / z c b a");
        assert!(p.is_order_reversing() && is_good(&p) && !is_degenerate_star(&p));
        assert!(is_degenerate_star(&pair("a c z / z c a")));
        assert_eq!(find_good_or_degenerate(&p).unwrap(), (p.clone(), Witness::Good));
        assert!(find_good_or_degenerate(&pair("a c z / z c a")).is_err());
    }

    #[test]
    fn every_small_pair_has_a_witness() {
        for n in 4..=7 {
            for p in all_irreducible(n) {
                let (q, w) = find_good_or_degenerate(&p).unwrap_or_else(|e| panic!("{p}: {e}"));
                match w {
                    Witness::Good => assert!(is_good(&q), "{q}"),
                    Witness::DegenerateStar => assert!(is_degenerate_star(&q), "{q}"),
                }
                same_invariants(&p, &q);
            }
        }
    }
}
