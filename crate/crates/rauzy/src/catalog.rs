//! The named switch-move catalog and the corollary procedures built on it.
//!
//! A named move is a pair of patterns over a small alphabet together with a
//! switch list connecting them. On a concrete pair it acts through a binding
//! of pattern letters to letters of the pair: every other letter is filler,
//! glued to the next pattern letter of its row, and rides along unchanged.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::pair::{Letter, Pair};
use crate::surgery::{extend, restrict, ExtensionSpec};
use crate::switches::{apply_switches, inner_switch, region_blocks, Switch};

/// One catalog entry: source and target pattern (with `a` first on top and
/// `z` first on the bottom) and the switches leading from one to the other.
#[derive(Debug)]
pub struct MoveSpec {
    /// Identifier such as `move:2431-2143`: the interior of each bottom row,
    /// written with the indices of the top row.
    pub id: &'static str,
    pub source: &'static str,
    pub target: &'static str,
    pub switches: &'static str,
}

pub static MOVES: &[MoveSpec] = &[
    MoveSpec {
        id: "move:2431-2143",
        source: "a b1 b2 c1 c2 z / z b2 c2 c1 b1 a",
        target: "a c2 b1 c1 b2 z / z b1 c2 b2 c1 a",
        switches: "{b2,c2} {b1,c1}",
    },
    MoveSpec {
        id: "move:436521-214365",
        source: "a b1 b2 b3 b4 b5 b6 z / z b4 b3 b6 b5 b2 b1 a",
        target: "a b1 b4 b3 b6 b5 b2 z / z b4 b1 b6 b3 b2 b5 a",
        switches: "{b3,b6} {b1,b5} {b2,b3} {b4,b6}",
    },
    MoveSpec {
        id: "move:216543-432165",
        source: "a b1 b2 c1 c2 c3 c4 z / z b2 b1 c4 c3 c2 c1 a",
        target: "a b1 c4 c1 b2 c3 c2 z / z b2 c1 c4 b1 c2 c3 a",
        switches: "{b1,c3} {b2,c1} {c2,c4} {b2,c3}",
    },
    MoveSpec {
        id: "move:43216587-21438765",
        source: "a b1 b2 b3 b4 c1 c2 c3 c4 z / z b4 b3 b2 b1 c2 c1 c4 c3 a",
        target: "a b1 b4 b3 b2 c1 c4 c3 c2 z / z b4 b1 b2 b3 c2 c3 c4 c1 a",
        switches: "{b2,c1} {b3,c4} {b1,c3} {b3,c2} {b4,c4} {b2,c3} {b1,c1}",
    },
    MoveSpec {
        id: "move:43218765-21436587",
        source: "a b1 b2 b3 b4 c1 c2 c3 c4 z / z b4 b3 b2 b1 c4 c3 c2 c1 a",
        target: "a b1 b4 b3 b2 c1 c4 c3 c2 z / z b4 b1 b2 b3 c4 c1 c2 c3 a",
        switches: "{b3,c3} {b4,c1} {b2,c2} {b1,c4} {b3,c1} {b1,c2} {b4,c3}",
    },
    MoveSpec {
        id: "move:3241-2143",
        source: "a b1 c1 c2 b2 z / z c2 c1 b2 b1 a",
        target: "a c2 b2 b1 c1 z / z b2 c2 c1 b1 a",
        switches: "{b2,c1}",
    },
    MoveSpec {
        id: "move:52431-21543",
        source: "a b1 b2 c1 c2 b3 z / z b3 b2 c2 c1 b1 a",
        target: "a c2 b1 c1 b2 b3 z / z b1 c2 b3 b2 c1 a",
        switches: "{b2,c2} {b1,c1}",
    },
    MoveSpec {
        id: "move:43215876-21435876",
        source: "a b1 b2 b3 b4 s c1 c2 c3 z / z b4 b3 b2 b1 s c3 c2 c1 a",
        target: "a b1 b4 b3 b2 s c3 c2 c1 z / z b4 b1 b2 b3 s c1 c2 c3 a",
        switches: "{b3,c3} {c2,s} {b2,b4} {c1,c3} {b1,c2} {b3,c1} {b2,c2}",
    },
    MoveSpec {
        id: "move:3217654-3215476",
        source: "a b1 b2 b3 c1 c2 c3 c4 z / z b3 b2 b1 c4 c3 c2 c1 a",
        target: "a b3 b2 b1 c1 c4 c3 c2 z / z b1 b2 b3 c4 c1 c2 c3 a",
        switches: "{b1,c2} {b2,c1} {c1,c3} {b1,b3} {c2,c4} {b2,c3}",
    },
    MoveSpec {
        id: "move:4321765-2143765",
        source: "a b1 b2 b3 b4 c1 c2 c3 z / z b4 b3 b2 b1 c3 c2 c1 a",
        target: "a b3 b1 c1 b4 c3 c2 b2 z / z b1 b3 b4 c1 b2 c2 c3 a",
        switches: "{b1,c3} {b4,c2} {b1,b2} {c1,c3} {b3,c1}",
    },
    MoveSpec {
        id: "move:321654-213654",
        source: "a b1 b2 b3 c1 c2 c3 z / z b3 b2 b1 c3 c2 c1 a",
        target: "a b2 c3 c1 b3 c2 b1 z / z c3 b2 c1 b1 c2 b3 a",
        switches: "{b2,c2} {b3,c1} {b1,c3}",
    },
    MoveSpec {
        id: "move:3214765",
        source: "a b1 b2 b3 s c1 c2 c3 z / z b3 b2 b1 s c3 c2 c1 a",
        target: "a c3 b2 c1 s b1 c2 b3 z / z c1 b2 c3 s b3 c2 b1 a",
        switches: "{b2,s} {b1,c2} {b3,c3} {b1,c1}",
    },
    MoveSpec {
        id: "move:35421-32154",
        source: "a b1 b2 b3 c1 c2 z / z b3 c2 c1 b2 b1 a",
        target: "a b3 c2 b1 c1 b2 z / z b1 c2 b3 b2 c1 a",
        switches: "{b3,c2} {b1,c1} {b2,b3}",
    },
];

/// Looks a move up by id (`move:2431-2143`).
pub fn move_spec(key: &str) -> Result<&'static MoveSpec> {
    MOVES
        .iter()
        .find(|m| m.id == key)
        .ok_or_else(|| Error::Parse(format!("unknown move {key:?}")))
}

impl MoveSpec {
    pub fn source_pair(&self) -> Pair {
        Pair::parse(self.source).expect("catalog source parses")
    }

    pub fn target_pair(&self) -> Pair {
        Pair::parse(self.target).expect("catalog target parses")
    }

    pub fn switch_list(&self) -> Vec<Switch> {
        crate::switches::parse_switches(self.switches).expect("catalog switches parse")
    }

    /// Pattern letters other than `a` and `z`, in source top order.
    pub fn pattern_letters(&self) -> Vec<String> {
        let p = self.source_pair();
        p.top_tokens()[1..p.n() - 1].iter().map(|t| t.to_string()).collect()
    }

    /// Pattern the move starts from, and the one it ends at.
    fn ends(&self, d: Direction) -> (Pair, Pair) {
        match d {
            Direction::Forward => (self.source_pair(), self.target_pair()),
            Direction::Reverse => (self.target_pair(), self.source_pair()),
        }
    }

    fn directed_switches(&self, d: Direction) -> Vec<Switch> {
        let mut seq = self.switch_list();
        if d == Direction::Reverse {
            // each inner switch undoes itself
            seq.reverse();
        }
        seq
    }
}

#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub enum Direction {
    Forward,
    Reverse,
}

/// A catalog move with a binding of its pattern letters to concrete tokens.
/// `a` and `z` are always the first top and first bottom letter of the pair.
#[derive(Clone, Debug)]
pub struct NamedMove {
    pub spec: &'static MoveSpec,
    pub direction: Direction,
    pub binding: BTreeMap<String, String>,
}

impl NamedMove {
    pub fn new(key: &str, direction: Direction, binding: &[(&str, &str)]) -> Result<NamedMove> {
        NamedMove::with_spec(move_spec(key)?, direction, binding)
    }

    /// Same as [`NamedMove::new`] for a spec outside the catalog table.
    pub fn with_spec(spec: &'static MoveSpec, direction: Direction, binding: &[(&str, &str)]) -> Result<NamedMove> {
        let binding: BTreeMap<String, String> =
            binding.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
        let mut want = spec.pattern_letters();
        want.sort();
        if binding.keys().cloned().collect::<Vec<_>>() != want {
            return Err(Error::Pattern(format!("{}: binding must cover exactly {want:?}", spec.id)));
        }
        Ok(NamedMove { spec, direction, binding })
    }

    /// Binding given by letters of `p`.
    pub fn bind(p: &Pair, key: &str, direction: Direction, letters: &[(&str, Letter)]) -> Result<NamedMove> {
        let b: Vec<(&str, &str)> = letters.iter().map(|&(k, l)| (k, p.token(l))).collect();
        NamedMove::new(key, direction, &b)
    }

    /// The switch list in concrete tokens, in the order it is executed.
    pub fn switches(&self) -> Vec<Switch> {
        let tr = |t: &String| self.binding.get(t).cloned().unwrap_or_else(|| t.clone());
        self.spec
            .directed_switches(self.direction)
            .iter()
            .map(|s| match s {
                Switch::Inner(b, c) => Switch::Inner(tr(b), tr(c)),
                Switch::Outer(x, y) => Switch::Outer(tr(x), tr(y)),
            })
            .collect()
    }
}

impl fmt::Display for NamedMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dir = if self.direction == Direction::Reverse { " reversed" } else { "" };
        let b: Vec<String> = self.binding.iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(f, "{}{dir} [{}]", self.spec.id, b.join(" "))
    }
}

/// Runs the move's switch list on `p` and checks that the result is the
/// move's end pattern carrying the same filler.
pub fn apply_named_move(p: &Pair, m: &NamedMove) -> Result<(Pair, Vec<Switch>)> {
    if !p.is_standard() {
        return Err(Error::NotStandard);
    }
    let (from, to) = m.spec.ends(m.direction);
    let mut keep = vec![p.first(0), p.first(1)];
    let mut to_pattern: HashMap<String, String> = HashMap::new();
    to_pattern.insert(p.token(p.first(0)).to_string(), "a".into());
    to_pattern.insert(p.token(p.first(1)).to_string(), "z".into());
    for (pt, tok) in &m.binding {
        let l = p.expect_letter(tok)?;
        if to_pattern.insert(tok.clone(), pt.clone()).is_some() {
            return Err(Error::Pattern(format!("{}: letter {tok} bound twice", m.spec.id)));
        }
        keep.push(l);
    }
    let seen = restrict(p, &keep)?.rename(&to_pattern)?;
    if seen != from {
        return Err(Error::Pattern(format!("{m}: {p} restricts to {seen}, expected {from}")));
    }
    let seq = m.switches();
    let (q, _) = apply_switches(p, &seq)?;
    let to_actual: HashMap<String, String> = to_pattern.into_iter().map(|(k, v)| (v, k)).collect();
    let omega = ExtensionSpec::from_restriction(p, &keep)?;
    let expected = extend(&to.rename(&to_actual)?, &omega)?;
    if q != expected {
        return Err(Error::Internal(format!("{m}: reached {q}, expected {expected}")));
    }
    Ok((q, seq))
}

/// Convenience: bind by letters of `p` and apply.
pub fn run_move(p: &Pair, key: &str, d: Direction, letters: &[(&str, Letter)]) -> Result<(Pair, Vec<Switch>)> {
    apply_named_move(p, &NamedMove::bind(p, key, d, letters)?)
}

/// Binds an arbitrary spec by tokens of `p` and applies it.
pub fn run_spec(p: &Pair, spec: &'static MoveSpec, d: Direction, binding: &[(&str, &str)]) -> Result<(Pair, Vec<Switch>)> {
    apply_named_move(p, &NamedMove::with_spec(spec, d, binding)?)
}

/// A random instance of a move: its start pattern with filler letters
/// `x1, x2, ...` scattered through both rows (never in front of `a` on top
/// or `z` on the bottom), `n` at most `max_n`.
pub fn random_instance<R: Rng>(spec: &'static MoveSpec, d: Direction, rng: &mut R, max_n: usize) -> Result<(Pair, NamedMove)> {
    let (from, _) = spec.ends(d);
    let room = max_n.saturating_sub(from.n());
    let f = if room == 0 { 0 } else { rng.gen_range(0..=room) };
    let fillers: Vec<String> = (1..=f).map(|i| format!("x{i}")).collect();
    let mut words: [BTreeMap<String, Vec<String>>; 2] = Default::default();
    for (e, w) in words.iter_mut().enumerate() {
        let toks: Vec<String> = from.row(e).iter().map(|&l| from.token(l).to_string()).collect();
        let mut slots: Vec<Vec<String>> = vec![Vec::new(); toks.len()];
        let mut order = fillers.clone();
        order.shuffle(rng);
        for x in order {
            slots[rng.gen_range(1..toks.len())].push(x);
        }
        for (t, mut glued) in toks.into_iter().zip(slots) {
            glued.push(t.clone());
            w.insert(t, glued);
        }
    }
    let p = extend(&from, &ExtensionSpec::new(words)?)?;
    let binding: Vec<(String, String)> = spec.pattern_letters().into_iter().map(|t| (t.clone(), t)).collect();
    let b: Vec<(&str, &str)> = binding.iter().map(|(k, v)| (k.as_str(), v.as_str())).collect();
    Ok((p, NamedMove::new(spec.id, d, &b)?))
}

/// The corollary procedures: recursive applications of catalog moves that
/// straighten one chain-shaped segment at the front of a pair.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub enum Corollary {
    /// `(b1 b2 U / b2 U b1)` → `m+1` 2-blocks.
    AbUBUa,
    /// `(b1 b2 U / U b2 b1)` → `m+1` 2-blocks (m even) or a 4-block and `m−1` 2-blocks.
    AbUUba,
    /// One 4-block among 2-blocks → the 4-block first.
    FourBlocksLeft,
    /// `(b1 U b2 / U b2 b1)` → `m+1` 2-blocks.
    AUbUba,
    /// `(b1 b2 U b3 / b3 b2 U b1)` → `m` 2-blocks, then a 3-block.
    AbUcCbUa,
    /// `(b1 b2 b3 U / b3 U b2 b1)` → a 3-block, then `m` 2-blocks.
    AbcUCUba,
    /// `(b1 b2 U b3 V / U b3 V b2 b1)` → `m` 2-blocks, a 3-block, `k` 2-blocks.
    AbUcVUcVba,
}

impl Corollary {
    pub const ALL: [Corollary; 7] = [
        Corollary::AbUBUa,
        Corollary::AbUUba,
        Corollary::FourBlocksLeft,
        Corollary::AUbUba,
        Corollary::AbUcCbUa,
        Corollary::AbcUCUba,
        Corollary::AbUcVUcVba,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Corollary::AbUBUa => "abU-bUa",
            Corollary::AbUUba => "abU-Uba",
            Corollary::FourBlocksLeft => "4blocks-to-the-left",
            Corollary::AUbUba => "aUb-Uba",
            Corollary::AbUcCbUa => "abUc-cbUa",
            Corollary::AbcUCUba => "abcU-cUba",
            Corollary::AbUcVUcVba => "abUcV-UcVba",
        }
    }

    /// Block sizes of the straightened segment.
    pub fn target_shape(self, m: usize, k: usize) -> Vec<usize> {
        let twos = |c: usize| vec![2; c];
        match self {
            Corollary::AbUBUa | Corollary::AUbUba => twos(m + 1),
            Corollary::AbUUba if m.is_multiple_of(2) => twos(m + 1),
            Corollary::AbUUba => [vec![4], twos(m - 1)].concat(),
            Corollary::FourBlocksLeft => [vec![4], twos(m)].concat(),
            Corollary::AbUcCbUa => [twos(m), vec![3]].concat(),
            Corollary::AbcUCUba => [vec![3], twos(m)].concat(),
            Corollary::AbUcVUcVba => [twos(m), vec![3], twos(k)].concat(),
        }
    }

    /// The segment as (top, bottom) token words over `b1 b2 b3 u1.. v1..`;
    /// for `FourBlocksLeft`, `k` of the `m` 2-blocks come before the 4-block.
    pub fn segment(self, m: usize, k: usize) -> (Vec<String>, Vec<String>) {
        let chain = |name: &str, c: usize| -> (Vec<String>, Vec<String>) {
            let mut t = Vec::new();
            let mut b = Vec::new();
            for i in 0..c {
                let (x, y) = (format!("{name}{}", 2 * i + 1), format!("{name}{}", 2 * i + 2));
                t.extend([x.clone(), y.clone()]);
                b.extend([y, x]);
            }
            (t, b)
        };
        let s = |x: &str| vec![x.to_string()];
        let (ut, ub) = chain("u", m);
        let (vt, vb) = chain("v", k);
        let cat = |parts: Vec<Vec<String>>| parts.concat();
        match self {
            Corollary::AbUBUa => (cat(vec![s("b1"), s("b2"), ut]), cat(vec![s("b2"), ub, s("b1")])),
            Corollary::AbUUba => (cat(vec![s("b1"), s("b2"), ut]), cat(vec![ub, s("b2"), s("b1")])),
            Corollary::AUbUba => (cat(vec![s("b1"), ut, s("b2")]), cat(vec![ub, s("b2"), s("b1")])),
            Corollary::AbUcCbUa => (cat(vec![s("b1"), s("b2"), ut, s("b3")]), cat(vec![s("b3"), s("b2"), ub, s("b1")])),
            Corollary::AbcUCUba => (cat(vec![s("b1"), s("b2"), s("b3"), ut]), cat(vec![s("b3"), ub, s("b2"), s("b1")])),
            Corollary::AbUcVUcVba => {
                (cat(vec![s("b1"), s("b2"), ut, s("b3"), vt]), cat(vec![ub, s("b3"), vb, s("b2"), s("b1")]))
            }
            Corollary::FourBlocksLeft => {
                let (at, ab) = chain("u", m.saturating_sub(k));
                let four_t = ["b1", "b2", "b3", "b4"].map(String::from).to_vec();
                let four_b = ["b4", "b3", "b2", "b1"].map(String::from).to_vec();
                (cat(vec![vt, four_t, at]), cat(vec![vb, four_b, ab]))
            }
        }
    }
}

impl fmt::Display for Corollary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Corollary {
    type Err = Error;
    fn from_str(s: &str) -> Result<Corollary> {
        Corollary::ALL
            .into_iter()
            .find(|c| c.id() == s)
            .ok_or_else(|| Error::Parse(format!("unknown corollary {s:?}")))
    }
}

/// Whether `top`/`bottom` spell a chain of 2-blocks (`x y / y x ...`).
fn is_two_chain(top: &[Letter], bottom: &[Letter]) -> bool {
    top.len() == bottom.len()
        && top.len().is_multiple_of(2)
        && top.chunks(2).zip(bottom.chunks(2)).all(|(t, b)| t[0] == b[1] && t[1] == b[0])
}

fn mismatch(c: Corollary, p: &Pair) -> Error {
    Error::Pattern(format!("{c}: {p} does not start with the expected segment"))
}

/// Runs a corollary on the segment starting right after `a`/`z`. `m` counts
/// the 2-blocks of `U` (for `FourBlocksLeft`: all 2-blocks of the segment),
/// `k` those of `V`. Letters after the segment are left in place.
pub fn apply_corollary(p: &Pair, c: Corollary, m: usize, k: usize) -> Result<(Pair, Vec<Switch>)> {
    let mut seq = Vec::new();
    let q = match c {
        Corollary::AbUBUa => abu_bua(p, m, &mut seq)?,
        Corollary::AbUUba => abu_uba(p, m, &mut seq)?,
        Corollary::FourBlocksLeft => four_blocks_left(p, 1, 4 + 2 * m, &mut seq)?,
        Corollary::AUbUba => aub_uba(p, m, &mut seq)?,
        Corollary::AbUcCbUa => abuc_cbua(p, m, &mut seq)?,
        Corollary::AbcUCUba => abcu_cuba(p, m, &mut seq)?,
        Corollary::AbUcVUcVba => abucv_ucvba(p, m, k, &mut seq)?,
    };
    let shape = c.target_shape(m, k);
    let len: usize = shape.iter().sum();
    if region_blocks(&q, 1, 1 + len).as_deref() != Some(&shape[..]) {
        return Err(Error::Internal(format!("{c}: ended at {q}, expected blocks {shape:?}")));
    }
    Ok((q, seq))
}

fn step(p: &Pair, key: &str, letters: &[(&str, Letter)], seq: &mut Vec<Switch>) -> Result<Pair> {
    let (q, s) = run_move(p, key, Direction::Forward, letters)?;
    seq.extend(s);
    Ok(q)
}

fn abu_bua(p: &Pair, m: usize, seq: &mut Vec<Switch>) -> Result<Pair> {
    let (t, b) = (p.row(0), p.row(1));
    let ok = p.n() >= 4 + 2 * m
        && b[1] == t[2]
        && b[2 + 2 * m] == t[1]
        && is_two_chain(&t[3..3 + 2 * m], &b[2..2 + 2 * m]);
    if !ok {
        return Err(mismatch(Corollary::AbUBUa, p));
    }
    if m == 0 {
        return Ok(p.clone());
    }
    let (b1, b2, c1, c2) = (t[1], t[2], t[1 + 2 * m], t[2 + 2 * m]);
    let q = step(p, "move:2431-2143", &[("b1", b1), ("b2", b2), ("c1", c1), ("c2", c2)], seq)?;
    abu_bua(&q, m - 1, seq)
}

fn abu_uba(p: &Pair, m: usize, seq: &mut Vec<Switch>) -> Result<Pair> {
    let (t, b) = (p.row(0), p.row(1));
    let ok = p.n() >= 4 + 2 * m
        && b[1 + 2 * m] == t[2]
        && b[2 + 2 * m] == t[1]
        && is_two_chain(&t[3..3 + 2 * m], &b[1..1 + 2 * m]);
    if !ok {
        return Err(mismatch(Corollary::AbUUba, p));
    }
    if m < 2 {
        return Ok(p.clone());
    }
    let e = 3 + 2 * m;
    let letters = [("b1", t[1]), ("b2", t[2]), ("b3", t[e - 4]), ("b4", t[e - 3]), ("b5", t[e - 2]), ("b6", t[e - 1])];
    let q = step(p, "move:436521-214365", &letters, seq)?;
    abu_uba(&q, m - 2, seq)
}

/// Moves the only 4-block of the segment `start..start+len` to its front,
/// one 2-block at a time.
pub(crate) fn four_blocks_left(p: &Pair, start: usize, len: usize, seq: &mut Vec<Switch>) -> Result<Pair> {
    let mut q = p.clone();
    loop {
        let sizes = region_blocks(&q, start, start + len)
            .filter(|s| s.iter().filter(|&&x| x == 4).count() == 1 && s.iter().all(|&x| x == 2 || x == 4))
            .ok_or_else(|| mismatch(Corollary::FourBlocksLeft, &q))?;
        let i = sizes.iter().position(|&x| x == 4).unwrap();
        if i == 0 {
            return Ok(q);
        }
        let s = start + 2 * (i - 1);
        let t = q.row(0).to_vec();
        let letters =
            [("b1", t[s]), ("b2", t[s + 1]), ("c1", t[s + 2]), ("c2", t[s + 3]), ("c3", t[s + 4]), ("c4", t[s + 5])];
        q = step(&q, "move:216543-432165", &letters, seq)?;
    }
}

fn aub_uba(p: &Pair, k: usize, seq: &mut Vec<Switch>) -> Result<Pair> {
    let (t, b) = (p.row(0), p.row(1));
    let ok = p.n() >= 4 + 2 * k
        && b[1 + 2 * k] == t[2 + 2 * k]
        && b[2 + 2 * k] == t[1]
        && is_two_chain(&t[2..2 + 2 * k], &b[1..1 + 2 * k]);
    if !ok {
        return Err(mismatch(Corollary::AUbUba, p));
    }
    if k == 0 {
        return Ok(p.clone());
    }
    let letters = [("b1", t[1]), ("c1", t[2]), ("c2", t[3]), ("b2", t[2 + 2 * k])];
    let q = step(p, "move:3241-2143", &letters, seq)?;
    aub_uba(&q, k - 1, seq)
}

fn abuc_cbua(p: &Pair, m: usize, seq: &mut Vec<Switch>) -> Result<Pair> {
    let (t, b) = (p.row(0), p.row(1));
    let ok = p.n() >= 5 + 2 * m
        && b[1] == t[3 + 2 * m]
        && b[2] == t[2]
        && b[3 + 2 * m] == t[1]
        && is_two_chain(&t[3..3 + 2 * m], &b[3..3 + 2 * m]);
    if !ok {
        return Err(mismatch(Corollary::AbUcCbUa, p));
    }
    if m == 0 {
        return Ok(p.clone());
    }
    let letters = [("b1", t[1]), ("b2", t[2]), ("c1", t[1 + 2 * m]), ("c2", t[2 + 2 * m]), ("b3", t[3 + 2 * m])];
    let q = step(p, "move:52431-21543", &letters, seq)?;
    abu_bua(&q, m - 1, seq)
}

fn abcu_cuba(p: &Pair, m: usize, seq: &mut Vec<Switch>) -> Result<Pair> {
    let (t, b) = (p.row(0), p.row(1));
    let ok = p.n() >= 5 + 2 * m
        && b[1] == t[3]
        && b[2 + 2 * m] == t[2]
        && b[3 + 2 * m] == t[1]
        && is_two_chain(&t[4..4 + 2 * m], &b[2..2 + 2 * m]);
    if !ok {
        return Err(mismatch(Corollary::AbcUCUba, p));
    }
    if m == 0 {
        return Ok(p.clone());
    }
    let letters = [("b1", t[1]), ("b2", t[2]), ("b3", t[3]), ("c1", t[2 + 2 * m]), ("c2", t[3 + 2 * m])];
    let q = step(p, "move:35421-32154", &letters, seq)?;
    abcu_cuba(&q, m - 1, seq)
}

/// `(b1 b2 U b3 V / U b3 V b2 b1)` with `|U| = 2m`, `|V| = 2k`.
fn abucv_form(p: &Pair, m: usize, k: usize) -> bool {
    let (t, b) = (p.row(0), p.row(1));
    let (u, v) = (2 * m, 2 * k);
    p.n() >= 5 + u + v
        && b[1 + u] == t[3 + u]
        && b[2 + u + v] == t[2]
        && b[3 + u + v] == t[1]
        && is_two_chain(&t[3..3 + u], &b[1..1 + u])
        && is_two_chain(&t[4 + u..4 + u + v], &b[2 + u..2 + u + v])
}

fn abucv_ucvba(p: &Pair, m: usize, k: usize, seq: &mut Vec<Switch>) -> Result<Pair> {
    if !abucv_form(p, m, k) {
        return Err(mismatch(Corollary::AbUcVUcVba, p));
    }
    // straighten b1 b2 b3 V while U rides along as filler
    let u: Vec<Letter> = p.row(0)[3..3 + 2 * m].to_vec();
    let keep: Vec<Letter> = p.letters().filter(|l| !u.contains(l)).collect();
    let r = restrict(p, &keep)?;
    let (r2, s1) = apply_corollary(&r, Corollary::AbcUCUba, k, 0)?;
    let (p1, _) = apply_switches(p, &s1)?;
    let expected = extend(&r2, &ExtensionSpec::from_restriction(p, &keep)?)?;
    if p1 != expected {
        return Err(Error::Internal(format!("abUcV-UcVba: lifted to {p1}, expected {expected}")));
    }
    seq.extend(s1);
    // now (b1 b2 U b3 / U b3 b2 b1), possibly with the rows exchanged; inner
    // switches commute with exchanging rows, so work on whichever fits
    let flipped = if abucv_form(&p1, m, 0) {
        false
    } else if abucv_form(&p1.inverse(), m, 0) {
        true
    } else {
        return Err(Error::Internal(format!("abUcV-UcVba: unexpected intermediate {p1}")));
    };
    let o = if flipped { p1.inverse() } else { p1.clone() };
    if m == 0 {
        return Ok(p1);
    }
    let (c1, b3) = (o.at(0, 3), o.at(0, 3 + 2 * m));
    let (o2, _) = inner_switch(&o, c1, b3)?;
    let mut rest = vec![Switch::inner_letters(&o, c1, b3)];
    aub_uba(&o2, m - 1, &mut rest)?;
    let (q, _) = apply_switches(&p1, &rest)?;
    seq.extend(rest);
    Ok(q)
}

/// An instance of a corollary's segment, followed by `tail` 2-blocks and a
/// 1-block so that filler sits behind it.
pub fn corollary_instance(c: Corollary, m: usize, k: usize, tail: usize) -> Result<Pair> {
    let (mut t, mut b) = c.segment(m, k);
    for i in 0..tail {
        let (x, y) = (format!("w{}", 2 * i + 1), format!("w{}", 2 * i + 2));
        t.extend([x.clone(), y.clone()]);
        b.extend([y, x]);
    }
    t.push("s".into());
    b.push("s".into());
    let top = [vec!["a".to_string()], t, vec!["z".to_string()]].concat();
    let bottom = [vec!["z".to_string()], b, vec!["a".to_string()]].concat();
    Pair::from_tokens(&top, &bottom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::s_map;
    use crate::pair::pair;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity_binding_replays_every_move_both_ways() {
        for spec in MOVES {
            for d in [Direction::Forward, Direction::Reverse] {
                let (from, to) = spec.ends(d);
                let letters: Vec<(String, Letter)> =
                    spec.pattern_letters().into_iter().map(|t| (t.clone(), from.letter(&t).unwrap())).collect();
                let l: Vec<(&str, Letter)> = letters.iter().map(|(k, v)| (k.as_str(), *v)).collect();
                let (q, _) = run_move(&from, spec.id, d, &l).unwrap();
                assert_eq!(q, to, "{}", spec.id);
            }
        }
    }

    #[test]
    fn first_move_example() {
        let p = pair("a b1 b2 c1 c2 z / z b2 c2 c1 b1 a");
        let m = NamedMove::new("move:2431-2143", Direction::Forward, &[("b1", "b1"), ("b2", "b2"), ("c1", "c1"), ("c2", "c2")])
            .unwrap();
        let (q, seq) = apply_named_move(&p, &m).unwrap();
        assert_eq!(q, pair("a c2 b1 c1 b2 z / z b1 c2 b2 c1 a"));
        assert_eq!(crate::switches::format_switches(&seq), "{b2,c2} {b1,c1}");
    }

    #[test]
    fn random_fillers_ride_along() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for spec in MOVES {
            for d in [Direction::Forward, Direction::Reverse] {
                for _ in 0..20 {
                    let (p, m) = random_instance(spec, d, &mut rng, 12).unwrap();
                    assert!(p.n() <= 12);
                    let (q, _) = apply_named_move(&p, &m).unwrap();
                    assert_eq!(s_map(&q).unwrap().cycle_lengths(&q), s_map(&p).unwrap().cycle_lengths(&p));
                }
            }
        }
    }

    #[test]
    fn pattern_mismatch_is_reported() {
        let p = pair("a b1 b2 c1 c2 z / z b2 c2 c1 b1 a");
        let m = NamedMove::new("move:2431-2143", Direction::Reverse, &[("b1", "b1"), ("b2", "b2"), ("c1", "c1"), ("c2", "c2")]).unwrap();
        assert!(matches!(apply_named_move(&p, &m), Err(Error::Pattern(_))));
        assert!(NamedMove::new("move:2431-2143", Direction::Forward, &[("b1", "b1")]).is_err());
    }

    #[test]
    fn switches_commute_with_exchanging_rows() {
        for n in 4..=6 {
            for p in crate::pair::all_irreducible(n).into_iter().filter(Pair::is_standard) {
                let inv = p.inverse();
                for b in p.letters() {
                    for c in p.letters() {
                        if let Ok((q, _)) = inner_switch(&p, b, c) {
                            let (r, _) = inner_switch(&inv, b, c).unwrap();
                            assert_eq!(r, q.inverse());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn corollaries_reach_their_shapes() {
        for c in Corollary::ALL {
            for m in 0..=4 {
                for k in 0..=2 {
                    if c == Corollary::FourBlocksLeft && k > m {
                        continue;
                    }
                    if c != Corollary::AbUcVUcVba && c != Corollary::FourBlocksLeft && k > 0 {
                        continue;
                    }
                    for tail in 0..=1 {
                        let p = corollary_instance(c, m, k, tail).unwrap();
                        let (q, seq) = apply_corollary(&p, c, m, k).unwrap_or_else(|e| panic!("{c} m={m} k={k}: {e}"));
                        let (r, _) = apply_switches(&p, &seq).unwrap();
                        assert_eq!(q, r);
                        // the tail is untouched
                        let n = p.n();
                        assert_eq!(&q.row(0)[n - 2 - 2 * tail..], &p.row(0)[n - 2 - 2 * tail..]);
                    }
                }
            }
        }
    }

    #[test]
    fn corollary_base_cases_are_identity() {
        for c in [Corollary::AbUBUa, Corollary::AUbUba, Corollary::AbUcCbUa, Corollary::AbcUCUba, Corollary::AbUUba] {
            let p = corollary_instance(c, 0, 0, 1).unwrap();
            let (q, seq) = apply_corollary(&p, c, 0, 0).unwrap();
            assert!(seq.is_empty());
            assert_eq!(q, p);
        }
    }
}
