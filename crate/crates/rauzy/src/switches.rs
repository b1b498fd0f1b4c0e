//! Inner and outer switch moves, piece-wise order reversing (PWOR) pairs,
//! chains, and the search for a PWOR pair in a class.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::moves::{apply_path, to_standard, Move, Path};
use crate::pair::{Letter, Pair};

/// One switch move, named by the tokens of its two letters.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Switch {
    /// `{b,c}`: exchanges the segments ending at `b` and `c`.
    Inner(String, String),
    /// `outer{x,y}`: `{a,b}` or `{b,z}` with `a`/`z` the first top/bottom letter.
    Outer(String, String),
}

impl Switch {
    pub fn inner(b: &str, c: &str) -> Switch {
        Switch::Inner(b.to_string(), c.to_string())
    }

    pub fn outer(x: &str, y: &str) -> Switch {
        Switch::Outer(x.to_string(), y.to_string())
    }

    pub(crate) fn inner_letters(p: &Pair, b: Letter, c: Letter) -> Switch {
        Switch::inner(p.token(b), p.token(c))
    }
}

impl fmt::Display for Switch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Switch::Inner(b, c) => write!(f, "{{{b},{c}}}"),
            Switch::Outer(x, y) => write!(f, "outer{{{x},{y}}}"),
        }
    }
}

impl FromStr for Switch {
    type Err = Error;
    fn from_str(s: &str) -> Result<Switch> {
        let (outer, body) = match s.strip_prefix("outer") {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let inner = body
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| Error::Parse(format!("bad switch {s:?}")))?;
        let (x, y) = inner.split_once(',').ok_or_else(|| Error::Parse(format!("bad switch {s:?}")))?;
        let (x, y) = (x.trim(), y.trim());
        if x.is_empty() || y.is_empty() {
            return Err(Error::Parse(format!("bad switch {s:?}")));
        }
        Ok(if outer { Switch::outer(x, y) } else { Switch::inner(x, y) })
    }
}

/// Formats a switch sequence as `{b,c} {d,e} ...`.
pub fn format_switches(seq: &[Switch]) -> String {
    seq.iter().map(Switch::to_string).collect::<Vec<_>>().join(" ")
}

/// Parses a whitespace separated switch sequence.
pub fn parse_switches(text: &str) -> Result<Vec<Switch>> {
    text.split_whitespace().map(str::parse).collect()
}

fn require_standard(p: &Pair) -> Result<()> {
    if !p.is_irreducible() {
        return Err(Error::Reducible);
    }
    if !p.is_standard() {
        return Err(Error::NotStandard);
    }
    Ok(())
}

fn word(row: &[Letter], from: usize, to: usize) -> &[Letter] {
    &row[from..to]
}

/// Target of the `{b,c}` inner switch, without the path.
fn inner_target(p: &Pair, b: Letter, c: Letter) -> Result<(Pair, [usize; 6])> {
    require_standard(p)?;
    let n = p.n();
    let (b, c) = if p.pos(0, b) <= p.pos(0, c) { (b, c) } else { (c, b) };
    if b == c {
        return Err(Error::Switch(format!("{{{},{}}}: equal letters", p.token(b), p.token(c))));
    }
    for e in 0..2 {
        let (pb, pc) = (p.pos(e, b), p.pos(e, c));
        if !(0 < pb && pb < pc && pc < n - 1) {
            return Err(Error::Switch(format!(
                "{{{},{}}}: letters must be interior and in the same order in both rows of {p}",
                p.token(b),
                p.token(c)
            )));
        }
    }
    let mut rows = Vec::with_capacity(2);
    let mut lens = [0usize; 6];
    for e in 0..2 {
        let row = p.row(e);
        let (pb, pc) = (p.pos(e, b), p.pos(e, c));
        let w1 = word(row, 1, pb);
        let w2 = word(row, pb + 1, pc);
        let w3 = word(row, pc + 1, n - 1);
        lens[3 * e] = w1.len();
        lens[3 * e + 1] = w2.len();
        lens[3 * e + 2] = w3.len();
        let mut out = Vec::with_capacity(n);
        out.push(row[0]);
        out.extend_from_slice(w2);
        out.push(c);
        out.extend_from_slice(w1);
        out.push(b);
        out.extend_from_slice(w3);
        out.push(row[n - 1]);
        rows.push(out);
    }
    let bottom = rows.pop().unwrap();
    let top = rows.pop().unwrap();
    Ok((p.with_rows(top, bottom), lens))
}

/// The `{b,c}` inner switch: from `(a w1 b w2 c w3 z / z w4 b w5 c w6 a)` to
/// `(a w2 c w1 b w3 z / z w5 c w4 b w6 a)` along `0^k1 1^k2 0^k3 1^k4`.
pub fn inner_switch(p: &Pair, b: Letter, c: Letter) -> Result<(Pair, Path)> {
    let (target, w) = inner_target(p, b, c)?;
    let k1 = 2 + w[4] + w[5];
    let k2 = 1 + w[2];
    let k3 = 1 + w[3];
    let k4 = 1 + w[1];
    let path = Path::from_runs(&[(Move::R0, k1), (Move::R1, k2), (Move::R0, k3), (Move::R1, k4)]);
    let q = apply_path(p, &path)?;
    if q != target {
        return Err(Error::Internal(format!("inner switch path from {p} reached {q}, expected {target}")));
    }
    Ok((q, path))
}

/// The `{a,b}` or `{b,z}` outer switch, with `a` the first top letter and `z`
/// the first bottom letter. The path is whichever candidate reaches the target.
pub fn outer_switch(p: &Pair, x: Letter, y: Letter) -> Result<(Pair, Path)> {
    require_standard(p)?;
    let n = p.n();
    let (a, z) = (p.first(0), p.first(1));
    let (b, with_a) = if x == a {
        (y, true)
    } else if y == a {
        (x, true)
    } else if x == z {
        (y, false)
    } else if y == z {
        (x, false)
    } else {
        return Err(Error::Switch(format!(
            "outer switch needs {} or {} among {{{},{}}}",
            p.token(a),
            p.token(z),
            p.token(x),
            p.token(y)
        )));
    };
    if b == a || b == z {
        return Err(Error::Switch("outer switch needs an interior letter".into()));
    }
    let (t, u) = (p.row(0), p.row(1));
    let (pb0, pb1) = (p.pos(0, b), p.pos(1, b));
    let (w1, w2) = (&t[1..pb0], &t[pb0 + 1..n - 1]);
    let (w3, w4) = (&u[1..pb1], &u[pb1 + 1..n - 1]);
    let cat = |parts: &[&[Letter]]| parts.concat();
    let target = if with_a {
        // (b w2 a w1 z / z w4 a w3 b)
        p.with_rows(cat(&[&[b], w2, &[a], w1, &[z]]), cat(&[&[z], w4, &[a], w3, &[b]]))
    } else {
        // (a w2 z w1 b / b w4 z w3 a)
        p.with_rows(cat(&[&[a], w2, &[z], w1, &[b]]), cat(&[&[b], w4, &[z], w3, &[a]]))
    };
    let (g0, g1) = ((Move::R0, 1 + w4.len()), (Move::L1, 1 + w1.len()));
    let (h0, h1) = ((Move::R1, 1 + w2.len()), (Move::L0, 1 + w3.len()));
    let candidates = [
        Path::from_runs(&[g0, g1]),
        Path::from_runs(&[g1, g0]),
        Path::from_runs(&[h0, h1]),
        Path::from_runs(&[h1, h0]),
    ];
    for path in candidates {
        if apply_path(p, &path)? == target {
            return Ok((target, path));
        }
    }
    Err(Error::Internal(format!("no outer switch candidate path reaches {target} from {p}")))
}

/// Applies one switch, looking its letters up by token.
pub fn apply_switch(p: &Pair, s: &Switch) -> Result<(Pair, Path)> {
    match s {
        Switch::Inner(b, c) => inner_switch(p, p.expect_letter(b)?, p.expect_letter(c)?),
        Switch::Outer(x, y) => outer_switch(p, p.expect_letter(x)?, p.expect_letter(y)?),
    }
}

/// Every admissible single switch on a standard pair with its result:
/// inner switches, and with `outer` also the outer ones.
pub fn switch_neighbours(p: &Pair, outer: bool) -> Vec<(Switch, Pair)> {
    let mut out = Vec::new();
    let letters: Vec<Letter> = p.letters().collect();
    // {b,c} and {c,b} are the same switch
    for (i, &b) in letters.iter().enumerate() {
        for &c in &letters[i + 1..] {
            if let Ok((q, _)) = inner_switch(p, b, c) {
                out.push((Switch::inner_letters(p, b, c), q));
            }
        }
    }
    if outer {
        let (a, z) = (p.first(0), p.first(1));
        for &b in letters.iter().filter(|&&b| b != a && b != z) {
            for (x, y) in [(a, b), (b, z)] {
                if let Ok((q, _)) = outer_switch(p, x, y) {
                    out.push((Switch::outer(p.token(x), p.token(y)), q));
                }
            }
        }
    }
    out
}

/// Applies a sequence of switches; returns the endpoint and the full path.
pub fn apply_switches(p: &Pair, seq: &[Switch]) -> Result<(Pair, Path)> {
    let mut q = p.clone();
    let mut path = Path::new();
    for s in seq {
        let (r, g) = apply_switch(&q, s)?;
        path.extend(&g);
        q = r;
    }
    Ok((q, path))
}

/// Finest order-reversing block decomposition of a PWOR pair.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BlockDecomposition {
    /// `2 = k0 < k1 < ... < kl = n`, 1-based as in the definition.
    pub boundaries: Vec<usize>,
    /// Blocks in order, each listed in top-row order.
    pub blocks: Vec<Vec<Letter>>,
}

impl BlockDecomposition {
    pub fn sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }
}

/// Length of the order-reversing block of `p` ending just before 0-based
/// position `end` (exclusive), if any; it is unique when it exists.
fn block_ending_at(p: &Pair, end: usize, start_min: usize) -> Option<usize> {
    let mut count = vec![0u8; p.n()];
    let mut both = 0;
    for len in 1..=end - start_min {
        let i = end - len;
        for e in 0..2 {
            let l = p.at(e, i).idx();
            count[l] += 1;
            if count[l] == 2 {
                both += 1;
            }
        }
        if both == len {
            let rev = (0..len).all(|k| p.at(0, i + k) == p.at(1, end - 1 - k));
            return rev.then_some(len);
        }
    }
    None
}

/// Scans blocks from the right; returns the 0-based exclusive end of the
/// maximal block-covered suffix of the interior, and the blocks found.
fn suffix_scan(p: &Pair) -> (usize, Vec<Vec<Letter>>) {
    let n = p.n();
    let mut end = n - 1;
    let mut blocks = Vec::new();
    while end > 1 {
        match block_ending_at(p, end, 1) {
            Some(len) => {
                blocks.push(p.row(0)[end - len..end].to_vec());
                end -= len;
            }
            None => break,
        }
    }
    blocks.reverse();
    (end, blocks)
}

/// Finest block sizes of the positions `start..end` (0-based), if that
/// segment is a union of order-reversing blocks in both rows.
pub fn region_blocks(p: &Pair, start: usize, end: usize) -> Option<Vec<usize>> {
    let mut sizes = Vec::new();
    let mut e = end;
    while e > start {
        let len = block_ending_at(p, e, start)?;
        sizes.push(len);
        e -= len;
    }
    sizes.reverse();
    Some(sizes)
}

/// The finest block decomposition if `p` is PWOR.
pub fn is_pwor(p: &Pair) -> Option<BlockDecomposition> {
    if !p.is_irreducible() || !p.is_standard() {
        return None;
    }
    let (end, blocks) = suffix_scan(p);
    if end != 1 {
        return None;
    }
    let mut boundaries = vec![2];
    for b in &blocks {
        boundaries.push(boundaries.last().unwrap() + b.len());
    }
    Some(BlockDecomposition { boundaries, blocks })
}

/// Chain decomposition: blocks of size ≥ 2 grouped between 1-blocks.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Chains {
    /// `C1..Ck`, each a list of blocks (top-row order); possibly empty.
    pub chains: Vec<Vec<Vec<Letter>>>,
    /// `S1..S_{k-1}`: the 1-block letters.
    pub separators: Vec<Letter>,
}

impl Chains {
    pub fn len(&self) -> usize {
        self.chains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chains.is_empty()
    }

    /// Block sizes of chain `i`.
    pub fn sizes(&self, i: usize) -> Vec<usize> {
        self.chains[i].iter().map(Vec::len).collect()
    }

    /// All block sizes, chain by chain.
    pub fn shape(&self) -> Vec<Vec<usize>> {
        (0..self.len()).map(|i| self.sizes(i)).collect()
    }
}

pub fn chains(p: &Pair) -> Result<Chains> {
    let d = is_pwor(p).ok_or(Error::NotPwor)?;
    Ok(chains_of(&d))
}

pub fn chains_of(d: &BlockDecomposition) -> Chains {
    let mut out = Chains { chains: vec![Vec::new()], separators: Vec::new() };
    for b in &d.blocks {
        if b.len() == 1 {
            out.separators.push(b[0]);
            out.chains.push(Vec::new());
        } else {
            out.chains.last_mut().unwrap().push(b.clone());
        }
    }
    out
}

/// Rebuilds the PWOR pair with the given `a`, chains, separators and `z`.
pub fn assemble(p: &Pair, a: Letter, z: Letter, ch: &Chains) -> Pair {
    let mut top = vec![a];
    let mut bottom = vec![z];
    for (i, c) in ch.chains.iter().enumerate() {
        for blk in c {
            top.extend_from_slice(blk);
            bottom.extend(blk.iter().rev());
        }
        if let Some(&s) = ch.separators.get(i) {
            top.push(s);
            bottom.push(s);
        }
    }
    top.push(z);
    bottom.push(a);
    p.with_rows(top, bottom)
}

/// Reorders the first `k−1` chains: chain `order[i]` ends up in slot `i`.
/// Each step is a `{s_i,s_j}` switch, which rotates two leading runs of chains.
pub fn reorder_chains(p: &Pair, order: &[usize]) -> Result<(Pair, Vec<Switch>)> {
    let ch = chains(p)?;
    let k = ch.len();
    let mut check = order.to_vec();
    check.sort_unstable();
    if check != (0..k - 1).collect::<Vec<_>>() {
        return Err(Error::OutOfRange(format!("{order:?} is not a permutation of the first {} chains", k - 1)));
    }
    // cur[slot] = original chain index; separators follow their chains
    let mut cur: Vec<usize> = (0..k - 1).collect();
    let sep = |i: usize| ch.separators[i];
    let mut q = p.clone();
    let mut seq = Vec::new();
    for slot in (0..k - 1).rev() {
        let want = order[slot];
        let at = cur.iter().position(|&c| c == want).unwrap();
        if at == slot {
            continue;
        }
        // {s_want, s_(chain at slot)} swaps runs [0..=at] and [at+1..=slot]
        let (x, y) = (sep(want), sep(cur[slot]));
        let (r, _) = inner_switch(&q, x, y)?;
        seq.push(Switch::inner_letters(&q, x, y));
        q = r;
        cur[..=slot].rotate_left(at + 1);
        debug_assert_eq!(cur[slot], want);
    }
    let mut expect = ch.clone();
    expect.chains = order.iter().map(|&i| ch.chains[i].clone()).chain([ch.chains[k - 1].clone()]).collect();
    expect.separators = order.iter().map(|&i| ch.separators[i]).collect();
    let target = assemble(p, p.first(0), p.first(1), &expect);
    if q != target {
        return Err(Error::Internal(format!("chain reordering reached {q}, expected {target}")));
    }
    Ok((q, seq))
}

/// A pair reached by switches, with the switch list and the underlying path.
#[derive(Clone, Debug)]
pub struct Walk {
    pub pair: Pair,
    pub switches: Vec<Switch>,
    pub path: Path,
}

impl Walk {
    pub fn start(p: &Pair) -> Walk {
        Walk { pair: p.clone(), switches: Vec::new(), path: Path::new() }
    }

    pub fn switch(&mut self, s: Switch) -> Result<()> {
        let (q, g) = apply_switch(&self.pair, &s)?;
        self.pair = q;
        self.path.extend(&g);
        self.switches.push(s);
        Ok(())
    }

    pub fn switches(&mut self, seq: &[Switch]) -> Result<()> {
        for s in seq {
            self.switch(s.clone())?;
        }
        Ok(())
    }

    /// Inner switch on letters of the current pair.
    pub fn inner(&mut self, b: Letter, c: Letter) -> Result<()> {
        let s = Switch::inner_letters(&self.pair, b, c);
        self.switch(s)
    }
}

/// Measures of the proof's monovariant: `(n, n0, n1)`, 1-based, or `None`
/// when the pair is already PWOR.
fn pwor_measure(p: &Pair) -> Option<(usize, usize, usize)> {
    let (end, _) = suffix_scan(p);
    if end == 1 {
        return None;
    }
    let i = end - 1;
    let (b0, b1) = (p.at(0, i), p.at(1, i));
    Some((i + 1, p.pos(0, b1) + 1, p.pos(1, b0) + 1))
}

/// One step of the PWOR search on a standard, non-PWOR pair.
fn pwor_step(p: &Pair) -> Result<(Letter, Letter)> {
    let (n, n0, n1) = pwor_measure(p).expect("pair is not PWOR");
    let (b0, b1) = (p.at(0, n - 1), p.at(1, n - 1));
    let pos = |e: usize, l: Letter| p.pos(e, l) + 1;
    // Cases 1 and 2: c strictly between n_e and n in row e, before b_e in the other row
    let find = |e: usize| {
        let (ne, no) = if e == 0 { (n0, n1) } else { (n1, n0) };
        p.letters()
            .filter(|&c| ne < pos(e, c) && pos(e, c) < n && pos(1 - e, c) < no)
            .max_by_key(|&c| pos(e, c))
    };
    let order: &[usize] = if n0 < n1 {
        &[0]
    } else if n1 < n0 {
        &[1]
    } else {
        &[0, 1]
    };
    for &e in order {
        if let Some(c) = find(e) {
            let b = if e == 0 { b0 } else { b1 };
            return Ok((b, c));
        }
    }
    if n0 != n1 {
        return Err(Error::Internal(format!("PWOR search: no letter for case 1 in {p}")));
    }
    // Case 3: c before d in both rows, strictly between n_e and n
    let inside: Vec<Letter> =
        p.row(0).iter().copied().filter(|&c| n0 < pos(0, c) && pos(0, c) < n && n1 < pos(1, c) && pos(1, c) < n).collect();
    for (i, &c) in inside.iter().enumerate() {
        for &d in &inside[i + 1..] {
            if pos(1, c) < pos(1, d) {
                return Ok((c, d));
            }
        }
    }
    Err(Error::Internal(format!("PWOR search: no case applies to {p}")))
}

/// Connects `p` to a PWOR pair: first to a standard pair by right moves,
/// then one inner switch per step until the pair is PWOR.
pub fn to_pwor(p: &Pair) -> Result<Walk> {
    let (q, path) = to_standard(p)?;
    let mut walk = Walk { pair: q, switches: Vec::new(), path };
    while let Some(before) = pwor_measure(&walk.pair) {
        let (b, c) = pwor_step(&walk.pair)?;
        walk.inner(b, c)?;
        if let Some(after) = pwor_measure(&walk.pair) {
            let (n, n0, n1) = before;
            let (m, m0, m1) = after;
            let ok = m < n || (m == n && m0 >= n0 && m1 >= n1 && m0 + m1 > n0 + n1);
            if !ok {
                return Err(Error::Internal(format!(
                    "PWOR monovariant failed: {before:?} -> {after:?} at {}",
                    walk.pair
                )));
            }
        }
    }
    Ok(walk)
}

/// Whether `s` sits at the same position in both rows, closing a segment
/// (after `a`/`z`) that carries the same letters in both rows.
pub fn splits_after(p: &Pair, s: Letter) -> bool {
    let i = p.pos(0, s);
    if i == 0 || p.pos(1, s) != i {
        return false;
    }
    let mut seen = vec![0u8; p.n()];
    for e in 0..2 {
        for &l in &p.row(e)[1..i] {
            seen[l.idx()] += 1;
        }
    }
    p.row(0)[1..i].iter().all(|l| seen[l.idx()] == 2)
}

/// Runs `seq` — a switch sequence valid on the restriction of `p` to the
/// chains from index `j` on — directly on `p`, keeping chains `0..j`
/// in front. When the separator before chain `j` drifts, one corrective
/// `{c,s}` switch brings it (and the glued prefix) back.
pub fn ignore_chains_lift(p: &Pair, j: usize, seq: &[Switch]) -> Result<(Pair, Vec<Switch>)> {
    let ch = chains(p)?;
    if j == 0 || j >= ch.len() {
        if j == 0 {
            let (q, _) = apply_switches(p, seq)?;
            return Ok((q, seq.to_vec()));
        }
        return Err(Error::OutOfRange(format!("chain index {j} out of range")));
    }
    lift_past(p, ch.separators[j - 1], seq)
}

/// Like [`ignore_chains_lift`], with the held prefix given by the 1-block
/// letter `s` that ends it: `s` must sit at the same position in both rows
/// with the same letters before it.
pub fn lift_past(p: &Pair, s: Letter, seq: &[Switch]) -> Result<(Pair, Vec<Switch>)> {
    if !splits_after(p, s) {
        return Err(Error::Pattern(format!("{} does not end a prefix block of {p}", p.token(s))));
    }
    let prefix_len = 1 + p.pos(0, s); // a, prefix letters, s
    let mut out = seq.to_vec();
    let (mut q, _) = apply_switches(p, seq)?;
    if q.pos(0, s) + 1 != prefix_len || q.pos(1, s) + 1 != prefix_len {
        // the letter just before the glued prefix, in both rows
        let glued = prefix_len - 2;
        let c0 = q.at(0, q.pos(0, s) - glued - 1);
        let c1 = q.at(1, q.pos(1, s) - glued - 1);
        if c0 != c1 {
            return Err(Error::Internal(format!("corrective letter differs between rows in {q}")));
        }
        let (r, _) = inner_switch(&q, c0, s)?;
        out.push(Switch::inner_letters(&q, c0, s));
        q = r;
    }
    for i in 0..prefix_len {
        if q.at(0, i) != p.at(0, i) || q.at(1, i) != p.at(1, i) {
            return Err(Error::Internal(format!("prefix chains not restored in {q}")));
        }
    }
    Ok((q, out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::{m_value, p_list, s_map};
    use crate::moves::cycle_path;
    use crate::pair::{all_irreducible, pair};
    use crate::surgery::restrict;

    fn l(p: &Pair, t: &str) -> Letter {
        p.letter(t).unwrap()
    }

    #[test]
    fn inner_switch_examples() {
        let p = pair("a b c z / z b c a");
        let (q, g) = inner_switch(&p, l(&p, "b"), l(&p, "c")).unwrap();
        assert_eq!(q, pair("a c b z / z c b a"));
        assert_eq!(g.to_string(), "r0^2 r1 r0 r1");
        let p = pair("a b c z / z c b a");
        assert!(inner_switch(&p, l(&p, "b"), l(&p, "c")).is_err());
        let p = pair("a b x c z / z b x c a");
        let (q, g) = inner_switch(&p, l(&p, "b"), l(&p, "c")).unwrap();
        assert_eq!(q, pair("a x c b z / z x c b a"));
        assert_eq!(g.to_string(), "r0^3 r1 r0 r1^2");
    }

    #[test]
    fn outer_switch_examples() {
        let p = pair("a b z / z b a");
        let (q, g) = outer_switch(&p, l(&p, "a"), l(&p, "b")).unwrap();
        assert_eq!(q, pair("b a z / z a b"));
        assert_eq!(g.to_string(), "r0 l1");
        let (q, g) = outer_switch(&p, l(&p, "b"), l(&p, "z")).unwrap();
        assert_eq!(q, pair("a z b / b z a"));
        assert_eq!(g.to_string(), "r1 l0");
    }

    #[test]
    fn outer_candidates_agree_pairwise() {
        for n in 3..=6 {
            for p in all_irreducible(n).into_iter().filter(Pair::is_standard) {
                let t = p.row(0);
                let u = p.row(1);
                for &b in &t[1..n - 1] {
                    let (w1, w2) = (p.pos(0, b) - 1, n - 2 - p.pos(0, b));
                    let (w3, w4) = (p.pos(1, b) - 1, n - 2 - p.pos(1, b));
                    let _ = u;
                    let g = |r: &[(Move, usize)]| apply_path(&p, &Path::from_runs(r)).unwrap();
                    let a0 = (Move::R0, 1 + w4);
                    let a1 = (Move::L1, 1 + w1);
                    assert_eq!(g(&[a0, a1]), g(&[a1, a0]));
                    let b0 = (Move::R1, 1 + w2);
                    let b1 = (Move::L0, 1 + w3);
                    assert_eq!(g(&[b0, b1]), g(&[b1, b0]));
                    for other in [p.first(0), p.first(1)] {
                        let (q, path) = outer_switch(&p, other, b).unwrap();
                        assert!(q.is_standard());
                        assert_eq!(apply_path(&p, &path).unwrap(), q);
                        assert_eq!(p_list(&q).unwrap(), p_list(&p).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn inner_switch_class_and_involution() {
        for n in 4..=6 {
            for p in all_irreducible(n).into_iter().filter(Pair::is_standard) {
                let s = s_map(&p).unwrap();
                for &b in &p.row(0)[1..n - 1] {
                    for &c in &p.row(0)[1..n - 1] {
                        let Ok((q, path)) = inner_switch(&p, b, c) else { continue };
                        assert!(q.is_standard());
                        assert_eq!(s_map(&q).unwrap(), s);
                        assert!(cycle_path(&p, &q).is_ok());
                        assert_eq!(apply_path(&p, &path).unwrap(), q);
                        let (back, _) = inner_switch(&q, c, b).unwrap();
                        assert_eq!(back, p, "{{{},{}}} on {p}", p.token(b), p.token(c));
                    }
                }
            }
        }
    }

    #[test]
    fn pwor_examples() {
        let d = is_pwor(&pair("a b c z / z c b a")).unwrap();
        assert_eq!(d.sizes(), [2]);
        assert_eq!(d.boundaries, [2, 4]);
        assert_eq!(is_pwor(&pair("a b c z / z b c a")).unwrap().sizes(), [1, 1]);
        assert!(is_pwor(&pair("a b c z / z c a b")).is_none());
        let c = chains(&pair("a b s c d z / z b s d c a")).unwrap();
        assert_eq!(c.shape(), vec![vec![], vec![], vec![2]]);
        assert_eq!(c.separators.len(), 2);
        let c = chains(&pair("a b c d z / z b c d a")).unwrap();
        assert!(c.shape().iter().all(Vec::is_empty));
        assert_eq!(chains(&pair("a b c z / z c b a")).unwrap().shape(), vec![vec![2]]);
    }

    #[test]
    fn switch_text_round_trip() {
        let seq = parse_switches("{b,c} outer{a,b} {x1,y2}").unwrap();
        assert_eq!(format_switches(&seq), "{b,c} outer{a,b} {x1,y2}");
        assert!("{b}".parse::<Switch>().is_err());
    }

    #[test]
    fn reorder_examples() {
        // chains [2], [], [3], last [2]
        let p = pair("a b c s t d e f u g h z / z c b s t f e d u h g a");
        let (q, seq) = reorder_chains(&p, &[0, 1, 2]).unwrap();
        assert_eq!(q, p);
        assert!(seq.is_empty());
        for order in [[2, 0, 1], [1, 2, 0], [2, 1, 0], [0, 2, 1], [1, 0, 2]] {
            let (q, seq) = reorder_chains(&p, &order).unwrap();
            let (r, _) = apply_switches(&p, &seq).unwrap();
            assert_eq!(q, r);
            let ch = chains(&q).unwrap();
            let old = chains(&p).unwrap();
            for (slot, &i) in order.iter().enumerate() {
                assert_eq!(ch.chains[slot], old.chains[i]);
            }
            assert_eq!(p_list(&q).unwrap(), p_list(&p).unwrap());
            assert_eq!(m_value(&q).unwrap(), m_value(&p).unwrap());
        }
    }

    #[test]
    fn to_pwor_small() {
        for n in 2..=6 {
            for p in all_irreducible(n) {
                let w = to_pwor(&p).unwrap();
                assert!(is_pwor(&w.pair).is_some());
                assert_eq!(apply_path(&p, &w.path).unwrap(), w.pair);
                assert_eq!(s_map(&w.pair).unwrap(), s_map(&p).unwrap());
            }
        }
        let p = pair("a b c z / z c b a");
        let w = to_pwor(&p).unwrap();
        assert_eq!(w.pair, p);
        assert!(w.switches.is_empty());
    }

    #[test]
    fn ignore_chains_examples() {
        // prefix chain [b c], separator s, suffix chain [d e] [f g]
        let p = pair("a b c s d e f g z / z c b s e d g f a");
        let keep: Vec<Letter> = ["a", "d", "e", "f", "g", "z"].iter().map(|t| l(&p, t)).collect();
        let small = restrict(&p, &keep).unwrap();
        assert!(is_pwor(&small).is_some());
        let (q, seq) = ignore_chains_lift(&p, 0, &[]).unwrap();
        assert_eq!((q, seq.len()), (p.clone(), 0));
        // a switch and its inverse leave the separator in place
        let seq = vec![Switch::inner("d", "f"), Switch::inner("f", "d")];
        let (q, out) = ignore_chains_lift(&p, 1, &seq).unwrap();
        assert_eq!(out, seq);
        assert_eq!(q, p);
        // {d,f} moves the first suffix letter to the front and drags the prefix along
        let (moved, _) = apply_switches(&p, &[Switch::inner("d", "f")]).unwrap();
        assert_ne!(&moved.top_tokens()[..4], ["a", "b", "c", "s"]);
        let (q, out) = ignore_chains_lift(&p, 1, &[Switch::inner("d", "f")]).unwrap();
        assert_eq!(out.len(), 2, "{}", format_switches(&out));
        assert_eq!(&q.top_tokens()[..4], ["a", "b", "c", "s"]);
        assert_eq!(&q.bottom_tokens()[..4], ["z", "c", "b", "s"]);
    }
}
