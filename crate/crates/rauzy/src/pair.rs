//! Alphabets, permutation pairs, irreducibility, monodromy, renaming.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A letter, identified by its index into the pair's alphabet.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Letter(pub u16);

impl Letter {
    #[inline]
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

/// Token of the `i`-th canonical letter (0-based): `a`..`z`, then `a1`, `a2`, ...
pub fn canonical_token(i: usize) -> String {
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("a{}", i - 25)
    }
}

/// A permutation pair `(p0, p1)`: two orderings of the same alphabet.
///
/// Row 0 is the top row, row 1 the bottom row. Positions are 0-based
/// internally; the text form and the one-row permutation are 1-based.
#[derive(Clone)]
pub struct Pair {
    tokens: Arc<[String]>,
    rows: [Vec<Letter>; 2],
    pos: [Vec<usize>; 2],
}

impl Pair {
    /// Builds a pair over `tokens` from two rows of letter ids.
    pub fn from_rows(tokens: Arc<[String]>, top: Vec<Letter>, bottom: Vec<Letter>) -> Pair {
        let n = tokens.len();
        debug_assert_eq!(top.len(), n);
        debug_assert_eq!(bottom.len(), n);
        let mut pos = [vec![usize::MAX; n], vec![usize::MAX; n]];
        for (i, l) in top.iter().enumerate() {
            pos[0][l.idx()] = i;
        }
        for (i, l) in bottom.iter().enumerate() {
            pos[1][l.idx()] = i;
        }
        debug_assert!(pos.iter().all(|p| p.iter().all(|&x| x != usize::MAX)));
        Pair { tokens, rows: [top, bottom], pos }
    }

    /// Same alphabet, new rows.
    pub fn with_rows(&self, top: Vec<Letter>, bottom: Vec<Letter>) -> Pair {
        Pair::from_rows(self.tokens.clone(), top, bottom)
    }

    /// Builds a pair from token rows, validating them.
    pub fn from_tokens<S: AsRef<str>>(top: &[S], bottom: &[S]) -> Result<Pair> {
        if top.len() != bottom.len() {
            return Err(Error::Parse(format!(
                "row length mismatch ({} vs {})",
                top.len(),
                bottom.len()
            )));
        }
        if top.len() < 2 {
            return Err(Error::Parse("a pair needs at least two letters".into()));
        }
        let mut index: HashMap<&str, u16> = HashMap::new();
        let mut tokens = Vec::with_capacity(top.len());
        for t in top {
            let t = t.as_ref();
            if t.is_empty() || t.contains('/') || t.chars().any(char::is_whitespace) {
                return Err(Error::Parse(format!("invalid token {t:?}")));
            }
            if index.insert(t, tokens.len() as u16).is_some() {
                return Err(Error::Parse(format!("duplicate letter {t} in top row")));
            }
            tokens.push(t.to_string());
        }
        let mut seen = vec![false; tokens.len()];
        let mut bot = Vec::with_capacity(bottom.len());
        for t in bottom {
            let t = t.as_ref();
            let id = *index
                .get(t)
                .ok_or_else(|| Error::Parse(format!("letter {t} missing from top row")))?;
            if std::mem::replace(&mut seen[id as usize], true) {
                return Err(Error::Parse(format!("duplicate letter {t} in bottom row")));
            }
            bot.push(Letter(id));
        }
        let top = (0..tokens.len() as u16).map(Letter).collect();
        Ok(Pair::from_rows(tokens.into(), top, bot))
    }

    /// Parses `tok tok / tok tok` (rows may also be separated by a newline).
    pub fn parse(text: &str) -> Result<Pair> {
        let parts: Vec<&str> = if text.contains('/') {
            text.split('/').collect()
        } else {
            text.lines().filter(|l| !l.trim().is_empty()).collect()
        };
        if parts.len() != 2 {
            return Err(Error::Parse(format!(
                "expected two rows separated by '/' or a newline, found {}",
                parts.len()
            )));
        }
        let top: Vec<&str> = parts[0].split_whitespace().collect();
        let bottom: Vec<&str> = parts[1].split_whitespace().collect();
        Pair::from_tokens(&top, &bottom)
    }

    /// Pair over the canonical alphabet whose monodromy is `images` (1-based).
    pub fn from_one_row(images: &[usize]) -> Result<Pair> {
        let n = images.len();
        if n < 2 {
            return Err(Error::Parse("a pair needs at least two letters".into()));
        }
        let mut bottom = vec![None; n];
        for (i, &v) in images.iter().enumerate() {
            if v == 0 || v > n || bottom[v - 1].is_some() {
                return Err(Error::Parse(format!("{images:?} is not a permutation of 1..{n}")));
            }
            bottom[v - 1] = Some(Letter(i as u16));
        }
        let tokens: Vec<String> = (0..n).map(canonical_token).collect();
        let top = (0..n as u16).map(Letter).collect();
        Ok(Pair::from_rows(tokens.into(), top, bottom.into_iter().map(Option::unwrap).collect()))
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.rows[0].len()
    }

    pub fn tokens(&self) -> &Arc<[String]> {
        &self.tokens
    }

    #[inline]
    pub fn token(&self, l: Letter) -> &str {
        &self.tokens[l.idx()]
    }

    pub fn letter(&self, token: &str) -> Option<Letter> {
        self.tokens.iter().position(|t| t == token).map(|i| Letter(i as u16))
    }

    /// Looks up a letter by token, as an error when absent.
    pub fn expect_letter(&self, token: &str) -> Result<Letter> {
        self.letter(token).ok_or_else(|| Error::UnknownLetter(token.to_string()))
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        (0..self.n() as u16).map(Letter)
    }

    #[inline]
    pub fn row(&self, e: usize) -> &[Letter] {
        &self.rows[e]
    }

    /// 0-based position of `l` in row `e`.
    #[inline]
    pub fn pos(&self, e: usize, l: Letter) -> usize {
        self.pos[e][l.idx()]
    }

    #[inline]
    pub fn at(&self, e: usize, i: usize) -> Letter {
        self.rows[e][i]
    }

    #[inline]
    pub fn first(&self, e: usize) -> Letter {
        self.rows[e][0]
    }

    #[inline]
    pub fn last(&self, e: usize) -> Letter {
        self.rows[e][self.n() - 1]
    }

    /// Labeled encoding: top ids followed by bottom ids.
    pub fn key(&self) -> Vec<u16> {
        self.rows[0].iter().chain(self.rows[1].iter()).map(|l| l.0).collect()
    }

    pub fn top_tokens(&self) -> Vec<&str> {
        self.rows[0].iter().map(|&l| self.token(l)).collect()
    }

    pub fn bottom_tokens(&self) -> Vec<&str> {
        self.rows[1].iter().map(|&l| self.token(l)).collect()
    }

    /// True iff no proper prefix has the same letter set in both rows.
    pub fn is_irreducible(&self) -> bool {
        let n = self.n();
        let mut mark = vec![0u8; n];
        let mut both = 0;
        for k in 0..n - 1 {
            for e in 0..2 {
                let l = self.rows[e][k].idx();
                mark[l] += 1;
                if mark[l] == 2 {
                    both += 1;
                }
            }
            if both == k + 1 {
                return false;
            }
        }
        true
    }

    /// True iff the first letter of each row is the last letter of the other.
    pub fn is_standard(&self) -> bool {
        self.first(0) == self.last(1) && self.first(1) == self.last(0)
    }

    /// True iff `p0(b) + p1(b) = n + 1` for every letter.
    pub fn is_order_reversing(&self) -> bool {
        let n = self.n();
        self.letters().all(|l| self.pos(0, l) + self.pos(1, l) == n - 1)
    }

    /// One-row permutation: entry `i` (1-based) is `p1(p0^{-1}(i))`.
    pub fn monodromy(&self) -> Vec<usize> {
        self.rows[0].iter().map(|&l| self.pos(1, l) + 1).collect()
    }

    /// Rows swapped.
    pub fn inverse(&self) -> Pair {
        Pair {
            tokens: self.tokens.clone(),
            rows: [self.rows[1].clone(), self.rows[0].clone()],
            pos: [self.pos[1].clone(), self.pos[0].clone()],
        }
    }

    /// Both rows reversed.
    pub fn h_map(&self) -> Pair {
        let mut top = self.rows[0].clone();
        let mut bottom = self.rows[1].clone();
        top.reverse();
        bottom.reverse();
        self.with_rows(top, bottom)
    }

    /// Renames letters through `tau`, which must be a bijection on this alphabet.
    pub fn rename(&self, tau: &HashMap<String, String>) -> Result<Pair> {
        let mut images = Vec::with_capacity(self.n());
        for t in self.tokens.iter() {
            let img = tau
                .get(t)
                .ok_or_else(|| Error::Parse(format!("renaming does not cover letter {t}")))?;
            images.push(img.as_str());
        }
        if tau.len() != self.n() {
            return Err(Error::Parse("renaming has letters outside the alphabet".into()));
        }
        let map = |row: &[Letter]| row.iter().map(|l| images[l.idx()]).collect::<Vec<_>>();
        Pair::from_tokens(&map(&self.rows[0]), &map(&self.rows[1]))
            .map_err(|e| Error::Parse(format!("renaming is not a bijection: {e}")))
    }

    /// The same pair over the canonical alphabet, letters named by top position.
    pub fn canonical_labels(&self) -> Pair {
        Pair::from_one_row(&self.monodromy()).expect("monodromy is a permutation")
    }
}

impl PartialEq for Pair {
    fn eq(&self, other: &Pair) -> bool {
        if self.n() != other.n() {
            return false;
        }
        if Arc::ptr_eq(&self.tokens, &other.tokens) {
            return self.rows == other.rows;
        }
        (0..2).all(|e| {
            self.rows[e]
                .iter()
                .zip(other.rows[e].iter())
                .all(|(&a, &b)| self.token(a) == other.token(b))
        })
    }
}

impl Eq for Pair {}

impl Hash for Pair {
    fn hash<H: Hasher>(&self, state: &mut H) {
        for e in 0..2 {
            for &l in &self.rows[e] {
                self.token(l).hash(state);
            }
        }
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} / {}", self.top_tokens().join(" "), self.bottom_tokens().join(" "))
    }
}

impl fmt::Debug for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for Pair {
    type Err = Error;
    fn from_str(s: &str) -> Result<Pair> {
        Pair::parse(s)
    }
}

/// Parses a pair; shorthand used throughout the tests and the catalog.
pub fn pair(text: &str) -> Pair {
    Pair::parse(text).unwrap_or_else(|e| panic!("bad pair {text:?}: {e}"))
}

/// Group inverse of a 1-based one-row permutation.
pub fn invert_one_row(images: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; images.len()];
    for (i, &v) in images.iter().enumerate() {
        inv[v - 1] = i + 1;
    }
    inv
}

/// All permutations of `1..=n` in lexicographic order.
pub fn all_one_row(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (1..=n).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

/// All irreducible pairs over the canonical alphabet of size `n`.
pub fn all_irreducible(n: usize) -> Vec<Pair> {
    all_one_row(n)
        .into_iter()
        .map(|pi| Pair::from_one_row(&pi).unwrap())
        .filter(Pair::is_irreducible)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        let p = pair("a b c / c b a");
        assert_eq!(p.top_tokens(), ["a", "b", "c"]);
        assert_eq!(p.bottom_tokens(), ["c", "b", "a"]);
        let q = pair("1 2 / 2 1");
        assert_eq!(q.top_tokens(), ["1", "2"]);
        assert!(matches!(Pair::parse("a b / a"), Err(Error::Parse(_))));
        assert!(Pair::parse("a a / a a").is_err());
        assert!(Pair::parse("a b / a c").is_err());
        assert!(Pair::parse("a / a").is_err());
        assert_eq!(pair("a b c\nc b a"), p);
    }

    #[test]
    fn format_is_bit_exact() {
        assert_eq!(pair("  a   b  c/c b    a ").to_string(), "a b c / c b a");
    }

    #[test]
    fn irreducibility_examples() {
        assert!(pair("a b c / c b a").is_irreducible());
        assert!(!pair("a b c / a c b").is_irreducible());
        assert!(pair("a b c d / b d a c").is_irreducible());
    }

    #[test]
    fn monodromy_examples() {
        assert_eq!(pair("a b c / c b a").monodromy(), [3, 2, 1]);
        assert_eq!(pair("a b / b a").monodromy(), [2, 1]);
        assert_eq!(pair("a b c d / d a c b").monodromy(), [2, 4, 3, 1]);
    }

    #[test]
    fn from_one_row_examples() {
        assert_eq!(Pair::from_one_row(&[2, 1]).unwrap(), pair("a b / b a"));
        assert_eq!(Pair::from_one_row(&[3, 2, 1]).unwrap(), pair("a b c / c b a"));
        for n in 2..=6 {
            for pi in all_one_row(n) {
                assert_eq!(Pair::from_one_row(&pi).unwrap().monodromy(), pi);
            }
        }
        assert_eq!(canonical_token(25), "z");
        assert_eq!(canonical_token(26), "a1");
    }

    #[test]
    fn inverse_and_h() {
        assert_eq!(pair("a b c / c a b").inverse(), pair("c a b / a b c"));
        assert_eq!(pair("a b c / c a b").h_map(), pair("c b a / b a c"));
        let pw = pair("a b c z / z c b a");
        // fixed up to relabeling: the monodromy is an involution
        assert_eq!(pw.inverse().canonical_labels(), pw.canonical_labels());
        assert!(pw.h_map().is_order_reversing());
        for n in 2..=5 {
            for p in all_one_row(n).iter().map(|pi| Pair::from_one_row(pi).unwrap()) {
                assert_eq!(p.inverse().inverse(), p);
                assert_eq!(p.h_map().h_map(), p);
                assert_eq!(p.inverse().monodromy(), invert_one_row(&p.monodromy()));
            }
        }
    }

    #[test]
    fn rename_examples() {
        let tau: HashMap<String, String> =
            [("a", "x"), ("b", "y")].iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
        assert_eq!(pair("a b / b a").rename(&tau).unwrap(), pair("x y / y x"));
        let bad: HashMap<String, String> =
            [("a", "x"), ("b", "x")].iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
        assert!(pair("a b / b a").rename(&bad).is_err());
        let p = pair("a b c d / d a c b");
        let id: HashMap<String, String> = p.tokens().iter().map(|t| (t.clone(), t.clone())).collect();
        assert_eq!(p.rename(&id).unwrap(), p);
    }

    #[test]
    fn indecomposable_counts_small() {
        let counts: Vec<usize> = (2..=6).map(|n| all_irreducible(n).len()).collect();
        assert_eq!(counts, [1, 3, 13, 71, 461]);
    }
}
