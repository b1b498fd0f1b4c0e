//! Exhaustive ground truth: class closures by breadth-first search, the
//! census of all classes of one size, and switch-graph connectivity.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classify::{canonical_form, canonical_form_extended, normalize_type, signature_with, Signature};
use crate::error::{Error, Result};
use crate::invariants::Scope;
use crate::moves::{apply_move_unchecked, cycle_path, Move, Path};
use crate::pair::{all_irreducible, all_one_row, Pair};
use crate::switches::switch_neighbours;

/// Largest alphabet [`class_census`] accepts.
pub const MAX_CENSUS_N: usize = 8;

/// Right moves for a class, all four moves for an extended class.
pub fn generators(scope: Scope) -> &'static [Move] {
    match scope {
        Scope::Class => &Move::ALL[..2],
        Scope::Extended => &Move::ALL,
    }
}

/// The labeled class (or extended class) of `p`, sorted by letter-index key.
pub fn enumerate_class(p: &Pair, scope: Scope) -> Result<Vec<Pair>> {
    if !p.is_irreducible() {
        return Err(Error::Reducible);
    }
    let gens = generators(scope);
    let mut seen: HashSet<Vec<u16>> = HashSet::from([p.key()]);
    let mut members = vec![p.clone()];
    let mut frontier = vec![p.clone()];
    while !frontier.is_empty() {
        let next: Vec<Pair> = frontier
            .par_iter()
            .flat_map_iter(|q| gens.iter().map(move |&m| apply_move_unchecked(q, m)))
            .collect();
        frontier = next.into_iter().filter(|q| seen.insert(q.key())).collect();
        members.extend(frontier.iter().cloned());
    }
    members.sort_by_cached_key(Pair::key);
    Ok(members)
}

/// One non-labeled class of the census.
#[derive(Clone, Debug)]
pub struct ClassRecord {
    pub n: usize,
    /// The canonical form (extended canonical form for extended classes).
    pub representative: Pair,
    /// Number of one-row permutations in the class.
    pub size: usize,
    pub standard_count: usize,
    pub signature: Signature,
}

/// A census record as one JSON line.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CensusLine {
    pub n: usize,
    pub scope: Scope,
    pub rep: String,
    pub size: usize,
    pub standard: usize,
    #[serde(rename = "type")]
    pub type_tag: String,
    pub p: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub m: Option<usize>,
}

impl ClassRecord {
    pub fn line(&self) -> CensusLine {
        CensusLine {
            n: self.n,
            scope: self.signature.scope,
            rep: self.representative.to_string(),
            size: self.size,
            standard: self.standard_count,
            type_tag: self.signature.type_tag.to_string(),
            p: self.signature.p_list.clone(),
            m: self.signature.m_value,
        }
    }
}

/// The labeled classes (or extended classes) of all irreducible pairs over
/// the canonical alphabet of size `n`.
#[derive(Clone, Debug)]
pub struct LabeledClasses {
    pub classes: Vec<Vec<Pair>>,
    class_of: HashMap<Vec<u16>, usize>,
}

impl LabeledClasses {
    pub fn new(n: usize, scope: Scope) -> Result<LabeledClasses> {
        let mut out = LabeledClasses { classes: Vec::new(), class_of: HashMap::new() };
        for p in all_irreducible(n) {
            if out.class_of.contains_key(&p.key()) {
                continue;
            }
            let members = enumerate_class(&p, scope)?;
            for q in &members {
                out.class_of.insert(q.key(), out.classes.len());
            }
            out.classes.push(members);
        }
        Ok(out)
    }

    /// Index of the class holding `p`, if `p` is over the canonical alphabet.
    pub fn class_of(&self, p: &Pair) -> Option<usize> {
        self.class_of.get(&p.key()).copied()
    }

    /// Non-labeled classes: sets of one-row permutations (monodromies), each
    /// the image of one or more labeled classes.
    pub fn unlabeled(&self) -> Result<Vec<Vec<Vec<usize>>>> {
        let mut owner: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut out: Vec<Vec<Vec<usize>>> = Vec::new();
        for members in &self.classes {
            let images: BTreeSet<Vec<usize>> = members.iter().map(Pair::monodromy).collect();
            let first = images.first().expect("classes are non-empty");
            match owner.get(first) {
                Some(&i) => {
                    if !images.iter().all(|m| owner.get(m) == Some(&i)) {
                        return Err(Error::Internal("labeled classes overlap partially".into()));
                    }
                }
                None => {
                    if images.iter().any(|m| owner.contains_key(m)) {
                        return Err(Error::Internal("labeled classes overlap partially".into()));
                    }
                    for m in &images {
                        owner.insert(m.clone(), out.len());
                    }
                    out.push(images.into_iter().collect());
                }
            }
        }
        Ok(out)
    }
}

/// Partitions the irreducible one-row permutations of size `n` into
/// non-labeled classes, sorted by (size, signature). Each representative is
/// checked to lie in its class.
pub fn class_census(n: usize, scope: Scope) -> Result<Vec<ClassRecord>> {
    if !(2..=MAX_CENSUS_N).contains(&n) {
        return Err(Error::OutOfRange(format!("census needs 2 ≤ n ≤ {MAX_CENSUS_N}, got {n}")));
    }
    let labeled = LabeledClasses::new(n, scope)?;
    let mut records = Vec::new();
    for images in labeled.unlabeled()? {
        let p = Pair::from_one_row(&images[0])?;
        let standard = labeled.classes[labeled.class_of(&p).expect("p was enumerated")]
            .iter()
            .filter(|q| q.is_standard())
            .map(Pair::monodromy)
            .collect::<HashSet<_>>()
            .len();
        let signature = signature_with(&p, scope, normalize_type(&p)?.type_tag)?;
        let representative = match scope {
            Scope::Class => canonical_form(&p)?,
            Scope::Extended => canonical_form_extended(&p)?,
        };
        if images.binary_search(&representative.monodromy()).is_err() {
            return Err(Error::Internal(format!("canonical form {representative} is not in the class of {p}")));
        }
        records.push(ClassRecord { n, representative, size: images.len(), standard_count: standard, signature });
    }
    records.sort_by(|a, b| (a.size, &a.signature).cmp(&(b.size, &b.signature)));
    Ok(records)
}

/// Writes a census as JSON lines.
pub fn write_census<W: Write>(records: &[ClassRecord], mut out: W) -> Result<()> {
    for r in records {
        let line = serde_json::to_string(&r.line()).map_err(|e| Error::Internal(e.to_string()))?;
        writeln!(out, "{line}").map_err(|e| Error::Internal(e.to_string()))?;
    }
    Ok(())
}

/// Whether the standard pairs of a closed class are connected by single
/// switches: inner ones for a class, inner and outer for an extended class.
pub fn switch_graph_connected(members: &[Pair], scope: Scope) -> Result<bool> {
    let keys: HashSet<Vec<u16>> = members.iter().map(Pair::key).collect();
    let standard: Vec<&Pair> = members.iter().filter(|p| p.is_standard()).collect();
    let Some(&start) = standard.first() else { return Ok(false) };
    let outer = scope == Scope::Extended;
    let mut seen: HashSet<Vec<u16>> = HashSet::from([start.key()]);
    let mut queue = VecDeque::from([start.clone()]);
    while let Some(p) = queue.pop_front() {
        for (s, q) in switch_neighbours(&p, outer) {
            let k = q.key();
            if !keys.contains(&k) {
                return Err(Error::NotReachable(format!("{s} leads from {p} to {q}, outside the given class")));
            }
            if seen.insert(k) {
                queue.push_back(q);
            }
        }
    }
    Ok(seen.len() == standard.len())
}

/// A Rauzy path from `p` to `q`: cycle-minimal for the class scope, and
/// move-minimal over all four moves for the extended scope.
pub fn connect(p: &Pair, q: &Pair, scope: Scope) -> Result<Path> {
    if !p.is_irreducible() || !q.is_irreducible() {
        return Err(Error::Reducible);
    }
    let q = over_alphabet_of(p, q)?;
    if scope == Scope::Class {
        return cycle_path(p, &q);
    }
    let target = q.key();
    let mut parent: HashMap<Vec<u16>, (Vec<u16>, Move)> = HashMap::new();
    let mut seen: HashSet<Vec<u16>> = HashSet::from([p.key()]);
    let mut queue = VecDeque::from([p.clone()]);
    while let Some(r) = queue.pop_front() {
        if r.key() == target {
            let mut moves = Vec::new();
            let mut k = target;
            while let Some((prev, m)) = parent.get(&k) {
                moves.push(*m);
                k = prev.clone();
            }
            let mut path = Path::new();
            for m in moves.into_iter().rev() {
                path.push(m, 1);
            }
            return Ok(path);
        }
        for &m in generators(scope) {
            let s = apply_move_unchecked(&r, m);
            if seen.insert(s.key()) {
                parent.insert(s.key(), (r.key(), m));
                queue.push_back(s);
            }
        }
    }
    Err(Error::NotReachable(format!("{q} is not in the extended class of {p}")))
}

/// `q` rewritten over the token table of `p`, so letter-index keys compare.
fn over_alphabet_of(p: &Pair, q: &Pair) -> Result<Pair> {
    if p.n() != q.n() {
        return Err(Error::NotReachable(format!("{p} and {q} have different sizes")));
    }
    let map = |e: usize| q.row(e).iter().map(|&l| p.expect_letter(q.token(l))).collect::<Result<Vec<_>>>();
    Ok(p.with_rows(map(0)?, map(1)?))
}

/// Irreducible one-row permutations of `1..=n`, counted by a direct prefix
/// test: no proper prefix of positions maps onto itself.
pub fn count_indecomposable(n: usize) -> usize {
    all_one_row(n)
        .into_iter()
        .filter(|pi| {
            let mut max = 0;
            (0..n - 1).all(|k| {
                max = max.max(pi[k]);
                max != k + 1
            })
        })
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moves::apply_path;
    use crate::pair::pair;

    #[test]
    fn three_letter_class() {
        let members = enumerate_class(&pair("a b c / c b a"), Scope::Class).unwrap();
        let mut text: Vec<String> = members.iter().map(Pair::to_string).collect();
        text.sort();
        assert_eq!(text, ["a b c / c a b", "a b c / c b a", "a c b / c b a"]);
        let census = class_census(3, Scope::Class).unwrap();
        assert_eq!(census.len(), 1);
        assert_eq!(census[0].size, 3);
    }

    #[test]
    fn extended_class_contains_class() {
        for p in all_irreducible(5) {
            let class: HashSet<Vec<u16>> = enumerate_class(&p, Scope::Class).unwrap().iter().map(Pair::key).collect();
            let ext: HashSet<Vec<u16>> =
                enumerate_class(&p, Scope::Extended).unwrap().iter().map(Pair::key).collect();
            assert!(class.is_subset(&ext));
        }
    }

    #[test]
    fn census_counts_match_the_prefix_test() {
        let expected = [1, 3, 13, 71, 461];
        for (n, &want) in (2..=6).zip(&expected) {
            assert_eq!(count_indecomposable(n), want);
            for scope in [Scope::Class, Scope::Extended] {
                let census = class_census(n, scope).unwrap();
                assert_eq!(census.iter().map(|r| r.size).sum::<usize>(), want);
                assert!(census.iter().all(|r| r.standard_count >= 1));
                let sigs: HashSet<&Signature> = census.iter().map(|r| &r.signature).collect();
                assert_eq!(sigs.len(), census.len(), "signatures separate classes at n = {n}");
            }
        }
    }

    #[test]
    fn census_lines_round_trip() {
        let census = class_census(4, Scope::Class).unwrap();
        let mut buf = Vec::new();
        write_census(&census, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        for (line, r) in text.lines().zip(&census) {
            let back: CensusLine = serde_json::from_str(line).unwrap();
            assert_eq!(back, r.line());
            assert_eq!(Pair::parse(&back.rep).unwrap(), r.representative);
        }
        assert_eq!(census.len(), 2);
    }

    #[test]
    fn switch_graphs_are_connected() {
        for n in 2..=6 {
            for r in class_census(n, Scope::Class).unwrap() {
                let members = enumerate_class(&r.representative, Scope::Class).unwrap();
                assert!(switch_graph_connected(&members, Scope::Class).unwrap(), "{}", r.representative);
            }
        }
    }

    #[test]
    fn connect_examples() {
        let (p, q) = (pair("a b c / c b a"), pair("a b c / c a b"));
        let g = connect(&p, &q, Scope::Class).unwrap();
        assert_eq!(g.to_string(), "r0");
        let g = connect(&q, &p, Scope::Extended).unwrap();
        assert_eq!(apply_path(&q, &g).unwrap(), p);
        assert!(connect(&p, &pair("a b c / b c a"), Scope::Class).is_err());
        assert!(connect(&p, &pair("a b d / d b a"), Scope::Extended).is_err());
    }
}
