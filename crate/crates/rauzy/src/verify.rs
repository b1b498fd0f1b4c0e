//! The acceptance suite: thirteen exhaustive or seeded checks, each reported
//! as one pass/fail line.

use std::collections::HashMap;
use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::{apply_corollary, apply_named_move, corollary_instance, random_instance, Corollary, Direction, MOVES};
use crate::classify::{find_good_or_degenerate, is_degenerate_star, is_good, layout_pair, same_class, signature, type_of, type_of_shape, TypeTag, Witness};
use crate::enumerate::{count_indecomposable, enumerate_class, switch_graph_connected, LabeledClasses};
use crate::invariants::{arf_by_blocks, arf_count, m_value, p_list, s_map, Scope};
use crate::moves::{apply_move, apply_path, distance_to_standard, to_standard, Move};
use crate::pair::{all_irreducible, Letter, Pair};
use crate::surgery::{is_star, restrict, restrict_tokens};
use crate::switches::{apply_switches, is_pwor, region_blocks, to_pwor};

pub const DEFAULT_SEED: u64 = 0x5eed_2a0e;

/// Bounds for a suite run.
#[derive(Copy, Clone, Debug)]
pub struct VerifyConfig {
    /// Caps the alphabet size of the exhaustive checks (1–7, 10, 12, 13).
    pub n_cap: Option<usize>,
    /// Caps the alphabet size of the ARF checks (8, 9).
    pub max_arf_n: usize,
    pub seed: u64,
    /// Instances per named move direction and per corollary (11).
    pub instances: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { n_cap: None, max_arf_n: 16, seed: DEFAULT_SEED, instances: 20 }
    }
}

impl VerifyConfig {
    fn bound(&self, stated: usize) -> usize {
        self.n_cap.map_or(stated, |c| c.min(stated))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    #[serde(rename = "elapsed_ms", serialize_with = "millis")]
    pub elapsed: Duration,
}

fn millis<S: serde::Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_u128(d.as_millis())
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{status}] {:>2}. {} ({:.2?}): {}", self.id, self.name, self.elapsed, self.detail)
    }
}

pub const CRITERIA: [(u8, &str); 13] = [
    (1, "invariance under moves"),
    (2, "standard pair within n-2 cycles"),
    (3, "farthest-pair equivalence"),
    (4, "PWOR normalization"),
    (5, "classification, class scope"),
    (6, "classification, extended scope"),
    (7, "switch graphs connected"),
    (8, "ARF block formula"),
    (9, "type separation by ARF"),
    (10, "hyperelliptic uniqueness"),
    (11, "move catalog replay"),
    (12, "irreducible counts"),
    (13, "good or degenerate* witness"),
];

/// Outcome of one check: `Ok(detail)` passes, `Err(detail)` fails.
type Outcome = std::result::Result<String, String>;

/// Runs one criterion by id.
pub fn run_criterion(id: u8, cfg: &VerifyConfig) -> CriterionReport {
    let name = CRITERIA.iter().find(|c| c.0 == id).map_or("unknown", |c| c.1);
    let start = Instant::now();
    let outcome = match id {
        1 => invariance(cfg.bound(6)),
        2 => standard_distance(cfg.bound(7)),
        3 => farthest_pairs(cfg.bound(6)),
        4 => pwor(cfg.bound(7)),
        5 => classification(cfg.bound(7), Scope::Class),
        6 => classification(cfg.bound(6), Scope::Extended),
        7 => switch_connectivity(cfg.bound(7), cfg.bound(6)),
        8 => arf_formula(cfg.max_arf_n.min(16)),
        9 => arf_separation(cfg.max_arf_n.min(16)),
        10 => hyperelliptic(cfg.bound(8)),
        11 => catalog_replay(cfg.seed, cfg.instances, 12),
        12 => irreducible_counts(cfg.bound(7)),
        13 => good_witnesses(cfg.bound(7)),
        _ => Err(format!("no criterion {id}")),
    };
    let (passed, detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    CriterionReport { id, name, passed, detail, elapsed: start.elapsed() }
}

/// Runs all criteria in order.
pub fn run_all(cfg: &VerifyConfig) -> Vec<CriterionReport> {
    CRITERIA.iter().map(|&(id, _)| run_criterion(id, cfg)).collect()
}

fn fail<E: fmt::Display>(e: E) -> String {
    e.to_string()
}

fn check(ok: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn invariance(max_n: usize) -> Outcome {
    let mut pairs = 0;
    for n in 2..=max_n {
        all_irreducible(n).par_iter().try_for_each(|p| -> std::result::Result<(), String> {
            let (s, m, pl, arf) = (s_map(p).map_err(fail)?, m_value(p).map_err(fail)?, p_list(p).map_err(fail)?, arf_count(p).map_err(fail)?);
            for mv in Move::ALL {
                let q = apply_move(p, mv).map_err(fail)?;
                check(p_list(&q).map_err(fail)? == pl, || format!("P changes under {mv}: {p} -> {q}"))?;
                check(arf_count(&q).map_err(fail)? == arf, || format!("ARF changes under {mv}: {p} -> {q}"))?;
                if mv.side == crate::moves::Side::Right {
                    check(s_map(&q).map_err(fail)? == s, || format!("S changes under {mv}: {p} -> {q}"))?;
                    check(m_value(&q).map_err(fail)? == m, || format!("M changes under {mv}: {p} -> {q}"))?;
                }
            }
            Ok(())
        })?;
        pairs += all_irreducible(n).len();
    }
    Ok(format!("{pairs} pairs, n ≤ {max_n}"))
}

fn standard_distance(max_n: usize) -> Outcome {
    let mut pairs = 0;
    for n in 2..=max_n {
        all_irreducible(n).par_iter().try_for_each(|p| -> std::result::Result<(), String> {
            let (q, path) = to_standard(p).map_err(fail)?;
            check(q.is_standard(), || format!("{p} -> {q} is not standard"))?;
            check(apply_path(p, &path).map_err(fail)? == q, || format!("path from {p} does not replay"))?;
            check(path.cycle_len() <= n.saturating_sub(2), || {
                format!("{p}: {} cycles to a standard pair", path.cycle_len())
            })
        })?;
        pairs += all_irreducible(n).len();
    }
    Ok(format!("{pairs} pairs, n ≤ {max_n}"))
}

/// Distance n−2, no irreducible single-letter restriction away from the row
/// ends, and STAR membership, compared pair by pair.
fn farthest_pairs(max_n: usize) -> Outcome {
    let mut disagree = Vec::new();
    let mut far_count = 0;
    for n in 2..=max_n {
        for p in all_irreducible(n) {
            let far = distance_to_standard(&p) == n - 2;
            let ends = [p.first(0), p.first(1), p.last(0), p.last(1)];
            let no_restriction = p.letters().filter(|b| !ends.contains(b)).all(|b| {
                let keep: Vec<Letter> = p.letters().filter(|&l| l != b).collect();
                !restrict(&p, &keep).is_ok_and(|r| r.is_irreducible())
            });
            let star = is_star(&p).is_some();
            far_count += far as usize;
            if far != no_restriction || far != star {
                disagree.push(format!("{p} (distance {far}, restriction {no_restriction}, STAR {star})"));
            }
        }
    }
    if disagree.is_empty() {
        Ok(format!("{far_count} farthest pairs, n ≤ {max_n}"))
    } else {
        Err(format!("conditions disagree on {}: {}", disagree.len(), disagree.join("; ")))
    }
}

fn pwor(max_n: usize) -> Outcome {
    let mut pairs = 0;
    for n in 2..=max_n {
        let classes = LabeledClasses::new(n, Scope::Class).map_err(fail)?;
        let all = all_irreducible(n);
        all.par_iter().try_for_each(|p| -> std::result::Result<(), String> {
            let walk = to_pwor(p).map_err(|e| format!("{p}: {e}"))?;
            check(is_pwor(&walk.pair).is_some(), || format!("{p} -> {} is not PWOR", walk.pair))?;
            check(apply_path(p, &walk.path).map_err(fail)? == walk.pair, || format!("path from {p} does not replay"))?;
            check(classes.class_of(&walk.pair) == classes.class_of(p), || {
                format!("{p} -> {} leaves the labeled class", walk.pair)
            })
        })?;
        pairs += all.len();
    }
    Ok(format!("{pairs} pairs, n ≤ {max_n}"))
}

/// Signature equality against the breadth-first partition: constant on each
/// class, and `same_class` false between class representatives.
fn classification(max_n: usize, scope: Scope) -> Outcome {
    let mut total = (0, 0);
    for n in 2..=max_n {
        let classes = LabeledClasses::new(n, scope).map_err(fail)?.unlabeled().map_err(fail)?;
        let reps: Vec<Pair> = classes.iter().map(|c| Pair::from_one_row(&c[0]).map_err(fail)).collect::<std::result::Result<_, _>>()?;
        classes.par_iter().zip(&reps).try_for_each(|(images, rep)| -> std::result::Result<(), String> {
            for pi in &images[1..] {
                let p = Pair::from_one_row(pi).map_err(fail)?;
                check(same_class(rep, &p, scope).map_err(fail)?, || format!("{rep} and {p} share a class but not a signature"))?;
            }
            Ok(())
        })?;
        for (i, a) in reps.iter().enumerate() {
            for b in &reps[i + 1..] {
                check(!same_class(a, b, scope).map_err(fail)?, || {
                    format!("{a} and {b} lie in different classes but share {}", signature(a, scope).unwrap())
                })?;
            }
        }
        total.0 += classes.len();
        total.1 += classes.iter().map(Vec::len).sum::<usize>();
    }
    Ok(format!("{} classes over {} permutations, n ≤ {max_n}", total.0, total.1))
}

/// One labeled class per non-labeled class; the others are renamings of it.
fn switch_connectivity(class_n: usize, ext_n: usize) -> Outcome {
    let mut counts = [0, 0];
    for (k, (scope, max_n)) in [(Scope::Class, class_n), (Scope::Extended, ext_n)].into_iter().enumerate() {
        for n in 2..=max_n {
            let classes = LabeledClasses::new(n, scope).map_err(fail)?.unlabeled().map_err(fail)?;
            classes.par_iter().try_for_each(|images| -> std::result::Result<(), String> {
                let p = Pair::from_one_row(&images[0]).map_err(fail)?;
                let members = enumerate_class(&p, scope).map_err(fail)?;
                check(switch_graph_connected(&members, scope).map_err(fail)?, || {
                    format!("switch graph of the {scope:?} class of {p} is disconnected")
                })
            })?;
            counts[k] += classes.len();
        }
    }
    Ok(format!("{} classes (n ≤ {class_n}), {} extended classes (n ≤ {ext_n})", counts[0], counts[1]))
}

/// All block words over {1, 2, 4, 5} with total at most `room`; 1s separate chains.
fn block_layouts(room: usize) -> Vec<Vec<Vec<usize>>> {
    fn go(room: usize, cur: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        out.push(cur.clone());
        for b in [1, 2, 4, 5] {
            if b > room {
                continue;
            }
            if b == 1 {
                cur.push(Vec::new());
            } else {
                cur.last_mut().unwrap().push(b);
            }
            go(room - b, cur, out);
            if b == 1 {
                cur.pop();
            } else {
                cur.last_mut().unwrap().pop();
            }
        }
    }
    let mut out = Vec::new();
    go(room, &mut vec![Vec::new()], &mut out);
    out
}

fn block_counts(layout: &[Vec<usize>]) -> [u32; 4] {
    let count = |b| layout.iter().flatten().filter(|&&x| x == b).count() as u32;
    [layout.len() as u32 - 1, count(2), count(4), count(5)]
}

fn arf_formula(max_n: usize) -> Outcome {
    for (p, want) in [("a z / z a", 3u32), ("a b c z / z c b a", 10), ("a b c d e z / z e d c b a", 28)] {
        let p = Pair::parse(p).map_err(fail)?;
        check(arf_count(&p).map_err(fail)? == BigUint::from(want), || format!("anchor {p} is not {want}"))?;
    }
    let layouts = block_layouts(max_n.saturating_sub(2));
    layouts.par_iter().try_for_each(|layout| -> std::result::Result<(), String> {
        let p = layout_pair(layout);
        check(is_pwor(&p).is_some(), || format!("{p} is not PWOR"))?;
        let [n1, n2, n4, n5] = block_counts(layout);
        let (got, want) = (arf_count(&p).map_err(fail)?, arf_by_blocks(n1, n2, n4, n5));
        check(got == want, || format!("{p}: ARF {got}, formula {want}"))
    })?;
    Ok(format!("{} PWOR pairs, n ≤ {max_n}, anchors 3/10/28", layouts.len()))
}

/// Chain lists with one `special` chain and the others drawn from `others`,
/// within `room` letters (separators included).
fn typed_layouts(special: &[Vec<usize>], others: &[Vec<usize>], room: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    for s in special {
        let base: usize = s.iter().sum();
        let mut stack: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
        while let Some(rest) = stack.pop() {
            let used = base + rest.iter().map(|c| c.iter().sum::<usize>() + 1).sum::<usize>();
            for j in 0..=rest.len() {
                let mut layout = rest.clone();
                layout.insert(j, s.clone());
                out.push(layout);
            }
            for o in others {
                if used + o.iter().sum::<usize>() < room {
                    let mut next = rest.clone();
                    next.push(o.clone());
                    stack.push(next);
                }
            }
        }
    }
    out
}

/// Equal-P pairs of Type 2 against Type 4 and Type 5: the 4-block becomes two
/// 2-blocks, the 5-block two 2-block chains.
fn arf_separation(max_n: usize) -> Outcome {
    let room = max_n.saturating_sub(2);
    let twos = |c| vec![2; c];
    let two_chains: Vec<Vec<usize>> = (0..=room / 2).map(twos).collect();
    let fours: Vec<Vec<usize>> = (0..=room.saturating_sub(4) / 2).map(|m| [vec![4], twos(m)].concat()).collect();
    let cases = [
        (TypeTag::T4, typed_layouts(&fours, &two_chains, room), 3),
        (TypeTag::T5, typed_layouts(&[vec![5]], &[vec![], vec![2]], room), 4),
    ]
    .map(|(tag, mut layouts, shift)| {
        // a lone 4- or 5-block is Type 1
        layouts.retain(|l| type_of_shape(l) == Some(tag));
        (tag, layouts, shift)
    });
    let mut checked = [0, 0];
    for (k, (tag, layouts, shift)) in cases.into_iter().enumerate() {
        for layout in &layouts {
            let twin: Vec<Vec<usize>> = layout
                .iter()
                .flat_map(|c| match c.first() {
                    Some(4) => vec![[vec![2, 2], c[1..].to_vec()].concat()],
                    Some(5) => vec![vec![2], vec![2]],
                    _ => vec![c.clone()],
                })
                .collect();
            let (p, q) = (layout_pair(layout), layout_pair(&twin));
            check(type_of(&p).map_err(fail)? == Some(tag), || format!("{p} is not Type {tag}"))?;
            check(type_of(&q).map_err(fail)? == Some(TypeTag::T2), || format!("{q} is not Type T2"))?;
            let pl = p_list(&p).map_err(fail)?;
            check(pl == p_list(&q).map_err(fail)?, || format!("{p} and {q} differ in P"))?;
            let [n1, n2, _, _] = block_counts(layout);
            let gap = BigUint::from(1u32) << (n1 + n2 + shift) as usize;
            let (ap, aq) = (arf_count(&p).map_err(fail)?, arf_count(&q).map_err(fail)?);
            check(aq.clone() - &ap == gap && aq > ap, || format!("{p} vs {q}: ARF {ap} vs {aq}, expected gap {gap}"))?;
        }
        checked[k] = layouts.len();
    }
    Ok(format!("{} T4/T2 and {} T5/T2 pairs, n ≤ {max_n}", checked[0], checked[1]))
}

fn hyperelliptic(max_n: usize) -> Outcome {
    let mut sizes = Vec::new();
    for n in 2..=max_n {
        let p = Pair::from_one_row(&(1..=n).rev().collect::<Vec<_>>()).map_err(fail)?;
        let members = enumerate_class(&p, Scope::Class).map_err(fail)?;
        let standard = members.iter().filter(|q| q.is_standard()).count();
        check(standard == 1, || format!("class of {p} holds {standard} standard pairs"))?;
        sizes.push(members.len());
    }
    Ok(format!("n ≤ {max_n}, class sizes {sizes:?}"))
}

/// Named moves with random filler, and corollaries with a random segment
/// length followed by shuffled filler letters; both replayed switch by switch.
fn catalog_replay(seed: u64, per: usize, max_n: usize) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut runs = 0;
    for spec in MOVES {
        for d in [Direction::Forward, Direction::Reverse] {
            let want = match d {
                Direction::Forward => spec.target_pair(),
                Direction::Reverse => spec.source_pair(),
            };
            let pattern = want.top_tokens();
            for _ in 0..per {
                let (p, m) = random_instance(spec, d, &mut rng, max_n).map_err(fail)?;
                let label = format!("{} {d:?} on {p}", spec.id);
                let (q, seq) = apply_named_move(&p, &m).map_err(|e| format!("{label}: {e}"))?;
                check(apply_switches(&p, &seq).map_err(fail)?.0 == q, || format!("{label}: switches do not replay"))?;
                let got = restrict_tokens(&q, &pattern).map_err(fail)?;
                check(got == want, || format!("{label}: reached {got}, expected {want}"))?;
                runs += 1;
            }
        }
    }
    for c in Corollary::ALL {
        for _ in 0..per {
            let (p, m, k) = corollary_with_filler(c, &mut rng, max_n)?;
            let label = format!("{} (m={m}, k={k}) on {p}", c.id());
            let (q, seq) = apply_corollary(&p, c, m, k).map_err(|e| format!("{label}: {e}"))?;
            check(apply_switches(&p, &seq).map_err(fail)?.0 == q, || format!("{label}: switches do not replay"))?;
            let shape = c.target_shape(m, k);
            let len: usize = shape.iter().sum();
            check(region_blocks(&q, 1, 1 + len).as_deref() == Some(&shape[..]), || format!("{label}: reached {q}"))?;
            check(q.row(0)[1 + len..] == p.row(0)[1 + len..], || format!("{label}: filler moved"))?;
            runs += 1;
        }
    }
    Ok(format!("{runs} instances, n ≤ {max_n}, seed {seed:#x}"))
}

fn corollary_with_filler(c: Corollary, rng: &mut ChaCha8Rng, max_n: usize) -> std::result::Result<(Pair, usize, usize), String> {
    let options: Vec<(usize, usize)> = (0..=4)
        .flat_map(|m| (0..=2).map(move |k| (m, k)))
        .filter(|&(m, k)| match c {
            Corollary::FourBlocksLeft => k <= m,
            Corollary::AbUcVUcVba => true,
            _ => k == 0,
        })
        .filter(|&(m, k)| corollary_instance(c, m, k, 0).is_ok_and(|p| p.n() <= max_n))
        .collect();
    let &(m, k) = options.choose(rng).ok_or_else(|| format!("{}: no instance fits in {max_n} letters", c.id()))?;
    let base = corollary_instance(c, m, k, 0).map_err(fail)?;
    let n = base.n();
    let fillers: Vec<String> = (1..=rng.gen_range(0..=max_n - n)).map(|i| format!("x{i}")).collect();
    let mut rows: Vec<Vec<String>> = (0..2).map(|e| base.row(e).iter().map(|&l| base.token(l).to_string()).collect()).collect();
    for row in rows.iter_mut() {
        let mut order = fillers.clone();
        order.shuffle(rng);
        for x in order {
            // between the separator `s` and the final letter
            let at = rng.gen_range(n - 1..row.len());
            row.insert(at, x);
        }
    }
    Ok((Pair::from_tokens(&rows[0], &rows[1]).map_err(fail)?, m, k))
}

fn irreducible_counts(max_n: usize) -> Outcome {
    let mut counts = Vec::new();
    for n in 2..=max_n {
        let (brute, listed) = (count_indecomposable(n), all_irreducible(n).len());
        check(brute == listed, || format!("n = {n}: prefix test {brute}, irreducibility test {listed}"))?;
        let classes = LabeledClasses::new(n, Scope::Class).map_err(fail)?.unlabeled().map_err(fail)?;
        let covered: usize = classes.iter().map(Vec::len).sum();
        check(covered == brute, || format!("n = {n}: classes cover {covered} of {brute}"))?;
        counts.push(brute);
    }
    Ok(format!("counts {counts:?} for n = 2..={max_n}"))
}

fn good_witnesses(max_n: usize) -> Outcome {
    let mut classes_seen = 0;
    for n in 4..=max_n {
        let labeled = LabeledClasses::new(n, Scope::Class).map_err(fail)?;
        let reps: HashMap<usize, Pair> = all_irreducible(n)
            .into_iter()
            .map(|p| (labeled.class_of(&p).expect("enumerated"), p))
            .collect::<HashMap<_, _>>();
        reps.par_iter().try_for_each(|(&i, p)| -> std::result::Result<(), String> {
            let (q, w) = find_good_or_degenerate(p).map_err(|e| format!("{p}: {e}"))?;
            let valid = match w {
                Witness::Good => is_good(&q),
                Witness::DegenerateStar => is_degenerate_star(&q),
            };
            check(valid, || format!("{p}: {q} is not a valid {w:?} witness"))?;
            check(labeled.class_of(&q) == Some(i), || format!("{p}: witness {q} leaves the labeled class"))
        })?;
        classes_seen += reps.len();
    }
    Ok(format!("{classes_seen} labeled classes, 4 ≤ n ≤ {max_n}"))
}

/// Whether every criterion passed.
pub fn all_passed(reports: &[CriterionReport]) -> bool {
    reports.iter().all(|r| r.passed)
}
