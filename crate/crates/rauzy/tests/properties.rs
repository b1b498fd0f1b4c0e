//! Randomized laws on pairs larger than the exhaustive range.

use proptest::prelude::*;
use rauzy::classify::{canonical_form, normalize_type, same_class, signature, type_of};
use rauzy::invariants::Scope;
use rauzy::moves::{apply_move, apply_path, Move};
use rauzy::pair::Pair;
use rauzy::switches::{apply_switches, inner_switch, is_pwor, switch_neighbours};

fn irreducible(max_n: usize) -> impl Strategy<Value = Pair> {
    (4..=max_n)
        .prop_flat_map(|n| Just((1..=n).collect::<Vec<_>>()).prop_shuffle())
        .prop_map(|pi| Pair::from_one_row(&pi).unwrap())
        .prop_filter("irreducible", Pair::is_irreducible)
}

fn moves(len: usize) -> impl Strategy<Value = Vec<Move>> {
    prop::collection::vec(prop::sample::select(Move::ALL.to_vec()), 0..len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normalization_replays(p in irreducible(11)) {
        let norm = normalize_type(&p).unwrap();
        prop_assert!(is_pwor(&norm.pair).is_some());
        prop_assert_eq!(type_of(&norm.pair).unwrap(), Some(norm.type_tag));
        prop_assert_eq!(apply_path(&p, &norm.path).unwrap(), norm.pair.clone());
        let start = apply_path(&p, &rauzy::to_standard(&p).unwrap().1).unwrap();
        prop_assert_eq!(apply_switches(&start, &norm.switches).unwrap().0, norm.pair);
    }

    #[test]
    fn signatures_survive_moves(p in irreducible(10), seq in moves(12)) {
        let (class, ext) = (signature(&p, Scope::Class).unwrap(), signature(&p, Scope::Extended).unwrap());
        let mut q = p.clone();
        let mut right_only = true;
        for m in seq {
            q = apply_move(&q, m).unwrap();
            right_only &= m.side == rauzy::Side::Right;
            prop_assert_eq!(signature(&q, Scope::Extended).unwrap(), ext.clone());
            if right_only {
                prop_assert_eq!(signature(&q, Scope::Class).unwrap(), class.clone());
            }
        }
    }

    #[test]
    fn canonical_form_is_a_fixed_point(p in irreducible(10)) {
        let c = canonical_form(&p).unwrap();
        prop_assert!(same_class(&p, &c, Scope::Class).unwrap());
        prop_assert_eq!(canonical_form(&c).unwrap(), c);
    }

    #[test]
    fn inner_switches_are_involutions(p in irreducible(9)) {
        let (p, _) = rauzy::to_standard(&p).unwrap();
        for (_, q) in switch_neighbours(&p, false) {
            let mut back = false;
            for b in q.letters() {
                for c in q.letters() {
                    back |= inner_switch(&q, b, c).is_ok_and(|(r, _)| r == p);
                }
            }
            prop_assert!(back, "{} has no switch back to {}", q, p);
        }
    }
}
