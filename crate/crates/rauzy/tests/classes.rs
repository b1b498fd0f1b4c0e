//! Exhaustive checks of the classification against breadth-first class
//! closures at small sizes.

use std::collections::HashSet;

use rauzy::classify::{canonical_form, canonical_form_extended, is_sigma, normalize_type, same_class, signature};
use rauzy::enumerate::{class_census, enumerate_class, LabeledClasses};
use rauzy::invariants::Scope;
use rauzy::pair::{all_irreducible, Pair};
use rauzy::switches::switch_neighbours;

fn unlabeled(n: usize, scope: Scope) -> Vec<Vec<Vec<usize>>> {
    LabeledClasses::new(n, scope).unwrap().unlabeled().unwrap()
}

#[test]
fn type_is_constant_on_extended_classes() {
    for n in 2..=6 {
        for images in unlabeled(n, Scope::Extended) {
            let tags: HashSet<_> = images
                .iter()
                .map(|pi| normalize_type(&Pair::from_one_row(pi).unwrap()).unwrap().type_tag)
                .collect();
            assert_eq!(tags.len(), 1, "n = {n}: {tags:?}");
        }
    }
}

#[test]
fn canonical_forms_lie_in_their_classes() {
    for (scope, max_n) in [(Scope::Class, 7), (Scope::Extended, 6)] {
        for n in 2..=max_n {
            for r in class_census(n, scope).unwrap() {
                let p = Pair::from_one_row(&r.representative.monodromy()).unwrap();
                let images: HashSet<Vec<usize>> =
                    enumerate_class(&p, scope).unwrap().iter().map(Pair::monodromy).collect();
                let canon = match scope {
                    Scope::Class => canonical_form(&p).unwrap(),
                    Scope::Extended => canonical_form_extended(&p).unwrap(),
                };
                assert_eq!(canon, r.representative);
                assert!(images.contains(&canon.monodromy()));
                assert_eq!(signature(&canon, scope).unwrap(), r.signature);
            }
        }
    }
}

#[test]
fn extended_classes_are_unions_of_classes() {
    for n in 2..=6 {
        let ext = unlabeled(n, Scope::Extended);
        for images in unlabeled(n, Scope::Class) {
            assert_eq!(ext.iter().filter(|e| e.binary_search(&images[0]).is_ok()).count(), 1);
            let holder = ext.iter().find(|e| e.binary_search(&images[0]).is_ok()).unwrap();
            assert!(images.iter().all(|pi| holder.binary_search(pi).is_ok()));
        }
    }
}

#[test]
fn same_class_is_exact_at_five() {
    let perms = all_irreducible(5);
    let classes = LabeledClasses::new(5, Scope::Class).unwrap().unlabeled().unwrap();
    let class_of = |p: &Pair| classes.iter().position(|c| c.binary_search(&p.monodromy()).is_ok()).unwrap();
    for p in &perms {
        for q in &perms {
            assert_eq!(same_class(p, q, Scope::Class).unwrap(), class_of(p) == class_of(q), "{p} vs {q}");
        }
    }
}

#[test]
fn sigma_pairs_are_closed_under_switches() {
    let mut sigma = 0;
    for n in 3..=8 {
        for p in all_irreducible(n).into_iter().filter(Pair::is_standard) {
            if !is_sigma(&p).unwrap() {
                continue;
            }
            sigma += 1;
            for (s, q) in switch_neighbours(&p, true) {
                assert!(is_sigma(&q).unwrap(), "{p} --{s}--> {q}");
            }
        }
    }
    assert!(sigma > 0);
}

#[test]
fn order_reversing_classes_hold_one_standard_pair() {
    for n in 2..=8 {
        for p in all_irreducible(n).into_iter().filter(Pair::is_order_reversing) {
            let members = enumerate_class(&p, Scope::Class).unwrap();
            assert_eq!(members.iter().filter(|q| q.is_standard()).count(), 1, "{p}");
        }
    }
}
