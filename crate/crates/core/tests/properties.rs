use std::collections::{HashSet, VecDeque};

use proptest::prelude::*;

use hessgkm::gkm::{fixed_points, induced_subgraph, isomorphism_check};
use hessgkm::hessenberg::{
    catalan, corresponding_generator, ell_h, enumerate_hessenberg, generators, is_generator,
    HessenbergFunction,
};
use hessgkm::order::{bruhat_leq, bruhat_leq_all_prefixes, h_bruhat_leq, saturated_chain};
use hessgkm::patterns::{avoids_all, PatternSet};
use hessgkm::perm::Permutation;

fn perm_strategy(max_n: usize) -> impl Strategy<Value = Permutation> {
    (1..=max_n)
        .prop_flat_map(|n| Just((1..=n as u8).collect::<Vec<u8>>()).prop_shuffle())
        .prop_map(|w| Permutation::from_word(w).unwrap())
}

fn hess_for(n: usize) -> impl Strategy<Value = HessenbergFunction> {
    let all = enumerate_hessenberg(n);
    (0..all.len()).prop_map(move |i| all[i].clone())
}

fn perm_and_hess(max_n: usize) -> impl Strategy<Value = (Permutation, HessenbergFunction)> {
    perm_strategy(max_n).prop_flat_map(|w| {
        let n = w.n();
        (Just(w), hess_for(n))
    })
}

// Upward closure under u -> u(i,j) with u(i) < u(j) and j <= h(i).
fn h_closure(u: &Permutation, h: &HessenbergFunction) -> HashSet<Vec<u8>> {
    let n = u.n();
    let mut seen = HashSet::from([u.word().to_vec()]);
    let mut queue = VecDeque::from([u.word().to_vec()]);
    while let Some(x) = queue.pop_front() {
        for i in 0..n {
            for j in i + 1..n {
                if j < h.values()[i] as usize && x[i] < x[j] {
                    let mut y = x.clone();
                    y.swap(i, j);
                    if seen.insert(y.clone()) {
                        queue.push_back(y);
                    }
                }
            }
        }
    }
    seen
}

proptest! {
    #[test]
    fn rank_round_trips(w in perm_strategy(9)) {
        prop_assert_eq!(Permutation::unrank(w.n(), w.rank()).unwrap(), w);
    }

    #[test]
    fn inverse_composes_to_identity(w in perm_strategy(9)) {
        prop_assert!(w.compose(&w.inverse()).unwrap().is_identity());
        prop_assert_eq!(w.inverse().length(), w.length());
    }

    #[test]
    fn string_form_round_trips(w in perm_strategy(9)) {
        prop_assert_eq!(w.to_string().parse::<Permutation>().unwrap(), w);
    }

    #[test]
    fn full_h_length_is_length(w in perm_strategy(8)) {
        prop_assert_eq!(ell_h(&w, &HessenbergFunction::full(w.n())).unwrap(), w.length());
    }

    #[test]
    fn tableau_variants_agree(u in perm_strategy(7), seed in any::<u64>()) {
        let v = Permutation::unrank(u.n(), seed % (1..=u.n() as u64).product::<u64>()).unwrap();
        prop_assert_eq!(bruhat_leq(&u, &v).unwrap(), bruhat_leq_all_prefixes(&u, &v).unwrap());
    }

    #[test]
    fn h_order_refines_bruhat((u, h) in perm_and_hess(6), seed in any::<u64>()) {
        let v = Permutation::unrank(u.n(), seed % (1..=u.n() as u64).product::<u64>()).unwrap();
        if h_bruhat_leq(&u, &v, &h).unwrap() {
            prop_assert!(bruhat_leq(&u, &v).unwrap());
        }
    }

    #[test]
    fn corresponding_generator_is_a_generator((w, h) in perm_and_hess(7)) {
        let g = corresponding_generator(&w, &h).unwrap();
        prop_assert!(is_generator(&g, &h).unwrap());
        if is_generator(&w, &h).unwrap() {
            prop_assert_eq!(g, w);
        }
    }

    #[test]
    fn translated_graphs_match((w, h) in perm_and_hess(6)) {
        let g = corresponding_generator(&w, &h).unwrap();
        prop_assert_eq!(fixed_points(&w, &h).unwrap().len(), fixed_points(&g, &h).unwrap().len());
        prop_assert!(isomorphism_check(&w, &h).unwrap());
    }
}

#[test]
fn h_order_matches_closure() {
    for n in 1..=5 {
        let all: Vec<Permutation> = Permutation::all(n).collect();
        for h in enumerate_hessenberg(n) {
            for u in &all {
                let above = h_closure(u, &h);
                for v in &all {
                    assert_eq!(
                        h_bruhat_leq(u, v, &h).unwrap(),
                        above.contains(v.word()),
                        "{u} {v} {h}"
                    );
                }
            }
        }
    }
}

// w is a generator iff w^-1(w(i)+1) <= h(i) whenever w(i) < n.
#[test]
fn generators_match_definition() {
    for n in 1..=6 {
        let mut total = 0;
        for h in enumerate_hessenberg(n) {
            let listed: HashSet<Permutation> = generators(&h).into_iter().collect();
            for w in Permutation::all(n) {
                let by_hand = (1..=n).all(|i| {
                    let x = w.at(i);
                    x == n || w.position_of(x + 1) <= h.at(i)
                });
                assert_eq!(listed.contains(&w), by_hand, "{w} {h}");
            }
            total += listed.len();
        }
        assert!(total > 0);
    }
    assert_eq!(enumerate_hessenberg(6).len() as u64, catalan(6));
}

// for a generator the vertex set is the Bruhat upper interval
#[test]
fn generator_vertices_are_upper_intervals() {
    for n in 1..=5 {
        for h in enumerate_hessenberg(n) {
            for w in generators(&h) {
                let g = induced_subgraph(&w, &h).unwrap();
                for u in Permutation::all(n) {
                    assert_eq!(g.contains(&u), bruhat_leq(&w, &u).unwrap(), "{w} {h} {u}");
                }
            }
        }
    }
}

#[test]
fn chains_are_saturated() {
    let h: HessenbergFunction = "3,3,4,4".parse().unwrap();
    let u: Permutation = "2134".parse().unwrap();
    let v = Permutation::longest(4);
    let chain = saturated_chain(&u, &v, Some(&h)).unwrap().unwrap();
    assert_eq!(chain.first(), Some(&u));
    assert_eq!(chain.last(), Some(&v));
    for pair in chain.windows(2) {
        assert_eq!(pair[1].length(), pair[0].length() + 1);
        assert!(h_bruhat_leq(&pair[0], &pair[1], &h).unwrap());
    }
    assert!(saturated_chain(&v, &u, None).is_err());
}

#[test]
fn full_h_reduces_to_classical_patterns() {
    for n in 1..=6 {
        let h = HessenbergFunction::full(n);
        for w in Permutation::all(n) {
            let classical = w
                .contains_classical_pattern(&"2143".parse().unwrap())
                .is_none()
                && w.contains_classical_pattern(&"1324".parse().unwrap())
                    .is_none();
            assert_eq!(
                avoids_all(&w, &h, PatternSet::General10).unwrap().0,
                classical,
                "{w}"
            );
        }
    }
}
