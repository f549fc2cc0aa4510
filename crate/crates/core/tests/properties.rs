//! Randomized invariants. Run alone with `cargo test --release --test properties`.

use diffcap::brute;
use diffcap::jsr::{capacity, product_bracket, CapacityMode, Certificate};
use diffcap::patterns::{avoids, difference, expand_extended, negate_set, zero_params};
use diffcap::positivity::{
    build_automaton, decide_positive, decide_positive_extended, nae3sat_brute, naive_contains,
    reduce_nae3sat, shortest_admissible, Literal, Nae3SatInstance,
};
use diffcap::transfer::{build_sigma, product_norm_delta};
use diffcap::{BinWord, DiffWord, Pattern, PatternSet, Symbol};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};

fn symbol() -> impl Strategy<Value = Symbol> {
    prop_oneof![Just(Symbol::Minus), Just(Symbol::Zero), Just(Symbol::Plus)]
}

fn ext_symbol() -> impl Strategy<Value = Symbol> {
    prop_oneof![
        Just(Symbol::Minus),
        Just(Symbol::Zero),
        Just(Symbol::Plus),
        Just(Symbol::PlusMinus)
    ]
}

fn pattern_set(max_len: usize, max_count: usize) -> impl Strategy<Value = PatternSet> {
    prop::collection::vec(prop::collection::vec(symbol(), 1..=max_len), 1..=max_count).prop_map(
        |ps| PatternSet::new(ps.into_iter().map(|s| Pattern::new(s).unwrap())).unwrap(),
    )
}

/// Sets whose patterns all contain a nonzero symbol and whose longest pattern
/// has length at least 2, the shape the corpus uses.
fn corpus_like_set(max_len: usize) -> impl Strategy<Value = PatternSet> {
    pattern_set(max_len, 3).prop_filter("needs m ≥ 2 and no all-zero pattern", |d| {
        d.m() >= 2 && !d.has_all_zero_pattern()
    })
}

fn bin_pair(max_len: usize) -> impl Strategy<Value = (BinWord, BinWord)> {
    (1..=max_len).prop_flat_map(|n| {
        (
            prop::collection::vec(any::<bool>(), n),
            prop::collection::vec(any::<bool>(), n),
        )
            .prop_map(|(u, v)| (BinWord::new(u), BinWord::new(v)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn difference_is_antisymmetric((u, v) in bin_pair(24)) {
        let uv = difference(&u, &v).unwrap();
        let vu = difference(&v, &u).unwrap();
        prop_assert_eq!(uv, vu.negate());
    }

    #[test]
    fn avoidance_commutes_with_negation(
        w in prop::collection::vec(symbol(), 0..20),
        d in pattern_set(4, 3),
    ) {
        let w = DiffWord::new(w).unwrap();
        prop_assert_eq!(avoids(&w, &d), avoids(&w.negate(), &negate_set(&d)));
    }

    #[test]
    fn zero_params_survive_negation(d in pattern_set(6, 4)) {
        prop_assert_eq!(zero_params(&d), zero_params(&negate_set(&d)));
    }

    #[test]
    fn expansion_cardinality(p in prop::collection::vec(ext_symbol(), 1..=8)) {
        let k = p.iter().filter(|&&s| s == Symbol::PlusMinus).count();
        let d = PatternSet::new([Pattern::new(p).unwrap()]).unwrap();
        let e = expand_extended(&d);
        prop_assert_eq!(e.len(), 1 << k);
        prop_assert!(!e.is_extended());
        prop_assert_eq!(d.expansion_size(), 1u128 << k);
    }

    #[test]
    fn expansion_of_sets_is_bounded_by_sum(
        ps in prop::collection::vec(prop::collection::vec(ext_symbol(), 1..=5), 1..=4),
    ) {
        let d = PatternSet::new(ps.into_iter().map(|p| Pattern::new(p).unwrap())).unwrap();
        let e = expand_extended(&d);
        prop_assert!(e.len() as u128 <= d.expansion_size());
        prop_assert_eq!(e.m(), d.m());
        prop_assert!(e.patterns().iter().all(|p| d.patterns().iter().any(|q| q.len() == p.len())));
    }
}

#[test]
fn automaton_matches_naive_scan_on_random_texts() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(7);
    let alphabet = [Symbol::Minus, Symbol::Zero, Symbol::Plus];
    for _ in 0..20 {
        let count = rng.gen_range(1..=4);
        let pats = (0..count).map(|_| {
            let len = rng.gen_range(1..=5);
            Pattern::new((0..len).map(|_| alphabet[rng.gen_range(0..3)]).collect()).unwrap()
        });
        let p = PatternSet::new(pats).unwrap().symmetric_closure();
        let a = build_automaton(&p);
        let mut hits = 0;
        for _ in 0..1000 {
            let len = rng.gen_range(0..=30);
            let text: Vec<Symbol> = (0..len).map(|_| alphabet[rng.gen_range(0..3)]).collect();
            let naive = naive_contains(&p, &text);
            assert_eq!(a.accepts(&text), naive, "{p} on {:?}", DiffWord::new(text.clone()));
            hits += naive as usize;
        }
        assert!(hits > 0 || p.m() > 4, "{p}: no text contained a pattern");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn brute_is_monotone_and_submultiplicative(d in corpus_like_set(3)) {
        let delta: Vec<usize> = (1..=6).map(|n| brute::max_code(n, &d).unwrap().0).collect();
        for n in 1..6 {
            prop_assert!(delta[n - 1] <= delta[n], "{}: {:?}", d, delta);
        }
        for a in 1..=3 {
            for b in 1..=3 {
                prop_assert!(delta[a + b - 1] <= delta[a - 1] * delta[b - 1], "{}: {:?}", d, delta);
            }
        }
    }

    #[test]
    fn witness_codes_avoid_the_set(d in corpus_like_set(3), n in 1usize..=6) {
        let (size, code) = brute::max_code(n, &d).unwrap();
        prop_assert_eq!(code.len(), size);
        prop_assert!(code.avoids(&d));
    }

    #[test]
    fn product_norms_count_codes(d in corpus_like_set(4), n in 1usize..=3) {
        let fam = build_sigma(&d).unwrap();
        let w = fam.window;
        let (size, _) = brute::max_code(w - 1 + n, &d).unwrap();
        prop_assert_eq!(product_norm_delta(&fam, n).unwrap(), size as u64);
    }

    #[test]
    fn positivity_agrees_with_exhaustive_search(d in pattern_set(4, 3)) {
        let depth = 2 * d.total_len() + 2 * d.m();
        let brute_word = brute::admissible_word_search(&d, depth);
        prop_assert_eq!(decide_positive(&d), brute_word.is_some(), "{}", d);
        if let (Some(w), Some(b)) = (shortest_admissible(&d), brute_word) {
            prop_assert_eq!(w.len(), b.len());
            prop_assert!(w.len() <= depth);
            prop_assert!(avoids(&w, &d.symmetric_closure()));
        }
    }
}

fn nae_instance(max_vars: usize, max_clauses: usize) -> impl Strategy<Value = Nae3SatInstance> {
    (3..=max_vars).prop_flat_map(move |vars| {
        let clause = (
            prop::sample::subsequence((1..=vars).collect::<Vec<_>>(), 3),
            [any::<bool>(), any::<bool>(), any::<bool>()],
        )
            .prop_map(|(v, neg)| [0, 1, 2].map(|i| Literal::new(v[i], neg[i])));
        prop::collection::vec(clause, 1..=max_clauses)
            .prop_map(move |clauses| Nae3SatInstance::new(vars, clauses).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reduction_preserves_satisfiability(inst in nae_instance(6, 4)) {
        let d = reduce_nae3sat(&inst).unwrap();
        prop_assert_eq!(decide_positive_extended(&d).unwrap(), nae3sat_brute(&inst).unwrap());
    }
}

#[test]
fn certificates_reverify_independently() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(11);
    let alphabet = ['-', '0', '+'];
    let mut certified = 0;
    let mut tried = 0;
    while certified < 12 && tried < 200 {
        tried += 1;
        let k = rng.gen_range(1..=2);
        let list: Vec<String> = (0..k)
            .map(|_| {
                let len = rng.gen_range(2..=3);
                (0..len).map(|_| alphabet[rng.gen_range(0..3)]).collect()
            })
            .collect();
        let Ok(d) = PatternSet::from_list(&list.join(" ")) else { continue };
        if d.has_all_zero_pattern() || !decide_positive(&d) {
            continue;
        }
        let report = capacity(&d, CapacityMode::Certify).unwrap();
        let Some(cert) = report.certificate else { continue };
        let fam = build_sigma(&d).unwrap();
        let reread = Certificate::from_json(&cert.to_json()).unwrap();
        assert!(reread.verify(&fam).unwrap(), "{d}");

        // the same polytope cannot be invariant for a smaller λ
        let mut shrunk = reread.clone();
        shrunk.lambda *= 0.99;
        assert!(!shrunk.verify(&fam).unwrap(), "{d}");

        let bracket = product_bracket(&fam, 6).unwrap();
        assert!(bracket.lower <= cert.lambda * (1.0 + 1e-9), "{d}");
        assert!(cert.lambda <= bracket.upper * (1.0 + 1e-9), "{d}");
        certified += 1;
    }
    assert!(certified >= 8, "only {certified} certified out of {tried}");
}
