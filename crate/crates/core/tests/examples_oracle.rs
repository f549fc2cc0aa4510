//! Worked examples, one test per documented input/output pair.

use diffcap::bounds::{n_for_accuracy, positive_floor, zero_capacity_code_bound};
use diffcap::brute::{self, prop1_code};
use diffcap::jsr::linalg::{leading_eigenpair, to_dmatrix};
use diffcap::jsr::{polytope_iterate, product_bracket};
use diffcap::patterns::{avoids, difference, expand_extended, negate_set, zero_params};
use diffcap::positivity::{build_automaton, decide_positive, shortest_admissible};
use diffcap::transfer::{
    build_sigma, edge_word, edges_compatible, product_norm_delta, BinMatrix, DeBruijnEdge,
    TransferFamily,
};
use diffcap::{BinWord, DiffWord, PatternSet, ZeroParams};

fn set(list: &str) -> PatternSet {
    PatternSet::from_list(list).unwrap()
}

fn word(s: &str) -> DiffWord {
    s.parse().unwrap()
}

fn bin(s: &str) -> BinWord {
    s.parse().unwrap()
}

const PHI: f64 = 1.618_033_988_749_895;

// patterns

#[test]
fn parse_single_pattern_parameters() {
    let d = PatternSet::parse("0++\n").unwrap();
    assert_eq!((d.m(), d.total_len()), (3, 3));
    assert_eq!(zero_params(&d), ZeroParams { r: 1, r1: 1, r2: 0 });
}

#[test]
fn negate_two_patterns() {
    assert_eq!(negate_set(&set("-+0 0--")), set("+-0 0++"));
}

#[test]
fn extended_pattern_expands_to_four() {
    let e = expand_extended(&set("0x+x"));
    assert_eq!(e.len(), 4);
    assert_eq!(e, set("0-+- 0-++ 0++- 0+++"));
}

#[test]
fn difference_of_two_words() {
    assert_eq!(difference(&bin("0110"), &bin("1011")).unwrap(), word("-+0-"));
}

#[test]
fn avoidance_examples() {
    assert!(avoids(&word("0+0+0"), &set("++")));
    assert!(!avoids(&word("-+0-"), &set("+0")));
}

#[test]
fn zero_parameters_of_examples() {
    assert_eq!(zero_params(&set("+0+0+")), ZeroParams { r: 1, r1: 0, r2: 0 });
    for m in 2..=6 {
        let d = set(&format!("{}+", "0".repeat(m - 1)));
        assert_eq!(zero_params(&d), ZeroParams { r: m - 1, r1: m - 1, r2: 0 });
    }
    assert_eq!(zero_params(&set("+-")), ZeroParams { r: 0, r1: 0, r2: 0 });
}

// brute

#[test]
fn leading_zero_singleton_has_constant_delta() {
    for m in 2..=4 {
        let d = set(&format!("{}+", "0".repeat(m - 1)));
        for n in 1..=6 {
            let (size, code) = brute::max_code(n, &d).unwrap();
            assert_eq!(size, 1 << (m - 1).min(n), "m={m} n={n}");
            assert!(code.avoids(&d));
        }
        assert_eq!(zero_capacity_code_bound(&d), 1 << (m - 1));
    }
}

#[test]
fn plus_minus_pairs_at_length_two() {
    assert_eq!(brute::max_code(2, &set("+- ++")).unwrap().0, 2);
}

#[test]
fn proposition_one_code() {
    let code = prop1_code(2, 3).unwrap();
    assert_eq!(code.len(), 8);
    assert_eq!(code.word_len(), 6);
    assert!(code.avoids(&set("++ +- -+ --")));
}

// transfer

#[test]
fn sigma_of_zero_plus_plus() {
    let d = set("0++");
    let fam = build_sigma(&d).unwrap();
    assert_eq!(fam.dim, 4);
    let rho = fam
        .matrices
        .iter()
        .filter_map(|a| leading_eigenpair(&to_dmatrix(a)).ok())
        .map(|(l, _)| l)
        .fold(0.0, f64::max);
    assert!((rho - PHI).abs() < 1e-12, "{rho}");
}

#[test]
fn edges_000_and_011_are_incompatible() {
    let d = set("0++");
    let find = |s: &str| {
        (0..8)
            .map(|i| DeBruijnEdge::from_index(3, i))
            .find(|e| edge_word(e).to_string() == s)
            .unwrap()
    };
    assert!(!edges_compatible(&find("000"), &find("011"), &d).unwrap());
    assert!(edges_compatible(&find("000"), &find("000"), &d).unwrap());
}

#[test]
fn product_norms_match_brute_for_zero_plus_plus() {
    let d = set("0++");
    let fam = build_sigma(&d).unwrap();
    for n in 1..=6 {
        let (size, _) = brute::max_code(n + 2, &d).unwrap();
        assert_eq!(product_norm_delta(&fam, n).unwrap(), size as u64, "n={n}");
    }
}

// bounds

#[test]
fn accuracy_lengths() {
    assert_eq!(n_for_accuracy(&set("++ +-"), 0.1).unwrap(), 10);
    assert_eq!(n_for_accuracy(&set("+0+0+"), 0.2).unwrap(), 10);
}

#[test]
fn positive_floors() {
    assert!((positive_floor(&set("0++")) - 1.0 / 9.0).abs() < 1e-15);
    assert!((positive_floor(&set("+++-")) - 1.0 / 12.0).abs() < 1e-15);
}

// positivity

#[test]
fn automaton_state_bound() {
    for list in ["0++", "+0+0+", "+++- 0+0", "-+0 0--", "+-0+ 0-+0 ++"] {
        let d = set(list);
        let sym = d.symmetric_closure();
        let a = build_automaton(&sym);
        assert!(a.state_count() <= 2 * d.total_len() + d.m() + 1, "{list}: {}", a.state_count());
    }
}

#[test]
fn positivity_examples() {
    assert!(decide_positive(&set("+0+0+")));
    assert!(decide_positive(&set("0++")));
    assert!(!decide_positive(&set("00+")));
    assert!(!decide_positive(&set("000")));
    assert!(!decide_positive(&set("+00")));
    let w = shortest_admissible(&set("++")).unwrap();
    assert!(avoids(&w, &set("++").symmetric_closure()));
}

// jsr

fn proportional(v: &[f64], target: &[f64]) -> bool {
    let s = v.iter().zip(target).map(|(a, b)| a * b).sum::<f64>()
        / target.iter().map(|b| b * b).sum::<f64>();
    v.iter().zip(target).all(|(a, b)| (a - s * b).abs() < 1e-9 * s.abs().max(1.0))
}

#[test]
fn leading_eigenvectors() {
    let g = 5f64.sqrt() - 1.0;
    for (list, target) in [("0++", [2.0, g, 2.0, g]), ("0+-", [2.0, g, g, 2.0])] {
        let fam = build_sigma(&set(list)).unwrap();
        let hit = fam.matrices.iter().any(|a| match leading_eigenpair(&to_dmatrix(a)) {
            Ok((l, v)) => (l - PHI).abs() < 1e-12 && proportional(v.as_slice(), &target),
            Err(_) => false,
        });
        assert!(hit, "{list}");
    }
    let a0 = &build_sigma(&set("0++")).unwrap().matrices[0];
    let (_, v) = leading_eigenpair(&to_dmatrix(a0)).unwrap();
    assert!(proportional(v.as_slice(), &[2.0, g, 2.0, g]));
}

#[test]
fn polytope_iterate_brackets_tribonacci() {
    let fam = build_sigma(&set("+++")).unwrap();
    let r = polytope_iterate(&fam, 1e-6, 60).unwrap().bracket;
    let t = 1.839_286_755_214_161;
    assert!(r.lower <= t + 1e-12 && t <= r.upper + 1e-12, "{} {}", r.lower, r.upper);
}

#[test]
fn product_bracket_for_plus_plus_minus() {
    let fam = build_sigma(&set("++-")).unwrap();
    let b = product_bracket(&fam, 12).unwrap();
    assert!(b.upper < 1.755, "{}", b.upper);
    assert!(b.lower >= 2f64.powf(0.811), "{}", b.lower);
}

#[test]
fn polytope_iterate_pins_golden_ratio() {
    let fam = build_sigma(&set("0++")).unwrap();
    let r = polytope_iterate(&fam, 1e-6, 60).unwrap().bracket;
    assert!(r.contains(PHI) && r.width() <= 1e-6, "{r:?}");
}

#[test]
fn polytope_iterate_on_a_singleton() {
    let mut a = BinMatrix::zeros(2);
    a.set(0, 1, true);
    a.set(1, 0, true);
    let fam = TransferFamily::from_matrices(vec![a]).unwrap();
    let r = polytope_iterate(&fam, 1e-9, 20).unwrap().bracket;
    assert!(r.contains(1.0) && r.width() <= 1e-9, "{r:?}");
}
