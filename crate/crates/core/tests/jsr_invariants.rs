//! Certified capacities and the norm bounds they imply.

use diffcap::bounds::theorem1_bracket;
use diffcap::brute;
use diffcap::jsr::{capacity, CapacityMode};
use diffcap::transfer::{build_sigma, product_norm_delta};
use diffcap::PatternSet;

fn set(list: &str) -> PatternSet {
    PatternSet::from_list(list).unwrap()
}

fn golden() -> f64 {
    (5f64.sqrt() + 1.0) / 2.0
}

fn tribonacci() -> f64 {
    let s = 3.0 * 33f64.sqrt();
    (1.0 + (19.0 + s).cbrt() + (19.0 - s).cbrt()) / 3.0
}

#[test]
fn certified_capacities_match_closed_forms() {
    let cases = [
        ("0++", golden().log2()),
        ("0+-", golden().log2()),
        ("+++-", ((3.0 + 2.0 * 5f64.sqrt()).sqrt() / 2.0 + 0.5).log2()),
        ("+++", tribonacci().log2()),
    ];
    for (list, expected) in cases {
        let r = capacity(&set(list), CapacityMode::Certify).unwrap();
        let cert = r.certificate.as_ref().unwrap_or_else(|| panic!("{list} not certified"));
        assert!((cert.capacity() - expected).abs() < 1e-8, "{list}: {}", cert.capacity());
        assert!(r.cap_width() < 1e-8, "{list}: {}", r.cap_width());
        assert!(r.consistent(), "{list}");
    }
}

#[test]
fn truncated_reference_digits() {
    let cap = |list: &str| capacity(&set(list), CapacityMode::Certify).unwrap().exact.unwrap();
    assert_eq!(format!("{:.12}", cap("0++")).get(..10), Some("0.69424191"));
    assert_eq!(format!("{:.12}", cap("+++-")).get(..10), Some("0.90053676"));
    assert!(format!("{:.6}", cap("+++")).starts_with("0.8791"));
}

/// With the certified `λ`, every product of length `len` counts codes of
/// length `N = w - 1 + len`, and `‖Π‖ / λ^N ≤ 2^max(r1 + r2, r + 1)`.
#[test]
fn products_stay_within_the_extremal_norm_bound() {
    for list in ["0++", "0+-", "+++-", "+++", "++-", "+-", "+0+", "-+0 0--"] {
        let d = set(list);
        let fam = build_sigma(&d).unwrap();
        let lambda = capacity(&d, CapacityMode::Certify)
            .unwrap()
            .certificate
            .unwrap_or_else(|| panic!("{list} not certified"))
            .lambda;
        let bound = 2f64.powi(((d.r1() + d.r2()).max(d.r() + 1)) as i32);
        for len in 1..=8 {
            let norm = product_norm_delta(&fam, len).unwrap() as f64;
            let code_len = fam.window - 1 + len;
            let ratio = norm / lambda.powi(code_len as i32);
            assert!(ratio <= bound, "{list} len={len}: {ratio} > {bound}");
            // and from below, λ^N ≤ δ_N
            assert!(lambda.powi(code_len as i32) <= norm * (1.0 + 1e-9), "{list} len={len}");
        }
    }
}

#[test]
fn certified_capacity_sits_in_every_sandwich() {
    for list in ["0++", "0+-", "+++-", "+++", "++-"] {
        let d = set(list);
        let cap = capacity(&d, CapacityMode::Certify).unwrap().exact.unwrap();
        for n in (d.r1() + d.r2()).max(1)..=9 {
            let (delta, _) = brute::max_code(n, &d).unwrap();
            let b = theorem1_bracket(n, delta as u64, &d).unwrap();
            assert!(b.contains(cap), "{list} n={n}: {b:?} vs {cap}");
        }
    }
}

#[test]
fn bracket_mode_for_full_sets() {
    for m in 2..=3 {
        let list: Vec<String> = (0..1 << m)
            .map(|k: usize| (0..m).map(|i| if k >> i & 1 == 1 { '+' } else { '-' }).collect())
            .collect();
        let r = capacity(&set(&list.join(" ")), CapacityMode::Bracket { eps: 0.01 }).unwrap();
        let target = (m - 1) as f64 / m as f64;
        assert!(r.cap_lower >= target - 0.01 && r.cap_upper <= target + 0.01, "m={m}: {r:?}");
    }
    let r = capacity(&set("+- ++"), CapacityMode::Bracket { eps: 0.05 }).unwrap();
    assert!(r.cap_lower <= 0.5 && 0.5 <= r.cap_upper && r.cap_width() <= 0.05);
}
