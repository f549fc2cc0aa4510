//! Bounds on the joint spectral radius from products and polytope norms.

use diffcap::jsr::{product_bracket, polytope_iterate};
use diffcap::transfer::build_sigma;
use diffcap::PatternSet;

fn main() -> diffcap::Result<()> {
    let d = PatternSet::from_list("++-")?;
    let fam = build_sigma(&d)?;
    let b = product_bracket(&fam, 12)?;
    println!(
        "{d}: {:.10} ≤ ρ ≤ {:.10}, best product {:?} (depth {}, norm bound {:.6})",
        b.lower, b.upper, b.best_product, b.depth, b.norm_upper
    );
    println!("capacity in [{:.6}, {:.6}]", b.lower.log2(), b.upper.log2());

    let d = PatternSet::from_list("+0+0+")?;
    let fam = build_sigma(&d)?;
    let r = polytope_iterate(&fam, 1e-4, 30)?;
    for (k, s) in r.history.iter().enumerate() {
        println!("step {:>2}: {:>4} vertex pairs, ρ ≤ {:.8}", k + 1, s.vertices, s.upper);
    }
    println!("{d}: {:.8} ≤ ρ ≤ {:.8}", r.bracket.lower, r.bracket.upper);
    Ok(())
}
