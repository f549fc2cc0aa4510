//! Builds `Σ(D)` and compares its product norms with the clique oracle.

use diffcap::transfer::{build_sigma, product_norm_delta, self_check};
use diffcap::PatternSet;

fn main() -> diffcap::Result<()> {
    let d = PatternSet::from_list("0++")?;
    let fam = build_sigma(&d)?;
    println!("Σ({d}): {} matrices of size {}", fam.len(), fam.dim);
    for (k, a) in fam.matrices.iter().enumerate() {
        println!("A_{k}: entry sum {}", a.entry_sum());
    }
    for n in 1..=8 {
        println!(
            "max product norm, length {n}: {} = δ_{}",
            product_norm_delta(&fam, n)?,
            fam.window - 1 + n
        );
    }
    for c in self_check(&fam, &d, 4)? {
        println!("n={} products {} brute {} agree={}", c.code_len, c.from_products, c.from_brute, c.agrees());
    }
    Ok(())
}
