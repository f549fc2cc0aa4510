//! Capacity brackets from `δ_n`, and the code length needed for a given width.

use diffcap::bounds::{corollary2_bracket, n_for_accuracy, positive_floor, theorem1_bracket};
use diffcap::brute;
use diffcap::PatternSet;

fn main() -> diffcap::Result<()> {
    for list in ["++-", "+0+0+", "0++"] {
        let d = PatternSet::from_list(list)?;
        println!("{d}  floor {:.4}  n for width 0.1: {}", positive_floor(&d), n_for_accuracy(&d, 0.1)?);
        for n in [4, 7, 10] {
            let (delta, _) = brute::max_code(n, &d)?;
            let b = theorem1_bracket(n, delta as u64, &d)?;
            let special = corollary2_bracket(n, delta as u64, &d)
                .map(|(case, c)| format!("  {case:?} [{:.4}, {:.4}]", c.lower, c.upper))
                .unwrap_or_default();
            println!("  n={n:<2} δ={delta:<4} [{:.4}, {:.4}]{special}", b.lower, b.upper);
        }
    }
    Ok(())
}
