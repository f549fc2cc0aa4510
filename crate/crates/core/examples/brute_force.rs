//! Exact `δ_n(D)` by maximum clique search, and the block codes that
//! attain the capacity of `{+,-}^m`.

use diffcap::brute::{self, prop1_code};
use diffcap::PatternSet;

fn main() -> diffcap::Result<()> {
    let d = PatternSet::from_list("+- ++")?;
    for n in 1..=10 {
        let r = brute::max_code_with_budget(n, &d, brute::DEFAULT_NODE_BUDGET)?;
        println!("δ_{n:<2} = {:>3}   ({} search nodes)", r.size, r.nodes);
    }
    let (size, code) = brute::max_code(4, &d)?;
    println!("a maximum code of length 4 ({size} words):");
    for w in code.words() {
        println!("  {w}");
    }

    let pm3 = PatternSet::from_list("+++ ++- +-+ +-- -++ -+- --+ ---")?;
    let block = prop1_code(3, 2)?;
    println!(
        "block code of length {} has {} words and avoids {{+,-}}^3: {}",
        block.word_len(),
        block.len(),
        block.avoids(&pm3)
    );
    Ok(())
}
