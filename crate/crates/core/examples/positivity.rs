//! Deciding `cap(D) > 0` on the pruned Aho-Corasick automaton.

use diffcap::positivity::{analyze_positivity, build_automaton, depth_histogram};
use diffcap::PatternSet;

fn main() -> diffcap::Result<()> {
    for list in ["0++", "+++-", "00+", "000", "+00", "0+-+", "0x+x", "+ -"] {
        let d = PatternSet::from_list(list)?;
        let r = analyze_positivity(&d);
        println!("{:<12} positive={:<5} states={:<4} {:?}", d.to_string(), r.positive, r.states, r.verdict);
    }
    let a = build_automaton(&PatternSet::from_list("+0+0+ -0-0-")?);
    let mut depths: Vec<_> = depth_histogram(&a).into_iter().collect();
    depths.sort();
    println!("trie of {{+0+0+, -0-0-}}: {} states, by depth {depths:?}", a.state_count());
    Ok(())
}
