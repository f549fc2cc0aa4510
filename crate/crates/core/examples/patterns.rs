//! Pattern sets, their zero-run parameters, differences of binary words,
//! and expansion of `±`.

use diffcap::patterns::{avoids, difference};
use diffcap::{BinWord, PatternSet};

fn main() -> diffcap::Result<()> {
    let d = PatternSet::parse("# Example pattern file\n0+0\n+00-\n")?;
    println!("{d}: m={} M={} r={} r1={} r2={}", d.m(), d.total_len(), d.r(), d.r1(), d.r2());
    println!("-D = {}", d.negate());
    println!("D ∪ -D = {}", d.symmetric_closure());

    let u: BinWord = "10110".parse()?;
    let v: BinWord = "00111".parse()?;
    let w = difference(&u, &v)?;
    println!("{u} - {v} = {w}, avoids {d}: {}", avoids(&w, &d));

    let ext = PatternSet::from_list("0x+x")?;
    println!("{ext} expands to {} ({} patterns)", ext.expand_within(1 << 10)?, ext.expansion_size());
    print!("file form:\n{}", ext.to_file_string());
    Ok(())
}
