//! Regenerates `fixtures/random/`: 50 random pattern sets with `m ≤ 4` and
//! their brute-force baselines (`δ_n` and the shortest admissible word).
//!
//! ```text
//! cargo run --release --example generate_fixtures
//! ```

use std::collections::BTreeSet;
use std::path::PathBuf;

use diffcap::brute;
use diffcap::PatternSet;
use rand::{Rng, SeedableRng};
use serde_json::json;

const SEED: u64 = 20_050_301;
const COUNT: usize = 50;
const N_MAX: usize = 10;
const NODE_BUDGET: u64 = 5_000_000;

fn random_set(rng: &mut impl Rng) -> PatternSet {
    loop {
        let k = rng.gen_range(1..=3);
        let mut pats = BTreeSet::new();
        while pats.len() < k {
            let len = rng.gen_range(1..=4);
            let p: String = (0..len).map(|_| ['-', '0', '+'][rng.gen_range(0..3)]).collect();
            if p.chars().any(|c| c != '0') {
                pats.insert(p);
            }
        }
        let list = pats.into_iter().collect::<Vec<_>>().join(" ");
        let d = PatternSet::from_list(&list).expect("valid patterns");
        if d.m() >= 2 {
            return d;
        }
    }
}

fn main() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/random");
    std::fs::create_dir_all(&dir).expect("create fixture directory");
    let mut rng = rand::rngs::StdRng::seed_from_u64(SEED);
    let mut seen = BTreeSet::new();
    let mut sets = Vec::new();
    while sets.len() < COUNT {
        let d = random_set(&mut rng);
        if !seen.insert(d.to_file_string()) {
            continue;
        }
        let file = format!("set_{:02}.pat", sets.len());
        std::fs::write(dir.join(&file), d.to_file_string()).expect("write pattern file");

        let mut delta = Vec::new();
        for n in 1..=N_MAX {
            match brute::max_code_with_budget(n, &d, NODE_BUDGET) {
                Ok(r) => delta.push(json!({"n": n, "delta_n": r.size})),
                Err(_) => break,
            }
        }
        let depth = 2 * d.total_len() + 2 * d.m();
        let word = brute::admissible_word_search(&d, depth).map(|w| w.to_string());
        println!(
            "{file}  {d:<24} delta up to n={}  {}",
            delta.len(),
            word.as_deref().unwrap_or("zero capacity")
        );
        sets.push(json!({
            "file": file,
            "patterns": d.patterns().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "m": d.m(),
            "M": d.total_len(),
            "delta": delta,
            "positive": word.is_some(),
            "shortest_word": word,
            "search_depth": depth,
        }));
    }
    let doc = json!({"seed": SEED, "node_budget": NODE_BUDGET, "sets": sets});
    std::fs::write(
        dir.join("baselines.json"),
        serde_json::to_string_pretty(&doc).expect("json") + "\n",
    )
    .expect("write baselines");
}
