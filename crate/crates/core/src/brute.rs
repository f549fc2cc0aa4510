//! Exhaustive ground truth: maximum code sizes `δ_n(D)` by maximum clique
//! search, the explicit block code for `{+,-}^m`, and a direct search for
//! admissible words.
//!
//! Everything here is deliberately independent of the transfer-matrix and
//! automaton machinery so it can be used to check them.

use std::collections::HashSet;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::patterns::{avoids, difference, BinWord, DiffWord, PatternSet, Symbol};

/// Default node budget for the clique search.
pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

/// Largest word length the clique search accepts (the graph has `2^n` vertices).
pub const MAX_BRUTE_LEN: usize = 16;

/// A set of equal-length binary words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Code {
    n: usize,
    words: Vec<BinWord>,
}

impl Code {
    pub fn new(n: usize, mut words: Vec<BinWord>) -> Result<Self> {
        if let Some(w) = words.iter().find(|w| w.len() != n) {
            return Err(Error::LengthMismatch {
                left: n,
                right: w.len(),
            });
        }
        words.sort();
        words.dedup();
        Ok(Code { n, words })
    }

    pub fn word_len(&self) -> usize {
        self.n
    }

    pub fn words(&self) -> &[BinWord] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Checks every ordered pair of distinct words with the plain word-level
    /// matcher.
    pub fn avoids(&self, d: &PatternSet) -> bool {
        self.words.iter().all(|u| {
            self.words.iter().filter(|v| *v != u).all(|v| {
                avoids(
                    &difference(u, v).expect("code words share a length"),
                    d,
                )
            })
        })
    }
}

/// One pattern compiled to bit masks over a little-endian position index.
#[derive(Clone, Copy, Debug)]
struct MaskPattern {
    len: usize,
    zero: u64,
    plus: u64,
    minus: u64,
    either: u64,
}

impl MaskPattern {
    fn compile(symbols: &[Symbol]) -> Self {
        let mut p = MaskPattern {
            len: symbols.len(),
            zero: 0,
            plus: 0,
            minus: 0,
            either: 0,
        };
        for (i, s) in symbols.iter().enumerate() {
            let bit = 1u64 << i;
            match s {
                Symbol::Zero => p.zero |= bit,
                Symbol::Plus => p.plus |= bit,
                Symbol::Minus => p.minus |= bit,
                Symbol::PlusMinus => p.either |= bit,
            }
        }
        p
    }

    fn occurs(&self, plus: u64, minus: u64, n: usize) -> bool {
        if self.len > n {
            return false;
        }
        let nonzero = plus | minus;
        (0..=n - self.len).any(|s| {
            let (p, m, nz) = (plus >> s, minus >> s, nonzero >> s);
            nz & self.zero == 0
                && p & self.plus == self.plus
                && m & self.minus == self.minus
                && nz & self.either == self.either
        })
    }
}

/// Pairwise compatibility of `n`-bit words under `D ∪ -D`.
struct Compat {
    n: usize,
    patterns: Vec<MaskPattern>,
}

impl Compat {
    fn new(n: usize, d: &PatternSet) -> Self {
        let patterns = d
            .symmetric_closure()
            .patterns()
            .iter()
            .filter(|p| p.len() <= n)
            .map(|p| MaskPattern::compile(p.symbols()))
            .collect();
        Compat { n, patterns }
    }

    /// Both `u - v` and `v - u` avoid `D` (the closure makes one check enough).
    fn compatible(&self, u: u64, v: u64) -> bool {
        let plus = u & !v;
        let minus = v & !u;
        !self.patterns.iter().any(|p| p.occurs(plus, minus, self.n))
    }
}

fn word_from_index(x: u64, n: usize) -> BinWord {
    BinWord::new((0..n).map(|i| (x >> i) & 1 == 1).collect())
}

struct Graph {
    n: usize,
    stride: usize,
    adj: Vec<u64>,
}

impl Graph {
    fn neighbors(&self, v: usize) -> &[u64] {
        &self.adj[v * self.stride..(v + 1) * self.stride]
    }

    fn degree(&self, v: usize) -> usize {
        self.neighbors(v).iter().map(|w| w.count_ones() as usize).sum()
    }
}

fn build_graph(len: usize, d: &PatternSet) -> (Graph, Vec<usize>) {
    let nv = 1usize << len;
    let compat = Compat::new(len, d);
    let stride = nv.div_ceil(64);
    let rows: Vec<Vec<u64>> = (0..nv)
        .into_par_iter()
        .map(|u| {
            let mut row = vec![0u64; stride];
            for v in 0..nv {
                if u != v && compat.compatible(u as u64, v as u64) {
                    row[v / 64] |= 1 << (v % 64);
                }
            }
            row
        })
        .collect();
    let original = Graph {
        n: nv,
        stride,
        adj: rows.concat(),
    };

    // degeneracy ordering: repeatedly peel a minimum-degree vertex; the
    // last vertices peeled (the dense core) come first in the search order.
    let mut degree: Vec<usize> = (0..nv).map(|v| original.degree(v)).collect();
    let mut removed = vec![false; nv];
    let mut peel = Vec::with_capacity(nv);
    for _ in 0..nv {
        let v = (0..nv)
            .filter(|&v| !removed[v])
            .min_by_key(|&v| (degree[v], v))
            .expect("vertices remain");
        removed[v] = true;
        peel.push(v);
        for (w, word) in original.neighbors(v).iter().enumerate() {
            let mut bits = *word;
            while bits != 0 {
                let u = w * 64 + bits.trailing_zeros() as usize;
                bits &= bits - 1;
                if !removed[u] {
                    degree[u] -= 1;
                }
            }
        }
    }
    peel.reverse();
    let order = peel;
    let mut position = vec![0usize; nv];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let mut adj = vec![0u64; nv * stride];
    for (i, &v) in order.iter().enumerate() {
        for (w, word) in original.neighbors(v).iter().enumerate() {
            let mut bits = *word;
            while bits != 0 {
                let u = w * 64 + bits.trailing_zeros() as usize;
                bits &= bits - 1;
                let j = position[u];
                adj[i * stride + j / 64] |= 1 << (j % 64);
            }
        }
    }
    (Graph { n: nv, stride, adj }, order)
}

/// Largest word length for which graph symmetries are searched.
const SYMMETRY_MAX_LEN: usize = 12;
const SYMMETRY_MAX_GROUP: usize = 256;

/// Automorphisms of the compatibility graph generated by word reversal and
/// by flipping the bits in a residue class of positions, as permutations
/// of search positions. Each candidate is checked edge by edge.
fn symmetries(n: usize, graph: &Graph, order: &[usize]) -> Vec<Vec<usize>> {
    let nv = graph.n;
    let identity: Vec<usize> = (0..nv).collect();
    if n > SYMMETRY_MAX_LEN {
        return vec![identity];
    }
    let mut position = vec![0usize; nv];
    for (i, &x) in order.iter().enumerate() {
        position[x] = i;
    }
    let reverse = |x: usize| (0..n).fold(0, |acc, b| acc | ((x >> b) & 1) << (n - 1 - b));
    let mut maps: Vec<Box<dyn Fn(usize) -> usize>> = vec![Box::new(reverse)];
    for p in 1..=n.min(6) {
        for r in 0..p {
            let mask = (0..n).filter(|b| b % p == r).fold(0usize, |acc, b| acc | 1 << b);
            maps.push(Box::new(move |x| x ^ mask));
        }
    }
    let adjacent = |i: usize, j: usize| graph.neighbors(i)[j / 64] >> (j % 64) & 1 == 1;
    let mut generators = Vec::new();
    for map in maps {
        let perm: Vec<usize> = order.iter().map(|&x| position[map(x)]).collect();
        let automorphism = (0..nv).into_par_iter().all(|i| {
            (0..nv).all(|j| i == j || adjacent(i, j) == adjacent(perm[i], perm[j]))
        });
        if automorphism && perm != identity {
            generators.push(perm);
        }
    }
    let mut group = vec![identity];
    let mut k = 0;
    while k < group.len() && group.len() < SYMMETRY_MAX_GROUP {
        for g in &generators {
            let h: Vec<usize> = group[k].iter().map(|&i| g[i]).collect();
            if !group.contains(&h) {
                group.push(h);
            }
        }
        k += 1;
    }
    group
}

struct Search<'g> {
    graph: &'g Graph,
    symmetries: Vec<Vec<usize>>,
    best: AtomicUsize,
    witness: Mutex<Vec<usize>>,
    nodes: AtomicU64,
    budget: u64,
    exhausted: AtomicBool,
}

impl Search<'_> {
    /// Greedy sequential coloring; returns vertices sorted by color together
    /// with their color numbers (non-decreasing).
    fn color_sort(&self, candidates: &[u64]) -> (Vec<usize>, Vec<usize>) {
        let mut uncolored = candidates.to_vec();
        let mut order = Vec::new();
        let mut colors = Vec::new();
        let mut color = 0;
        while uncolored.iter().any(|w| *w != 0) {
            color += 1;
            let mut q = uncolored.clone();
            for wi in 0..q.len() {
                while q[wi] != 0 {
                    let v = wi * 64 + q[wi].trailing_zeros() as usize;
                    q[wi] &= q[wi] - 1;
                    uncolored[wi] &= !(1 << (v % 64));
                    for (qw, nw) in q.iter_mut().zip(self.graph.neighbors(v)).skip(wi) {
                        *qw &= !nw;
                    }
                    order.push(v);
                    colors.push(color);
                }
            }
        }
        (order, colors)
    }

    fn record(&self, clique: &[usize]) {
        let mut w = self.witness.lock().expect("witness lock");
        if clique.len() > w.len() {
            *w = clique.to_vec();
            self.best.fetch_max(clique.len(), Ordering::SeqCst);
        }
    }

    fn expand(&self, clique: &mut Vec<usize>, mut candidates: Vec<u64>) {
        if self.exhausted.load(Ordering::Relaxed) {
            return;
        }
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.budget {
            self.exhausted.store(true, Ordering::Relaxed);
            return;
        }
        let (order, colors) = self.color_sort(&candidates);
        for i in (0..order.len()).rev() {
            if clique.len() + colors[i] <= self.best.load(Ordering::Relaxed) {
                return;
            }
            let v = order[i];
            clique.push(v);
            let next: Vec<u64> = candidates
                .iter()
                .zip(self.graph.neighbors(v))
                .map(|(c, n)| c & n)
                .collect();
            if next.iter().all(|w| *w == 0) {
                if clique.len() > self.best.load(Ordering::Relaxed) {
                    self.record(clique);
                }
            } else {
                self.expand(clique, next);
            }
            clique.pop();
            candidates[v / 64] &= !(1 << (v % 64));
        }
    }

    fn run(&self) {
        let mut all = vec![0u64; self.graph.stride];
        for v in 0..self.graph.n {
            all[v / 64] |= 1 << (v % 64);
        }
        self.nodes.fetch_add(1, Ordering::Relaxed);
        let (order, colors) = self.color_sort(&all);
        // Some image of a maximum clique under the symmetries has the
        // latest top vertex t in this order; every orbit of its members
        // then stays at or before t. So branch only on vertices that top
        // their orbit, with candidates whose orbits stay before the branch.
        let mut rank = vec![0usize; self.graph.n];
        for (i, &v) in order.iter().enumerate() {
            rank[v] = i;
        }
        let orbit_top: Vec<usize> = (0..self.graph.n)
            .map(|v| self.symmetries.iter().map(|g| rank[g[v]]).max().unwrap_or(rank[v]))
            .collect();
        // branch i may use the vertices colored before it, exactly as the
        // sequential search would after discarding order[i+1..]
        (0..order.len()).into_par_iter().rev().for_each(|i| {
            let v = order[i];
            if colors[i] <= self.best.load(Ordering::Relaxed) || orbit_top[v] > i {
                return;
            }
            let mut cand = vec![0u64; self.graph.stride];
            for &u in &order[..i] {
                if orbit_top[u] <= i {
                    cand[u / 64] |= 1 << (u % 64);
                }
            }
            for (c, n) in cand.iter_mut().zip(self.graph.neighbors(v)) {
                *c &= n;
            }
            let mut clique = vec![v];
            if cand.iter().all(|w| *w == 0) {
                self.record(&clique);
            } else {
                self.expand(&mut clique, cand);
            }
        });
    }
}

/// Result of an exact maximum code search.
#[derive(Clone, Debug)]
pub struct MaxCode {
    pub size: usize,
    pub witness: Code,
    /// Search nodes expanded.
    pub nodes: u64,
}

/// `δ_n(D)` with a witness code, under the default node budget.
pub fn max_code(n: usize, d: &PatternSet) -> Result<(usize, Code)> {
    max_code_with_budget(n, d, DEFAULT_NODE_BUDGET).map(|r| (r.size, r.witness))
}

/// Exact `δ_n(D)`: maximum clique in the graph on `{0,1}^n` joining two
/// distinct words when their differences avoid `D ∪ -D`.
///
/// Self-differences `u - u` are never constrained, so `δ_n ≥ 1`.
pub fn max_code_with_budget(n: usize, d: &PatternSet, budget: u64) -> Result<MaxCode> {
    if n == 0 || n > MAX_BRUTE_LEN {
        return Err(Error::InvalidArgument(format!(
            "word length {n} outside 1..={MAX_BRUTE_LEN}"
        )));
    }
    let (graph, order) = build_graph(n, d);
    let search = Search {
        symmetries: symmetries(n, &graph, &order),
        graph: &graph,
        best: AtomicUsize::new(0),
        witness: Mutex::new(Vec::new()),
        nodes: AtomicU64::new(0),
        budget,
        exhausted: AtomicBool::new(false),
    };
    search.run();
    if search.exhausted.load(Ordering::SeqCst) {
        return Err(Error::BudgetExhausted(format!(
            "clique search for n={n} exceeded {budget} nodes"
        )));
    }
    let clique = search.witness.into_inner().expect("witness lock");
    let words = clique
        .iter()
        .map(|&v| word_from_index(order[v] as u64, n))
        .collect();
    Ok(MaxCode {
        size: clique.len(),
        witness: Code::new(n, words)?,
        nodes: search.nodes.load(Ordering::SeqCst),
    })
}

/// The block code `{z_1 0 z_2 0 ... z_k 0 : z_i ∈ {0,1}^(m-1)}` of length
/// `km` and size `2^((m-1)k)`, which avoids every pattern of `{+,-}^m`.
pub fn prop1_code(m: usize, k: usize) -> Result<Code> {
    if m < 2 || k == 0 {
        return Err(Error::InvalidArgument(format!(
            "block code needs m ≥ 2 and k ≥ 1 (got m={m}, k={k})"
        )));
    }
    let free = (m - 1) * k;
    if free > 24 {
        return Err(Error::InvalidArgument(format!(
            "block code with 2^{free} words is too large to materialize"
        )));
    }
    let words = (0..1u64 << free)
        .map(|x| {
            let mut bits = Vec::with_capacity(m * k);
            for block in 0..k {
                for j in 0..m - 1 {
                    bits.push((x >> (block * (m - 1) + j)) & 1 == 1);
                }
                bits.push(false);
            }
            BinWord::new(bits)
        })
        .collect();
    Code::new(m * k, words)
}

/// Shortest word over `{-, 0, +}` that starts with `0^m`, ends with
/// `+0^(m-1)`, has length at most `max_len`, and contains no pattern of
/// `D ∪ -D`.
///
/// Depth-first with iterative deepening (symbols tried in the order
/// `-, 0, +`), so the first word found is a shortest one. Failed search
/// states are memoized by the last `m - 1` symbols and the remaining length.
pub fn admissible_word_search(d: &PatternSet, max_len: usize) -> Option<DiffWord> {
    let m = d.m();
    let closure = d.symmetric_closure();
    let mut word = vec![Symbol::Zero; m];
    if closure.patterns().iter().any(|p| p.occurs_in(&word)) {
        return None;
    }
    let mut failed: HashSet<(Vec<Symbol>, usize)> = HashSet::new();
    for target in 2 * m..=max_len {
        if dfs(&closure, m, &mut word, target - m, &mut failed) {
            return Some(DiffWord::new(word).expect("plain symbols only"));
        }
    }
    None
}

fn ends_with_goal(word: &[Symbol], m: usize) -> bool {
    let tail = &word[word.len() - m..];
    tail[0] == Symbol::Plus && tail[1..].iter().all(|s| s.is_zero())
}

fn ends_with_pattern(closure: &PatternSet, word: &[Symbol]) -> bool {
    closure.patterns().iter().any(|p| {
        p.len() <= word.len() && {
            let tail = &word[word.len() - p.len()..];
            p.symbols().iter().zip(tail).all(|(a, b)| a.matches(*b))
        }
    })
}

/// Can the current word reach the goal with at most `remaining` more symbols?
fn dfs(
    closure: &PatternSet,
    m: usize,
    word: &mut Vec<Symbol>,
    remaining: usize,
    failed: &mut HashSet<(Vec<Symbol>, usize)>,
) -> bool {
    if remaining == 0 {
        return false;
    }
    let context = word[word.len() - (m - 1)..].to_vec();
    if failed.contains(&(context.clone(), remaining)) {
        return false;
    }
    for s in Symbol::PLAIN {
        word.push(s);
        if !ends_with_pattern(closure, word)
            && (ends_with_goal(word, m) || dfs(closure, m, word, remaining - 1, failed))
        {
            return true;
        }
        word.pop();
    }
    failed.insert((context, remaining));
    false
}
