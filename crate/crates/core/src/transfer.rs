//! The transfer-matrix family `Σ(D)`.
//!
//! A code word of length `w - 1 + n` is a walk of `n` edges in the de Bruijn
//! graph on `(w-1)`-bit states, each edge being one `w`-bit window. A code
//! avoids `D` exactly when, at every window position, the edges used by the
//! code are pairwise compatible (their differences avoid `D ∪ -D`). Taking
//! one matrix per maximal compatible edge set therefore gives
//!
//! ```text
//! δ_{w-1+n}(D) = max { ‖A_1 ⋯ A_n‖ : A_i ∈ Σ(D) }
//! ```
//!
//! with `‖·‖` the sum of all entries. The window is `w = max(m, 2)`; shorter
//! patterns are matched anywhere inside the window.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::brute;
use crate::error::{Error, Result};
use crate::patterns::{avoids, difference, BinWord, PatternSet};

/// Default cap on the window length (matrices are `2^(w-1)` square).
pub const DEFAULT_MAX_WINDOW: usize = 6;
/// Default cap on the number of maximal cliques enumerated.
pub const DEFAULT_CLIQUE_BUDGET: usize = 200_000;
/// Default cap on the number of distinct row vectors kept per product length.
pub const DEFAULT_PRODUCT_BUDGET: usize = 2_000_000;

/// Window length used for a pattern set.
pub fn window_len(d: &PatternSet) -> usize {
    d.m().max(2)
}

/// An edge of the de Bruijn graph: a `(w-1)`-bit source state followed by one bit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DeBruijnEdge {
    window: usize,
    source: u32,
    bit: bool,
}

impl DeBruijnEdge {
    pub fn new(window: usize, source: u32, bit: bool) -> Result<Self> {
        if window < 2 || window > 32 || u64::from(source) >= 1u64 << (window - 1) {
            return Err(Error::InvalidArgument(format!(
                "source state {source} does not fit a window of length {window}"
            )));
        }
        Ok(DeBruijnEdge {
            window,
            source,
            bit,
        })
    }

    /// The edge whose window word has integer value `index` (first bit most significant).
    pub fn from_index(window: usize, index: usize) -> Self {
        DeBruijnEdge {
            window,
            source: (index >> 1) as u32,
            bit: index & 1 == 1,
        }
    }

    pub fn index(&self) -> usize {
        ((self.source as usize) << 1) | self.bit as usize
    }

    pub fn source(&self) -> usize {
        self.source as usize
    }

    pub fn target(&self) -> usize {
        self.index() & ((1 << (self.window - 1)) - 1)
    }

    pub fn window(&self) -> usize {
        self.window
    }
}

/// The window word `source · bit`.
pub fn edge_word(e: &DeBruijnEdge) -> BinWord {
    BinWord::from_bits(e.index() as u64, e.window)
}

fn refuse_all_zero(d: &PatternSet) -> Result<()> {
    match d.patterns().iter().find(|p| p.is_all_zero()) {
        Some(p) => Err(Error::AllZeroPattern(p.to_string())),
        None => Ok(()),
    }
}

/// True iff the difference of the two window words avoids `D ∪ -D`.
pub fn edges_compatible(e1: &DeBruijnEdge, e2: &DeBruijnEdge, d: &PatternSet) -> Result<bool> {
    refuse_all_zero(d)?;
    if e1.window != e2.window {
        return Err(Error::LengthMismatch {
            left: e1.window,
            right: e2.window,
        });
    }
    Ok(compatible_words(e1, e2, &d.symmetric_closure()))
}

fn compatible_words(e1: &DeBruijnEdge, e2: &DeBruijnEdge, closure: &PatternSet) -> bool {
    let diff = difference(&edge_word(e1), &edge_word(e2)).expect("equal windows");
    avoids(&diff, closure)
}

/// A square 0/1 matrix, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BinMatrix {
    pub dim: usize,
    pub entries: Vec<u8>,
}

impl BinMatrix {
    pub fn zeros(dim: usize) -> Self {
        BinMatrix {
            dim,
            entries: vec![0; dim * dim],
        }
    }

    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.entries[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        self.entries[row * self.dim + col] = value as u8;
    }

    pub fn entry_sum(&self) -> u64 {
        self.entries.iter().map(|&e| e as u64).sum()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.entries.iter().map(|&e| e as f64).collect()
    }

    /// `x · A` for a row vector `x`.
    pub fn left_mul(&self, x: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; self.dim];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            let row = &self.entries[i * self.dim..(i + 1) * self.dim];
            for (o, &a) in out.iter_mut().zip(row) {
                if a != 0 {
                    *o += xi;
                }
            }
        }
        out
    }
}

/// `Σ(D)`: one binary matrix per maximal set of pairwise compatible edges.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TransferFamily {
    /// Window length `w`; matrices are `2^(w-1)` square.
    pub window: usize,
    pub dim: usize,
    pub matrices: Vec<BinMatrix>,
    /// Edge sets (bit `i` = edge with window word value `i`), one per matrix.
    #[serde(skip)]
    pub edge_sets: Vec<u64>,
}

impl TransferFamily {
    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }

    /// Builds a family directly from matrices, e.g. for testing the JSR engine.
    pub fn from_matrices(matrices: Vec<BinMatrix>) -> Result<Self> {
        let dim = matrices
            .first()
            .map(|a| a.dim)
            .ok_or_else(|| Error::InvalidArgument("empty matrix family".into()))?;
        if matrices.iter().any(|a| a.dim != dim || a.entries.len() != dim * dim) {
            return Err(Error::InvalidArgument("matrices must share one dimension".into()));
        }
        Ok(TransferFamily {
            window: dim.trailing_zeros() as usize + 1,
            dim,
            edge_sets: Vec::new(),
            matrices,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("family serializes")
    }
}

/// Options for [`build_sigma_with`].
#[derive(Clone, Copy, Debug)]
pub struct SigmaOptions {
    pub max_window: usize,
    pub clique_budget: usize,
}

impl Default for SigmaOptions {
    fn default() -> Self {
        SigmaOptions {
            max_window: DEFAULT_MAX_WINDOW,
            clique_budget: DEFAULT_CLIQUE_BUDGET,
        }
    }
}

pub fn build_sigma(d: &PatternSet) -> Result<TransferFamily> {
    build_sigma_with(d, SigmaOptions::default())
}

/// Enumerates the maximal cliques of the edge compatibility graph
/// (Bron–Kerbosch with pivoting) and turns each into a matrix.
pub fn build_sigma_with(d: &PatternSet, opts: SigmaOptions) -> Result<TransferFamily> {
    refuse_all_zero(d)?;
    let w = window_len(d);
    if w > opts.max_window.min(6) {
        return Err(Error::WindowTooLong {
            m: w,
            cap: opts.max_window.min(6),
        });
    }
    let closure = d.symmetric_closure();
    let n_edges = 1usize << w;
    let edges: Vec<DeBruijnEdge> = (0..n_edges).map(|i| DeBruijnEdge::from_index(w, i)).collect();
    let mut adj = vec![0u64; n_edges];
    for i in 0..n_edges {
        for j in 0..n_edges {
            if i != j && compatible_words(&edges[i], &edges[j], &closure) {
                adj[i] |= 1 << j;
            }
        }
    }
    let all = if n_edges == 64 { u64::MAX } else { (1u64 << n_edges) - 1 };
    let mut cliques = Vec::new();
    bron_kerbosch(&adj, 0, all, 0, &mut cliques, opts.clique_budget)?;
    cliques.sort_unstable();

    let dim = 1usize << (w - 1);
    let matrices = cliques
        .iter()
        .map(|&set| {
            let mut a = BinMatrix::zeros(dim);
            for e in edges.iter().filter(|e| set >> e.index() & 1 == 1) {
                a.set(e.source(), e.target(), true);
            }
            a
        })
        .collect();
    Ok(TransferFamily {
        window: w,
        dim,
        matrices,
        edge_sets: cliques,
    })
}

fn bron_kerbosch(
    adj: &[u64],
    r: u64,
    mut p: u64,
    mut x: u64,
    out: &mut Vec<u64>,
    budget: usize,
) -> Result<()> {
    if p == 0 && x == 0 {
        if out.len() >= budget {
            return Err(Error::BudgetExhausted(format!(
                "more than {budget} maximal edge sets"
            )));
        }
        out.push(r);
        return Ok(());
    }
    let pivot = {
        let px = p | x;
        let mut best = (0u32, px.trailing_zeros() as usize);
        let mut bits = px;
        while bits != 0 {
            let u = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let c = (p & adj[u]).count_ones();
            if c >= best.0 {
                best = (c, u);
            }
        }
        best.1
    };
    let mut branch = p & !adj[pivot];
    while branch != 0 {
        let v = branch.trailing_zeros() as usize;
        branch &= branch - 1;
        bron_kerbosch(adj, r | 1 << v, p & adj[v], x & adj[v], out, budget)?;
        p &= !(1 << v);
        x |= 1 << v;
    }
    Ok(())
}

/// True iff no further edge is compatible with every edge of `set`.
pub fn is_maximal_edge_set(fam: &TransferFamily, d: &PatternSet, set: u64) -> bool {
    let closure = d.symmetric_closure();
    let edges: Vec<DeBruijnEdge> = (0..1usize << fam.window)
        .map(|i| DeBruijnEdge::from_index(fam.window, i))
        .collect();
    edges.iter().filter(|e| set >> e.index() & 1 == 0).all(|e| {
        edges
            .iter()
            .filter(|f| set >> f.index() & 1 == 1)
            .any(|f| !compatible_words(e, f, &closure))
    })
}

/// `max ‖A_1 ⋯ A_n‖` over all length-`n` products, which equals `δ_{w-1+n}`.
///
/// Row vectors `1ᵀA_1⋯A_k` are propagated layer by layer; a vector that is
/// entrywise dominated by another can never lead to a larger total and is
/// dropped.
pub fn product_norm_delta(fam: &TransferFamily, n: usize) -> Result<u64> {
    product_norm_delta_with_budget(fam, n, DEFAULT_PRODUCT_BUDGET)
}

pub fn product_norm_delta_with_budget(fam: &TransferFamily, n: usize, budget: usize) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidArgument("product length must be at least 1".into()));
    }
    let mut layer: Vec<Vec<u64>> = vec![vec![1; fam.dim]];
    for _ in 0..n {
        let mut next: HashSet<Vec<u64>> = HashSet::new();
        for x in &layer {
            for a in &fam.matrices {
                next.insert(a.left_mul(x));
                if next.len() > budget {
                    return Err(Error::BudgetExhausted(format!(
                        "more than {budget} distinct partial products"
                    )));
                }
            }
        }
        layer = pareto_maximal(next.into_iter().collect());
    }
    Ok(layer
        .iter()
        .map(|x| x.iter().sum::<u64>())
        .max()
        .unwrap_or(0))
}

fn pareto_maximal(mut vs: Vec<Vec<u64>>) -> Vec<Vec<u64>> {
    // larger sums first: a vector can only be dominated by one with a sum at least as large
    vs.sort_by_key(|v| std::cmp::Reverse(v.iter().sum::<u64>()));
    let mut kept: Vec<Vec<u64>> = Vec::new();
    for v in vs {
        if !kept.iter().any(|k| k.iter().zip(&v).all(|(a, b)| a >= b)) {
            kept.push(v);
        }
    }
    kept
}

/// One row of the Eq.-(2)-style self-check: `δ_{w-1+n}` from products and from the clique oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaCheck {
    pub n: usize,
    pub code_len: usize,
    pub from_products: u64,
    pub from_brute: u64,
}

impl DeltaCheck {
    pub fn agrees(&self) -> bool {
        self.from_products == self.from_brute
    }
}

/// Compares `product_norm_delta(n)` with `brute::max_code(w-1+n)` for `n = 1..=n_max`.
pub fn self_check(fam: &TransferFamily, d: &PatternSet, n_max: usize) -> Result<Vec<DeltaCheck>> {
    (1..=n_max)
        .map(|n| {
            let code_len = fam.window - 1 + n;
            Ok(DeltaCheck {
                n,
                code_len,
                from_products: product_norm_delta(fam, n)?,
                from_brute: brute::max_code(code_len, d)?.0 as u64,
            })
        })
        .collect()
}
