//! JSR brackets from exhaustive product enumeration.

use std::collections::HashSet;

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::linalg;
use super::orbit::{self, ADD_TOL};
use super::polytope::PRUNE_TOL;
use crate::error::{Error, Result};
use crate::transfer::TransferFamily;

/// Total number of products evaluated before giving up.
pub const DEFAULT_PRODUCT_BUDGET: usize = 1_000_000;

/// Bounds on the joint spectral radius.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JsrBracket {
    pub lower: f64,
    pub upper: f64,
    /// Matrix indices of the product attaining `lower`.
    pub best_product: Vec<usize>,
    /// Longest product length fully enumerated.
    pub depth: usize,
    /// Enumeration stopped at the budget before reaching `n_max`.
    pub partial: bool,
    /// Best bound from the ∞-norm and entry-sum norm of products.
    pub norm_upper: f64,
    /// Bound from the gauge of the polytope adapted to `best_product`, if computed.
    pub polytope_upper: Option<f64>,
}

impl JsrBracket {
    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lower <= x && x <= self.upper
    }
}

#[derive(Clone, Copy, Debug)]
pub struct BracketOptions {
    pub n_max: usize,
    pub product_budget: usize,
    /// Steps of orbit expansion for the adapted norm; 0 disables it.
    pub polytope_steps: usize,
    pub vertex_cap: usize,
}

impl Default for BracketOptions {
    fn default() -> Self {
        BracketOptions {
            n_max: 8,
            product_budget: DEFAULT_PRODUCT_BUDGET,
            polytope_steps: 40,
            vertex_cap: 1500,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct IntMatrix {
    dim: usize,
    e: Vec<u64>,
}

impl IntMatrix {
    fn mul(&self, other: &IntMatrix) -> Option<IntMatrix> {
        let n = self.dim;
        let mut e = vec![0u64; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.e[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let t = a.checked_mul(other.e[k * n + j])?;
                    e[i * n + j] = e[i * n + j].checked_add(t)?;
                }
            }
        }
        Some(IntMatrix { dim: n, e })
    }

    fn entry_sum(&self) -> f64 {
        self.e.iter().map(|&x| x as f64).sum()
    }

    fn inf_norm(&self) -> f64 {
        self.e
            .chunks(self.dim)
            .map(|r| r.iter().map(|&x| x as f64).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// `min(‖Π‖_∞, ‖Π‖_1)`.
    fn cheap_norm(&self) -> f64 {
        let n = self.dim;
        let col = (0..n)
            .map(|j| (0..n).map(|i| self.e[i * n + j] as f64).sum::<f64>())
            .fold(0.0, f64::max);
        self.inf_norm().min(col)
    }

    fn to_dmatrix(&self) -> DMatrix<f64> {
        DMatrix::from_row_slice(self.dim, self.dim, &self.e.iter().map(|&x| x as f64).collect::<Vec<_>>())
    }
}

pub(crate) fn real_family(fam: &TransferFamily) -> Vec<DMatrix<f64>> {
    fam.matrices.iter().map(linalg::to_dmatrix).collect()
}

pub fn product_bracket(fam: &TransferFamily, n_max: usize) -> Result<JsrBracket> {
    product_bracket_with(
        fam,
        BracketOptions {
            n_max,
            ..BracketOptions::default()
        },
    )
}

/// Lower bound `max ρ(Π)^{1/k}` and upper bound `min_k max ‖Π‖^{1/k}` over
/// products of length `k ≤ n_max`, refined by the gauge of an orbit polytope
/// adapted to the best product.
pub fn product_bracket_with(fam: &TransferFamily, opts: BracketOptions) -> Result<JsrBracket> {
    if fam.is_empty() {
        return Err(Error::InvalidArgument("empty matrix family".into()));
    }
    if opts.n_max == 0 {
        return Err(Error::InvalidArgument("n_max must be at least 1".into()));
    }
    let base: Vec<IntMatrix> = fam
        .matrices
        .iter()
        .map(|m| IntMatrix {
            dim: m.dim,
            e: m.entries.iter().map(|&x| x as u64).collect(),
        })
        .collect();

    let mut lower = 0.0f64;
    let mut best_product = vec![0];
    let mut norm_upper = f64::INFINITY;
    let mut level: Vec<(IntMatrix, Vec<usize>)> = Vec::new();
    let mut seen: HashSet<IntMatrix> = HashSet::new();
    for (i, m) in base.iter().enumerate() {
        if seen.insert(m.clone()) {
            level.push((m.clone(), vec![i]));
        }
    }
    let mut evaluated = 0usize;
    let mut depth = 0;
    let mut partial = false;
    for k in 1..=opts.n_max {
        if k > 1 {
            if evaluated + level.len() * base.len() > opts.product_budget {
                partial = true;
                break;
            }
            let next: Vec<Option<(IntMatrix, Vec<usize>)>> = level
                .par_iter()
                .flat_map_iter(|(p, idx)| {
                    base.iter().enumerate().map(move |(i, a)| {
                        p.mul(a).map(|q| {
                            let mut w = idx.clone();
                            w.push(i);
                            (q, w)
                        })
                    })
                })
                .collect();
            evaluated += next.len();
            let mut fresh = Vec::new();
            seen.clear();
            for item in next {
                let (q, w) = item.ok_or_else(|| {
                    Error::Numerical(format!("product entries overflow at length {k}"))
                })?;
                if seen.insert(q.clone()) {
                    fresh.push((q, w));
                }
            }
            level = fresh;
        } else {
            evaluated += level.len();
        }
        let inv = 1.0 / k as f64;
        // ρ(Π) ≤ ‖Π‖, so products whose norms cannot beat the current lower
        // bound skip the eigenvalue computation
        let threshold = lower.powi(k as i32) * (1.0 + 1e-12);
        let radii: Vec<Option<f64>> = level
            .par_iter()
            .map(|(p, _)| {
                if p.cheap_norm() <= threshold {
                    Ok(None)
                } else {
                    linalg::spectral_radius(&p.to_dmatrix()).map(Some)
                }
            })
            .collect::<Result<_>>()?;
        for ((_, idx), rho) in level.iter().zip(&radii) {
            let Some(rho) = rho else { continue };
            let r = rho.powf(inv);
            if r > lower * (1.0 + 1e-12) {
                lower = r;
                best_product = idx.clone();
            }
        }
        let max_norm = level
            .iter()
            .map(|(p, _)| p.inf_norm().min(p.entry_sum()))
            .fold(0.0, f64::max);
        norm_upper = norm_upper.min(max_norm.powf(inv) * (1.0 + 1e-12));
        depth = k;
    }

    let mut polytope_upper = None;
    if opts.polytope_steps > 0 && lower > 0.0 {
        polytope_upper = adapted_upper(fam, &best_product, lower, opts)?;
    }
    // the eigenvalue solver may overshoot by a few ulps
    let lower = lower * (1.0 - 1e-12);
    let upper = polytope_upper.map_or(norm_upper, |p| p.min(norm_upper)).max(lower);
    Ok(JsrBracket {
        lower,
        upper,
        best_product,
        depth,
        partial,
        norm_upper,
        polytope_upper,
    })
}

/// `λ · max_i ‖A_i/λ‖_P` for a full-dimensional polytope `P` grown from the
/// best product's eigenvector and the unit vectors.
fn adapted_upper(
    fam: &TransferFamily,
    product: &[usize],
    lambda: f64,
    opts: BracketOptions,
) -> Result<Option<f64>> {
    let mats = real_family(fam);
    let dim = fam.dim;
    let scaled: Vec<DMatrix<f64>> = mats.iter().map(|a| a / lambda).collect();
    let mut seeds: Vec<Vec<f64>> = (0..dim)
        .map(|i| (0..dim).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    if let Ok(v) = linalg::leading_eigenvector(&linalg::product(&mats, product)) {
        seeds.insert(0, v.iter().copied().collect());
    }
    let mut best = f64::INFINITY;
    let mut k = 0;
    let orbit = orbit::expand(&scaled, seeds, opts.polytope_steps, opts.vertex_cap, |_, step| {
        // images of older vertices were inside an earlier hull, which pruning
        // may have shrunk by at most PRUNE_TOL per step
        let older = (1.0 + ADD_TOL) * (1.0 + PRUNE_TOL).powi(k);
        best = best.min(step.max_image_norm.max(older));
        k += 1;
        true
    })?;
    if orbit.polytope.rank() < dim || !best.is_finite() {
        return Ok(None);
    }
    Ok(Some(lambda * best * (1.0 + 1e-12)))
}
