//! Polytope iteration: JSR brackets from the growing unit ball
//! `P_{k+1} = absconv(P_k ∪ ⋃_i (A_i/s) P_k)`, started at the cross-polytope.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::orbit::{self, ADD_TOL};
use super::polytope::PRUNE_TOL;
use super::products::{product_bracket_with, real_family, BracketOptions, JsrBracket};
use crate::error::{Error, Result};
use crate::transfer::TransferFamily;

#[derive(Clone, Copy, Debug)]
pub struct IterateOptions {
    pub step_cap: usize,
    pub vertex_cap: usize,
    /// Product length searched for the lower bound and the scale `s`.
    pub n_max: usize,
    pub product_budget: usize,
}

impl Default for IterateOptions {
    fn default() -> Self {
        IterateOptions {
            step_cap: 60,
            vertex_cap: 1500,
            n_max: 6,
            product_budget: 200_000,
        }
    }
}

/// Bracket after each expansion step.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IterateStep {
    pub vertices: usize,
    pub lower: f64,
    pub upper: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IterateReport {
    pub bracket: JsrBracket,
    /// `A_i P ⊂ s(1 + tol) P` held for the final polytope.
    pub closed: bool,
    pub history: Vec<IterateStep>,
}

pub fn polytope_iterate(fam: &TransferFamily, eps: f64, step_cap: usize) -> Result<IterateReport> {
    polytope_iterate_with(
        fam,
        eps,
        IterateOptions {
            step_cap,
            ..IterateOptions::default()
        },
    )
}

/// Two upper bounds are tracked. With `s` the product lower bound and
/// `ν_k` the largest gauge of a fresh image, `s · max(ν_k, 1)` bounds every
/// `‖A_i‖_{P_k}`. Since `P_k` contains `Π e_j / s^k` for all products of
/// length `k`, `s · (max_w |w|_1)^{1/k}` bounds `ρ` through the 1-norm.
/// Both carry the outward rounding of the add and prune tolerances.
pub fn polytope_iterate_with(
    fam: &TransferFamily,
    eps: f64,
    opts: IterateOptions,
) -> Result<IterateReport> {
    if !(eps > 0.0) {
        return Err(Error::InvalidArgument(format!("eps must be positive, got {eps}")));
    }
    let mut bracket = product_bracket_with(
        fam,
        BracketOptions {
            n_max: opts.n_max,
            product_budget: opts.product_budget,
            polytope_steps: 0,
            vertex_cap: opts.vertex_cap,
        },
    )?;
    let s = bracket.lower;
    if s == 0.0 || bracket.width() <= eps {
        bracket.partial = bracket.width() > eps;
        return Ok(IterateReport {
            bracket,
            closed: false,
            history: Vec::new(),
        });
    }
    let scaled: Vec<DMatrix<f64>> = real_family(fam).iter().map(|a| a / s).collect();
    let dim = fam.dim;
    let seeds = (0..dim)
        .map(|i| (0..dim).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();

    let mut upper = bracket.upper;
    let mut history = Vec::new();
    let mut k = 0i32;
    let orbit = orbit::expand(&scaled, seeds, opts.step_cap, opts.vertex_cap, |poly, step| {
        let drift = (1.0 + ADD_TOL) * (1.0 + PRUNE_TOL);
        // gauge bound on the polytope the images were measured against
        let gauge = s * step.max_image_norm.max(drift.powi(k)) * (1.0 + 1e-12);
        k += 1;
        let l1 = s * (drift.powi(k) * poly.max_l1()).powf(1.0 / k as f64) * (1.0 + 1e-12);
        upper = upper.min(gauge).min(l1);
        history.push(IterateStep {
            vertices: poly.len(),
            lower: s,
            upper,
        });
        upper - s > eps
    })?;
    bracket.upper = upper.max(s);
    bracket.polytope_upper = Some(upper);
    bracket.partial = bracket.width() > eps;
    Ok(IterateReport {
        bracket,
        closed: orbit.closed,
        history,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns::PatternSet;
    use crate::transfer::{build_sigma, BinMatrix};

    #[test]
    fn golden_ratio_pinned() {
        let fam = build_sigma(&PatternSet::from_list("0++").unwrap()).unwrap();
        let r = polytope_iterate(&fam, 1e-6, 60).unwrap();
        let phi = 1.618_033_988_749_895;
        assert!(r.bracket.lower - 1e-12 <= phi && phi <= r.bracket.upper, "{r:?}");
        assert!(r.bracket.width() <= 1e-6, "{r:?}");
        assert!(!r.bracket.partial);
    }

    #[test]
    fn permutation_pins_one() {
        let mut p = BinMatrix::zeros(3);
        p.set(0, 1, true);
        p.set(1, 2, true);
        p.set(2, 0, true);
        let fam = TransferFamily::from_matrices(vec![p]).unwrap();
        let r = polytope_iterate(&fam, 1e-9, 10).unwrap();
        assert!((r.bracket.lower - 1.0).abs() < 1e-11);
        assert!(r.bracket.upper - 1.0 < 1e-8);
    }

    #[test]
    fn defective_matrix_stays_partial() {
        // a Jordan block: ρ = 1 but ‖A^k‖ grows linearly
        let mut j = BinMatrix::zeros(2);
        j.set(0, 0, true);
        j.set(0, 1, true);
        j.set(1, 1, true);
        let fam = TransferFamily::from_matrices(vec![j]).unwrap();
        let r = polytope_iterate(&fam, 1e-6, 8).unwrap();
        assert!(r.bracket.partial);
        assert!(r.bracket.contains(1.0));
        assert!(polytope_iterate(&fam, 0.0, 8).is_err());
    }
}
