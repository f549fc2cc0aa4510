//! `cap(D) = log2 ρ(Σ(D))`, end to end.

use serde::{Deserialize, Serialize};

use super::certify::{certify_with, Certificate, CertifyOptions};
use super::iterate::{polytope_iterate_with, IterateOptions, IterateReport};
use super::products::{product_bracket_with, BracketOptions, JsrBracket};
use crate::bounds::{theorem1_bracket, CapacityBracket, ROUNDING_SLACK};
use crate::brute;
use crate::error::{Error, Result};
use crate::patterns::PatternSet;
use crate::transfer::build_sigma;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum CapacityMode {
    /// Stop once the capacity bracket is at most `eps` wide.
    Bracket { eps: f64 },
    /// Certify the best product found by enumeration.
    Certify,
}

#[derive(Clone, Copy, Debug)]
pub struct CapacityOptions {
    pub mode: CapacityMode,
    pub bracket: BracketOptions,
    pub certify: CertifyOptions,
    pub iterate: IterateOptions,
    /// Largest code length for the brute-force cross-check; 0 disables it.
    pub brute_n_max: usize,
    pub brute_budget: u64,
}

impl CapacityOptions {
    pub fn new(mode: CapacityMode) -> Self {
        let mut bracket = BracketOptions::default();
        if mode == CapacityMode::Certify {
            // a certificate or the polytope iteration supersedes the adapted norm
            bracket.polytope_steps = 0;
        }
        CapacityOptions {
            mode,
            bracket,
            certify: CertifyOptions::default(),
            iterate: IterateOptions::default(),
            brute_n_max: 10,
            brute_budget: 500_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CapacityReport {
    pub patterns: String,
    pub mode: CapacityMode,
    pub sigma_size: usize,
    pub dim: usize,
    pub products: JsrBracket,
    pub certificate: Option<Certificate>,
    pub iterate: Option<IterateReport>,
    pub jsr_lower: f64,
    pub jsr_upper: f64,
    pub cap_lower: f64,
    pub cap_upper: f64,
    /// `log2 λ` when an invariant polytope was found.
    pub exact: Option<f64>,
    /// Bracket from the brute-force `δ_n` at the largest affordable `n`.
    pub theorem1: Option<CapacityBracket>,
}

impl CapacityReport {
    pub fn cap_width(&self) -> f64 {
        self.cap_upper - self.cap_lower
    }

    /// The JSR-based interval meets the brute-force bracket.
    pub fn consistent(&self) -> bool {
        match &self.theorem1 {
            Some(t) => self.cap_lower <= t.upper + 1e-9 && t.lower <= self.cap_upper + 1e-9,
            None => true,
        }
    }
}

pub fn capacity(d: &PatternSet, mode: CapacityMode) -> Result<CapacityReport> {
    capacity_with(d, CapacityOptions::new(mode))
}

/// Largest `n ≤ n_max` whose `δ_n` the brute oracle finishes within budget,
/// turned into the general sandwich bracket.
pub fn brute_bracket(d: &PatternSet, n_max: usize, budget: u64) -> Option<CapacityBracket> {
    let first = (d.r1() + d.r2()).max(1);
    let mut best = None;
    for n in first..=n_max.min(brute::MAX_BRUTE_LEN) {
        match brute::max_code_with_budget(n, d, budget) {
            Ok(r) => best = theorem1_bracket(n, r.size as u64, d).ok(),
            Err(_) => break,
        }
    }
    best
}

fn log2_clamped(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x.log2().clamp(0.0, 1.0)
    }
}

fn cap_interval(lo: f64, hi: f64) -> (f64, f64) {
    (
        (log2_clamped(lo) - ROUNDING_SLACK).max(0.0),
        (log2_clamped(hi) + ROUNDING_SLACK).min(1.0),
    )
}

pub fn capacity_with(d: &PatternSet, opts: CapacityOptions) -> Result<CapacityReport> {
    if d.is_extended() {
        return Err(Error::InvalidArgument(
            "expand ± patterns before computing the capacity".into(),
        ));
    }
    let fam = build_sigma(d)?;
    let products = product_bracket_with(&fam, opts.bracket)?;
    let mut certificate = None;
    let mut iterate = None;
    let (mut lo, mut hi) = (products.lower, products.upper);
    match opts.mode {
        CapacityMode::Certify => {
            certificate = certify_with(&fam, &products.best_product, opts.certify)?;
            if let Some(c) = &certificate {
                lo = lo.max(c.lambda);
                hi = hi.min(c.jsr_upper());
            } else {
                let r = polytope_iterate_with(&fam, 1e-9 * lo.max(1.0), opts.iterate)?;
                lo = lo.max(r.bracket.lower);
                hi = hi.min(r.bracket.upper);
                iterate = Some(r);
            }
        }
        CapacityMode::Bracket { eps } => {
            if !(eps > 0.0) {
                return Err(Error::InvalidArgument(format!("eps must be positive, got {eps}")));
            }
            if log2_clamped(hi) - log2_clamped(lo) > eps {
                let jsr_eps = lo * (2f64.powf(eps) - 1.0);
                let r = polytope_iterate_with(&fam, jsr_eps, opts.iterate)?;
                lo = lo.max(r.bracket.lower);
                hi = hi.min(r.bracket.upper);
                iterate = Some(r);
            }
        }
    }
    if lo > hi * (1.0 + 1e-9) {
        return Err(Error::Invariant(format!(
            "lower bound {lo} exceeds upper bound {hi}"
        )));
    }
    let theorem1 = if opts.brute_n_max > 0 {
        brute_bracket(d, opts.brute_n_max, opts.brute_budget)
    } else {
        None
    };
    let (cap_lower, cap_upper) = cap_interval(lo, hi.max(lo));
    Ok(CapacityReport {
        patterns: d.to_string(),
        mode: opts.mode,
        sigma_size: fam.len(),
        dim: fam.dim,
        exact: certificate.as_ref().map(|c| c.capacity()),
        products,
        certificate,
        iterate,
        jsr_lower: lo,
        jsr_upper: hi.max(lo),
        cap_lower,
        cap_upper,
        theorem1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn certified_golden_ratio() {
        let d = PatternSet::from_list("0++").unwrap();
        let r = capacity(&d, CapacityMode::Certify).unwrap();
        let exact = r.exact.unwrap();
        assert!((exact - 0.694_241_913_630_617_3).abs() < 1e-9);
        assert!(r.consistent());
        let t = r.theorem1.unwrap();
        assert!(t.contains(exact));
    }

    #[test]
    fn bracket_mode_for_prop1() {
        let d = PatternSet::from_list("+- -+ ++ --").unwrap();
        let r = capacity(&d, CapacityMode::Bracket { eps: 0.01 }).unwrap();
        assert!(r.cap_lower <= 0.5 && 0.5 <= r.cap_upper);
        assert!(r.cap_width() <= 0.01);
    }

    #[test]
    fn refuses_extended_sets() {
        let d = PatternSet::from_list("0x+").unwrap();
        assert!(capacity(&d, CapacityMode::Certify).is_err());
    }
}
