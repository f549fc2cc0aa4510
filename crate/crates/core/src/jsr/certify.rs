//! Exact JSR values from invariant polytopes.
//!
//! If `Π` is a product of length `k` with `λ = ρ(Π)^{1/k}` and a
//! full-dimensional symmetric polytope `P` satisfies `A_i P ⊂ λ P` for every
//! matrix, then `ρ(Σ) = λ`. The polytope is grown as the symmetric hull of
//! the orbit of the leading eigenvector of `Π` under `A_i/λ`.

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::linalg;
use super::orbit;
use super::polytope::{point_in_hull, SymPolytope};
use super::products::real_family;
use crate::error::{Error, Result};
use crate::transfer::TransferFamily;

/// Containment slack used when building and re-checking certificates.
pub const CERT_SLACK: f64 = 1e-9;

#[derive(Clone, Copy, Debug)]
pub struct CertifyOptions {
    pub k_max: usize,
    pub vertex_cap: usize,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            k_max: 40,
            vertex_cap: 2000,
        }
    }
}

/// A numerically verified invariant polytope.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub lambda: f64,
    pub product: Vec<usize>,
    pub polytope: SymPolytope,
    /// `max_{i,w} ‖A_i w/λ‖_P - 1` over the vertices; at most `slack`.
    pub margin: f64,
    pub slack: f64,
    /// Orbit expansion steps until no image left the hull.
    pub steps: usize,
    /// Vertex pairs after each step.
    pub vertex_history: Vec<usize>,
    /// The orbit was seeded with the unit vectors as well, because the
    /// eigenvector orbit alone spans a proper invariant subspace.
    pub augmented: bool,
}

impl Certificate {
    /// `log2 λ`.
    pub fn capacity(&self) -> f64 {
        self.lambda.log2()
    }

    /// `λ (1 + max(margin, 0))`, a rigorous upper bound on the JSR.
    pub fn jsr_upper(&self) -> f64 {
        self.lambda * (1.0 + self.margin.max(0.0))
    }

    pub fn vertex_count(&self) -> usize {
        2 * self.polytope.len()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidArgument(format!("bad certificate: {e}")))
    }

    /// Re-checks the certificate from scratch with the feasibility
    /// formulation: full dimension, `λ = ρ(Π)^{1/k}`, and
    /// `A_i w ∈ λ (1 + slack) P` for every matrix and vertex.
    pub fn verify(&self, fam: &TransferFamily) -> Result<bool> {
        if self.polytope.dim() != fam.dim || self.product.iter().any(|&i| i >= fam.len()) {
            return Ok(false);
        }
        if !self.polytope.is_full_dimensional() {
            return Ok(false);
        }
        let mats = real_family(fam);
        let rho = linalg::spectral_radius(&linalg::product(&mats, &self.product))?;
        let lambda = rho.powf(1.0 / self.product.len() as f64);
        if (lambda - self.lambda).abs() > 1e-9 * self.lambda {
            return Ok(false);
        }
        let checks: Vec<(usize, usize)> = (0..mats.len())
            .flat_map(|i| (0..self.polytope.len()).map(move |j| (i, j)))
            .collect();
        let results: Vec<bool> = checks
            .par_iter()
            .map(|&(i, j)| {
                let w = nalgebra::DVector::from_column_slice(&self.polytope.vertices()[j]);
                let image = (&mats[i] * w) / self.lambda;
                point_in_hull(image.as_slice(), &self.polytope, self.slack)
            })
            .collect::<Result<_>>()?;
        Ok(results.into_iter().all(|ok| ok))
    }
}

fn unit_vectors(dim: usize) -> Vec<Vec<f64>> {
    (0..dim)
        .map(|i| (0..dim).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect()
}

fn max_gauge(scaled: &[DMatrix<f64>], p: &SymPolytope) -> Result<f64> {
    let pairs: Vec<(usize, usize)> = (0..scaled.len())
        .flat_map(|i| (0..p.len()).map(move |j| (i, j)))
        .collect();
    let norms: Vec<f64> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let w = nalgebra::DVector::from_column_slice(&p.vertices()[j]);
            p.norm((&scaled[i] * w).as_slice())
        })
        .collect::<Result<_>>()?;
    Ok(norms.into_iter().fold(0.0, f64::max))
}

pub fn certify_candidate(
    fam: &TransferFamily,
    product: &[usize],
    k_max: usize,
) -> Result<Option<Certificate>> {
    certify_with(
        fam,
        product,
        CertifyOptions {
            k_max,
            ..CertifyOptions::default()
        },
    )
}

/// Tries to prove `ρ(Σ) = ρ(Π)^{1/k}`. `Ok(None)` means no invariant
/// polytope appeared within the step and vertex caps, which refutes nothing.
pub fn certify_with(
    fam: &TransferFamily,
    product: &[usize],
    opts: CertifyOptions,
) -> Result<Option<Certificate>> {
    if product.is_empty() || product.iter().any(|&i| i >= fam.len()) {
        return Err(Error::InvalidArgument(format!(
            "product {product:?} does not index a family of {} matrices",
            fam.len()
        )));
    }
    let mats = real_family(fam);
    let pi = linalg::product(&mats, product);
    let (mu, v) = linalg::leading_eigenpair(&pi)?;
    let lambda = linalg::spectral_radius(&pi)?
        .max(mu.abs())
        .powf(1.0 / product.len() as f64);
    let scaled: Vec<DMatrix<f64>> = mats.iter().map(|a| a / lambda).collect();
    let v: Vec<f64> = v.iter().copied().collect();

    let mut augmented = false;
    let mut orbit = orbit::expand(&scaled, vec![v.clone()], opts.k_max, opts.vertex_cap, |_, _| true)?;
    if orbit.closed && !orbit.polytope.is_full_dimensional() {
        augmented = true;
        let mut seeds = vec![v];
        seeds.extend(unit_vectors(fam.dim));
        orbit = orbit::expand(&scaled, seeds, opts.k_max, opts.vertex_cap, |_, _| true)?;
    }
    if !orbit.closed || !orbit.polytope.is_full_dimensional() {
        return Ok(None);
    }
    let margin = max_gauge(&scaled, &orbit.polytope)? - 1.0;
    if margin > CERT_SLACK {
        return Ok(None);
    }
    let cert = Certificate {
        lambda,
        product: product.to_vec(),
        margin,
        slack: CERT_SLACK,
        steps: orbit.steps.len(),
        vertex_history: orbit.steps.iter().map(|s| s.vertices).collect(),
        augmented,
        polytope: orbit.polytope,
    };
    if !cert.verify(fam)? {
        return Err(Error::Invariant(
            "certificate failed independent re-verification".into(),
        ));
    }
    Ok(Some(cert))
}
