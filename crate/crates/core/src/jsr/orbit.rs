//! Growing symmetric hulls of vector orbits under a scaled matrix family.

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;

use super::polytope::SymPolytope;
use crate::error::Result;

/// A point counts as new when its gauge exceeds `1 + ADD_TOL`.
pub const ADD_TOL: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct OrbitStep {
    /// Vertex pairs after pruning.
    pub vertices: usize,
    /// Largest gauge of an image of the previous frontier, measured before it was added.
    pub max_image_norm: f64,
}

#[derive(Clone, Debug)]
pub struct Orbit {
    pub polytope: SymPolytope,
    /// No image left the hull (up to `ADD_TOL`).
    pub closed: bool,
    pub steps: Vec<OrbitStep>,
    /// The step or vertex cap stopped the expansion.
    pub capped: bool,
}

/// Expands `P_0 = absconv(seeds)` by `P_{k+1} = prune(absconv(P_k ∪ ⋃_i B_i F_k))`
/// where `F_k` are the vertices added at step `k`. `on_step` sees every
/// intermediate polytope and may stop the expansion by returning `false`.
pub fn expand(
    scaled: &[DMatrix<f64>],
    seeds: Vec<Vec<f64>>,
    max_steps: usize,
    vertex_cap: usize,
    mut on_step: impl FnMut(&SymPolytope, &OrbitStep) -> bool,
) -> Result<Orbit> {
    let dim = scaled[0].nrows();
    let mut poly = SymPolytope::new(dim, seeds)?;
    poly.prune()?;
    let mut frontier: Vec<Vec<f64>> = poly.vertices().to_vec();
    let mut steps = Vec::new();
    for _ in 0..max_steps {
        let images: Vec<Vec<f64>> = frontier
            .iter()
            .flat_map(|w| {
                let w = DVector::from_column_slice(w);
                scaled
                    .iter()
                    .map(move |b| (b * &w).iter().copied().collect::<Vec<f64>>())
            })
            .collect();
        let mut candidates = SymPolytope::new(dim, Vec::new())?;
        candidates.extend(images)?;
        let norms: Vec<f64> = candidates
            .vertices()
            .par_iter()
            .map(|c| poly.norm(c))
            .collect::<Result<_>>()?;
        let max_image_norm = norms.iter().copied().fold(0.0, f64::max);
        let outside: Vec<Vec<f64>> = candidates
            .vertices()
            .iter()
            .zip(&norms)
            .filter(|(_, g)| **g > 1.0 + ADD_TOL)
            .map(|(c, _)| c.clone())
            .collect();
        if outside.is_empty() {
            let step = OrbitStep {
                vertices: poly.len(),
                max_image_norm,
            };
            on_step(&poly, &step);
            return Ok(Orbit {
                polytope: poly,
                closed: true,
                steps,
                capped: false,
            });
        }
        poly.extend(outside.iter().cloned())?;
        poly.prune()?;
        let kept: std::collections::HashSet<Vec<u64>> = poly
            .vertices()
            .iter()
            .map(|v| v.iter().map(|x| x.to_bits()).collect())
            .collect();
        frontier = outside
            .into_iter()
            .filter(|c| kept.contains(&c.iter().map(|x| x.to_bits()).collect::<Vec<u64>>()))
            .collect();
        let step = OrbitStep {
            vertices: poly.len(),
            max_image_norm,
        };
        let go_on = on_step(&poly, &step);
        steps.push(step);
        if !go_on || poly.len() > vertex_cap {
            return Ok(Orbit {
                polytope: poly,
                closed: false,
                steps,
                capped: go_on,
            });
        }
    }
    Ok(Orbit {
        polytope: poly,
        closed: false,
        steps,
        capped: true,
    })
}
