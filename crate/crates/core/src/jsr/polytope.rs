//! Origin-symmetric polytopes `absconv{±w_1, ..., ±w_N}` and their gauge.

use std::collections::HashSet;

use nalgebra::DVector;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::linalg;
use super::lp::{self, LinearProgram, LpOutcome};
use crate::error::{Error, Result};

/// Relative tolerance under which a vertex counts as redundant.
pub const PRUNE_TOL: f64 = 1e-10;

/// An origin-symmetric polytope stored as one vertex per `±` pair.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymPolytope {
    dim: usize,
    vertices: Vec<Vec<f64>>,
}

fn sign_normalize(mut v: Vec<f64>) -> Vec<f64> {
    if let Some(first) = v.iter().find(|x| x.abs() > 1e-12) {
        if *first < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
    }
    v
}

fn key(v: &[f64]) -> Vec<i64> {
    v.iter().map(|x| (x * 1e9).round() as i64).collect()
}

impl SymPolytope {
    /// Keeps nonzero points, merging `±` duplicates.
    pub fn new(dim: usize, points: impl IntoIterator<Item = Vec<f64>>) -> Result<Self> {
        let mut p = SymPolytope {
            dim,
            vertices: Vec::new(),
        };
        p.extend(points)?;
        Ok(p)
    }

    /// The unit ball of `Σ|x_i|`.
    pub fn cross(dim: usize) -> Self {
        let vertices = (0..dim)
            .map(|i| (0..dim).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
            .collect();
        SymPolytope { dim, vertices }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<f64>] {
        &self.vertices
    }

    /// Number of stored vertex pairs; the polytope has twice as many vertices.
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Appends points, skipping zeros and near-duplicates. Returns how many were kept.
    pub fn extend(&mut self, points: impl IntoIterator<Item = Vec<f64>>) -> Result<usize> {
        let mut seen: HashSet<Vec<i64>> = self.vertices.iter().map(|v| key(v)).collect();
        let mut added = 0;
        for p in points {
            if p.len() != self.dim {
                return Err(Error::InvalidArgument(format!(
                    "point of dimension {} in a {}-dimensional polytope",
                    p.len(),
                    self.dim
                )));
            }
            if p.iter().any(|x| !x.is_finite()) {
                return Err(Error::Numerical("non-finite polytope vertex".into()));
            }
            if p.iter().all(|x| x.abs() <= 1e-300) {
                continue;
            }
            let p = sign_normalize(p);
            if seen.insert(key(&p)) {
                self.vertices.push(p);
                added += 1;
            }
        }
        Ok(added)
    }

    pub fn rank(&self) -> usize {
        let rows: Vec<DVector<f64>> = self
            .vertices
            .iter()
            .map(|v| DVector::from_column_slice(v))
            .collect();
        linalg::rank(&rows, self.dim)
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.rank() == self.dim
    }

    /// Largest `Σ|x_i|` over the vertices.
    pub fn max_l1(&self) -> f64 {
        self.vertices
            .iter()
            .map(|v| v.iter().map(|x| x.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Gauge `min{Σ|c_j| : x = Σ c_j w_j}`; infinite outside the span.
    pub fn norm(&self, x: &[f64]) -> Result<f64> {
        self.norm_excluding(x, None)
    }

    fn norm_excluding(&self, x: &[f64], skip: Option<usize>) -> Result<f64> {
        if x.len() != self.dim {
            return Err(Error::InvalidArgument("dimension mismatch".into()));
        }
        if x.iter().all(|v| *v == 0.0) {
            return Ok(0.0);
        }
        let verts: Vec<&Vec<f64>> = self
            .vertices
            .iter()
            .enumerate()
            .filter(|(i, _)| Some(*i) != skip)
            .map(|(_, v)| v)
            .collect();
        if verts.is_empty() {
            return Ok(f64::INFINITY);
        }
        let n = verts.len();
        let d = self.dim;
        let mut a = vec![0.0; d * 2 * n];
        for (j, v) in verts.iter().enumerate() {
            for i in 0..d {
                a[i * 2 * n + j] = v[i];
                a[i * 2 * n + n + j] = -v[i];
            }
        }
        let program = LinearProgram {
            rows: d,
            cols: 2 * n,
            a,
            b: x.to_vec(),
            c: vec![1.0; 2 * n],
        };
        match lp::solve(&program)? {
            LpOutcome::Optimal { value, .. } => Ok(value),
            LpOutcome::Infeasible => Ok(f64::INFINITY),
            LpOutcome::Unbounded => Err(Error::Numerical("gauge LP reported unbounded".into())),
        }
    }

    /// Drops vertices lying in the hull of the others. Candidates are screened
    /// in parallel and then confirmed one at a time, so the result does not
    /// depend on the thread count.
    pub fn prune(&mut self) -> Result<usize> {
        let screened: Vec<bool> = (0..self.vertices.len())
            .into_par_iter()
            .map(|i| {
                self.norm_excluding(&self.vertices[i], Some(i))
                    .map(|g| g <= 1.0 + PRUNE_TOL)
            })
            .collect::<Result<_>>()?;
        let mut removed = 0;
        for i in (0..self.vertices.len()).rev() {
            if screened[i] && self.norm_excluding(&self.vertices[i], Some(i))? <= 1.0 + PRUNE_TOL {
                self.vertices.remove(i);
                removed += 1;
            }
        }
        Ok(removed)
    }
}

/// Decides `x ∈ (1 + slack)·P` with the feasibility program
/// `x = Σ(c⁺_j - c⁻_j) w_j`, `Σ(c⁺_j + c⁻_j) + s = 1 + slack`, all variables `≥ 0`.
///
/// This is a different formulation from [`SymPolytope::norm`], which lets
/// certificates be re-checked independently of how they were built.
pub fn point_in_hull(x: &[f64], p: &SymPolytope, slack: f64) -> Result<bool> {
    if x.len() != p.dim {
        return Err(Error::InvalidArgument("dimension mismatch".into()));
    }
    let n = p.vertices.len();
    let d = p.dim;
    let cols = 2 * n + 1;
    let mut a = vec![0.0; (d + 1) * cols];
    for (j, v) in p.vertices.iter().enumerate() {
        for i in 0..d {
            a[i * cols + j] = v[i];
            a[i * cols + n + j] = -v[i];
        }
    }
    for j in 0..cols {
        a[d * cols + j] = 1.0;
    }
    let mut b = x.to_vec();
    b.push(1.0 + slack);
    let program = LinearProgram {
        rows: d + 1,
        cols,
        a,
        b,
        c: vec![0.0; cols],
    };
    match lp::solve(&program)? {
        LpOutcome::Optimal { x: sol, .. } => {
            let res = lp::residual(&program, &sol);
            if res > 1e-8 {
                return Err(Error::Numerical(format!(
                    "feasibility solution has residual {res:e}"
                )));
            }
            Ok(true)
        }
        LpOutcome::Infeasible => Ok(false),
        LpOutcome::Unbounded => Err(Error::Numerical("feasibility LP reported unbounded".into())),
    }
}
