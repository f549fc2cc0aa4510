//! Dense two-phase simplex for `min c·x  s.t.  A x = b, x ≥ 0`.
//!
//! Pivoting follows Dantzig's rule except on degenerate steps, which use
//! Bland's rule. Rounding can still make near-degenerate steps cycle, so a
//! long run falls back to Bland's rule for good.

use crate::error::{Error, Result};

const PIVOT_TOL: f64 = 1e-9;
const HARRIS_TOL: f64 = 1e-12;
const COST_TOL: f64 = 1e-10;
const FEAS_TOL: f64 = 1e-10;
const MAX_PIVOTS: usize = 200_000;
const PERTURBATION: f64 = 1e-7;

#[derive(Clone, Debug)]
pub struct LinearProgram {
    pub rows: usize,
    pub cols: usize,
    /// Row-major `rows × cols`.
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub c: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal { value: f64, x: Vec<f64> },
    Infeasible,
    Unbounded,
}

struct Tableau {
    m: usize,
    width: usize,
    t: Vec<f64>,
    basis: Vec<usize>,
}

impl Tableau {
    fn at(&self, i: usize, j: usize) -> f64 {
        self.t[i * self.width + j]
    }

    fn rhs(&self, i: usize) -> f64 {
        self.t[i * self.width + self.width - 1]
    }

    fn pivot(&mut self, r: usize, col: usize) {
        let w = self.width;
        let p = self.at(r, col);
        for j in 0..w {
            self.t[r * w + j] /= p;
        }
        let (before, rest) = self.t.split_at_mut(r * w);
        let (prow, after) = rest.split_at_mut(w);
        for row in before.chunks_mut(w).chain(after.chunks_mut(w)) {
            let f = row[col];
            if f != 0.0 {
                for (x, y) in row.iter_mut().zip(prow.iter()) {
                    *x -= f * y;
                }
                row[col] = 0.0;
            }
        }
        self.basis[r] = col;
    }

    /// Harris ratio test: among rows whose ratio is within a small tolerance
    /// of the minimum, pivot on the largest entry.
    fn harris_row(&self, col: usize) -> Option<(usize, f64)> {
        let bound = (0..self.m)
            .filter(|&i| self.at(i, col) > PIVOT_TOL)
            .map(|i| (self.rhs(i).max(0.0) + HARRIS_TOL) / self.at(i, col))
            .fold(f64::INFINITY, f64::min);
        let mut leave: Option<(usize, f64)> = None;
        for i in 0..self.m {
            let a = self.at(i, col);
            if a > PIVOT_TOL {
                let ratio = self.rhs(i).max(0.0) / a;
                if ratio <= bound {
                    let better = match leave {
                        None => true,
                        Some((k, _)) => {
                            let ak = self.at(k, col);
                            a > ak || (a == ak && self.basis[i] < self.basis[k])
                        }
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
        }
        leave
    }

    /// Minimum ratio, ties broken by the smallest basic variable (Bland).
    fn bland_row(&self, col: usize) -> Option<(usize, f64)> {
        let mut leave: Option<(usize, f64)> = None;
        for i in 0..self.m {
            let a = self.at(i, col);
            if a > PIVOT_TOL {
                let ratio = self.rhs(i).max(0.0) / a;
                let better = match leave {
                    None => true,
                    Some((k, best)) => {
                        ratio < best - HARRIS_TOL
                            || (ratio <= best + HARRIS_TOL && self.basis[i] < self.basis[k])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        leave
    }

    /// Optimizes the objective held in row `m` over columns `< allowed`.
    fn optimize(&mut self, allowed: usize, pivots: &mut usize) -> Result<bool> {
        let obj = self.m;
        let mut degenerate = false;
        let bland_after = *pivots + 20 * (self.m + 5);
        loop {
            *pivots += 1;
            if *pivots > MAX_PIVOTS {
                return Err(Error::Numerical("simplex pivot limit reached".into()));
            }
            let bland = degenerate || *pivots > bland_after;
            let entering = if bland {
                (0..allowed).find(|&j| self.at(obj, j) < -COST_TOL)
            } else {
                (0..allowed)
                    .filter(|&j| self.at(obj, j) < -COST_TOL)
                    .min_by(|&x, &y| self.at(obj, x).total_cmp(&self.at(obj, y)))
            };
            let Some(col) = entering else {
                return Ok(true);
            };
            let leave = if bland {
                self.bland_row(col)
            } else {
                self.harris_row(col)
            };
            let Some((r, ratio)) = leave else {
                return Ok(false);
            };
            degenerate = ratio <= 1e-14;
            self.pivot(r, col);
        }
    }

    /// Dual simplex from a dual-feasible basis; `false` when primal infeasible.
    fn optimize_dual(&mut self, allowed: usize, pivots: &mut usize) -> Result<bool> {
        let obj = self.m;
        loop {
            *pivots += 1;
            if *pivots > MAX_PIVOTS {
                return Err(Error::Numerical("simplex pivot limit reached".into()));
            }
            let leaving = (0..self.m)
                .filter(|&i| self.rhs(i) < -FEAS_TOL)
                .min_by(|&x, &y| self.rhs(x).total_cmp(&self.rhs(y)));
            let Some(r) = leaving else {
                return Ok(true);
            };
            let entering = (0..allowed)
                .filter(|&j| self.at(r, j) < -PIVOT_TOL)
                .min_by(|&x, &y| {
                    let qx = self.at(obj, x).max(0.0) / -self.at(r, x);
                    let qy = self.at(obj, y).max(0.0) / -self.at(r, y);
                    qx.total_cmp(&qy).then(x.cmp(&y))
                });
            let Some(col) = entering else {
                return Ok(false);
            };
            self.pivot(r, col);
        }
    }
}

pub fn solve(lp: &LinearProgram) -> Result<LpOutcome> {
    let (m, n) = (lp.rows, lp.cols);
    if lp.a.len() != m * n || lp.b.len() != m || lp.c.len() != n {
        return Err(Error::InvalidArgument("inconsistent LP dimensions".into()));
    }
    let width = n + m + 1;
    let mut t = vec![0.0; (m + 1) * width];
    for i in 0..m {
        let sign = if lp.b[i] < 0.0 { -1.0 } else { 1.0 };
        for j in 0..n {
            t[i * width + j] = sign * lp.a[i * n + j];
        }
        t[i * width + n + i] = 1.0;
        t[i * width + width - 1] = sign * lp.b[i];
    }
    // phase I objective: sum of artificials, expressed in nonbasic terms
    for i in 0..m {
        for j in 0..n {
            t[m * width + j] -= t[i * width + j];
        }
        t[m * width + width - 1] -= t[i * width + width - 1];
    }
    let mut tab = Tableau {
        m,
        width,
        t,
        basis: (n..n + m).collect(),
    };
    let mut pivots = 0;
    tab.optimize(n + m, &mut pivots)?;
    let b_scale = 1.0 + lp.b.iter().fold(0.0f64, |s, x| s.max(x.abs()));
    let infeasibility = -tab.at(m, width - 1);
    if infeasibility > FEAS_TOL * b_scale {
        return Ok(LpOutcome::Infeasible);
    }
    // drive remaining artificials out where possible
    for i in 0..m {
        if tab.basis[i] >= n {
            if let Some(j) = (0..n).find(|&j| tab.at(i, j).abs() > 1e-9) {
                tab.pivot(i, j);
            }
        }
    }
    // phase II objective
    for j in 0..width {
        tab.t[m * width + j] = 0.0;
    }
    for j in 0..n {
        tab.t[m * width + j] = lp.c[j];
    }
    for i in 0..m {
        let bi = tab.basis[i];
        let cb = if bi < n { lp.c[bi] } else { 0.0 };
        if cb != 0.0 {
            for j in 0..width {
                let v = tab.at(i, j);
                tab.t[m * width + j] -= cb * v;
            }
        }
    }
    // phase II on a perturbed right-hand side, which keeps the iterates off
    // degenerate vertices; the perturbation lies in the range of the current
    // basis, so feasibility is unaffected
    for i in 0..m {
        let golden = (i as f64 * 0.618_033_988_749_895).fract();
        tab.t[i * width + width - 1] += PERTURBATION * (0.5 + golden);
    }
    if !tab.optimize(n, &mut pivots)? {
        return Ok(LpOutcome::Unbounded);
    }
    // restore the true right-hand side through B⁻¹, held in the artificial columns
    let b_signed: Vec<f64> = lp.b.iter().map(|x| x.abs()).collect();
    for i in 0..m {
        let v: f64 = (0..m).map(|k| tab.at(i, n + k) * b_signed[k]).sum();
        tab.t[i * width + width - 1] = v;
    }
    let obj_rhs: f64 = (0..m)
        .map(|i| {
            let bi = tab.basis[i];
            if bi < n {
                lp.c[bi] * tab.rhs(i)
            } else {
                0.0
            }
        })
        .sum();
    tab.t[m * width + width - 1] = -obj_rhs;
    if (0..m).any(|i| tab.rhs(i) < -FEAS_TOL * b_scale) && !tab.optimize_dual(n, &mut pivots)? {
        return Ok(LpOutcome::Infeasible);
    }
    let mut x = vec![0.0; n];
    for i in 0..m {
        if tab.basis[i] < n {
            x[tab.basis[i]] = tab.rhs(i).max(0.0);
        }
    }
    let value = lp.c.iter().zip(&x).map(|(c, x)| c * x).sum();
    Ok(LpOutcome::Optimal { value, x })
}

/// Largest violation of `A x = b` for a candidate solution.
pub fn residual(lp: &LinearProgram, x: &[f64]) -> f64 {
    (0..lp.rows)
        .map(|i| {
            let ax: f64 = (0..lp.cols).map(|j| lp.a[i * lp.cols + j] * x[j]).sum();
            (ax - lp.b[i]).abs()
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(rows: usize, cols: usize, a: &[f64], b: &[f64], c: &[f64]) -> LinearProgram {
        LinearProgram {
            rows,
            cols,
            a: a.to_vec(),
            b: b.to_vec(),
            c: c.to_vec(),
        }
    }

    #[test]
    fn small_optimum() {
        // min -x - y  s.t. x + 2y + s1 = 4, 3x + y + s2 = 6
        let p = lp(
            2,
            4,
            &[1.0, 2.0, 1.0, 0.0, 3.0, 1.0, 0.0, 1.0],
            &[4.0, 6.0],
            &[-1.0, -1.0, 0.0, 0.0],
        );
        match solve(&p).unwrap() {
            LpOutcome::Optimal { value, x } => {
                assert!((value + 2.8).abs() < 1e-12);
                assert!((x[0] - 1.6).abs() < 1e-12 && (x[1] - 1.2).abs() < 1e-12);
                assert!(residual(&p, &x) < 1e-12);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        // x + y = -1 with x, y ≥ 0
        assert_eq!(solve(&lp(1, 2, &[1.0, 1.0], &[-1.0], &[0.0, 0.0])).unwrap(), LpOutcome::Infeasible);
        // min -x s.t. x - y = 1
        assert_eq!(solve(&lp(1, 2, &[1.0, -1.0], &[1.0], &[-1.0, 0.0])).unwrap(), LpOutcome::Unbounded);
    }

    #[test]
    fn redundant_rows() {
        let p = lp(2, 2, &[1.0, 1.0, 2.0, 2.0], &[1.0, 2.0], &[1.0, 2.0]);
        match solve(&p).unwrap() {
            LpOutcome::Optimal { value, .. } => assert!((value - 1.0).abs() < 1e-12),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn degenerate_problem_terminates() {
        // a classic cycling example for pure Dantzig pivoting
        let a = [
            0.5, -5.5, -2.5, 9.0, 1.0, 0.0, 0.0, //
            0.5, -1.5, -0.5, 1.0, 0.0, 1.0, 0.0, //
            1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0,
        ];
        let p = lp(3, 7, &a, &[0.0, 0.0, 1.0], &[-10.0, 57.0, 9.0, 24.0, 0.0, 0.0, 0.0]);
        match solve(&p).unwrap() {
            LpOutcome::Optimal { value, .. } => assert!((value + 1.0).abs() < 1e-9),
            other => panic!("{other:?}"),
        }
    }
}
