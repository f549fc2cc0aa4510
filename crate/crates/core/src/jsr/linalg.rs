//! Dominant eigenvalues and eigenvectors of small dense matrices.

use nalgebra::{Complex, DMatrix, DVector};

use crate::error::{Error, Result};
use crate::transfer::BinMatrix;

/// Largest dimension accepted by the eigen routines.
pub const MAX_DIM: usize = 64;

const POWER_ITERATIONS: usize = 20_000;
const SCHUR_ITERATIONS: usize = 10_000;

pub fn to_dmatrix(a: &BinMatrix) -> DMatrix<f64> {
    DMatrix::from_row_slice(a.dim, a.dim, &a.to_f64())
}

fn check_square(a: &DMatrix<f64>) -> Result<()> {
    if a.nrows() != a.ncols() || a.nrows() == 0 {
        return Err(Error::InvalidArgument(format!(
            "expected a non-empty square matrix, got {}x{}",
            a.nrows(),
            a.ncols()
        )));
    }
    if a.nrows() > MAX_DIM {
        return Err(Error::InvalidArgument(format!(
            "dimension {} exceeds {MAX_DIM}",
            a.nrows()
        )));
    }
    Ok(())
}

/// All eigenvalues from a real Schur decomposition.
pub fn eigenvalues(a: &DMatrix<f64>) -> Result<Vec<Complex<f64>>> {
    check_square(a)?;
    // QR sweeps occasionally stall on exact integer data; the transpose and
    // shifted copies have the same (shifted) spectrum
    let n = a.nrows();
    let scale = a.amax().max(1.0);
    for shift in [0.0, 0.5, -0.75, 1.25] {
        for (attempt, m) in [a.clone(), a.transpose()].into_iter().enumerate() {
            let m = m + DMatrix::identity(n, n) * (shift * scale);
            let eps = if attempt == 0 { 4.0 * f64::EPSILON } else { 1e-14 };
            if let Some(schur) = m.try_schur(eps, SCHUR_ITERATIONS) {
                return Ok(schur
                    .complex_eigenvalues()
                    .iter()
                    .map(|z| z - Complex::new(shift * scale, 0.0))
                    .collect());
            }
        }
    }
    Err(Error::Numerical("Schur decomposition did not converge".into()))
}

/// Power iteration from a fixed positive start; `None` unless the Rayleigh
/// estimate settles and the residual is small.
fn power_iteration(a: &DMatrix<f64>) -> Option<f64> {
    let n = a.nrows();
    let mut x = DVector::from_fn(n, |i, _| 1.0 + 0.1 * i as f64 / n as f64);
    x /= x.amax();
    let mut prev = f64::NAN;
    for _ in 0..POWER_ITERATIONS {
        let y = a * &x;
        let scale = y.amax();
        if scale == 0.0 || !scale.is_finite() {
            return None;
        }
        let mu = x.dot(&y) / x.dot(&x);
        let next = y / scale;
        if (mu - prev).abs() <= 1e-15 * mu.abs() {
            let residual = (a * &next - &next * mu).amax();
            return (residual <= 1e-12 * mu.abs().max(1.0)).then_some(mu.abs());
        }
        prev = mu;
        x = next;
    }
    None
}

/// `ρ(a)`: the Schur spectrum fixes the value, and power iteration refines it
/// when it converges to the same modulus.
pub fn spectral_radius(a: &DMatrix<f64>) -> Result<f64> {
    let rho = eigenvalues(a)?
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    match power_iteration(a) {
        Some(mu) if (mu - rho).abs() <= 1e-8 * rho.max(1.0) => Ok(mu),
        _ => Ok(rho),
    }
}

pub fn spectral_radius_bin(a: &BinMatrix) -> Result<f64> {
    spectral_radius(&to_dmatrix(a))
}

/// The eigenvector of the dominant eigenvalue, scaled to max-abs 1 with its
/// first nonzero component positive. Returns the eigenvalue alongside.
pub fn leading_eigenpair(a: &DMatrix<f64>) -> Result<(f64, DVector<f64>)> {
    let mut eig = eigenvalues(a)?;
    eig.sort_by(|x, y| y.norm().total_cmp(&x.norm()));
    let top = eig[0];
    let rho = top.norm();
    if rho == 0.0 {
        return Err(Error::Numerical("matrix is nilpotent".into()));
    }
    if top.im.abs() > 1e-9 * rho {
        return Err(Error::Numerical(format!(
            "dominant eigenvalue {top} is not real"
        )));
    }
    if eig.len() > 1 && eig[1].norm() > rho * (1.0 - 1e-9) {
        return Err(Error::Numerical(format!(
            "dominant eigenvalue modulus {rho} is not simple"
        )));
    }
    let lambda = top.re;
    let n = a.nrows();
    let shifted = a - DMatrix::identity(n, n) * lambda;
    let svd = shifted.svd(false, true);
    let v_t = svd
        .v_t
        .ok_or_else(|| Error::Numerical("SVD failed".into()))?;
    let k = svd.singular_values.imin();
    let mut v: DVector<f64> = v_t.row(k).transpose();
    let scale = v.amax();
    v /= scale;
    if let Some(first) = v.iter().find(|x| x.abs() > 1e-12) {
        if *first < 0.0 {
            v = -v;
        }
    }
    // one step of refinement through the matrix itself
    let mut w = a * &v / lambda;
    w /= w.amax();
    if let Some(first) = w.iter().find(|x| x.abs() > 1e-12) {
        if *first < 0.0 {
            w = -w;
        }
    }
    Ok((lambda, w))
}

pub fn leading_eigenvector(a: &DMatrix<f64>) -> Result<DVector<f64>> {
    leading_eigenpair(a).map(|(_, v)| v)
}

/// Product `A_{i1} A_{i2} ... A_{ik}` of real matrices.
pub fn product(mats: &[DMatrix<f64>], indices: &[usize]) -> DMatrix<f64> {
    let n = mats[0].nrows();
    indices
        .iter()
        .fold(DMatrix::identity(n, n), |acc, &i| acc * &mats[i])
}

/// Numerical rank with a relative singular-value threshold.
pub fn rank(rows: &[DVector<f64>], dim: usize) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let m = DMatrix::from_fn(rows.len(), dim, |i, j| rows[i][j]);
    let sv = m.singular_values();
    let top = sv.max();
    sv.iter().filter(|s| **s > 1e-9 * top.max(1e-300)).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    const PHI: f64 = 1.618_033_988_749_895;

    #[test]
    fn identity_and_nilpotent() {
        for n in 1..6 {
            assert!((spectral_radius(&DMatrix::identity(n, n)).unwrap() - 1.0).abs() < 1e-15);
            let shift = DMatrix::from_fn(n, n, |i, j| if j == i + 1 { 1.0 } else { 0.0 });
            assert_eq!(spectral_radius(&shift).unwrap(), 0.0);
        }
        assert!(leading_eigenvector(&DMatrix::identity(3, 3)).is_err());
        assert!(spectral_radius(&DMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn golden_matrix() {
        let a = DMatrix::from_row_slice(2, 2, &[1.0, 1.0, 1.0, 0.0]);
        assert!((spectral_radius(&a).unwrap() - PHI).abs() < 1e-14);
        let (l, v) = leading_eigenpair(&a).unwrap();
        assert!((l - PHI).abs() < 1e-14);
        assert!((v[0] - 1.0).abs() < 1e-14 && (v[1] - (PHI - 1.0)).abs() < 1e-14);
    }

    #[test]
    fn rotation_has_complex_dominant_pair() {
        let a = DMatrix::from_row_slice(2, 2, &[0.0, -1.0, 1.0, 0.0]);
        assert!((spectral_radius(&a).unwrap() - 1.0).abs() < 1e-14);
        assert!(leading_eigenvector(&a).is_err());
        // a permutation: power iteration oscillates, Schur still answers
        let p = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]);
        assert!((spectral_radius(&p).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn rank_of_rows() {
        let rows = vec![
            DVector::from_vec(vec![1.0, 0.0, 1.0]),
            DVector::from_vec(vec![2.0, 0.0, 2.0]),
            DVector::from_vec(vec![0.0, 1.0, 0.0]),
        ];
        assert_eq!(rank(&rows, 3), 2);
    }
}
