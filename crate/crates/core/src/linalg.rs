//! Small dense linear-algebra helpers shared across modules. Everything here
//! works in the geometry of a diagonal positive energy weight `e`: quadratic
//! forms are reduced to standard symmetric eigenproblems via `e^{1/2}`.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Largest eigenvalue of the pencil `(S, diag(e))` with `S` symmetric and
/// `e > 0` entrywise: reduces to `eig(e^{-1/2} S e^{-1/2})`.
pub fn max_gen_eig_sym(s: &DMatrix<f64>, e: &DVector<f64>) -> Result<f64> {
    gen_eigs_sym(s, e).map(|(_, hi)| hi)
}

/// Smallest and largest eigenvalues of the pencil `(S, diag(e))`.
pub fn gen_eigs_sym(s: &DMatrix<f64>, e: &DVector<f64>) -> Result<(f64, f64)> {
    let n = s.nrows();
    if e.len() != n {
        return Err(Error::domain("weight length does not match matrix size"));
    }
    if e.iter().any(|&x| !(x > 0.0)) {
        return Err(Error::domain("energy weight must be positive"));
    }
    let root_inv: Vec<f64> = e.iter().map(|&x| 1.0 / x.sqrt()).collect();
    let mut m = s.clone();
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] *= root_inv[i] * root_inv[j];
        }
    }
    // Symmetrize against roundoff before the eigensolve.
    let m = 0.5 * (&m + m.transpose());
    let eig = m.symmetric_eigen();
    let hi = eig.eigenvalues.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let lo = eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
    Ok((lo, hi))
}

/// Largest eigenvalue of `(J^T diag(e) J, diag(e))`: the exact supremum of
/// the energy ratio `|Jv|_e^2 / |v|_e^2`.
pub fn energy_ratio_sup(j: &DMatrix<f64>, e: &DVector<f64>) -> Result<f64> {
    let n = j.nrows();
    if j.ncols() != n || e.len() != n {
        return Err(Error::domain("jump map must be square and match the energy weight"));
    }
    let mut s = DMatrix::zeros(n, n);
    for i in 0..n {
        for k in 0..n {
            let mut acc = 0.0;
            for l in 0..n {
                acc += j[(l, i)] * e[l] * j[(l, k)];
            }
            s[(i, k)] = acc;
        }
    }
    max_gen_eig_sym(&s, e)
}

/// Symmetric part of `M` in the `diag(e)` inner product:
/// `S = (diag(e) M + M^T diag(e)) / 2`, so that `u' S u = <u, Mu>_e`.
pub fn weighted_sym_part(m: &DMatrix<f64>, e: &DVector<f64>) -> DMatrix<f64> {
    let n = m.nrows();
    let mut s = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            s[(i, j)] = 0.5 * (e[i] * m[(i, j)] + e[j] * m[(j, i)]);
        }
    }
    s
}

/// `m^k` by repeated squaring.
pub fn matrix_power(m: &DMatrix<f64>, mut k: u64) -> DMatrix<f64> {
    let n = m.nrows();
    let mut base = m.clone();
    let mut acc = DMatrix::identity(n, n);
    while k > 0 {
        if k & 1 == 1 {
            acc = &acc * &base;
        }
        base = &base * &base;
        k >>= 1;
    }
    acc
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return Err(Error::domain("slope fit needs at least two matching points"));
    }
    if ys.iter().any(|&y| !(y > 0.0)) {
        return Err(Error::domain("slope fit requires positive values"));
    }
    let n = xs.len() as f64;
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    Ok(sxy / sxx)
}

/// Dense matrix exponential by scaling and squaring with a Taylor core.
/// Intended for the small generator matrices of switching laws.
pub fn matrix_exp(m: &DMatrix<f64>) -> DMatrix<f64> {
    let n = m.nrows();
    let norm = m.iter().map(|x| x.abs()).fold(0.0, f64::max) * n as f64;
    let squarings = if norm > 0.5 { (norm / 0.5).log2().ceil() as u32 } else { 0 };
    let scaled = m / 2f64.powi(squarings as i32);
    let mut term = DMatrix::identity(n, n);
    let mut acc = DMatrix::identity(n, n);
    for k in 1..=24 {
        term = &term * &scaled / k as f64;
        acc += &term;
    }
    let mut result = acc;
    for _ in 0..squarings {
        result = &result * &result;
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn gen_eig_reduces_to_plain_eig_for_unit_weight() {
        let s = DMatrix::from_row_slice(2, 2, &[2.0, 1.0, 1.0, 2.0]);
        let e = DVector::from_element(2, 1.0);
        let (lo, hi) = gen_eigs_sym(&s, &e).unwrap();
        assert_abs_diff_eq!(lo, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(hi, 3.0, epsilon = 1e-12);
    }

    #[test]
    fn matrix_exp_matches_scalar_exponential() {
        let m = DMatrix::from_row_slice(1, 1, &[-0.7]);
        let e = matrix_exp(&(m * 3.0));
        assert_abs_diff_eq!(e[(0, 0)], (-2.1f64).exp(), epsilon = 1e-12);
    }

    #[test]
    fn matrix_exp_rotation() {
        let m = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, -1.0, 0.0]);
        let e = matrix_exp(&m);
        assert_abs_diff_eq!(e[(0, 0)], 1f64.cos(), epsilon = 1e-12);
        assert_abs_diff_eq!(e[(0, 1)], 1f64.sin(), epsilon = 1e-12);
    }

    #[test]
    fn slope_of_pure_power_law() {
        let xs = [0.1, 0.05, 0.025];
        let ys: Vec<f64> = xs.iter().map(|x| 3.0 * x * x).collect();
        assert_abs_diff_eq!(loglog_slope(&xs, &ys).unwrap(), 2.0, epsilon = 1e-12);
    }
}
