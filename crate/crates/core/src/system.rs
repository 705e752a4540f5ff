//! Semi-discrete linear systems `u' = M(w) u` with a diagonal energy weight.
//!
//! The generator splits into a clock-independent part and a damping diagonal
//! gated by the clock density: `M(w) = C - w * diag(a)`. Flats (`w == 0`)
//! therefore evolve conservatively while atoms are handled separately by jump
//! maps.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::linalg;

#[derive(Debug, Clone)]
pub struct LinearSystem {
    /// Clock-independent generator part (wave operator, boundary SATs, any
    /// ungated dissipation).
    pub conservative: DMatrix<f64>,
    /// Diagonal damping coefficients, multiplied by the clock density.
    pub damping: DVector<f64>,
    /// Diagonal energy weight; the ledger energy is `0.5 * u' diag(e) u`.
    pub energy: DVector<f64>,
}

impl LinearSystem {
    pub fn new(conservative: DMatrix<f64>, damping: DVector<f64>, energy: DVector<f64>) -> Result<Self> {
        let n = conservative.nrows();
        if conservative.ncols() != n || damping.len() != n || energy.len() != n {
            return Err(Error::domain("system blocks must share one dimension"));
        }
        if energy.iter().any(|&e| !(e > 0.0)) {
            return Err(Error::domain("energy weight must be positive"));
        }
        Ok(LinearSystem { conservative, damping, energy })
    }

    /// Scalar `u' = -a u` with unit energy weight.
    pub fn scalar_decay(a: f64) -> Self {
        LinearSystem {
            conservative: DMatrix::zeros(1, 1),
            damping: DVector::from_element(1, a),
            energy: DVector::from_element(1, 1.0),
        }
    }

    /// Planar rotation at unit angular speed; conserves the energy exactly.
    pub fn rotation2() -> Self {
        LinearSystem {
            conservative: DMatrix::from_row_slice(2, 2, &[0.0, 1.0, -1.0, 0.0]),
            damping: DVector::zeros(2),
            energy: DVector::from_element(2, 1.0),
        }
    }

    /// Diagonal dissipative system with the given decay rates (all >= 0),
    /// placed in the clock-independent part.
    pub fn diagonal_decay(rates: &[f64]) -> Self {
        let n = rates.len();
        let mut c = DMatrix::zeros(n, n);
        for (i, &r) in rates.iter().enumerate() {
            c[(i, i)] = -r;
        }
        LinearSystem { conservative: c, damping: DVector::zeros(n), energy: DVector::from_element(n, 1.0) }
    }

    pub fn dim(&self) -> usize {
        self.conservative.nrows()
    }

    /// Generator at clock density `w`.
    pub fn generator(&self, w: f64) -> DMatrix<f64> {
        let mut m = self.conservative.clone();
        for i in 0..self.dim() {
            m[(i, i)] -= w * self.damping[i];
        }
        m
    }

    pub fn energy_of(&self, u: &DVector<f64>) -> f64 {
        0.5 * u.iter().zip(self.energy.iter()).map(|(x, e)| e * x * x).sum::<f64>()
    }

    /// Largest eigenvalue of the energy-weighted symmetric part of the
    /// generator at density `w`. Nonpositive means the flow is dissipative.
    pub fn sym_max_eig(&self, w: f64) -> Result<f64> {
        let m = self.generator(w);
        let s = linalg::weighted_sym_part(&m, &self.energy);
        linalg::max_gen_eig_sym(&s, &self.energy)
    }

    /// Largest eigenvalue of `sym(M) + diag(gated damping)`: certifies the
    /// bound `sym(M) <= -w * diag(a)` when the result is <= 0.
    pub fn sym_max_eig_above_damping(&self, w: f64) -> Result<f64> {
        let m = self.generator(w);
        let mut s = linalg::weighted_sym_part(&m, &self.energy);
        for i in 0..self.dim() {
            s[(i, i)] += self.energy[i] * w * self.damping[i];
        }
        linalg::max_gen_eig_sym(&s, &self.energy)
    }

    /// Spectral radius of the generator at density `w` (CFL input).
    pub fn lambda_max(&self, w: f64) -> f64 {
        self.generator(w)
            .complex_eigenvalues()
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// Decay rate (in amplitude) of the slowest genuinely evolving mode:
    /// `min -Re(lambda)` over eigenvalues with `|lambda| > tol`. The tolerance
    /// excludes exactly conserved compatibility modes such as the mean of the
    /// strain variable in the first-order wave system.
    pub fn slowest_mode_rate(&self, w: f64, tol: f64) -> f64 {
        self.generator(w)
            .complex_eigenvalues()
            .iter()
            .filter(|z| z.norm() > tol)
            .map(|z| -z.re)
            .fold(f64::INFINITY, f64::min)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn scalar_decay_generator_and_energy() {
        let sys = LinearSystem::scalar_decay(0.7);
        let m = sys.generator(1.0);
        assert_abs_diff_eq!(m[(0, 0)], -0.7, epsilon = 0.0);
        assert_abs_diff_eq!(sys.generator(0.0)[(0, 0)], 0.0, epsilon = 0.0);
        let u = DVector::from_element(1, 2.0);
        assert_abs_diff_eq!(sys.energy_of(&u), 2.0, epsilon = 0.0);
    }

    #[test]
    fn rotation_is_energy_neutral() {
        let sys = LinearSystem::rotation2();
        assert_abs_diff_eq!(sys.sym_max_eig(1.0).unwrap(), 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(sys.lambda_max(1.0), 1.0, epsilon = 1e-12);
    }
}
