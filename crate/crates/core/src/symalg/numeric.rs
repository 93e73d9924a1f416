use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Relative tolerance for conjugate symmetry.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Complex Hermitian matrix, used for metric coefficients `g_{ij̄}` and `G`.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix(DMatrix<Complex64>);

impl HermitianMatrix {
    /// Accepts `m` if `‖m − m†‖ ≤ 1e−12 · max(1, ‖m‖)` entrywise and stores
    /// the exactly symmetrized matrix.
    pub fn new(m: DMatrix<Complex64>) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::DimensionMismatch {
                expected: m.nrows(),
                got: m.ncols(),
            });
        }
        let dev = hermitian_deviation(&m);
        if dev > HERMITIAN_TOL {
            return Err(Error::NotHermitian(dev));
        }
        let sym = (&m + m.adjoint()) * Complex64::new(0.5, 0.0);
        Ok(Self(sym))
    }

    pub fn size(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.0
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.0[(i, j)]
    }

    /// Eigenvalues in increasing order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = SymmetricEigen::new(self.0.clone())
            .eigenvalues
            .iter()
            .copied()
            .collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues()[0]
    }

    /// Real determinant (the imaginary part of the LU determinant is discarded).
    pub fn det(&self) -> f64 {
        self.0.clone().determinant().re
    }

    /// `log det` from the spectrum; fails unless positive definite.
    pub fn log_det(&self) -> Result<f64> {
        let ev = self.eigenvalues();
        if ev[0] <= 0.0 || !ev[0].is_finite() {
            return Err(Error::SingularMetric);
        }
        Ok(ev.iter().map(|x| x.ln()).sum())
    }
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn herm_eig_min(h: &HermitianMatrix) -> f64 {
    h.min_eigenvalue()
}

/// Determinant of a general complex matrix.
pub fn det(m: &DMatrix<Complex64>) -> Complex64 {
    m.clone().determinant()
}

fn hermitian_deviation(m: &DMatrix<Complex64>) -> f64 {
    let scale = m.iter().map(|c| c.norm()).fold(1.0, f64::max);
    let mut worst: f64 = 0.0;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst / scale
}
