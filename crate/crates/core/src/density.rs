//! The 4×4 density matrix of the two phonon modes.

use nalgebra::Matrix4;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Hermitian, unit-trace, positive-semidefinite 4×4 matrix over the basis
/// `{1: |0_L 0_R>, 2: |1_L 0_R>, 3: |0_L 1_R>, 4: |1_L 1_R>}` (0-based
/// indices in code; the left-crystal excitation is the fast index).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix4 {
    m: Matrix4<Complex64>,
}

impl DensityMatrix4 {
    /// Wraps a raw matrix without checking invariants; callers that build
    /// states by hand should follow up with [`DensityMatrix4::validate`].
    pub fn from_matrix(m: Matrix4<Complex64>) -> Self {
        DensityMatrix4 { m }
    }

    pub fn as_matrix(&self) -> &Matrix4<Complex64> {
        &self.m
    }

    /// Entry at 0-based `(row, col)`.
    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.m[(row, col)]
    }

    pub fn trace(&self) -> Complex64 {
        self.m.trace()
    }

    /// Tr(ρ²), 1 for pure states.
    pub fn purity(&self) -> f64 {
        (self.m * self.m).trace().re
    }

    /// Largest |ρ_ij - conj(ρ_ji)| over all entries.
    pub fn hermiticity_error(&self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..4 {
            for j in 0..4 {
                worst = worst.max((self.m[(i, j)] - self.m[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// (ρ + ρ†)/2 with the trace renormalized to exactly 1.
    pub fn hermitized(&self) -> Self {
        let mut sym = (self.m + self.m.adjoint()) * Complex64::new(0.5, 0.0);
        let tr = sym.trace().re;
        if tr != 0.0 {
            sym /= Complex64::new(tr, 0.0);
        }
        DensityMatrix4 { m: sym }
    }

    /// Eigenvalues by dense Hermitian diagonalization, ascending.
    pub fn eigenvalues_dense(&self) -> [f64; 4] {
        let eig = self.m.symmetric_eigenvalues();
        let mut out = [eig[0], eig[1], eig[2], eig[3]];
        out.sort_by(|a, b| a.total_cmp(b));
        out
    }

    /// Checks hermiticity (1e-12), unit trace (1e-12) and positive
    /// semidefiniteness (eigenvalues >= -1e-10).
    pub fn validate(&self) -> Result<()> {
        let herm = self.hermiticity_error();
        if herm > 1e-12 {
            return Err(Error::InvalidState(format!(
                "hermiticity violated by {herm:.3e}"
            )));
        }
        let tr = self.trace();
        if (tr.re - 1.0).abs() > 1e-12 || tr.im.abs() > 1e-12 {
            return Err(Error::InvalidState(format!("trace = {tr} instead of 1")));
        }
        let min_eig = self
            .eigenvalues_dense()
            .into_iter()
            .fold(f64::INFINITY, f64::min);
        if min_eig < -1e-10 {
            return Err(Error::InvalidState(format!(
                "negative eigenvalue {min_eig:.3e}"
            )));
        }
        Ok(())
    }
}
