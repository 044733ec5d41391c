use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{hermitian_eigenvalues, ComplexMatrix, C64};

/// Hermitian, positive semidefinite, unit-trace matrix on `(C^d)^{⊗t}`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix(ComplexMatrix);

impl DensityMatrix {
    /// Tolerance used by [`DensityMatrix::new`].
    pub const DEFAULT_TOL: f64 = 1e-8;

    pub fn new(mat: ComplexMatrix) -> Result<Self> {
        Self::with_tolerance(mat, Self::DEFAULT_TOL)
    }

    /// Validates every invariant, naming the first one that fails.
    pub fn with_tolerance(mat: ComplexMatrix, tol: f64) -> Result<Self> {
        if !mat.is_square() {
            return Err(Error::InvalidDensityMatrix(format!(
                "not square: shape {:?}",
                mat.shape()
            )));
        }
        let asym = mat.max_abs_diff(&mat.adjoint());
        if asym > tol {
            return Err(Error::InvalidDensityMatrix(format!(
                "not Hermitian: max |rho - rho^dagger| = {asym:.3e}"
            )));
        }
        let tr = mat.trace();
        if (tr - C64::new(1.0, 0.0)).norm() > tol {
            return Err(Error::InvalidDensityMatrix(format!(
                "trace is {:.12} instead of 1",
                tr.re
            )));
        }
        let min_ev = hermitian_eigenvalues(&mat)[0];
        if min_ev < -tol {
            return Err(Error::InvalidDensityMatrix(format!(
                "not positive semidefinite: smallest eigenvalue {min_ev:.3e}"
            )));
        }
        Ok(Self(mat))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    /// Number of qubits `t` with `2^t = dim`, if the dimension is a power of two.
    pub fn num_qubits(&self) -> Option<usize> {
        let d = self.dim();
        d.is_power_of_two().then(|| d.trailing_zeros() as usize)
    }

    pub fn to_file_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&StateFile::from_matrix(
            &self.0,
        ))?)
    }

    pub fn from_file_json(text: &str) -> Result<Self> {
        let f: StateFile = serde_json::from_str(text)?;
        Self::new(f.into_matrix()?)
    }
}

/// On-disk state: `{dim, entries: [[re, im], ...]}` in row-major order.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StateFile {
    pub dim: usize,
    pub entries: Vec<[f64; 2]>,
}

impl StateFile {
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        Self {
            dim: m.rows(),
            entries: m.entries().iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    pub fn into_matrix(self) -> Result<ComplexMatrix> {
        ComplexMatrix::new(
            self.dim,
            self.dim,
            self.entries
                .into_iter()
                .map(|[re, im]| C64::new(re, im))
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(v: &[f64]) -> ComplexMatrix {
        ComplexMatrix::from_diag(&v.iter().map(|&x| C64::new(x, 0.0)).collect::<Vec<_>>())
    }

    #[test]
    fn accepts_valid_states() {
        let rho = DensityMatrix::new(diag(&[0.25; 4])).unwrap();
        assert_eq!(rho.num_qubits(), Some(2));
    }

    #[test]
    fn names_violated_invariant() {
        let err = DensityMatrix::new(diag(&[0.5, 0.6]))
            .unwrap_err()
            .to_string();
        assert!(err.contains("trace"), "{err}");
        let err = DensityMatrix::new(diag(&[1.5, -0.5]))
            .unwrap_err()
            .to_string();
        assert!(err.contains("positive semidefinite"), "{err}");
        let mut m = diag(&[0.5, 0.5]);
        m.set(0, 1, C64::new(0.1, 0.0));
        let err = DensityMatrix::new(m).unwrap_err().to_string();
        assert!(err.contains("Hermitian"), "{err}");
    }

    #[test]
    fn file_round_trip() {
        let mut m = diag(&[0.5, 0.5]);
        m.set(0, 1, C64::new(0.1, 0.2));
        m.set(1, 0, C64::new(0.1, -0.2));
        let rho = DensityMatrix::new(m).unwrap();
        let back = DensityMatrix::from_file_json(&rho.to_file_json().unwrap()).unwrap();
        assert_eq!(back, rho);
    }
}
