//! Orthogonalization, rank and spectra.

use nalgebra::DMatrix;

use super::matrix::{ComplexMatrix, C64, ZERO};
use super::tolerance::TolerancePolicy;
use crate::error::{Error, Result};

/// Orthonormal output of [`gram_schmidt_with_coefficients`] together with the
/// coefficients expressing each output in terms of the inputs:
/// `outputs[j] = sum_p coefficients[j][p] * inputs[p]`.
#[derive(Debug, Clone)]
pub struct Orthonormalized {
    pub vectors: Vec<ComplexMatrix>,
    pub coefficients: Vec<Vec<C64>>,
}

fn check_columns(vectors: &[ComplexMatrix]) -> Result<usize> {
    let first = vectors.first().ok_or(Error::EmptyMatrix)?;
    let dim = first.rows();
    for v in vectors {
        if v.cols() != 1 || v.rows() != dim {
            return Err(Error::DimensionMismatch {
                expected: (dim, 1),
                found: v.shape(),
            });
        }
    }
    Ok(dim)
}

fn inner(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Classical Gram-Schmidt in input order, with one re-orthogonalization pass.
pub fn gram_schmidt(
    vectors: &[ComplexMatrix],
    policy: &TolerancePolicy,
) -> Result<Vec<ComplexMatrix>> {
    gram_schmidt_with_coefficients(vectors, policy).map(|o| o.vectors)
}

pub fn gram_schmidt_with_coefficients(
    vectors: &[ComplexMatrix],
    policy: &TolerancePolicy,
) -> Result<Orthonormalized> {
    let dim = check_columns(vectors)?;
    let n = vectors.len();
    let mut basis: Vec<Vec<C64>> = Vec::with_capacity(n);
    let mut coefficients: Vec<Vec<C64>> = Vec::with_capacity(n);

    for (j, v) in vectors.iter().enumerate() {
        let input = v.entries();
        let input_norm = input.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let mut w = input.to_vec();
        let mut coeff = vec![ZERO; n];
        coeff[j] = C64::new(1.0, 0.0);

        for _pass in 0..2 {
            // classical: all projections use the same residual
            let overlaps: Vec<C64> = basis.iter().map(|q| inner(q, &w)).collect();
            for ((q, c_q), h) in basis.iter().zip(&coefficients).zip(&overlaps) {
                for (wi, qi) in w.iter_mut().zip(q) {
                    *wi -= h * qi;
                }
                for (ci, cqi) in coeff.iter_mut().zip(c_q) {
                    *ci -= h * cqi;
                }
            }
        }

        let norm = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let residual = if input_norm > 0.0 {
            norm / input_norm
        } else {
            0.0
        };
        if residual < policy.rank_tol {
            return Err(Error::LinearDependence { index: j, residual });
        }
        w.iter_mut().for_each(|z| *z /= norm);
        coeff.iter_mut().for_each(|z| *z /= norm);
        basis.push(w);
        coefficients.push(coeff);
    }

    let vectors = basis
        .into_iter()
        .map(|b| ComplexMatrix::new(dim, 1, b))
        .collect::<Result<Vec<_>>>()?;
    Ok(Orthonormalized {
        vectors,
        coefficients,
    })
}

pub(crate) fn to_dmatrix(m: &ComplexMatrix) -> DMatrix<C64> {
    DMatrix::from_row_slice(m.rows(), m.cols(), m.entries())
}

/// Singular values in descending order.
pub fn singular_values(m: &ComplexMatrix) -> Vec<f64> {
    let svd = to_dmatrix(m).svd(false, false);
    let mut s: Vec<f64> = svd.singular_values.iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Number of singular values above `rank_tol` times the largest one.
pub fn numerical_rank(vectors: &[ComplexMatrix], policy: &TolerancePolicy) -> Result<usize> {
    check_columns(vectors)?;
    let stacked = ComplexMatrix::from_columns(vectors)?;
    Ok(rank_of(&stacked, policy))
}

pub fn rank_of(m: &ComplexMatrix, policy: &TolerancePolicy) -> usize {
    let s = singular_values(m);
    let largest = s.first().copied().unwrap_or(0.0);
    if largest == 0.0 {
        return 0;
    }
    s.iter().filter(|&&x| x > policy.rank_tol * largest).count()
}

/// Eigenvalues of the Hermitian part of `m`, ascending.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Vec<f64> {
    assert!(m.is_square(), "eigenvalues need a square matrix");
    let h = (m + &m.adjoint()).scale_real(0.5);
    let mut ev: Vec<f64> = to_dmatrix(&h)
        .symmetric_eigenvalues()
        .iter()
        .copied()
        .collect();
    ev.sort_by(|a, b| a.total_cmp(b));
    ev
}

/// Orthogonal projector onto the span of the given vectors.
pub fn span_projector(
    vectors: &[ComplexMatrix],
    policy: &TolerancePolicy,
) -> Result<ComplexMatrix> {
    let dim = check_columns(vectors)?;
    let q = gram_schmidt(vectors, policy)?;
    let mut p = ComplexMatrix::zeros(dim, dim);
    for v in &q {
        p.add_assign_scaled(&ComplexMatrix::outer(v, v), C64::new(1.0, 0.0));
    }
    Ok(p)
}
