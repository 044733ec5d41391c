//! Schur operator bases and unitary operator bases.
//!
//! [`SchurOperatorSet`] materializes the operators
//!
//! * `Π_k^{m1 m2} = Σ_λ |k,m1,λ><k,m2,λ|` (acting on the irrep label),
//! * `Λ_k^{λ1 λ2} = Σ_m |k,m,λ1><k,m,λ2|` (acting on the multiplicity label),
//! * `Π_k = Σ_m Π_k^{mm}`, the sector projector,
//!
//! as dense matrices on `(C^d)^{⊗t}`, memoized per set.

mod unitary_basis;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

pub use unitary_basis::{clock, heisenberg_weyl, shift, UnitaryOperatorBasis};

use crate::error::{Error, Result};
use crate::numerics::{ComplexMatrix, C64};
use crate::schur::{check_label, SchurBasis, SchurSector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum OpKey {
    Pi(usize, usize, usize),
    Lambda(usize, usize, usize),
    Projector(usize),
}

/// Schur operator bases derived from one [`SchurBasis`].
///
/// The cache is behind a mutex, so a set can be shared across threads.
#[derive(Debug)]
pub struct SchurOperatorSet {
    basis: Arc<SchurBasis>,
    cache: Mutex<HashMap<OpKey, Arc<ComplexMatrix>>>,
}

impl SchurOperatorSet {
    pub fn new(basis: impl Into<Arc<SchurBasis>>) -> Self {
        Self {
            basis: basis.into(),
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn basis(&self) -> &SchurBasis {
        &self.basis
    }

    pub fn num_sectors(&self) -> usize {
        self.basis.sectors().len()
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn sector(&self, k: usize) -> Result<&SchurSector> {
        self.basis.sector(k)
    }

    fn cached(&self, key: OpKey, build: impl FnOnce() -> ComplexMatrix) -> Arc<ComplexMatrix> {
        if let Some(m) = self
            .cache
            .lock()
            .expect("operator cache poisoned")
            .get(&key)
        {
            return Arc::clone(m);
        }
        let m = Arc::new(build());
        self.cache
            .lock()
            .expect("operator cache poisoned")
            .entry(key)
            .or_insert(m)
            .clone()
    }

    /// `Π_k^{m1 m2}`.
    pub fn pi_op(&self, k: usize, m1: usize, m2: usize) -> Result<Arc<ComplexMatrix>> {
        let s = self.sector(k)?;
        check_label("m1", m1, s.d_g)?;
        check_label("m2", m2, s.d_g)?;
        Ok(self.cached(OpKey::Pi(k, m1, m2), || {
            let mut out = ComplexMatrix::zeros(self.dim(), self.dim());
            for lambda in 1..=s.d_c {
                let a = s.vector(m1, lambda).expect("checked label");
                let b = s.vector(m2, lambda).expect("checked label");
                out.add_assign_scaled(&ComplexMatrix::outer(a, b), C64::new(1.0, 0.0));
            }
            out
        }))
    }

    /// `Λ_k^{λ1 λ2}`.
    pub fn lambda_op(
        &self,
        k: usize,
        lambda1: usize,
        lambda2: usize,
    ) -> Result<Arc<ComplexMatrix>> {
        let s = self.sector(k)?;
        check_label("lambda1", lambda1, s.d_c)?;
        check_label("lambda2", lambda2, s.d_c)?;
        Ok(self.cached(OpKey::Lambda(k, lambda1, lambda2), || {
            let mut out = ComplexMatrix::zeros(self.dim(), self.dim());
            for m in 1..=s.d_g {
                let a = s.vector(m, lambda1).expect("checked label");
                let b = s.vector(m, lambda2).expect("checked label");
                out.add_assign_scaled(&ComplexMatrix::outer(a, b), C64::new(1.0, 0.0));
            }
            out
        }))
    }

    /// `|k,m1,λ1><k',m2,λ2|`; not cached.
    pub fn full_pi_op(
        &self,
        (k1, m1, lambda1): (usize, usize, usize),
        (k2, m2, lambda2): (usize, usize, usize),
    ) -> Result<ComplexMatrix> {
        let a = self.sector(k1)?.vector(m1, lambda1)?;
        let b = self.sector(k2)?.vector(m2, lambda2)?;
        Ok(ComplexMatrix::outer(a, b))
    }

    /// Projector `Π_k` onto the whole sector.
    pub fn sector_projector(&self, k: usize) -> Result<Arc<ComplexMatrix>> {
        let s = self.sector(k)?;
        Ok(self.cached(OpKey::Projector(k), || s.projector()))
    }

    /// Coefficients `K_{m1 m2} = Tr(M Π_k^{m1 m2 †}) / D_C`.
    ///
    /// Summing `K_{m1 m2} Π_k^{m1 m2}` gives back `Π_k M Π_k` only when `M`
    /// commutes with every `Λ_k` (for instance `M = U^{⊗t}`).
    pub fn decompose_in_pi_basis(&self, k: usize, m: &ComplexMatrix) -> Result<ComplexMatrix> {
        let s = self.sector(k)?;
        self.check_operator(m)?;
        let mut coeffs = ComplexMatrix::zeros(s.d_g, s.d_g);
        for m1 in 1..=s.d_g {
            for m2 in 1..=s.d_g {
                // Tr(M P^dagger) = <P, M>_F
                let c = self.pi_op(k, m1, m2)?.frob_inner(m)? / s.d_c as f64;
                coeffs.set(m1 - 1, m2 - 1, c);
            }
        }
        Ok(coeffs)
    }

    /// Coefficients `Tr(M Λ_k^{λ1 λ2 †})`, a `D_C x D_C` matrix.
    pub fn decompose_in_lambda_basis(&self, k: usize, m: &ComplexMatrix) -> Result<ComplexMatrix> {
        let s = self.sector(k)?;
        self.check_operator(m)?;
        let mut coeffs = ComplexMatrix::zeros(s.d_c, s.d_c);
        for l1 in 1..=s.d_c {
            for l2 in 1..=s.d_c {
                coeffs.set(l1 - 1, l2 - 1, self.lambda_op(k, l1, l2)?.frob_inner(m)?);
            }
        }
        Ok(coeffs)
    }

    /// `Σ coeffs_{m1 m2} Π_k^{m1 m2}`.
    pub fn reconstruct_from_pi(&self, k: usize, coeffs: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.embed_gamma(k, coeffs)
    }

    /// Lifts a `D_G x D_G` matrix to the full space, supported on sector `k`.
    pub fn embed_gamma(&self, k: usize, gamma: &ComplexMatrix) -> Result<ComplexMatrix> {
        let s = self.sector(k)?;
        if gamma.shape() != (s.d_g, s.d_g) {
            return Err(Error::DimensionMismatch {
                expected: (s.d_g, s.d_g),
                found: gamma.shape(),
            });
        }
        let mut out = ComplexMatrix::zeros(self.dim(), self.dim());
        for m1 in 1..=s.d_g {
            for m2 in 1..=s.d_g {
                let c = gamma.get(m1 - 1, m2 - 1);
                if c != C64::new(0.0, 0.0) {
                    out.add_assign_scaled(&*self.pi_op(k, m1, m2)?, c);
                }
            }
        }
        Ok(out)
    }

    fn check_operator(&self, m: &ComplexMatrix) -> Result<()> {
        let n = self.dim();
        if m.shape() != (n, n) {
            return Err(Error::DimensionMismatch {
                expected: (n, n),
                found: m.shape(),
            });
        }
        Ok(())
    }

    /// Heisenberg-Weyl basis of matching dimension for every sector.
    pub fn heisenberg_weyl_bases(&self) -> Vec<UnitaryOperatorBasis> {
        self.basis
            .sectors()
            .iter()
            .map(|s| heisenberg_weyl(s.d_g))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::random::{haar_unitary, random_density_matrix, substream};
    use crate::numerics::{hermitian_eigenvalues, TolerancePolicy};
    use crate::schur::build_schur_basis;

    const TOL: f64 = 1e-10;

    fn set(t: usize) -> SchurOperatorSet {
        SchurOperatorSet::new(build_schur_basis(2, t).unwrap())
    }

    fn rank(m: &ComplexMatrix) -> usize {
        crate::numerics::orth::rank_of(m, &TolerancePolicy::default())
    }

    #[test]
    fn spin_zero_pi_op() {
        let s = set(4);
        let p = s.pi_op(3, 1, 1).unwrap();
        assert!((p.trace() - C64::new(2.0, 0.0)).norm() < TOL);
        assert_eq!(rank(&p), 2);
    }

    #[test]
    fn pi_ops_form_matrix_units() {
        let s = set(4);
        for k in 1..=3 {
            let dg = s.sector(k).unwrap().d_g;
            for m1 in 1..=dg {
                for m2 in 1..=dg {
                    let a = s.pi_op(k, m1, m2).unwrap();
                    assert!(a.adjoint().approx_eq(&s.pi_op(k, m2, m1).unwrap(), TOL));
                    for m3 in 1..=dg {
                        let prod = &*a * &*s.pi_op(k, m2, m3).unwrap();
                        assert!(prod.approx_eq(&s.pi_op(k, m1, m3).unwrap(), TOL));
                    }
                }
            }
        }
    }

    #[test]
    fn lambda_op_examples() {
        let s = set(4);
        assert!(s
            .lambda_op(1, 1, 1)
            .unwrap()
            .approx_eq(&s.sector_projector(1).unwrap(), TOL));
        assert!((s.lambda_op(2, 1, 1).unwrap().trace() - C64::new(3.0, 0.0)).norm() < TOL);
        for k in 1..=3 {
            let sec = s.sector(k).unwrap();
            for (l1, l2) in [(1, 1), (1, sec.d_c), (sec.d_c, 1)] {
                let lam = s.lambda_op(k, l1, l2).unwrap();
                for m1 in 1..=sec.d_g {
                    for m2 in 1..=sec.d_g {
                        let pi = s.pi_op(k, m1, m2).unwrap();
                        assert!(lam.commutator(&pi).max_abs() < TOL);
                    }
                }
            }
        }
    }

    #[test]
    fn labels_are_checked() {
        let s = set(4);
        assert!(matches!(
            s.pi_op(4, 1, 1),
            Err(Error::IndexOutOfRange { what: "k", .. })
        ));
        assert!(matches!(
            s.pi_op(3, 1, 2),
            Err(Error::IndexOutOfRange { what: "m2", .. })
        ));
        assert!(matches!(
            s.lambda_op(1, 0, 1),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(s.embed_gamma(1, &ComplexMatrix::identity(3)).is_err());
    }

    #[test]
    fn decomposition_of_sector_projector_is_identity() {
        let s = set(4);
        for k in 1..=3 {
            let coeffs = s
                .decompose_in_pi_basis(k, &s.sector_projector(k).unwrap())
                .unwrap();
            let dg = s.sector(k).unwrap().d_g;
            assert!(coeffs.approx_eq(&ComplexMatrix::identity(dg), TOL));
        }
    }

    #[test]
    fn decomposition_of_tensor_power_is_wigner_block() {
        let s = set(4);
        let u = haar_unitary(2, &mut substream(17, 0));
        let big = u.kron_power(4);
        let coeffs = s.decompose_in_pi_basis(2, &big).unwrap();
        assert!(coeffs.is_unitary(TOL));
        // independent route: the λ = 1 block <2,m1,1|U|2,m2,1>
        let sec = s.sector(2).unwrap();
        let block = ComplexMatrix::from_fn(3, 3, |a, b| {
            sec.vector(a + 1, 1)
                .unwrap()
                .frob_inner(&(&big * sec.vector(b + 1, 1).unwrap()))
                .unwrap()
        });
        assert!(coeffs.approx_eq(&block, TOL));
        for k in 1..=3 {
            let c = s.decompose_in_pi_basis(k, &big).unwrap();
            let p = s.sector_projector(k).unwrap();
            let restricted = &(&*p * &big) * &*p;
            assert!(s
                .reconstruct_from_pi(k, &c)
                .unwrap()
                .approx_eq(&restricted, TOL));
        }
    }

    #[test]
    fn reconstruction_needs_commutant_compatibility() {
        let s = set(4);
        let rho = random_density_matrix(16, &mut substream(3, 0));
        let c = s.decompose_in_pi_basis(2, &rho).unwrap();
        let p = s.sector_projector(2).unwrap();
        let restricted = &(&*p * &rho) * &*p;
        assert!(
            s.reconstruct_from_pi(2, &c)
                .unwrap()
                .max_abs_diff(&restricted)
                > 1e-3
        );
    }

    #[test]
    fn embedding_identity_and_homomorphism() {
        let s = set(4);
        let hw = heisenberg_weyl(3);
        for k in 1..=3 {
            let dg = s.sector(k).unwrap().d_g;
            let id = s.embed_gamma(k, &ComplexMatrix::identity(dg)).unwrap();
            assert!(id.approx_eq(&s.sector_projector(k).unwrap(), TOL));
        }
        let (g1, g2) = (&hw.elements()[4], &hw.elements()[7]);
        let lhs = &s.embed_gamma(2, g1).unwrap() * &s.embed_gamma(2, g2).unwrap();
        assert!(lhs.approx_eq(&s.embed_gamma(2, &(g1 * g2)).unwrap(), TOL));
        for g in hw.elements() {
            let e = s.embed_gamma(2, g).unwrap();
            assert!((&e.adjoint() * &e).approx_eq(&s.sector_projector(2).unwrap(), TOL));
        }
    }

    #[test]
    fn embedded_clock_spectrum() {
        // Z_5 lifted to the symmetric sector has eigenvector |1,m,1> with
        // eigenvalue ω^{m-1}, and annihilates the orthogonal complement.
        let s = set(4);
        let z = s.embed_gamma(1, &clock(5)).unwrap();
        let sec = s.sector(1).unwrap();
        let omega = C64::from_polar(1.0, 2.0 * std::f64::consts::PI / 5.0);
        for m in 1..=5 {
            let v = sec.vector(m, 1).unwrap();
            let expected = v.scale(omega.powu(m as u32 - 1));
            assert!((&z * v).approx_eq(&expected, TOL));
        }
        let complement = &ComplexMatrix::identity(16) - &*s.sector_projector(1).unwrap();
        assert!((&z * &complement).max_abs() < TOL);
        // singular values: five ones and eleven zeros
        let moduli = hermitian_eigenvalues(&(&z.adjoint() * &z));
        assert_eq!(
            moduli.iter().filter(|&&x| (x - 1.0).abs() < 1e-9).count(),
            5
        );
        assert_eq!(moduli.iter().filter(|&&x| x.abs() < 1e-9).count(), 11);
    }

    #[test]
    fn structural_identities() {
        for t in 1..=6 {
            let s = set(t);
            let mut total = ComplexMatrix::zeros(s.dim(), s.dim());
            for k in 1..=s.num_sectors() {
                let sec = s.sector(k).unwrap();
                let p = s.sector_projector(k).unwrap();
                let mut via_pi = ComplexMatrix::zeros(s.dim(), s.dim());
                for m in 1..=sec.d_g {
                    via_pi.add_assign_scaled(&s.pi_op(k, m, m).unwrap(), C64::new(1.0, 0.0));
                }
                let mut via_lambda = ComplexMatrix::zeros(s.dim(), s.dim());
                for l in 1..=sec.d_c {
                    via_lambda
                        .add_assign_scaled(&s.lambda_op(k, l, l).unwrap(), C64::new(1.0, 0.0));
                }
                assert!(via_pi.approx_eq(&p, TOL));
                assert!(via_lambda.approx_eq(&p, TOL));
                total.add_assign_scaled(&p, C64::new(1.0, 0.0));
            }
            assert!(total.approx_eq(&ComplexMatrix::identity(s.dim()), TOL));
        }
    }

    #[test]
    fn cache_returns_same_allocation() {
        let s = set(3);
        let a = s.pi_op(1, 1, 2).unwrap();
        let b = s.pi_op(1, 1, 2).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
    }
}
