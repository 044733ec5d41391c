//! Finite-sum twirls and the closed-form Haar projection.

use super::density::DensityMatrix;
use super::family::{BetaWeights, Convention};
use super::result::TwirlResult;
use crate::error::{Error, Result};
use crate::numerics::{ComplexMatrix, TolerancePolicy, C64};
use crate::opbasis::{SchurOperatorSet, UnitaryOperatorBasis};

fn check_state(rho: &DensityMatrix, s: &SchurOperatorSet) -> Result<()> {
    let n = s.dim();
    if rho.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: (n, n),
            found: rho.matrix().shape(),
        });
    }
    Ok(())
}

fn check_bases(s: &SchurOperatorSet, hw: &[UnitaryOperatorBasis]) -> Result<()> {
    if hw.len() != s.num_sectors() {
        return Err(Error::InvalidArgument(format!(
            "{} operator bases for {} sectors",
            hw.len(),
            s.num_sectors()
        )));
    }
    for (k, b) in hw.iter().enumerate() {
        let d_g = s.sector(k + 1)?.d_g;
        if b.dim() != d_g {
            return Err(Error::DimensionMismatch {
                expected: (d_g, d_g),
                found: (b.dim(), b.dim()),
            });
        }
    }
    Ok(())
}

/// `Σ_k p_k (1/D_G²) Σ_l γ̃_l ρ γ̃_l^†` with `γ̃_l` the sector-`k` embedding.
fn weighted_finite_sum(
    rho: &DensityMatrix,
    s: &SchurOperatorSet,
    hw: &[UnitaryOperatorBasis],
    p: &[f64],
) -> Result<TwirlResult> {
    check_state(rho, s)?;
    check_bases(s, hw)?;
    let n = s.dim();
    let mut out = ComplexMatrix::zeros(n, n);
    let mut terms = 0;
    for (k, (basis, &pk)) in hw.iter().zip(p).enumerate() {
        let scale = pk / (basis.dim() * basis.dim()) as f64;
        for g in basis.elements() {
            let lifted = s.embed_gamma(k + 1, g)?;
            out.add_assign_scaled(&lifted.conjugate(rho.matrix()), C64::new(scale, 0.0));
            terms += 1;
        }
    }
    TwirlResult::new(out, terms).with_sector_weights(s)
}

/// Compact collective twirl as a finite sum over one operator basis per sector.
pub fn compact_finite_twirl(
    rho: &DensityMatrix,
    s: &SchurOperatorSet,
    hw: &[UnitaryOperatorBasis],
) -> Result<TwirlResult> {
    weighted_finite_sum(rho, s, hw, &vec![1.0; s.num_sectors()])
}

/// Exact Haar twirl: `Σ_k (1/D_G) Σ_{λ1 λ2} Tr(ρ Λ_k^{λ1λ2 †}) Λ_k^{λ1λ2}`.
pub fn haar_projection_twirl(rho: &DensityMatrix, s: &SchurOperatorSet) -> Result<TwirlResult> {
    check_state(rho, s)?;
    let n = s.dim();
    let mut out = ComplexMatrix::zeros(n, n);
    for k in 1..=s.num_sectors() {
        let sec = s.sector(k)?;
        for l1 in 1..=sec.d_c {
            for l2 in 1..=sec.d_c {
                let op = s.lambda_op(k, l1, l2)?;
                let c = op.frob_inner(rho.matrix())? / sec.d_g as f64;
                out.add_assign_scaled(&op, c);
            }
        }
    }
    let terms = s.basis().sectors().iter().map(|x| x.d_c * x.d_c).sum();
    TwirlResult::new(out, terms).with_sector_weights(s)
}

/// Non-compact twirl: the compact finite sum with sector `k` scaled by `p_k`.
///
/// Without an explicit convention this fails with
/// [`Error::ConventionRequired`] unless both readings of `β` agree.
pub fn noncompact_finite_twirl(
    rho: &DensityMatrix,
    s: &SchurOperatorSet,
    hw: &[UnitaryOperatorBasis],
    beta: &BetaWeights,
    convention: Option<Convention>,
) -> Result<TwirlResult> {
    let dims: Vec<usize> = s.basis().sectors().iter().map(|x| x.dim()).collect();
    if beta.sector_dims != dims {
        return Err(Error::InvalidArgument(format!(
            "weights computed for sector dimensions {:?}, basis has {:?}",
            beta.sector_dims, dims
        )));
    }
    let convention = match convention {
        Some(c) => c,
        None if beta.convention_gap() <= TolerancePolicy::DEFAULT_EQ_TOL => Convention::Raw,
        None => return Err(Error::ConventionRequired),
    };
    let mut r = weighted_finite_sum(rho, s, hw, &beta.probabilities(convention))?;
    r.convention = Some(convention);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::family::{beta_weights, IdentityFamily, Sl2Filtering};
    use crate::channels::states::{maximally_mixed, zero_state};
    use crate::numerics::random::{haar_unitary, random_density_matrix, substream};
    use crate::numerics::{hermitian_eigenvalues, QuadratureSpec};
    use crate::schur::build_schur_basis;

    fn setup(t: usize) -> (SchurOperatorSet, Vec<UnitaryOperatorBasis>) {
        let s = SchurOperatorSet::new(build_schur_basis(2, t).unwrap());
        let hw = s.heisenberg_weyl_bases();
        (s, hw)
    }

    fn random_state(t: usize, seed: u64) -> DensityMatrix {
        DensityMatrix::new(random_density_matrix(1 << t, &mut substream(seed, 0))).unwrap()
    }

    #[test]
    fn maximally_mixed_is_fixed() {
        let (s, hw) = setup(4);
        let rho = maximally_mixed(4);
        let a = compact_finite_twirl(&rho, &s, &hw).unwrap();
        let b = haar_projection_twirl(&rho, &s).unwrap();
        assert!(a.state.approx_eq(rho.matrix(), 1e-12));
        assert!(b.state.approx_eq(rho.matrix(), 1e-12));
    }

    #[test]
    fn symmetric_state_twirls_to_symmetric_projector() {
        let (s, hw) = setup(4);
        let r = compact_finite_twirl(&zero_state(4), &s, &hw).unwrap();
        let expected = s.sector_projector(1).unwrap().scale_real(0.2);
        assert!(r.state.approx_eq(&expected, 1e-12));
        assert_eq!(r.terms, 35);
        for (w, e) in r.sector_weights.iter().zip([1.0, 0.0, 0.0]) {
            assert!((w - e).abs() < 1e-12);
        }
    }

    #[test]
    fn finite_sum_matches_projection() {
        for t in 1..=4 {
            let (s, hw) = setup(t);
            for seed in 0..5 {
                let rho = random_state(t, seed);
                let a = compact_finite_twirl(&rho, &s, &hw).unwrap();
                let b = haar_projection_twirl(&rho, &s).unwrap();
                assert!(a.state.approx_eq(&b.state, 1e-10), "t={t} seed={seed}");
                assert!((a.total_trace - 1.0).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn projection_is_idempotent_and_covariant() {
        let (s, hw) = setup(3);
        let rho = random_state(3, 11);
        let once = haar_projection_twirl(&rho, &s).unwrap();
        let twice =
            haar_projection_twirl(&DensityMatrix::new(once.state.clone()).unwrap(), &s).unwrap();
        assert!(once.state.approx_eq(&twice.state, 1e-12));
        let u = haar_unitary(2, &mut substream(5, 1)).kron_power(3);
        assert!(u.conjugate(&once.state).approx_eq(&once.state, 1e-10));
        let c = compact_finite_twirl(&rho, &s, &hw).unwrap();
        assert!(hermitian_eigenvalues(&c.state)[0] > -1e-10);
    }

    #[test]
    fn output_commutes_with_sector_algebra() {
        let (s, hw) = setup(4);
        let r = compact_finite_twirl(&random_state(4, 3), &s, &hw).unwrap();
        for k in 1..=3 {
            let d_g = s.sector(k).unwrap().d_g;
            for m1 in 1..=d_g {
                for m2 in 1..=d_g {
                    let p = s.pi_op(k, m1, m2).unwrap();
                    assert!(p.commutator(&r.state).max_abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn any_operator_basis_gives_the_same_channel() {
        let (s, hw) = setup(4);
        let rho = random_state(4, 21);
        let reference = compact_finite_twirl(&rho, &s, &hw).unwrap();
        let variants: Vec<UnitaryOperatorBasis> = hw
            .iter()
            .enumerate()
            .map(|(k, b)| {
                let phases: Vec<C64> = (0..b.len())
                    .map(|l| C64::from_polar(1.0, 0.3 * (l + k) as f64))
                    .collect();
                let w = haar_unitary(b.dim(), &mut substream(99, k as u64));
                b.rephased(&phases).unwrap().conjugated_by(&w).unwrap()
            })
            .collect();
        let other = compact_finite_twirl(&rho, &s, &variants).unwrap();
        assert!(reference.state.approx_eq(&other.state, 1e-10));
    }

    #[test]
    fn mismatched_bases_are_rejected() {
        let (s, mut hw) = setup(4);
        hw.swap(0, 1);
        assert!(matches!(
            compact_finite_twirl(&maximally_mixed(4), &s, &hw),
            Err(Error::DimensionMismatch { .. })
        ));
        let (s2, hw2) = setup(2);
        assert!(compact_finite_twirl(&maximally_mixed(4), &s2, &hw2).is_err());
    }

    #[test]
    fn identity_family_reduces_to_compact() {
        let (s, hw) = setup(4);
        let beta = beta_weights(&s, &IdentityFamily, 4, &QuadratureSpec::default()).unwrap();
        let rho = random_state(4, 8);
        let a = noncompact_finite_twirl(&rho, &s, &hw, &beta, Some(Convention::Raw)).unwrap();
        let b = compact_finite_twirl(&rho, &s, &hw).unwrap();
        assert!(a.state.approx_eq(&b.state, 1e-8));
    }

    #[test]
    fn noncompact_trace_is_weighted_sector_sum() {
        let (s, hw) = setup(4);
        let beta = beta_weights(&s, &Sl2Filtering, 4, &QuadratureSpec::default()).unwrap();
        let rho = random_state(4, 4);
        for c in Convention::ALL {
            let r = noncompact_finite_twirl(&rho, &s, &hw, &beta, Some(c)).unwrap();
            let p = beta.probabilities(c);
            let expected: f64 = (1..=3)
                .map(|k| {
                    let pk = s.sector_projector(k).unwrap();
                    p[k - 1] * pk.conjugate(rho.matrix()).trace().re
                })
                .sum();
            assert!(r.total_trace < 1.0);
            assert!((r.total_trace - expected).abs() < 1e-8);
            assert_eq!(r.convention, Some(c));
            assert!(hermitian_eigenvalues(&r.state)[0] > -1e-10);
        }
        assert!(matches!(
            noncompact_finite_twirl(&rho, &s, &hw, &beta, None),
            Err(Error::ConventionRequired)
        ));
    }

    #[test]
    fn noncompact_rescales_compact_sectors() {
        let (s, hw) = setup(4);
        let beta = beta_weights(&s, &Sl2Filtering, 4, &QuadratureSpec::default()).unwrap();
        let rho = DensityMatrix::new({
            let v = ComplexMatrix::basis_ket(16, 15);
            ComplexMatrix::outer(&v, &v)
        })
        .unwrap();
        let c = compact_finite_twirl(&rho, &s, &hw).unwrap();
        let n = noncompact_finite_twirl(&rho, &s, &hw, &beta, Some(Convention::Raw)).unwrap();
        let p = beta.probabilities(Convention::Raw);
        for ((nw, cw), pk) in n.sector_weights.iter().zip(&c.sector_weights).zip(&p) {
            assert!((nw - pk * cw).abs() < 1e-10);
        }
    }
}
