//! Sampling oracles. Sample `i` always draws from `substream(seed, i)`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::density::DensityMatrix;
use super::family::{AbelianFamily, BetaWeights, Convention};
use super::result::TwirlResult;
use super::twirl::noncompact_finite_twirl;
use crate::error::{Error, Result};
use crate::numerics::random::{haar_su2, haar_unitary, substream, SampleRng};
use crate::numerics::{ComplexMatrix, C64};
use crate::opbasis::{SchurOperatorSet, UnitaryOperatorBasis};

/// Max-entry tolerance for a Monte-Carlo comparison: `5e-3` at `1e5` samples,
/// scaling as `1/sqrt(N)`.
pub fn mc_tolerance(samples: usize) -> f64 {
    5e-3 * (1e5 / samples.max(1) as f64).sqrt()
}

/// `ρ ↦ L^{⊗t} ρ L^{⊗t †}` in place, one qubit at a time.
pub(crate) fn conjugate_collective(l: &ComplexMatrix, rho: &mut [C64], t: usize) {
    let n = 1usize << t;
    debug_assert_eq!(rho.len(), n * n);
    let (a, b, c, d) = (l.get(0, 0), l.get(0, 1), l.get(1, 0), l.get(1, 1));
    let (ac, bc, cc, dc) = (a.conj(), b.conj(), c.conj(), d.conj());
    for q in 0..t {
        // qubit 1 is the most significant bit
        let bit = 1usize << (t - 1 - q);
        for r0 in (0..n).filter(|r| r & bit == 0) {
            let r1 = r0 | bit;
            for col in 0..n {
                let x = rho[r0 * n + col];
                let y = rho[r1 * n + col];
                rho[r0 * n + col] = a * x + b * y;
                rho[r1 * n + col] = c * x + d * y;
            }
        }
        for row in rho.chunks_exact_mut(n) {
            for c0 in (0..n).filter(|c| c & bit == 0) {
                let c1 = c0 | bit;
                let x = row[c0];
                let y = row[c1];
                row[c0] = x * ac + y * bc;
                row[c1] = x * cc + y * dc;
            }
        }
    }
}

/// `(1/N) Σ_i L_i^{⊗t} ρ L_i^{⊗t †}` with `L_i = sampler(substream(seed, i))`.
pub fn mc_collective_average(
    rho: &DensityMatrix,
    t: usize,
    samples: usize,
    seed: u64,
    mut sampler: impl FnMut(&mut SampleRng) -> ComplexMatrix,
) -> Result<TwirlResult> {
    if samples == 0 {
        return Err(Error::InvalidArgument(
            "at least one sample is required".into(),
        ));
    }
    let n = 1usize << t;
    if rho.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: (n, n),
            found: rho.matrix().shape(),
        });
    }
    let input = rho.matrix().entries();
    // Welford running mean and sum of squared deviations per entry
    let mut mean = vec![C64::new(0.0, 0.0); n * n];
    let mut m2 = vec![0.0f64; n * n];
    let mut work = input.to_vec();
    for i in 0..samples {
        let l = sampler(&mut substream(seed, i as u64));
        work.copy_from_slice(input);
        conjugate_collective(&l, &mut work, t);
        let count = (i + 1) as f64;
        for ((m, q), &w) in mean.iter_mut().zip(&mut m2).zip(&work) {
            let delta = w - *m;
            *m += delta / count;
            *q += (delta.conj() * (w - *m)).re;
        }
    }
    let std_errors = if samples > 1 {
        let (n_f, dof) = (samples as f64, (samples - 1) as f64);
        m2.iter().map(|q| (q.max(0.0) / dof / n_f).sqrt()).collect()
    } else {
        vec![0.0; n * n]
    };
    let mut r = TwirlResult::new(ComplexMatrix::new(n, n, mean)?, samples);
    r.std_errors = Some(std_errors);
    Ok(r)
}

/// Haar average over the collective `U(2)` action.
pub fn mc_haar_twirl(
    rho: &DensityMatrix,
    t: usize,
    samples: usize,
    seed: u64,
) -> Result<TwirlResult> {
    mc_collective_average(rho, t, samples, seed, |rng| haar_unitary(2, rng))
}

/// Cartan average: `L = S A_n(x) S'` with `S, S'` Haar on SU(2) and `x ~ w`.
pub fn mc_cartan_twirl(
    rho: &DensityMatrix,
    t: usize,
    fam: &dyn AbelianFamily,
    samples: usize,
    seed: u64,
) -> Result<TwirlResult> {
    if fam.site_dim() != 2 {
        return Err(Error::Unsupported {
            d: fam.site_dim(),
            t,
        });
    }
    mc_collective_average(rho, t, samples, seed, |rng| {
        let s = haar_su2(rng);
        // u in (0, 1]
        let u = 1.0 - rng.random::<f64>();
        let a = fam.element(fam.inverse_cdf(u));
        let s2 = haar_su2(rng);
        &(&s * &a) * &s2
    })
}

/// Which reading of the sector weights agrees with the Cartan oracle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConventionSelection {
    pub convention: Convention,
    pub delta_raw: f64,
    pub delta_normalized: f64,
    pub tolerance: f64,
    /// Exactly one convention lies within `tolerance`.
    pub unambiguous: bool,
    pub samples: usize,
    pub seed: u64,
}

impl ConventionSelection {
    pub fn delta(&self, c: Convention) -> f64 {
        match c {
            Convention::Raw => self.delta_raw,
            Convention::Normalized => self.delta_normalized,
        }
    }
}

/// Runs [`mc_cartan_twirl`] on `rho` and keeps the convention whose finite
/// twirl is closer to it. Fails if even that one misses [`mc_tolerance`].
///
/// With few samples the tolerance can admit both conventions; the closer one
/// is still chosen and `unambiguous` is false.
pub fn select_convention(
    rho: &DensityMatrix,
    s: &SchurOperatorSet,
    hw: &[UnitaryOperatorBasis],
    beta: &BetaWeights,
    fam: &dyn AbelianFamily,
    samples: usize,
    seed: u64,
) -> Result<ConventionSelection> {
    let oracle = mc_cartan_twirl(rho, s.basis().t, fam, samples, seed)?;
    let delta = |c| -> Result<f64> {
        let r = noncompact_finite_twirl(rho, s, hw, beta, Some(c))?;
        Ok(r.state.max_abs_diff(&oracle.state))
    };
    let (delta_raw, delta_normalized) = (delta(Convention::Raw)?, delta(Convention::Normalized)?);
    let tolerance = mc_tolerance(samples);
    let (convention, best) = if delta_raw <= delta_normalized {
        (Convention::Raw, delta_raw)
    } else {
        (Convention::Normalized, delta_normalized)
    };
    if best > tolerance {
        return Err(Error::ConventionUndetermined {
            delta_raw,
            delta_normalized,
            tolerance,
        });
    }
    Ok(ConventionSelection {
        convention,
        delta_raw,
        delta_normalized,
        tolerance,
        unambiguous: (delta_raw <= tolerance) != (delta_normalized <= tolerance),
        samples,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::family::{beta_weights, IdentityFamily, Sl2Filtering};
    use crate::channels::states::{maximally_mixed, singlet_pair};
    use crate::channels::twirl::haar_projection_twirl;
    use crate::numerics::random::random_density_matrix;
    use crate::numerics::QuadratureSpec;
    use crate::schur::build_schur_basis;

    fn random_state(t: usize, seed: u64) -> DensityMatrix {
        DensityMatrix::new(random_density_matrix(1 << t, &mut substream(seed, 0))).unwrap()
    }

    #[test]
    fn local_application_matches_kron() {
        for t in 1..=4 {
            let l = crate::numerics::random::ginibre(2, 2, &mut substream(1, t as u64));
            let rho = random_state(t, 2);
            let mut work = rho.matrix().entries().to_vec();
            conjugate_collective(&l, &mut work, t);
            let expected = l.kron_power(t).conjugate(rho.matrix());
            assert!(ComplexMatrix::new(1 << t, 1 << t, work)
                .unwrap()
                .approx_eq(&expected, 1e-12));
        }
    }

    #[test]
    fn mixed_state_is_invariant_per_sample() {
        let rho = maximally_mixed(3);
        let r = mc_haar_twirl(&rho, 3, 50, 9).unwrap();
        assert!(r.state.approx_eq(rho.matrix(), 1e-13));
        assert!(r.max_std_error().unwrap() < 1e-13);
    }

    #[test]
    fn seeded_runs_are_bit_identical() {
        let rho = random_state(2, 5);
        let a = mc_haar_twirl(&rho, 2, 200, 42).unwrap();
        let b = mc_haar_twirl(&rho, 2, 200, 42).unwrap();
        assert_eq!(a, b);
        let c = mc_cartan_twirl(&rho, 2, &Sl2Filtering, 200, 42).unwrap();
        let d = mc_cartan_twirl(&rho, 2, &Sl2Filtering, 200, 42).unwrap();
        assert_eq!(c, d);
        assert_ne!(a, mc_haar_twirl(&rho, 2, 200, 43).unwrap());
    }

    #[test]
    fn unitary_and_special_unitary_sampling_agree() {
        // U and U / sqrt(det U) give the same conjugation
        let rho = random_state(3, 6);
        let u = mc_collective_average(&rho, 3, 100, 1, |rng| haar_unitary(2, rng)).unwrap();
        let su = mc_collective_average(&rho, 3, 100, 1, haar_su2).unwrap();
        assert!(u.state.approx_eq(&su.state, 1e-12));
    }

    #[test]
    fn haar_estimate_converges_to_projection() {
        let s = SchurOperatorSet::new(build_schur_basis(2, 4).unwrap());
        let rho = singlet_pair();
        let exact = haar_projection_twirl(&rho, &s).unwrap();
        let samples = 20_000;
        let mc = mc_haar_twirl(&rho, 4, samples, 7)
            .unwrap()
            .with_sector_weights(&s)
            .unwrap();
        assert!(mc.state.max_abs_diff(&exact.state) < mc_tolerance(samples));
        for (a, b) in mc.sector_weights.iter().zip(&exact.sector_weights) {
            assert!(
                (a - b).abs() < 1e-10,
                "sector weights are invariant per sample"
            );
        }
        // two singlets live in the k = 2 and k = 3 sectors only
        assert!(exact.sector_weights[0].abs() < 1e-12);
    }

    #[test]
    fn identity_family_reduces_to_haar() {
        let rho = random_state(2, 3);
        let samples = 20_000;
        let a = mc_cartan_twirl(&rho, 2, &IdentityFamily, samples, 1).unwrap();
        let b = mc_haar_twirl(&rho, 2, samples, 2).unwrap();
        assert!(a.state.max_abs_diff(&b.state) < 2.0 * mc_tolerance(samples));
    }

    #[test]
    fn mixed_state_sector_traces_estimate_weights() {
        let s = SchurOperatorSet::new(build_schur_basis(2, 4).unwrap());
        let beta = beta_weights(&s, &Sl2Filtering, 4, &QuadratureSpec::default()).unwrap();
        let r = mc_cartan_twirl(&maximally_mixed(4), 4, &Sl2Filtering, 20_000, 3)
            .unwrap()
            .with_sector_weights(&s)
            .unwrap();
        for k in 0..3 {
            let estimate = r.sector_weights[k] / (beta.sector_dims[k] as f64 / 16.0);
            assert!(
                (estimate - beta.normalized[k]).abs() < 0.02,
                "sector {}",
                k + 1
            );
        }
    }

    #[test]
    fn selection_picks_a_single_convention() {
        let s = SchurOperatorSet::new(build_schur_basis(2, 3).unwrap());
        let hw = s.heisenberg_weyl_bases();
        let beta = beta_weights(&s, &Sl2Filtering, 3, &QuadratureSpec::default()).unwrap();
        let sel = select_convention(
            &random_state(3, 1),
            &s,
            &hw,
            &beta,
            &Sl2Filtering,
            20_000,
            5,
        )
        .unwrap();
        assert_eq!(sel.convention, Convention::Raw);
        assert!(sel.unambiguous);
        assert!(sel.delta_normalized > sel.tolerance);
        let few =
            select_convention(&random_state(3, 1), &s, &hw, &beta, &Sl2Filtering, 100, 5).unwrap();
        assert_eq!(few.convention, Convention::Raw);
    }

    #[test]
    fn zero_samples_rejected() {
        assert!(mc_haar_twirl(&maximally_mixed(2), 2, 0, 1).is_err());
        assert!(mc_haar_twirl(&maximally_mixed(2), 3, 10, 1).is_err());
    }
}
