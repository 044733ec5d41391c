//! Invariant suite run by `uavg verify`.
//!
//! Each check reports a named pass/fail line with the measured deviation.
//! Monte-Carlo checks use [`mc_tolerance`], so smaller sample counts widen
//! the tolerance instead of failing.

use serde::Serialize;

use crate::channels::states::random_mixed_state;
use crate::channels::{
    beta_weights, compact_finite_twirl, haar_projection_twirl, mc_haar_twirl, mc_tolerance,
    noncompact_finite_twirl, select_convention, Convention, Sl2Filtering,
};
use crate::error::Result;
use crate::numerics::random::{ginibre, haar_unitary, substream};
use crate::numerics::{ComplexMatrix, QuadratureSpec, TolerancePolicy, C64};
use crate::opbasis::{heisenberg_weyl, SchurOperatorSet};
use crate::schur::{build_schur_basis, golden_basis_t4, SchurBasis, MAX_T};
use crate::sizes::{emit_table, operator_span_dim, sector_term_count, universal_set_size};

/// Tolerance for exact identities.
pub const STRUCTURE_TOL: f64 = 1e-10;

/// Expected `normalized` weights of the SL(2) family at four copies.
pub const SL2_T4_WEIGHTS: [f64; 3] = [0.30036, 0.14652, 0.12290];

/// `max |T^† T - I|` for the Schur transform `T`.
pub fn orthonormality_defect(b: &SchurBasis) -> f64 {
    let t = b.transform_matrix();
    if !t.is_square() {
        return f64::INFINITY;
    }
    (&t.adjoint() * &t).max_abs_diff(&ComplexMatrix::identity(t.rows()))
}

/// `max |Σ_k Π_k - I|`.
pub fn completeness_defect(s: &SchurOperatorSet) -> Result<f64> {
    let mut total = ComplexMatrix::zeros(s.dim(), s.dim());
    for k in 1..=s.num_sectors() {
        total.add_assign_scaled(&*s.sector_projector(k)?, C64::new(1.0, 0.0));
    }
    Ok(total.max_abs_diff(&ComplexMatrix::identity(s.dim())))
}

/// Largest deviation in `Π_k = Σ_m Π_k^{mm} = Σ_λ Λ_k^{λλ}`, with `Π_k` built
/// as `Σ |k,m,λ><k,m,λ|`.
pub fn sector_identity_defect(s: &SchurOperatorSet) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for k in 1..=s.num_sectors() {
        let sec = s.sector(k)?;
        let p = s.sector_projector(k)?;
        let mut via_pi = ComplexMatrix::zeros(s.dim(), s.dim());
        for m in 1..=sec.d_g {
            via_pi.add_assign_scaled(&*s.pi_op(k, m, m)?, C64::new(1.0, 0.0));
        }
        let mut via_lambda = ComplexMatrix::zeros(s.dim(), s.dim());
        for l in 1..=sec.d_c {
            via_lambda.add_assign_scaled(&*s.lambda_op(k, l, l)?, C64::new(1.0, 0.0));
        }
        worst = worst
            .max(via_pi.max_abs_diff(&p))
            .max(via_lambda.max_abs_diff(&p));
    }
    Ok(worst)
}

/// `max |[Λ_k^{λ1λ2}, Π_k'^{m1m2}]|` over all labels.
pub fn commutation_defect(s: &SchurOperatorSet) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for k in 1..=s.num_sectors() {
        let sk = s.sector(k)?;
        for k2 in 1..=s.num_sectors() {
            let sk2 = s.sector(k2)?;
            for l1 in 1..=sk.d_c {
                for l2 in 1..=sk.d_c {
                    let lam = s.lambda_op(k, l1, l2)?;
                    for m1 in 1..=sk2.d_g {
                        for m2 in 1..=sk2.d_g {
                            let pi = s.pi_op(k2, m1, m2)?;
                            worst = worst.max(lam.commutator(&pi).max_abs());
                        }
                    }
                }
            }
        }
    }
    Ok(worst)
}

/// Checks `Π_k X Π_k = δ_ik δ_jk Π_k^{n1n2} Λ_k^{λ1λ2}` for every
/// `X = |i,n1,λ1><j,n2,λ2|`, where `Π_k` is the sector projector.
///
/// Sandwiching with `Π_k^{m1m2}` on both sides then gives the general
/// block-orthogonality identity.
pub fn block_orthogonality_defect(s: &SchurOperatorSet) -> Result<f64> {
    let labels: Vec<(usize, usize, usize)> = s
        .basis()
        .sectors()
        .iter()
        .flat_map(|sec| (1..=sec.d_g).flat_map(move |m| (1..=sec.d_c).map(move |l| (sec.k, m, l))))
        .collect();
    let mut worst: f64 = 0.0;
    for k in 1..=s.num_sectors() {
        let p = s.sector_projector(k)?;
        let projected: Vec<ComplexMatrix> = labels
            .iter()
            .map(|&(i, n, l)| Ok(&*p * s.sector(i)?.vector(n, l)?))
            .collect::<Result<_>>()?;
        for (a, &(i, n1, l1)) in labels.iter().enumerate() {
            for (b, &(j, n2, l2)) in labels.iter().enumerate() {
                let lhs = ComplexMatrix::outer(&projected[a], &projected[b]);
                let dev = if i == k && j == k {
                    let rhs = &*s.pi_op(k, n1, n2)? * &*s.lambda_op(k, l1, l2)?;
                    lhs.max_abs_diff(&rhs)
                } else {
                    lhs.max_abs()
                };
                worst = worst.max(dev);
            }
        }
    }
    Ok(worst)
}

/// `max |U^{⊗t} Π_k U^{⊗t †} - Π_k|` over `draws` Haar unitaries.
pub fn sector_invariance_defect(s: &SchurOperatorSet, draws: usize, seed: u64) -> Result<f64> {
    let b = s.basis();
    let mut worst: f64 = 0.0;
    for i in 0..draws {
        let u = haar_unitary(b.d, &mut substream(seed, i as u64)).kron_power(b.t);
        for k in 1..=s.num_sectors() {
            let p = s.sector_projector(k)?;
            worst = worst.max(u.conjugate(&p).max_abs_diff(&p));
        }
    }
    Ok(worst)
}

/// One named outcome of the suite.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    pub fn line(&self) -> String {
        format!(
            "{} {}: {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.detail
        )
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| !c.passed)
    }

    fn record(&mut self, name: &str, outcome: Result<(bool, String)>) {
        let (passed, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
        self.checks.push(CheckOutcome {
            name: name.to_string(),
            passed,
            detail,
        });
    }
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub samples: usize,
    pub seed: u64,
    /// Random states per `t` in the compact oracle comparison.
    pub states: usize,
    pub quadrature: QuadratureSpec,
    pub policy: TolerancePolicy,
    /// Basis to check instead of freshly built ones.
    pub basis: Option<SchurBasis>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            samples: 100_000,
            seed: 42,
            states: 20,
            quadrature: QuadratureSpec::default(),
            policy: TolerancePolicy::default(),
            basis: None,
        }
    }
}

fn within(value: f64, tol: f64) -> (bool, String) {
    (
        value <= tol,
        format!("max deviation {value:.3e} (tolerance {tol:.1e})"),
    )
}

/// Runs every check; failures are reported, never short-circuited.
pub fn run_suite(cfg: &VerifyConfig) -> VerifyReport {
    let mut report = VerifyReport::default();

    report.record(
        "schur-golden",
        (|| {
            let b = build_schur_basis(2, 4)?;
            let dims = b.dimension_table();
            let expected = [(5, 1), (3, 3), (1, 2)];
            let reference = golden_basis_t4();
            let delta = b
                .sectors()
                .iter()
                .zip(reference.sectors())
                .map(|(a, r)| a.projector().max_abs_diff(&r.projector()))
                .fold(0.0, f64::max);
            Ok((
                dims == expected && delta <= STRUCTURE_TOL,
                format!("sector dimensions {dims:?}, projector deviation {delta:.3e}"),
            ))
        })(),
    );

    let under_test: Vec<Result<SchurBasis>> = match &cfg.basis {
        Some(b) => vec![Ok(b.clone())],
        None => (1..=MAX_T).map(|t| build_schur_basis(2, t)).collect(),
    };
    type Defect = fn(&SchurOperatorSet) -> Result<f64>;
    let structural: [(&str, Defect); 6] = [
        ("basis-orthonormality", |s| {
            Ok(orthonormality_defect(s.basis()))
        }),
        ("basis-completeness", completeness_defect),
        ("sector-identities", sector_identity_defect),
        ("commutation", commutation_defect),
        ("block-orthogonality", block_orthogonality_defect),
        ("sector-invariance", |s| sector_invariance_defect(s, 5, 7)),
    ];
    let sets: Vec<Result<SchurOperatorSet>> = under_test
        .into_iter()
        .map(|b| b.map(SchurOperatorSet::new))
        .collect();
    for (name, defect) in structural {
        report.record(
            name,
            (|| {
                let mut worst: f64 = 0.0;
                for s in &sets {
                    let s = s
                        .as_ref()
                        .map_err(|e| crate::Error::InvalidArgument(e.to_string()))?;
                    worst = worst.max(defect(s)?);
                }
                Ok(within(worst, STRUCTURE_TOL))
            })(),
        );
    }
    report.record(
        "term-count",
        (|| {
            let mut lines = Vec::new();
            let mut ok = true;
            for s in &sets {
                let s = s
                    .as_ref()
                    .map_err(|e| crate::Error::InvalidArgument(e.to_string()))?;
                let b = s.basis();
                let (got, want) = (sector_term_count(b), universal_set_size(b.d, b.t));
                ok &= got == want;
                lines.push(format!("t={}: {got}/{want}", b.t));
            }
            Ok((ok, lines.join(", ")))
        })(),
    );

    report.record("one-design", {
        let mut worst: f64 = 0.0;
        for d in [2usize, 3, 5] {
            let hw = heisenberg_weyl(d);
            for i in 0..20 {
                let x = ginibre(d, d, &mut substream(cfg.seed, (d * 100 + i) as u64));
                let expected = ComplexMatrix::identity(d).scale(x.trace() / d as f64);
                worst = worst.max(hw.average(&x).max_abs_diff(&expected));
            }
        }
        Ok(within(worst, 1e-12))
    });

    let mc_tol = mc_tolerance(cfg.samples);
    report.record(
        "oracle-triangle",
        (|| {
            let (mut exact, mut mc): (f64, f64) = (0.0, 0.0);
            for t in 2..=4 {
                let s = SchurOperatorSet::new(build_schur_basis(2, t)?);
                let hw = s.heisenberg_weyl_bases();
                for i in 0..cfg.states {
                    let rho = random_mixed_state(t, cfg.seed ^ 0x5157, (t * 1000 + i) as u64);
                    let a = compact_finite_twirl(&rho, &s, &hw)?;
                    let b = haar_projection_twirl(&rho, &s)?;
                    let m = mc_haar_twirl(&rho, t, cfg.samples, cfg.seed.wrapping_add(i as u64))?;
                    exact = exact.max(a.state.max_abs_diff(&b.state));
                    mc = mc
                        .max(m.state.max_abs_diff(&a.state))
                        .max(m.state.max_abs_diff(&b.state));
                }
            }
            Ok((
                exact <= STRUCTURE_TOL && mc <= mc_tol,
                format!(
                    "finite vs projection {exact:.3e} (tolerance {STRUCTURE_TOL:.0e}), \
                 Monte Carlo {mc:.3e} (tolerance {mc_tol:.2e} at {} samples)",
                    cfg.samples
                ),
            ))
        })(),
    );

    let s4 = SchurOperatorSet::new(build_schur_basis(2, 4).expect("t = 4 is supported"));
    let hw4 = s4.heisenberg_weyl_bases();
    let beta = beta_weights(&s4, &Sl2Filtering, 4, &cfg.quadrature);
    report.record(
        "beta-weights",
        (|| {
            let b = beta
                .as_ref()
                .map_err(|e| crate::Error::InvalidArgument(e.to_string()))?;
            let dev = b
                .normalized
                .iter()
                .zip(SL2_T4_WEIGHTS)
                .map(|(v, e)| (v - e).abs())
                .fold(0.0, f64::max);
            Ok((
                dev <= 1e-4 && b.refinement_delta < QuadratureSpec::REFINEMENT_LIMIT,
                format!(
                    "normalized {:?}, deviation {dev:.2e}, refinement delta {:.2e}",
                    b.normalized
                        .iter()
                        .map(|v| format!("{v:.5}"))
                        .collect::<Vec<_>>(),
                    b.refinement_delta
                ),
            ))
        })(),
    );

    report.record("noncompact-consistency", (|| {
        let b = beta.as_ref().map_err(|e| crate::Error::InvalidArgument(e.to_string()))?;
        let probe = random_mixed_state(4, cfg.seed ^ 0xCA57, 0);
        let mut chosen = Vec::new();
        for j in 0..3u64 {
            let sel = select_convention(&probe, &s4, &hw4, b, &Sl2Filtering, cfg.samples, cfg.seed + j)?;
            chosen.push(sel.convention);
        }
        let stable = chosen.iter().all(|&c| c == chosen[0]);
        let mut worst: f64 = 0.0;
        for i in 0..10u64 {
            let rho = random_mixed_state(4, cfg.seed ^ 0xCA57, i + 1);
            let finite = noncompact_finite_twirl(&rho, &s4, &hw4, b, Some(chosen[0]))?;
            let mc = crate::channels::mc_cartan_twirl(&rho, 4, &Sl2Filtering, cfg.samples, cfg.seed + 100 + i)?;
            worst = worst.max(finite.state.max_abs_diff(&mc.state));
        }
        Ok((
            stable && worst <= mc_tol,
            format!(
                "convention {} on 3 seeds (stable: {stable}), max deviation {worst:.3e} (tolerance {mc_tol:.2e})",
                chosen[0]
            ),
        ))
    })());

    report.record(
        "trace-behaviour",
        (|| {
            let b = beta
                .as_ref()
                .map_err(|e| crate::Error::InvalidArgument(e.to_string()))?;
            let (mut compact_dev, mut noncompact_dev, mut max_trace): (f64, f64, f64) =
                (0.0, 0.0, 0.0);
            for i in 0..5u64 {
                let rho = random_mixed_state(4, cfg.seed ^ 0x76AC, i);
                compact_dev = compact_dev
                    .max((compact_finite_twirl(&rho, &s4, &hw4)?.total_trace - 1.0).abs())
                    .max((haar_projection_twirl(&rho, &s4)?.total_trace - 1.0).abs());
                let r = noncompact_finite_twirl(&rho, &s4, &hw4, b, Some(Convention::Raw))?;
                let p = b.probabilities(Convention::Raw);
                let mut expected = 0.0;
                for (k, pk) in p.iter().enumerate() {
                    expected += pk
                        * s4.sector_projector(k + 1)?
                            .conjugate(rho.matrix())
                            .trace()
                            .re;
                }
                noncompact_dev = noncompact_dev.max((r.total_trace - expected).abs());
                max_trace = max_trace.max(r.total_trace);
            }
            Ok((
                compact_dev <= STRUCTURE_TOL && noncompact_dev <= 1e-8 && max_trace < 1.0,
                format!(
                "compact trace deviation {compact_dev:.2e}, non-compact trace up to {max_trace:.4} \
                 with deviation {noncompact_dev:.2e} from the weighted sector sum"
            ),
            ))
        })(),
    );

    report.record(
        "size-table",
        (|| {
            let rows = emit_table();
            let universal: Vec<u64> = rows.iter().map(|r| r.universal).collect();
            let bound: Vec<u64> = rows.iter().map(|r| r.bound).collect();
            let table_ok = rows.len() == 11
                && universal == [10, 20, 56, 45, 165, 325, 666, 1225, 2080, 3321, 5050]
                && bound == [10, 20, 56, 65, 270, 577, 1226, 2305, 3970, 6401, 9802];
            let mut ranks = Vec::new();
            for t in 1..=4 {
                let n = 1usize << t;
                ranks.push((
                    operator_span_dim(2, t, 0, 2 * n * n, cfg.seed, &cfg.policy)?,
                    universal_set_size(2, t),
                ));
            }
            let bound_rank = operator_span_dim(2, 1, 1, 32, cfg.seed, &cfg.policy)?;
            let ranks_ok = ranks.iter().all(|(a, b)| *a as u64 == *b) && bound_rank == 10;
            Ok((
                table_ok && ranks_ok,
                format!(
                    "11 rows match: {table_ok}; rank oracle {ranks:?}, D(2,1,1) = {bound_rank}"
                ),
            ))
        })(),
    );

    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corrupted_basis_fails_named_checks() {
        let good = build_schur_basis(2, 2).unwrap();
        let mut doc: serde_json::Value = serde_json::from_str(&good.to_json().unwrap()).unwrap();
        doc["sectors"][0]["vectors"][0][0] = serde_json::json!([0.9, 0.0]);
        let bad = SchurBasis::from_json(&doc.to_string()).unwrap();
        let s = SchurOperatorSet::new(bad.clone());
        assert!(orthonormality_defect(&bad) > 1e-3);
        assert!(completeness_defect(&s).unwrap() > 1e-3);
        let s_good = SchurOperatorSet::new(good.clone());
        assert!(completeness_defect(&s_good).unwrap() < 1e-12);
        assert!(block_orthogonality_defect(&s_good).unwrap() < 1e-12);
        assert!(commutation_defect(&s_good).unwrap() < 1e-12);
        assert!(sector_invariance_defect(&s_good, 3, 1).unwrap() < 1e-12);
    }

    #[test]
    fn golden_basis_passes_structure() {
        let s = SchurOperatorSet::new(golden_basis_t4());
        assert!(block_orthogonality_defect(&s).unwrap() < 1e-10);
        assert!(sector_identity_defect(&s).unwrap() < 1e-10);
    }

    #[test]
    fn quick_suite_passes() {
        let cfg = VerifyConfig {
            samples: 500,
            states: 2,
            ..VerifyConfig::default()
        };
        let report = run_suite(&cfg);
        for c in &report.checks {
            assert!(c.passed, "{}", c.line());
        }
        assert_eq!(report.checks.len(), 14);
    }
}
