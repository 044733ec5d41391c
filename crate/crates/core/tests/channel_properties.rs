use proptest::prelude::*;
use rand::Rng;

use unitary_averaging::channels::states::random_mixed_state;
use unitary_averaging::channels::{
    beta_weights, compact_finite_twirl, haar_projection_twirl, noncompact_finite_twirl, Convention,
    DensityMatrix, Sl2Filtering,
};
use unitary_averaging::numerics::random::{haar_su2, haar_unitary, substream};
use unitary_averaging::numerics::{hermitian_eigenvalues, ComplexMatrix, QuadratureSpec, C64};
use unitary_averaging::opbasis::SchurOperatorSet;
use unitary_averaging::schur::build_schur_basis;

const TOL: f64 = 1e-10;

fn ops(t: usize) -> SchurOperatorSet {
    SchurOperatorSet::new(build_schur_basis(2, t).unwrap())
}

/// Permutation operator exchanging qubits `a` and `b` (qubit 1 is the most significant bit).
fn swap_qubits(t: usize, a: usize, b: usize) -> ComplexMatrix {
    let n = 1 << t;
    let (ba, bb) = (t - a, t - b);
    let mut p = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        let (x, y) = ((i >> ba) & 1, (i >> bb) & 1);
        let j = (i & !(1 << ba) & !(1 << bb)) | (y << ba) | (x << bb);
        p.set(j, i, C64::new(1.0, 0.0));
    }
    p
}

fn conjugated(u: &ComplexMatrix, rho: &DensityMatrix) -> DensityMatrix {
    DensityMatrix::new(u.conjugate(rho.matrix())).unwrap()
}

fn config() -> ProptestConfig {
    ProptestConfig::with_cases(24)
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn compact_twirl_is_a_positive_trace_preserving_projection(t in 2usize..=4, seed in any::<u64>()) {
        let s = ops(t);
        let hw = s.heisenberg_weyl_bases();
        let rho = random_mixed_state(t, seed, 0);
        let out = compact_finite_twirl(&rho, &s, &hw).unwrap();
        prop_assert!((out.total_trace - 1.0).abs() < TOL);
        let min_eig = hermitian_eigenvalues(&out.state).into_iter().fold(f64::INFINITY, f64::min);
        prop_assert!(min_eig > -TOL, "min eigenvalue {min_eig}");

        let again = compact_finite_twirl(&DensityMatrix::new(out.state.clone()).unwrap(), &s, &hw).unwrap();
        prop_assert!(again.state.max_abs_diff(&out.state) < TOL);
    }

    #[test]
    fn compact_twirl_is_invariant_under_collective_unitaries(t in 2usize..=4, seed in any::<u64>()) {
        let s = ops(t);
        let hw = s.heisenberg_weyl_bases();
        let rho = random_mixed_state(t, seed, 1);
        let u = haar_su2(&mut substream(seed, 2)).kron_power(t);
        let out = compact_finite_twirl(&rho, &s, &hw).unwrap().state;
        let moved = compact_finite_twirl(&conjugated(&u, &rho), &s, &hw).unwrap().state;
        prop_assert!(moved.max_abs_diff(&out) < TOL);
        prop_assert!(u.conjugate(&out).max_abs_diff(&out) < TOL);
    }

    #[test]
    fn twirls_commute_with_qubit_permutations(t in 2usize..=4, seed in any::<u64>(), pick in 0usize..16) {
        let s = ops(t);
        let hw = s.heisenberg_weyl_bases();
        let beta = beta_weights(&s, &Sl2Filtering, t, &QuadratureSpec::default()).unwrap();
        let a = 1 + pick % t;
        let b = 1 + (pick / t + a) % t;
        let p = swap_qubits(t, a, b);
        let rho = random_mixed_state(t, seed, 3);
        let permuted = conjugated(&p, &rho);

        let lhs = compact_finite_twirl(&permuted, &s, &hw).unwrap().state;
        let rhs = p.conjugate(&compact_finite_twirl(&rho, &s, &hw).unwrap().state);
        prop_assert!(lhs.max_abs_diff(&rhs) < TOL);

        let conv = Some(Convention::Raw);
        let lhs = noncompact_finite_twirl(&permuted, &s, &hw, &beta, conv).unwrap().state;
        let rhs = p.conjugate(&noncompact_finite_twirl(&rho, &s, &hw, &beta, conv).unwrap().state);
        prop_assert!(lhs.max_abs_diff(&rhs) < TOL);
    }

    #[test]
    fn twirl_does_not_depend_on_the_operator_basis(t in 2usize..=4, seed in any::<u64>()) {
        let s = ops(t);
        let hw = s.heisenberg_weyl_bases();
        let mut rng = substream(seed, 4);
        let other: Vec<_> = hw
            .iter()
            .map(|basis| {
                let phases: Vec<C64> = (0..basis.len())
                    .map(|_| C64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU)))
                    .collect();
                let w = haar_unitary(basis.dim(), &mut rng);
                basis.rephased(&phases).unwrap().conjugated_by(&w).unwrap()
            })
            .collect();
        let rho = random_mixed_state(t, seed, 5);
        let a = compact_finite_twirl(&rho, &s, &hw).unwrap().state;
        let b = compact_finite_twirl(&rho, &s, &other).unwrap().state;
        let c = haar_projection_twirl(&rho, &s).unwrap().state;
        prop_assert!(a.max_abs_diff(&b) < TOL);
        prop_assert!(a.max_abs_diff(&c) < TOL);
    }

    #[test]
    fn noncompact_twirl_is_positive_and_trace_decreasing(
        t in 2usize..=4,
        seed in any::<u64>(),
        normalized in any::<bool>(),
    ) {
        let s = ops(t);
        let hw = s.heisenberg_weyl_bases();
        let beta = beta_weights(&s, &Sl2Filtering, t, &QuadratureSpec::default()).unwrap();
        let conv = if normalized { Convention::Normalized } else { Convention::Raw };
        let rho = random_mixed_state(t, seed, 6);
        let out = noncompact_finite_twirl(&rho, &s, &hw, &beta, Some(conv)).unwrap();
        prop_assert!(out.total_trace > 0.0 && out.total_trace < 1.0);
        let min_eig = hermitian_eigenvalues(&out.state).into_iter().fold(f64::INFINITY, f64::min);
        prop_assert!(min_eig > -TOL, "min eigenvalue {min_eig}");
        prop_assert!(out.state.is_hermitian(TOL));
    }
}
