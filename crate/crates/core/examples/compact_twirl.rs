//! Collective U(2) twirl of four qubits as a 35-term finite sum, checked
//! against the closed-form Haar projection.

use unitary_averaging::channels::states::{ghz_state, random_mixed_state, singlet_pair};
use unitary_averaging::channels::{compact_finite_twirl, haar_projection_twirl};
use unitary_averaging::opbasis::SchurOperatorSet;
use unitary_averaging::schur::build_schur_basis;

fn main() -> unitary_averaging::Result<()> {
    let ops = SchurOperatorSet::new(build_schur_basis(2, 4)?);
    let hw = ops.heisenberg_weyl_bases();

    for (name, rho) in [
        ("ghz4", ghz_state(4)),
        ("singlet pair", singlet_pair()),
        ("random", random_mixed_state(4, 7, 0)),
    ] {
        let finite = compact_finite_twirl(&rho, &ops, &hw)?;
        let exact = haar_projection_twirl(&rho, &ops)?;
        println!(
            "{name:>12}: {} terms, trace {:.12}, sector weights {:.4?}, vs projection {:.1e}",
            finite.terms,
            finite.total_trace,
            finite.sector_weights,
            finite.state.max_abs_diff(&exact.state)
        );
    }
    Ok(())
}
