//! Finite form of the SL(2,C) Cartan twirl. The Monte-Carlo Cartan average
//! decides how the integrated weights turn into sector probabilities.

use unitary_averaging::channels::states::random_mixed_state;
use unitary_averaging::channels::{
    beta_weights, compact_finite_twirl, mc_cartan_twirl, noncompact_finite_twirl,
    select_convention, Sl2Filtering,
};
use unitary_averaging::numerics::QuadratureSpec;
use unitary_averaging::opbasis::SchurOperatorSet;
use unitary_averaging::schur::build_schur_basis;

fn main() -> unitary_averaging::Result<()> {
    let ops = SchurOperatorSet::new(build_schur_basis(2, 4)?);
    let hw = ops.heisenberg_weyl_bases();
    let beta = beta_weights(&ops, &Sl2Filtering, 4, &QuadratureSpec::default())?;
    let rho = random_mixed_state(4, 3, 0);

    let samples = 50_000;
    let sel = select_convention(&rho, &ops, &hw, &beta, &Sl2Filtering, samples, 42)?;
    println!(
        "selected {} (raw delta {:.2e}, normalized delta {:.2e}, tolerance {:.2e})",
        sel.convention, sel.delta_raw, sel.delta_normalized, sel.tolerance
    );

    let finite = noncompact_finite_twirl(&rho, &ops, &hw, &beta, Some(sel.convention))?;
    let compact = compact_finite_twirl(&rho, &ops, &hw)?;
    let mc = mc_cartan_twirl(&rho, 4, &Sl2Filtering, samples, 7)?;
    println!(
        "finite trace {:.6}, deficit {:.6}",
        finite.total_trace,
        finite.trace_deficit()
    );
    for k in 0..3 {
        println!(
            "  sector {}: weight {:.6} = {:.5} x compact {:.6}",
            k + 1,
            finite.sector_weights[k],
            finite.sector_weights[k] / compact.sector_weights[k],
            compact.sector_weights[k]
        );
    }
    println!(
        "vs fresh Monte Carlo run: {:.2e}",
        finite.state.max_abs_diff(&mc.state)
    );
    Ok(())
}
