//! Seeded Monte-Carlo Haar and Cartan averages and their standard errors.

use unitary_averaging::channels::states::random_mixed_state;
use unitary_averaging::channels::{
    haar_projection_twirl, mc_cartan_twirl, mc_haar_twirl, mc_tolerance, IdentityFamily,
};
use unitary_averaging::opbasis::SchurOperatorSet;
use unitary_averaging::schur::build_schur_basis;

fn main() -> unitary_averaging::Result<()> {
    let t = 3;
    let ops = SchurOperatorSet::new(build_schur_basis(2, t)?);
    let rho = random_mixed_state(t, 11, 0);
    let exact = haar_projection_twirl(&rho, &ops)?;
    for samples in [1_000, 10_000, 100_000] {
        let mc = mc_haar_twirl(&rho, t, samples, 42)?;
        println!(
            "N = {samples:>6}: deviation {:.2e}, max standard error {:.2e}, tolerance {:.2e}",
            mc.state.max_abs_diff(&exact.state),
            mc.max_std_error().unwrap_or(0.0),
            mc_tolerance(samples)
        );
    }
    // with A_n ≡ I the Cartan average is a Haar average again
    let cartan = mc_cartan_twirl(&rho, t, &IdentityFamily, 100_000, 1)?;
    println!(
        "identity-family Cartan vs projection: {:.2e}",
        cartan.state.max_abs_diff(&exact.state)
    );
    let again = mc_haar_twirl(&rho, t, 1_000, 42)?;
    println!(
        "same seed reproduces bit for bit: {}",
        again == mc_haar_twirl(&rho, t, 1_000, 42)?
    );
    Ok(())
}
