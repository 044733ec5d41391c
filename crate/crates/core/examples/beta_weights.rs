//! Sector weights of the SL(2,C) filtering family `diag(1, 1/x²)` with
//! density `e^{1-x}` on `[1, ∞)`.

use unitary_averaging::channels::{beta_weights, Convention, IdentityFamily, Sl2Filtering};
use unitary_averaging::numerics::QuadratureSpec;
use unitary_averaging::opbasis::SchurOperatorSet;
use unitary_averaging::schur::build_schur_basis;

fn main() -> unitary_averaging::Result<()> {
    let quad = QuadratureSpec::default();
    for t in [2, 4, 6] {
        let ops = SchurOperatorSet::new(build_schur_basis(2, t)?);
        let b = beta_weights(&ops, &Sl2Filtering, t, &quad)?;
        println!("t = {t}");
        println!("  D^k          {:?}", b.sector_dims);
        println!("  Tr(M Π_k)    {:.6?}", b.raw);
        println!("  normalized   {:.5?}", b.normalized);
        println!("  p_k (raw)    {:.5?}", b.probabilities(Convention::Raw));
        println!("  refinement delta {:.1e}", b.refinement_delta);
    }
    let ops = SchurOperatorSet::new(build_schur_basis(2, 4)?);
    let trivial = beta_weights(&ops, &IdentityFamily, 4, &quad)?;
    println!(
        "identity family, t = 4: normalized {:.6?}",
        trivial.normalized
    );
    Ok(())
}
