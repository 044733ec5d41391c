//! Schur operator bases and Heisenberg-Weyl unitary operator bases.
//!
//! Shows the matrix-unit algebra of `Π_k^{m1 m2}`, the commuting `Λ_k`
//! operators, and that a Heisenberg-Weyl basis averages any operator to a
//! multiple of the identity.

use unitary_averaging::numerics::random::{ginibre, substream};
use unitary_averaging::numerics::ComplexMatrix;
use unitary_averaging::opbasis::{heisenberg_weyl, SchurOperatorSet};
use unitary_averaging::schur::build_schur_basis;

fn main() -> unitary_averaging::Result<()> {
    let ops = SchurOperatorSet::new(build_schur_basis(2, 4)?);

    let p12 = ops.pi_op(2, 1, 2)?;
    let p23 = ops.pi_op(2, 2, 3)?;
    let p13 = ops.pi_op(2, 1, 3)?;
    println!(
        "Π_2^{{12}} Π_2^{{23}} = Π_2^{{13}}: {:.1e}",
        (&*p12 * &*p23).max_abs_diff(&p13)
    );

    let lam = ops.lambda_op(2, 1, 3)?;
    println!(
        "[Λ_2^{{13}}, Π_2^{{12}}] = {:.1e}",
        lam.commutator(&p12).max_abs()
    );

    // a 3x3 matrix lifted onto the spin-1 sector
    let gamma = heisenberg_weyl(3).elements()[4].clone();
    let lifted = ops.embed_gamma(2, &gamma)?;
    let u = &lifted * &lifted.adjoint();
    println!(
        "embedded Z X is unitary on sector 2: {:.1e}",
        u.max_abs_diff(&*ops.sector_projector(2)?)
    );

    for d in [2, 3, 5] {
        let hw = heisenberg_weyl(d);
        let x = ginibre(d, d, &mut substream(1, d as u64));
        let expected = ComplexMatrix::identity(d).scale(x.trace() / d as f64);
        println!(
            "D = {d}: {} elements, 1-design deviation {:.1e}",
            hw.len(),
            hw.average(&x).max_abs_diff(&expected)
        );
    }
    Ok(())
}
