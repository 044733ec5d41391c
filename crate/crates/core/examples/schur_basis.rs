//! Builds the Schur basis of (C^2)^{⊗4}, prints the sector table and checks
//! it against the hand-derived reference vectors.
//!
//!     cargo run --example schur_basis -- [t]

use unitary_averaging::schur::{build_schur_basis, golden_basis_t4};

fn main() -> unitary_averaging::Result<()> {
    let t: usize = std::env::args()
        .nth(1)
        .map_or(Ok(4), |a| a.parse())
        .expect("t must be an integer");
    let basis = build_schur_basis(2, t)?;
    println!("(C^2)^⊗{t}, dimension {}", basis.dim());
    for s in basis.sectors() {
        println!(
            "  k = {}  diagram {:?}  D_G = {}  D_C = {}",
            s.k,
            s.diagram.row_lengths(),
            s.d_g,
            s.d_c
        );
    }

    if t == 4 {
        let reference = golden_basis_t4();
        for (a, b) in basis.sectors().iter().zip(reference.sectors()) {
            let delta = a.projector().max_abs_diff(&b.projector());
            println!("  sector {} projector vs reference: {delta:.2e}", a.k);
        }
        let v = basis.sector(3)?.vector(1, 1)?;
        let amps: Vec<String> = v
            .entries()
            .iter()
            .enumerate()
            .filter(|(_, z)| z.norm() > 1e-12)
            .map(|(i, z)| format!("{:+.4}|{i:04b}>", z.re))
            .collect();
        println!("  |3,1,1> = {}", amps.join(" "));
    }
    Ok(())
}
