//! Seeded sampling: Ginibre matrices, Haar unitaries, random mixed states.
//!
//! Every Monte-Carlo sample `i` draws from its own ChaCha stream derived from
//! `(seed, i)`, so results do not depend on evaluation order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::matrix::{ComplexMatrix, C64};

pub type SampleRng = ChaCha8Rng;

/// Independent generator for sample `index` under `seed`.
pub fn substream(seed: u64, index: u64) -> SampleRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Standard complex Gaussian entry, `E|z|^2 = 1`.
pub fn complex_gaussian(rng: &mut impl Rng) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn ginibre(rows: usize, cols: usize, rng: &mut impl Rng) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| complex_gaussian(rng))
}

/// Haar-distributed unitary: QR of a Ginibre matrix with the diagonal of R
/// made real positive (modified Gram-Schmidt on the columns does exactly that).
pub fn haar_unitary(n: usize, rng: &mut impl Rng) -> ComplexMatrix {
    let g = ginibre(n, n, rng);
    let mut cols: Vec<Vec<C64>> = (0..n)
        .map(|j| (0..n).map(|i| g.get(i, j)).collect())
        .collect();
    for j in 0..n {
        for k in 0..j {
            let (done, rest) = cols.split_at_mut(j);
            let q = &done[k];
            let v = &mut rest[0];
            let h: C64 = q.iter().zip(v.iter()).map(|(a, b)| a.conj() * b).sum();
            for (vi, qi) in v.iter_mut().zip(q) {
                *vi -= h * qi;
            }
        }
        let norm = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        cols[j].iter_mut().for_each(|z| *z /= norm);
    }
    ComplexMatrix::from_fn(n, n, |i, j| cols[j][i])
}

/// Haar-distributed element of SU(2): a U(2) Haar sample divided by a square
/// root of its determinant.
pub fn haar_su2(rng: &mut impl Rng) -> ComplexMatrix {
    let u = haar_unitary(2, rng);
    let det = u.get(0, 0) * u.get(1, 1) - u.get(0, 1) * u.get(1, 0);
    u.scale(det.sqrt().inv())
}

/// Density matrix `G G^dagger / Tr(G G^dagger)` for a square Ginibre `G`
/// (Hilbert-Schmidt measure; full rank almost surely).
pub fn random_density_matrix(dim: usize, rng: &mut impl Rng) -> ComplexMatrix {
    let g = ginibre(dim, dim, rng);
    let rho = &g * &g.adjoint();
    let tr = rho.trace().re;
    rho.scale_real(1.0 / tr)
}

/// Random pure state projector `|psi><psi|`.
pub fn random_pure_state(dim: usize, rng: &mut impl Rng) -> ComplexMatrix {
    let v = ginibre(dim, 1, rng);
    let v = v.scale_real(1.0 / v.frob_norm());
    ComplexMatrix::outer(&v, &v)
}
