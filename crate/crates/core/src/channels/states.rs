//! Named input states.

use super::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::numerics::random::{random_density_matrix, substream};
use crate::numerics::{ComplexMatrix, C64};

/// `|0...0><0...0|` on `t` qubits.
pub fn zero_state(t: usize) -> DensityMatrix {
    let dim = 1 << t;
    let v = ComplexMatrix::basis_ket(dim, 0);
    DensityMatrix::new(ComplexMatrix::outer(&v, &v)).expect("pure state")
}

/// `(|0...0> + |1...1>)/sqrt(2)` on `t` qubits.
pub fn ghz_state(t: usize) -> DensityMatrix {
    let dim = 1 << t;
    let mut amps = vec![C64::new(0.0, 0.0); dim];
    amps[0] = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    amps[dim - 1] += C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let v = ComplexMatrix::column(&amps);
    let n = v.frob_norm();
    let v = v.scale_real(1.0 / n);
    DensityMatrix::new(ComplexMatrix::outer(&v, &v)).expect("pure state")
}

/// `I / 2^t`.
pub fn maximally_mixed(t: usize) -> DensityMatrix {
    let dim = 1 << t;
    DensityMatrix::new(ComplexMatrix::identity(dim).scale_real(1.0 / dim as f64))
        .expect("mixed state")
}

/// `|ψ⁻><ψ⁻| ⊗ |ψ⁻><ψ⁻|` with `|ψ⁻> = (|01> - |10>)/sqrt(2)`.
pub fn singlet_pair() -> DensityMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let psi = ComplexMatrix::column(&[
        C64::new(0.0, 0.0),
        C64::new(s, 0.0),
        C64::new(-s, 0.0),
        C64::new(0.0, 0.0),
    ]);
    let single = ComplexMatrix::outer(&psi, &psi);
    DensityMatrix::new(single.kron(&single)).expect("pure state")
}

/// Hilbert-Schmidt random mixed state number `index` for `seed`.
pub fn random_mixed_state(t: usize, seed: u64, index: u64) -> DensityMatrix {
    let m = random_density_matrix(1 << t, &mut substream(seed, index));
    DensityMatrix::new(m).expect("Ginibre states are valid")
}

/// Resolves `ghz<t>`, `zero<t>`, `mixed` (uses `t`) and `singlet-pair`.
pub fn preset(name: &str, t: usize) -> Result<DensityMatrix> {
    let sized = |prefix: &str| -> Option<Result<usize>> {
        name.strip_prefix(prefix).map(|n| {
            let n: usize = n
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad preset size in `{name}`")))?;
            if n != t {
                return Err(Error::InvalidArgument(format!(
                    "preset `{name}` has {n} qubits but t = {t}"
                )));
            }
            Ok(n)
        })
    };
    if let Some(n) = sized("ghz") {
        return Ok(ghz_state(n?));
    }
    if let Some(n) = sized("zero") {
        return Ok(zero_state(n?));
    }
    match name {
        "mixed" => Ok(maximally_mixed(t)),
        "singlet-pair" if t == 4 => Ok(singlet_pair()),
        "singlet-pair" => Err(Error::InvalidArgument(format!(
            "preset `singlet-pair` needs t = 4, got {t}"
        ))),
        _ => Err(Error::InvalidArgument(format!(
            "unknown preset `{name}` (expected ghz<t>, zero<t>, mixed or singlet-pair)"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_resolve() {
        assert_eq!(preset("ghz4", 4).unwrap().dim(), 16);
        assert_eq!(preset("zero4", 4).unwrap(), zero_state(4));
        assert_eq!(preset("mixed", 3).unwrap().dim(), 8);
        assert_eq!(preset("singlet-pair", 4).unwrap().dim(), 16);
        assert!(preset("ghz3", 4).is_err());
        assert!(preset("singlet-pair", 2).is_err());
        assert!(preset("bell", 2).is_err());
    }

    #[test]
    fn ghz_single_qubit_is_plus_state() {
        let g = ghz_state(1);
        assert!((g.matrix().get(0, 1).re - 0.5).abs() < 1e-15);
    }
}
