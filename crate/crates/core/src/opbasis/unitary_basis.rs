use crate::error::{Error, Result};
use crate::numerics::{ComplexMatrix, TolerancePolicy, C64};

/// `D^2` unitaries on `C^D`, pairwise orthogonal in the Frobenius inner
/// product. Any such set averages every operator `X` to `Tr(X) I / D`.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryOperatorBasis {
    dim: usize,
    elements: Vec<ComplexMatrix>,
}

impl UnitaryOperatorBasis {
    /// Checks unitarity and orthogonality within `policy.eq_tol`.
    pub fn new(dim: usize, elements: Vec<ComplexMatrix>, policy: &TolerancePolicy) -> Result<Self> {
        if elements.len() != dim * dim {
            return Err(Error::InvalidArgument(format!(
                "an operator basis on C^{dim} needs {} elements, got {}",
                dim * dim,
                elements.len()
            )));
        }
        for (i, g) in elements.iter().enumerate() {
            if g.shape() != (dim, dim) {
                return Err(Error::DimensionMismatch {
                    expected: (dim, dim),
                    found: g.shape(),
                });
            }
            if !g.is_unitary(policy.eq_tol) {
                return Err(Error::InvalidArgument(format!(
                    "element {i} is not unitary"
                )));
            }
        }
        for i in 0..elements.len() {
            for j in i + 1..elements.len() {
                if elements[i].frob_inner(&elements[j])?.norm() > policy.eq_tol * dim as f64 {
                    return Err(Error::InvalidArgument(format!(
                        "elements {i} and {j} are not orthogonal"
                    )));
                }
            }
        }
        Ok(Self { dim, elements })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn elements(&self) -> &[ComplexMatrix] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// `(1/D^2) Σ_l γ_l X γ_l^†`.
    pub fn average(&self, x: &ComplexMatrix) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.dim, self.dim);
        for g in &self.elements {
            out.add_assign_scaled(&g.conjugate(x), C64::new(1.0, 0.0));
        }
        out.scale_real(1.0 / (self.dim * self.dim) as f64)
    }

    /// Same basis with element `l` multiplied by `phases[l]` (unit modulus).
    pub fn rephased(&self, phases: &[C64]) -> Result<Self> {
        if phases.len() != self.elements.len() {
            return Err(Error::InvalidArgument(
                "one phase per element required".into(),
            ));
        }
        let elements = self
            .elements
            .iter()
            .zip(phases)
            .map(|(g, &p)| g.scale(p / p.norm()))
            .collect();
        Ok(Self {
            dim: self.dim,
            elements,
        })
    }

    /// Basis conjugated by a fixed unitary `w`: `w γ_l w^†`.
    pub fn conjugated_by(&self, w: &ComplexMatrix) -> Result<Self> {
        if w.shape() != (self.dim, self.dim) {
            return Err(Error::DimensionMismatch {
                expected: (self.dim, self.dim),
                found: w.shape(),
            });
        }
        Ok(Self {
            dim: self.dim,
            elements: self.elements.iter().map(|g| w.conjugate(g)).collect(),
        })
    }
}

/// Cyclic shift `X|n> = |n + 1 mod D>`.
pub fn shift(dim: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(dim, dim, |i, j| {
        if i == (j + 1) % dim {
            C64::new(1.0, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

/// Clock `Z|n> = ω^n |n>` with `ω = exp(2πi / D)`.
pub fn clock(dim: usize) -> ComplexMatrix {
    let diag: Vec<C64> = (0..dim).map(|n| root_of_unity(dim, n)).collect();
    ComplexMatrix::from_diag(&diag)
}

fn root_of_unity(dim: usize, power: usize) -> C64 {
    let p = power % dim;
    C64::from_polar(1.0, 2.0 * std::f64::consts::PI * p as f64 / dim as f64)
}

/// `{ω^{ij} Z^i X^j}` for `i, j = 0..D`, element index `i * D + j`.
pub fn heisenberg_weyl(dim: usize) -> UnitaryOperatorBasis {
    assert!(dim >= 1, "dimension must be positive");
    let z = clock(dim);
    let x = shift(dim);
    let mut z_pow = ComplexMatrix::identity(dim);
    let mut elements = Vec::with_capacity(dim * dim);
    for i in 0..dim {
        let mut x_pow = ComplexMatrix::identity(dim);
        for j in 0..dim {
            elements.push((&z_pow * &x_pow).scale(root_of_unity(dim, i * j)));
            x_pow = &x_pow * &x;
        }
        z_pow = &z_pow * &z;
    }
    UnitaryOperatorBasis { dim, elements }
}
