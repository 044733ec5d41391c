//! Dense complex linear algebra, tolerances, quadrature and seeded sampling.

pub mod matrix;
pub mod orth;
pub mod quadrature;
pub mod random;
pub mod tolerance;

pub use matrix::{adjoint, frob_inner, kron, ComplexMatrix, C64};
pub use orth::{
    gram_schmidt, gram_schmidt_with_coefficients, hermitian_eigenvalues, numerical_rank,
    span_projector, Orthonormalized,
};
pub use quadrature::{QuadratureRule, QuadratureSpec};
pub use tolerance::TolerancePolicy;
