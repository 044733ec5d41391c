//! Schur bases `{|k, m, λ>}` for the collective action `U^{⊗t}` of `U(2)`.
//!
//! Labels follow the usual table layout: `k` numbers the isotypic sectors in
//! the order of [`enumerate_diagrams`], `m = 1..=D_G` runs along a row (the
//! irrep, ordered by descending number of zeros) and `λ = 1..=D_C` down a
//! column (the multiplicity). All three labels are 1-based.

mod basis;
mod young;

pub(crate) use basis::check_label;
pub use basis::{
    build_schur_basis, build_schur_basis_with, column_families, golden_basis_t4, lower, SchurBasis,
    SchurSector, MAX_T,
};
pub use young::{enumerate_diagrams, young_projector, Tableau, YoungDiagram};
