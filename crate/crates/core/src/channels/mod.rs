//! Twirling channels over collective `U(2)` and `SL(2,C)` actions.
//!
//! The finite forms replace each group integral by a sum over one unitary
//! operator basis per Schur sector; [`haar_projection_twirl`],
//! [`mc_haar_twirl`] and [`mc_cartan_twirl`] are independent oracles for them.

mod density;
mod family;
mod monte_carlo;
mod result;
pub mod states;
mod twirl;

pub use density::{DensityMatrix, StateFile};
pub use family::{
    beta_weights, check_family, AbelianFamily, BetaWeights, Convention, IdentityFamily,
    Sl2Filtering,
};
pub use monte_carlo::{
    mc_cartan_twirl, mc_collective_average, mc_haar_twirl, mc_tolerance, select_convention,
    ConventionSelection,
};
pub use result::{TwirlReport, TwirlResult};
pub use twirl::{compact_finite_twirl, haar_projection_twirl, noncompact_finite_twirl};
