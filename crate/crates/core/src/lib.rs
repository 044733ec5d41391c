pub mod channels;
pub mod cli;
pub mod error;
pub mod numerics;
pub mod opbasis;
pub mod schur;
pub mod sizes;
pub mod verify;

pub use error::{Error, Result};
