use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Absolute entrywise equality tolerance and relative singular-value cutoff.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TolerancePolicy {
    pub eq_tol: f64,
    pub rank_tol: f64,
}

impl TolerancePolicy {
    pub const DEFAULT_EQ_TOL: f64 = 1e-10;
    pub const DEFAULT_RANK_TOL: f64 = 1e-9;

    pub fn new(eq_tol: f64, rank_tol: f64) -> Result<Self> {
        for (name, v) in [("eq_tol", eq_tol), ("rank_tol", rank_tol)] {
            if !(v > 0.0 && v < 1e-2) {
                return Err(Error::InvalidTolerance(format!(
                    "{name} = {v} must lie in (0, 1e-2)"
                )));
            }
        }
        Ok(Self { eq_tol, rank_tol })
    }
}

impl Default for TolerancePolicy {
    fn default() -> Self {
        Self {
            eq_tol: Self::DEFAULT_EQ_TOL,
            rank_tol: Self::DEFAULT_RANK_TOL,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let p = TolerancePolicy::default();
        assert_eq!(p.eq_tol, 1e-10);
        assert_eq!(p.rank_tol, 1e-9);
        assert_eq!(TolerancePolicy::new(1e-10, 1e-9).unwrap(), p);
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(TolerancePolicy::new(0.0, 1e-9).is_err());
        assert!(TolerancePolicy::new(1e-10, 0.5).is_err());
        assert!(TolerancePolicy::new(f64::NAN, 1e-9).is_err());
    }
}
