use serde::{Deserialize, Serialize};

use super::family::Convention;
use crate::error::Result;
use crate::numerics::{ComplexMatrix, C64};
use crate::opbasis::SchurOperatorSet;

/// Output of a twirl together with its diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct TwirlResult {
    pub state: ComplexMatrix,
    /// `Tr(Π_k T(ρ))` per sector; empty when no Schur basis was involved.
    pub sector_weights: Vec<f64>,
    pub total_trace: f64,
    /// Convention used for non-compact weights, if any.
    pub convention: Option<Convention>,
    /// Number of conjugation terms (finite sums) or samples (Monte Carlo).
    pub terms: usize,
    /// Max entrywise distance to an oracle, when one was run.
    pub oracle_delta: Option<f64>,
    /// Per-entry standard errors of a Monte-Carlo estimate, row-major.
    pub std_errors: Option<Vec<f64>>,
}

impl TwirlResult {
    pub(crate) fn new(state: ComplexMatrix, terms: usize) -> Self {
        let total_trace = state.trace().re;
        Self {
            state,
            sector_weights: Vec::new(),
            total_trace,
            convention: None,
            terms,
            oracle_delta: None,
            std_errors: None,
        }
    }

    /// Fills `sector_weights` from the sector projectors of `s`.
    pub fn with_sector_weights(mut self, s: &SchurOperatorSet) -> Result<Self> {
        self.sector_weights = (1..=s.num_sectors())
            .map(|k| Ok(s.sector_projector(k)?.frob_inner(&self.state)?.re))
            .collect::<Result<_>>()?;
        Ok(self)
    }

    pub fn trace_deficit(&self) -> f64 {
        1.0 - self.total_trace
    }

    pub fn max_std_error(&self) -> Option<f64> {
        self.std_errors
            .as_ref()
            .map(|e| e.iter().copied().fold(0.0, f64::max))
    }

    /// Records the max entrywise distance to `oracle` and returns it.
    pub fn compare_with(&mut self, oracle: &ComplexMatrix) -> f64 {
        let delta = self.state.max_abs_diff(oracle);
        self.oracle_delta = Some(delta);
        delta
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&TwirlReport::from(self))?)
    }
}

/// Serialized form of [`TwirlResult`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TwirlReport {
    pub dim: usize,
    pub state: Vec<[f64; 2]>,
    pub sector_weights: Vec<f64>,
    pub total_trace: f64,
    pub trace_deficit: f64,
    pub convention: Option<Convention>,
    pub terms: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub oracle_delta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub max_std_error: Option<f64>,
}

impl From<&TwirlResult> for TwirlReport {
    fn from(r: &TwirlResult) -> Self {
        Self {
            dim: r.state.rows(),
            state: r.state.entries().iter().map(|z| [z.re, z.im]).collect(),
            sector_weights: r.sector_weights.clone(),
            total_trace: r.total_trace,
            trace_deficit: r.trace_deficit(),
            convention: r.convention,
            terms: r.terms,
            oracle_delta: r.oracle_delta,
            max_std_error: r.max_std_error(),
        }
    }
}

impl TwirlReport {
    pub fn state_matrix(&self) -> Result<ComplexMatrix> {
        ComplexMatrix::new(
            self.dim,
            self.dim,
            self.state
                .iter()
                .map(|&[re, im]| C64::new(re, im))
                .collect(),
        )
    }
}
