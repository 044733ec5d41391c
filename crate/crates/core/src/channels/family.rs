//! Abelian Cartan components and the sector weights they induce.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{ComplexMatrix, QuadratureSpec, C64};
use crate::opbasis::SchurOperatorSet;

/// One-parameter family `x ↦ A_n(x)`, `x ∈ [1, ∞)`, with a normalized density.
pub trait AbelianFamily {
    fn name(&self) -> &str;
    /// Single-site dimension `d`.
    fn site_dim(&self) -> usize;
    /// `A_n(x)`; must be `I` at `x = 1` and have unit operator norm.
    fn element(&self, x: f64) -> ComplexMatrix;
    /// `w(x)`, integrating to one over `[1, ∞)`.
    fn density(&self, x: f64) -> f64;
    /// Inverse CDF of `w`, for `u` uniform on `(0, 1]`.
    fn inverse_cdf(&self, u: f64) -> f64;
}

/// `A_n(x) = diag(1, 1/x²)` with `w(x) = e^{1-x}`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Sl2Filtering;

impl AbelianFamily for Sl2Filtering {
    fn name(&self) -> &str {
        "sl2-filtering"
    }

    fn site_dim(&self) -> usize {
        2
    }

    fn element(&self, x: f64) -> ComplexMatrix {
        ComplexMatrix::from_diag(&[C64::new(1.0, 0.0), C64::new(1.0 / (x * x), 0.0)])
    }

    fn density(&self, x: f64) -> f64 {
        if x < 1.0 {
            0.0
        } else {
            (1.0 - x).exp()
        }
    }

    fn inverse_cdf(&self, u: f64) -> f64 {
        1.0 - u.ln()
    }
}

/// `A_n ≡ I` under the same density; reduces every Cartan average to Haar.
#[derive(Debug, Clone, Copy, Default)]
pub struct IdentityFamily;

impl AbelianFamily for IdentityFamily {
    fn name(&self) -> &str {
        "identity"
    }

    fn site_dim(&self) -> usize {
        2
    }

    fn element(&self, _x: f64) -> ComplexMatrix {
        ComplexMatrix::identity(2)
    }

    fn density(&self, x: f64) -> f64 {
        Sl2Filtering.density(x)
    }

    fn inverse_cdf(&self, u: f64) -> f64 {
        Sl2Filtering.inverse_cdf(u)
    }
}

/// Checks `A_n(1) = I`, `‖A_n(x)‖ = 1` on the quadrature nodes and `∫ w = 1`.
pub fn check_family(fam: &dyn AbelianFamily, quad: &QuadratureSpec, tol: f64) -> Result<()> {
    quad.validate()?;
    let d = fam.site_dim();
    if !fam.element(1.0).approx_eq(&ComplexMatrix::identity(d), tol) {
        return Err(Error::InvalidArgument(format!(
            "{}: A_n(1) is not the identity",
            fam.name()
        )));
    }
    let rule = quad.rule();
    for &x in &rule.nodes {
        let a = fam.element(x);
        let norm = crate::numerics::hermitian_eigenvalues(&(&a * &a.adjoint()))
            .last()
            .copied()
            .unwrap_or(0.0)
            .sqrt();
        if (norm - 1.0).abs() > tol {
            return Err(Error::InvalidArgument(format!(
                "{}: operator norm of A_n({x}) is {norm}",
                fam.name()
            )));
        }
    }
    let mass = rule.integrate(|x| fam.density(x));
    if (mass - 1.0).abs() > 1e-6 {
        return Err(Error::InvalidArgument(format!(
            "{}: density integrates to {mass}",
            fam.name()
        )));
    }
    Ok(())
}

/// How sector probabilities `p_k` are read off from [`BetaWeights`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    /// `p_k = raw_k / D^k`.
    Raw,
    /// `p_k = normalized_k / D^k = raw_k / (D^k)²`.
    Normalized,
}

impl Convention {
    pub const ALL: [Convention; 2] = [Convention::Raw, Convention::Normalized];

    pub fn as_str(self) -> &'static str {
        match self {
            Convention::Raw => "raw",
            Convention::Normalized => "normalized",
        }
    }
}

impl std::fmt::Display for Convention {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Convention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "raw" => Ok(Convention::Raw),
            "normalized" => Ok(Convention::Normalized),
            _ => Err(Error::InvalidArgument(format!("unknown convention `{s}`"))),
        }
    }
}

/// Sector constants `raw_k = Tr(M̄ Π_k)` with `M̄ = ∫ (A_n A_n^†)^{⊗t} w(x) dx`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BetaWeights {
    pub family: String,
    pub t: usize,
    /// `D^k = D_G^k D_C^k` per sector.
    pub sector_dims: Vec<usize>,
    pub raw: Vec<f64>,
    pub normalized: Vec<f64>,
    /// Largest change in `normalized` between `nodes` and `2 * nodes`.
    pub refinement_delta: f64,
    pub quadrature: QuadratureSpec,
}

impl BetaWeights {
    pub fn probabilities(&self, convention: Convention) -> Vec<f64> {
        let source = match convention {
            Convention::Raw => &self.raw,
            Convention::Normalized => &self.normalized,
        };
        source
            .iter()
            .zip(&self.sector_dims)
            .map(|(&b, &dim)| b / dim as f64)
            .collect()
    }

    /// Largest difference between the two candidate `p_k` vectors.
    pub fn convention_gap(&self) -> f64 {
        self.probabilities(Convention::Raw)
            .iter()
            .zip(self.probabilities(Convention::Normalized))
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

fn sector_traces(
    s: &SchurOperatorSet,
    fam: &dyn AbelianFamily,
    t: usize,
    quad: &QuadratureSpec,
) -> Result<Vec<f64>> {
    let rule = quad.rule();
    let dim = s.dim();
    let mut mbar = ComplexMatrix::zeros(dim, dim);
    for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
        let a = fam.element(x);
        let single = &a * &a.adjoint();
        mbar.add_assign_scaled(&single.kron_power(t), C64::new(w * fam.density(x), 0.0));
    }
    (1..=s.num_sectors())
        .map(|k| {
            let p = s.sector_projector(k)?;
            // Tr(M̄ Π_k) = <Π_k, M̄>_F for Hermitian Π_k
            Ok(p.frob_inner(&mbar)?.re)
        })
        .collect()
}

/// Integrates the sector constants with `quad` and checks them against a
/// rule with twice as many nodes.
pub fn beta_weights(
    s: &SchurOperatorSet,
    fam: &dyn AbelianFamily,
    t: usize,
    quad: &QuadratureSpec,
) -> Result<BetaWeights> {
    quad.validate()?;
    let basis = s.basis();
    if basis.t != t || fam.site_dim() != basis.d {
        return Err(Error::InvalidArgument(format!(
            "family on C^{} with t = {t} does not match the Schur basis (d = {}, t = {})",
            fam.site_dim(),
            basis.d,
            basis.t
        )));
    }
    let sector_dims: Vec<usize> = basis.sectors().iter().map(|s| s.dim()).collect();
    let coarse = sector_traces(s, fam, t, quad)?;
    let fine = sector_traces(s, fam, t, &quad.refined())?;
    let normalize = |v: &[f64]| -> Vec<f64> {
        v.iter()
            .zip(&sector_dims)
            .map(|(&b, &n)| b / n as f64)
            .collect()
    };
    let (normalized, fine_normalized) = (normalize(&coarse), normalize(&fine));
    let refinement_delta = normalized
        .iter()
        .zip(&fine_normalized)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    if refinement_delta > QuadratureSpec::REFINEMENT_LIMIT {
        return Err(Error::QuadratureNotConverged {
            delta: refinement_delta,
            limit: QuadratureSpec::REFINEMENT_LIMIT,
        });
    }
    Ok(BetaWeights {
        family: fam.name().to_string(),
        t,
        sector_dims,
        raw: coarse,
        normalized,
        refinement_delta,
        quadrature: *quad,
    })
}
