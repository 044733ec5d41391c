//! Sizes of finite averaging sets versus design bounds.
//!
//! The universal set for `t` copies of a `d`-level system has
//! `binom(d² + t - 1, t)` elements. The lower bound for a unitary `t`-design is
//! `D(d, ⌈t/2⌉, ⌊t/2⌋)`, the dimension of the span of `U^{⊗r} ⊗ Ū^{⊗s}`, which
//! [`mixed_span_dim`] evaluates exactly and [`operator_span_dim`] estimates
//! from Haar samples.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::random::{haar_unitary, substream};
use crate::numerics::{numerical_rank, TolerancePolicy};
use crate::schur::{enumerate_diagrams, SchurBasis};

/// `binom(d² + t - 1, t)`.
pub fn universal_set_size(d: usize, t: usize) -> u64 {
    binomial((d * d + t - 1) as u64, t as u64)
}

/// `d⁴ - 2d² + 2`, the size bound for unitary 2-designs.
pub fn lower_bound_t2(d: usize) -> u64 {
    let d2 = (d * d) as u64;
    d2 * d2 - 2 * d2 + 2
}

fn binomial(n: u64, k: u64) -> u64 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128) as u64
}

/// Weyl dimension of the `U(d)` irrep with non-increasing highest weight `w`.
fn weyl_dimension(w: &[i64]) -> u64 {
    let d = w.len();
    let (mut num, mut den) = (1u128, 1u128);
    for i in 0..d {
        for j in i + 1..d {
            num *= (w[i] - w[j] + (j - i) as i64) as u128;
            den *= (j - i) as u128;
            let g = num.gcd(&den);
            num /= g;
            den /= g;
        }
    }
    debug_assert_eq!(den, 1);
    (num / den) as u64
}

fn partitions(n: usize, max_parts: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    enumerate_diagrams(n, max_parts)
        .into_iter()
        .map(|y| y.row_lengths().to_vec())
        .collect()
}

/// Exact `D(d, r, s)`: the sum of squared dimensions of the `U(d)` irreps in
/// `U^{⊗r} ⊗ Ū^{⊗s}`, whose highest weights are `(μ, 0, …, 0, -ν^rev)` with
/// `|μ| = r - k`, `|ν| = s - k`, `0 ≤ k ≤ min(r, s)` and `ℓ(μ) + ℓ(ν) ≤ d`.
pub fn mixed_span_dim(d: usize, r: usize, s: usize) -> u64 {
    let mut total = 0u64;
    for k in 0..=r.min(s) {
        for mu in partitions(r - k, d) {
            for nu in partitions(s - k, d) {
                if mu.len() + nu.len() > d {
                    continue;
                }
                let mut w = vec![0i64; d];
                for (i, &m) in mu.iter().enumerate() {
                    w[i] = m as i64;
                }
                for (i, &n) in nu.iter().enumerate() {
                    w[d - 1 - i] = -(n as i64);
                }
                let dim = weyl_dimension(&w);
                total += dim * dim;
            }
        }
    }
    total
}

/// Numerical rank of `{vec(U_i^{⊗r} ⊗ Ū_i^{⊗s})}` over Haar samples `U_i`.
///
/// Samples are added in batches of `d^{r+s}`; the estimate is returned once
/// three consecutive batches report the same rank.
pub fn operator_span_dim(
    d: usize,
    r: usize,
    s: usize,
    samples: usize,
    seed: u64,
    policy: &TolerancePolicy,
) -> Result<usize> {
    let n = d.pow((r + s) as u32);
    if n > 64 {
        return Err(Error::InvalidArgument(format!(
            "d^(r+s) = {n} exceeds 64; the vectorized samples would be too long"
        )));
    }
    let needed = 2 * n * n;
    if samples < needed {
        return Err(Error::InvalidArgument(format!(
            "{samples} samples given, at least 2 d^(2(r+s)) = {needed} required"
        )));
    }
    let batch = n;
    let mut vectors = Vec::new();
    let mut history: Vec<usize> = Vec::new();
    while vectors.len() < samples {
        let end = (vectors.len() + batch).min(samples);
        for i in vectors.len()..end {
            let u = haar_unitary(d, &mut substream(seed, i as u64));
            let op = u.kron_power(r).kron(&u.conj().kron_power(s));
            vectors.push(op.vectorize());
        }
        let rank = numerical_rank(&vectors, policy)?;
        history.push(rank);
        let stable = history.len() >= 3 && history[history.len() - 3..].iter().all(|&x| x == rank);
        if stable && vectors.len() > rank {
            return Ok(rank);
        }
    }
    Err(Error::InsufficientSamples {
        samples,
        rank: history.last().copied().unwrap_or(0),
    })
}

/// `Σ_k (D_G^k)²`, the number of terms in the finite compact twirl.
pub fn sector_term_count(schur: &SchurBasis) -> u64 {
    schur.sectors().iter().map(|s| (s.d_g * s.d_g) as u64).sum()
}

/// `D(d,2,0) / D(d,1,1)`, tending to 1/2.
pub fn t2_ratio(d: usize) -> f64 {
    universal_set_size(d, 2) as f64 / lower_bound_t2(d) as f64
}

/// Where a table entry comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Source {
    /// Closed-form binomial.
    Binomial,
    /// Sum of squared irrep dimensions.
    WeylDimension,
    /// Constant carried over from the literature, not recomputed.
    TableCitation,
}

impl Source {
    pub fn as_str(self) -> &'static str {
        match self {
            Source::Binomial => "binomial",
            Source::WeylDimension => "weyl-dimension",
            Source::TableCitation => "table-citation",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SizeRow {
    pub d: usize,
    pub t: usize,
    pub universal: u64,
    pub bound: u64,
    pub known_unitary: Option<u64>,
    pub known_sl: Option<u64>,
    pub universal_source: Source,
    pub bound_source: Source,
    pub known_source: Source,
}

// (d, t, known unitary design, known SL design)
const CITED: [(usize, usize, u64, Option<u64>); 11] = [
    (2, 2, 12, Some(1296)),
    (2, 3, 24, Some(6336)),
    (2, 5, 60, Some(54000)),
    (3, 2, 72, None),
    (3, 3, 360, None),
    (5, 2, 600, None),
    (6, 2, 2520, None),
    (7, 2, 2352, None),
    (8, 2, 20160, None),
    (9, 2, 12960, None),
    (10, 2, 95040, None),
];

/// The size comparison table: computed universal sizes and bounds next to the
/// cited sizes of known designs.
pub fn emit_table() -> Vec<SizeRow> {
    CITED
        .iter()
        .map(|&(d, t, known, known_sl)| SizeRow {
            d,
            t,
            universal: universal_set_size(d, t),
            bound: mixed_span_dim(d, t.div_ceil(2), t / 2),
            known_unitary: Some(known),
            known_sl,
            universal_source: Source::Binomial,
            bound_source: Source::WeylDimension,
            known_source: Source::TableCitation,
        })
        .collect()
}

pub const CSV_HEADER: &str =
    "d,t,universal,bound,known_unitary,known_sl,universal_source,bound_source,known_source";

pub fn table_to_csv(rows: &[SizeRow]) -> String {
    let opt = |v: Option<u64>| v.map(|x| x.to_string()).unwrap_or_default();
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            r.d,
            r.t,
            r.universal,
            r.bound,
            opt(r.known_unitary),
            opt(r.known_sl),
            r.universal_source.as_str(),
            r.bound_source.as_str(),
            r.known_source.as_str()
        ));
    }
    out
}

pub fn table_to_json(rows: &[SizeRow]) -> Result<String> {
    Ok(serde_json::to_string_pretty(rows)?)
}
