//! Gauss-Legendre quadrature on finite intervals.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Nodes and weights of the `n`-point Gauss-Legendre rule on `[-1, 1]`.
///
/// Roots of `P_n` are found by Newton iteration from Chebyshev-like initial
/// guesses; weights are `2 / ((1 - x^2) P_n'(x)^2)`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "need at least one node");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let n = n as f64;
    let dp = n * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Gauss-Legendre rule on `[lower, upper]`.
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn gauss_legendre(lower: f64, upper: f64, n: usize) -> Self {
        let (x, w) = gauss_legendre(n);
        let half = 0.5 * (upper - lower);
        let mid = 0.5 * (upper + lower);
        Self {
            nodes: x.iter().map(|&t| mid + half * t).collect(),
            weights: w.iter().map(|&wi| half * wi).collect(),
        }
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

/// Truncation point and node count for integrals over `[1, x_max]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub x_max: f64,
    pub nodes: usize,
}

impl QuadratureSpec {
    pub const MIN_NODES: usize = 32;
    /// Largest accepted change between `nodes` and `2 * nodes` evaluations.
    pub const REFINEMENT_LIMIT: f64 = 1e-6;

    pub fn validate(&self) -> Result<()> {
        if self.nodes < Self::MIN_NODES {
            return Err(Error::InvalidQuadrature(format!(
                "{} nodes given, at least {} required",
                self.nodes,
                Self::MIN_NODES
            )));
        }
        if !(self.x_max.is_finite() && self.x_max > 1.0) {
            return Err(Error::InvalidQuadrature(format!(
                "x_max = {} must be finite and > 1",
                self.x_max
            )));
        }
        Ok(())
    }

    pub fn rule(&self) -> QuadratureRule {
        QuadratureRule::gauss_legendre(1.0, self.x_max, self.nodes)
    }

    pub fn refined(&self) -> Self {
        Self {
            x_max: self.x_max,
            nodes: 2 * self.nodes,
        }
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            x_max: 40.0,
            nodes: 64,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_interval_length() {
        for n in [1, 2, 5, 32, 64, 128] {
            let (_, w) = gauss_legendre(n);
            assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-13, "n = {n}");
        }
    }

    #[test]
    fn exact_for_polynomials_up_to_degree_2n_minus_1() {
        let rule = QuadratureRule::gauss_legendre(0.0, 2.0, 6);
        for k in 0..12 {
            let exact = 2f64.powi(k + 1) / (k + 1) as f64;
            let got = rule.integrate(|x| x.powi(k));
            assert!((got - exact).abs() < 1e-11 * exact.max(1.0), "degree {k}");
        }
    }

    #[test]
    fn exponential_tail() {
        let rule = QuadratureSpec::default().rule();
        let got = rule.integrate(|x| (-x).exp()) / (-1f64).exp();
        assert!((got - 1.0).abs() < 1e-14);
    }

    #[test]
    fn spec_validation() {
        assert!(QuadratureSpec {
            x_max: 40.0,
            nodes: 16
        }
        .validate()
        .is_err());
        assert!(QuadratureSpec {
            x_max: 0.5,
            nodes: 64
        }
        .validate()
        .is_err());
        assert!(QuadratureSpec::default().validate().is_ok());
    }
}
