//! The p-spectral radius λ^(p)(G) = max { 2 Σ_{ij ∈ E} x_i x_j : ‖x‖_p = 1 }.
//!
//! [`solve_lambda_p`] computes certified lower bounds for p > 1 by a damped
//! nonlinear power iteration; [`lambda_1_exact`] and [`lambda_infinity`] give
//! the exact endpoints p = 1 and p → ∞; [`brute_force_lambda`] is a grid
//! oracle that shares no code with the iteration.

mod oracle;
mod solver;

pub use oracle::{brute_force_lambda, ORACLE_MAX_ORDER};
pub use solver::{solve_lambda_p, SolveOptions, SolveResult, SolveStatus};

use serde::Serialize;

use crate::cliques::clique_number;
use crate::error::{invalid, Error, Result};
use crate::graph::Graph;

/// Nonnegative vector of unit p-norm.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightVector {
    #[serde(serialize_with = "crate::numfmt::ser_f64_slice")]
    entries: Vec<f64>,
    #[serde(serialize_with = "crate::numfmt::ser_f64")]
    p: f64,
}

impl WeightVector {
    /// Scales `raw` to unit p-norm. Rejects negative or non-finite entries
    /// and the zero vector.
    pub fn normalized(raw: Vec<f64>, p: f64) -> Result<Self> {
        if !(p >= 1.0) || !p.is_finite() {
            return Err(invalid(format!("exponent p must be a finite real >= 1, got {p}")));
        }
        if let Some(bad) = raw.iter().find(|x| !(**x >= 0.0) || !x.is_finite()) {
            return Err(invalid(format!("weight entries must be finite and nonnegative, got {bad}")));
        }
        let norm = p_norm(&raw, p);
        if norm == 0.0 {
            return Err(invalid("cannot normalize the zero vector"));
        }
        let entries = raw.into_iter().map(|x| x / norm).collect();
        Ok(WeightVector { entries, p })
    }

    /// The uniform vector (n^{-1/p}, …, n^{-1/p}).
    pub fn uniform(n: usize, p: f64) -> Result<Self> {
        WeightVector::normalized(vec![1.0; n], p)
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// (x_1^p, …, x_n^p), a point of the standard simplex.
    pub fn simplex_weights(&self) -> Vec<f64> {
        self.entries.iter().map(|x| x.powf(self.p)).collect()
    }
}

pub(crate) fn p_norm(x: &[f64], p: f64) -> f64 {
    // scale by the max entry so tiny or huge vectors do not under/overflow
    let m = x.iter().cloned().fold(0.0, f64::max);
    if m == 0.0 {
        return 0.0;
    }
    m * x.iter().map(|v| (v / m).powf(p)).sum::<f64>().powf(1.0 / p)
}

/// P_G(x) = 2 Σ_{ij ∈ E(G)} x_i x_j.
pub fn quadratic_form(g: &Graph, x: &[f64]) -> Result<f64> {
    if x.len() != g.order() {
        return Err(Error::LengthMismatch { expected: g.order(), found: x.len() });
    }
    Ok(2.0 * g.edges().map(|(i, j)| x[i] * x[j]).sum::<f64>())
}

/// max_k |λ x_k^{p−1} − Σ_{i ∈ Γ(k)} x_i|, the defect in the eigenequation.
pub fn eigen_residual(g: &Graph, x: &[f64], lambda: f64, p: f64) -> Result<f64> {
    if !(p > 1.0) {
        return Err(invalid(format!("the eigenequation needs p > 1, got {p}")));
    }
    if x.len() != g.order() {
        return Err(Error::LengthMismatch { expected: g.order(), found: x.len() });
    }
    if x.iter().any(|v| *v < 0.0) {
        return Err(invalid("eigen_residual expects a nonnegative vector"));
    }
    Ok(residual_unchecked(g, x, &g.weighted_degrees(x), lambda, p))
}

pub(crate) fn residual_unchecked(g: &Graph, x: &[f64], wdeg: &[f64], lambda: f64, p: f64) -> f64 {
    (0..g.order()).map(|k| (lambda * x[k].powf(p - 1.0) - wdeg[k]).abs()).fold(0.0, f64::max)
}

/// λ^(1)(G) = 1 − 1/ω(G) (Motzkin–Straus); 0 for edgeless graphs.
pub fn lambda_1_exact(g: &Graph) -> f64 {
    match clique_number(g) {
        0 => 0.0,
        w => 1.0 - 1.0 / w as f64,
    }
}

/// lim_{p→∞} λ^(p)(G) = 2 e(G).
pub fn lambda_infinity(g: &Graph) -> f64 {
    2.0 * g.edge_count() as f64
}
