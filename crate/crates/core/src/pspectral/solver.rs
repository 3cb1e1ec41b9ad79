use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{p_norm, residual_unchecked, WeightVector};
use crate::cliques::maximal_cliques;
use crate::error::{invalid, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq)]
pub struct SolveOptions {
    /// Number of starting vectors (uniform, clique-supported, random).
    pub restarts: usize,
    /// Relative stopping tolerance on the eigenequation residual.
    pub tol: f64,
    pub max_iter: usize,
    pub seed: u64,
    /// Flag edgeless input as [`SolveStatus::DegenerateInput`].
    pub require_positive: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { restarts: 16, tol: 1e-10, max_iter: 100_000, seed: 42, require_positive: false }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolveStatus {
    Converged,
    MaxIterations,
    DegenerateInput,
}

/// Outcome of [`solve_lambda_p`]. `lambda` is exactly the quadratic form of
/// `vector`, so it is a lower bound on λ^(p)(G).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveResult {
    #[serde(serialize_with = "crate::numfmt::ser_f64")]
    pub lambda: f64,
    #[serde(serialize_with = "crate::numfmt::ser_f64")]
    pub residual: f64,
    pub iterations: usize,
    pub restarts_used: usize,
    pub status: SolveStatus,
    #[serde(rename = "vector", serialize_with = "ser_vector")]
    pub vector: WeightVector,
}

fn ser_vector<S: serde::Serializer>(v: &WeightVector, s: S) -> Result<S::Ok, S::Error> {
    crate::numfmt::ser_f64_slice(v.entries(), s)
}

impl SolveResult {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    /// Vertex with the smallest eigenvector entry, lowest index on ties.
    pub fn min_entry_vertex(&self) -> Option<usize> {
        let x = self.vector.entries();
        (0..x.len()).min_by(|&a, &b| x[a].total_cmp(&x[b]).then(a.cmp(&b)))
    }
}

struct Run {
    start: usize,
    x: Vec<f64>,
    lambda: f64,
    residual: f64,
    iterations: usize,
    converged: bool,
}

/// Nonlinear power iteration for λ^(p)(G), p > 1.
///
/// Each step maps x_k ← (x_k · Σ_{i∈Γ(k)} x_i)^{1/p} and renormalizes to unit
/// p-norm. This is the plain fixed-point map x ← (Ax)^{1/(p−1)} damped
/// geometrically with weight 1 − 1/p; the fixed points with positive entries
/// are exactly the solutions of λ x_k^{p−1} = Σ_{i∈Γ(k)} x_i. Iteration stops
/// when that residual drops below `tol · max(1, λ)`.
///
/// Several starts are run and the largest λ wins; ties are broken by the
/// lexicographically largest vector after rounding both to 12 decimals, then
/// by start index, so the result does not depend on scheduling.
pub fn solve_lambda_p(g: &Graph, p: f64, opts: &SolveOptions) -> Result<SolveResult> {
    if !(p > 1.0) || !p.is_finite() {
        return Err(invalid(format!("solve_lambda_p needs a finite p > 1, got {p}")));
    }
    let n = g.order();
    if n == 0 {
        return Err(invalid("cannot solve on a graph with no vertices"));
    }
    if !(opts.tol > 0.0) {
        return Err(invalid("tolerance must be positive"));
    }
    if g.edge_count() == 0 {
        let status = if opts.require_positive { SolveStatus::DegenerateInput } else { SolveStatus::Converged };
        return Ok(SolveResult {
            lambda: 0.0,
            residual: 0.0,
            iterations: 0,
            restarts_used: 0,
            status,
            vector: WeightVector::uniform(n, p)?,
        });
    }

    let starts = starting_vectors(g, opts);
    let runs: Vec<Run> = starts.par_iter().enumerate().map(|(idx, x0)| iterate(g, p, x0, idx, opts)).collect();
    let restarts_used = runs.len();
    let best = runs.into_iter().max_by(compare_runs).expect("at least one start");
    Ok(SolveResult {
        lambda: best.lambda,
        residual: best.residual,
        iterations: best.iterations,
        restarts_used,
        status: if best.converged { SolveStatus::Converged } else { SolveStatus::MaxIterations },
        vector: WeightVector::normalized(best.x, p)?,
    })
}

fn round12(v: f64) -> f64 {
    (v * 1e12).round()
}

fn compare_runs(a: &Run, b: &Run) -> Ordering {
    round12(a.lambda)
        .total_cmp(&round12(b.lambda))
        .then_with(|| a.x.iter().zip(&b.x).map(|(u, v)| round12(*u).total_cmp(&round12(*v))).find(|o| o.is_ne()).unwrap_or(Ordering::Equal))
        // earlier start wins, so it must compare as greater
        .then_with(|| b.start.cmp(&a.start))
}

/// Uniform start, then up to half of the remaining budget on maximal
/// cliques (largest first), then seeded random positive vectors. All
/// entries stay positive so no vertex is frozen at zero.
fn starting_vectors(g: &Graph, opts: &SolveOptions) -> Vec<Vec<f64>> {
    let n = g.order();
    let total = opts.restarts.max(1);
    let mut starts = vec![vec![1.0; n]];
    let clique_budget = (total - 1) / 2;
    for clique in maximal_cliques(g).into_iter().filter(|c| c.len() >= 2).take(clique_budget) {
        let mut x = vec![0.05; n];
        for v in clique {
            x[v] = 1.0;
        }
        starts.push(x);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    while starts.len() < total {
        starts.push((0..n).map(|_| rng.gen_range(0.05..1.0)).collect());
    }
    starts
}

fn iterate(g: &Graph, p: f64, x0: &[f64], start: usize, opts: &SolveOptions) -> Run {
    let inv_p = 1.0 / p;
    let mut x = x0.to_vec();
    normalize(&mut x, p);
    let mut iterations = 0;
    loop {
        let wdeg = g.weighted_degrees(&x);
        let lambda: f64 = x.iter().zip(&wdeg).map(|(a, b)| a * b).sum();
        let residual = residual_unchecked(g, &x, &wdeg, lambda, p);
        let converged = residual <= opts.tol * lambda.max(1.0);
        if converged || iterations >= opts.max_iter {
            return Run { start, x, lambda, residual, iterations, converged };
        }
        let mut y: Vec<f64> = x.iter().zip(&wdeg).map(|(a, d)| (a * d).powf(inv_p)).collect();
        if !normalize(&mut y, p) {
            // support carries no edges; nothing left to improve
            return Run { start, x, lambda, residual, iterations, converged };
        }
        x = y;
        iterations += 1;
    }
}

fn normalize(x: &mut [f64], p: f64) -> bool {
    let norm = p_norm(x, p);
    if norm == 0.0 || !norm.is_finite() {
        return false;
    }
    for v in x.iter_mut() {
        *v /= norm;
    }
    true
}
