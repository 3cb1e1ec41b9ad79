use serde::Serialize;

use super::ExtractionParams;
use crate::error::{invalid, Error, Result};
use crate::graph::Graph;
use crate::pspectral::SolveResult;

/// Slack granted on top of the proved strict inequalities, since σ and λ
/// come from an approximate eigenvector.
pub const LEMMA_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum LemmaOutcome {
    Pass {
        #[serde(serialize_with = "crate::numfmt::ser_f64")]
        lhs: f64,
        #[serde(serialize_with = "crate::numfmt::ser_f64")]
        rhs: f64,
    },
    Fail {
        #[serde(serialize_with = "crate::numfmt::ser_f64")]
        lhs: f64,
        #[serde(serialize_with = "crate::numfmt::ser_f64")]
        rhs: f64,
        diagnostic: String,
    },
    NotApplicable {
        reason: String,
    },
}

impl LemmaOutcome {
    pub fn is_pass(&self) -> bool {
        matches!(self, LemmaOutcome::Pass { .. })
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, LemmaOutcome::Fail { .. })
    }

    pub fn is_applicable(&self) -> bool {
        !matches!(self, LemmaOutcome::NotApplicable { .. })
    }

    fn compare(lhs: f64, rhs: f64, what: &str) -> Self {
        if lhs <= rhs + LEMMA_TOL {
            LemmaOutcome::Pass { lhs, rhs }
        } else {
            LemmaOutcome::Fail { lhs, rhs, diagnostic: format!("{what}: {lhs} exceeds {rhs}") }
        }
    }
}

/// σ = min_i x_i^p.
pub fn sigma_of(x: &[f64], p: f64) -> Result<f64> {
    if x.is_empty() {
        return Err(invalid("sigma_of needs a nonempty vector"));
    }
    if let Some(bad) = x.iter().find(|v| !(**v >= 0.0)) {
        return Err(invalid(format!("sigma_of needs nonnegative entries, got {bad}")));
    }
    Ok(x.iter().map(|v| v.powf(p)).fold(f64::INFINITY, f64::min))
}

/// Shared hypotheses of both lemmas. `strict_lambda` selects `>` over `≥`
/// for the λ condition. The degree condition is `δ ≤ (A − γ) n` in both.
fn hypotheses(g: &Graph, params: &ExtractionParams, lambda: f64, strict_lambda: bool) -> Option<String> {
    let ExtractionParams { p, a, gamma, r } = *params;
    let n = g.order() as f64;
    if !(p > 1.0 && p <= 2.0) {
        return Some(format!("p = {p} outside (1, 2]"));
    }
    if !(0.0 < gamma && gamma < a && a < 1.0) {
        return Some(format!("need 0 < gamma < A < 1, got gamma = {gamma}, A = {a}"));
    }
    if !(r >= 0.0) {
        return Some(format!("need R >= 0, got {r}"));
    }
    if n < 1.0 || n < 4.0 * r / gamma {
        return Some(format!("order {n} below 4R/gamma = {}", 4.0 * r / gamma));
    }
    let scaled = lambda * n.powf(2.0 / p - 1.0);
    let target = a * n - r / n;
    let lambda_ok = if strict_lambda { scaled > target } else { scaled >= target };
    if !lambda_ok {
        return Some(format!("lambda n^(2/p-1) = {scaled} below A n - R/n = {target}"));
    }
    let delta = g.min_degree() as f64;
    if delta > (a - gamma) * n {
        return Some(format!("min degree {delta} exceeds (A - gamma) n = {}", (a - gamma) * n));
    }
    None
}

/// σ ≤ (1 − γ/2)/n for the eigenvector in `result`, whenever the hypotheses
/// hold for the computed λ.
pub fn assert_lemma_le0(g: &Graph, params: &ExtractionParams, result: &SolveResult) -> Result<LemmaOutcome> {
    let x = result.vector.entries();
    if x.len() != g.order() {
        return Err(Error::LengthMismatch { expected: g.order(), found: x.len() });
    }
    if let Some(reason) = hypotheses(g, params, result.lambda, true) {
        return Ok(LemmaOutcome::NotApplicable { reason });
    }
    let sigma = sigma_of(x, params.p)?;
    let bound = (1.0 - params.gamma / 2.0) / g.order() as f64;
    Ok(LemmaOutcome::compare(sigma, bound, "sigma"))
}

/// λ(G − u)(n − 1)^{2/p−1} ≥ ((n − 2)/(n − 1))^{1 − (1 − 1/p)γ} λ(G) n^{2/p−1},
/// where u is the minimum-entry vertex. Reported with `lhs`/`rhs` swapped so
/// the pass condition reads `lhs ≤ rhs`.
pub fn assert_lemma_le1_step(g: &Graph, params: &ExtractionParams, lambda_n: f64, lambda_n_minus_1: f64) -> LemmaOutcome {
    if g.order() < 2 {
        return LemmaOutcome::NotApplicable { reason: "needs at least two vertices".into() };
    }
    if let Some(reason) = hypotheses(g, params, lambda_n, false) {
        return LemmaOutcome::NotApplicable { reason };
    }
    let p = params.p;
    let n = g.order() as f64;
    let shrink = ((n - 2.0) / (n - 1.0)).powf(1.0 - (1.0 - 1.0 / p) * params.gamma);
    let before = shrink * lambda_n * n.powf(2.0 / p - 1.0);
    let after = lambda_n_minus_1 * (n - 1.0).powf(2.0 / p - 1.0);
    LemmaOutcome::compare(before, after, "scaled lambda after removal")
}
