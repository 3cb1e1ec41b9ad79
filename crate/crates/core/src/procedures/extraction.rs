use serde::Serialize;

use super::lemmas::{assert_lemma_le0, assert_lemma_le1_step, sigma_of, LemmaOutcome, LEMMA_TOL};
use super::Verdict;
use crate::error::{invalid, Result};
use crate::graph::Graph;
use crate::pspectral::{solve_lambda_p, SolveOptions, SolveResult, SolveStatus};

/// Parameters of the removal procedure: exponent p, density A, gap γ and
/// slack R. Valid when p > 1, 0 < 4γ < A < 1 and R ≥ 0; the guarantees
/// additionally need p ≤ 2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExtractionParams {
    #[serde(serialize_with = "crate::numfmt::ser_f64")]
    pub p: f64,
    #[serde(rename = "A", serialize_with = "crate::numfmt::ser_f64")]
    pub a: f64,
    #[serde(serialize_with = "crate::numfmt::ser_f64")]
    pub gamma: f64,
    #[serde(rename = "R", serialize_with = "crate::numfmt::ser_f64")]
    pub r: f64,
}

impl ExtractionParams {
    pub fn new(p: f64, a: f64, gamma: f64, r: f64) -> Result<Self> {
        let params = ExtractionParams { p, a, gamma, r };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        let ExtractionParams { p, a, gamma, r } = *self;
        if !(p > 1.0) || !p.is_finite() {
            return Err(invalid(format!("p must be a finite real > 1, got {p}")));
        }
        if !(0.0 < 4.0 * gamma && 4.0 * gamma < a && a < 1.0) {
            return Err(invalid(format!("need 0 < 4 gamma < A < 1, got gamma = {gamma}, A = {a}")));
        }
        if !(r >= 0.0) || !r.is_finite() {
            return Err(invalid(format!("R must be a finite real >= 0, got {r}")));
        }
        Ok(())
    }

    /// p / (γp − γ).
    fn exponent(&self) -> f64 {
        self.p / (self.gamma * self.p - self.gamma)
    }

    /// A^{p/(γp−γ)}: the guaranteed fraction of vertices that survive.
    pub fn surviving_fraction(&self) -> f64 {
        self.a.powf(self.exponent())
    }

    /// 4(R + 1)p / (γ(p − 1)) · A^{−p/(γp−γ)}.
    pub fn order_threshold(&self) -> f64 {
        4.0 * (self.r + 1.0) * self.p / (self.gamma * (self.p - 1.0)) * self.a.powf(-self.exponent())
    }

    fn shrink_exponent(&self) -> f64 {
        1.0 - (1.0 - 1.0 / self.p) * self.gamma
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtractionStep {
    /// Order i of G_i before the removal.
    pub order: usize,
    /// Label of the removed vertex in the input graph.
    pub removed: usize,
    #[serde(serialize_with = "crate::numfmt::ser_f64")]
    pub lambda: f64,
    /// λ_i · i^{2/p−1}.
    #[serde(serialize_with = "crate::numfmt::ser_f64")]
    pub scaled_lambda: f64,
    pub min_degree: usize,
    #[serde(serialize_with = "crate::numfmt::ser_f64")]
    pub sigma: f64,
    pub solver_status: SolveStatus,
    /// i > A^{p/(γp−γ)} n.
    pub b1: bool,
    /// λ_{i−1}(i−1)^{2/p−1} > (1 − 1/(i−1))^{1−(1−1/p)γ} λ_i i^{2/p−1}, up to
    /// the lemma tolerance; `None` when G_{i−1} has at most one vertex.
    pub b2: Option<bool>,
    pub le0: LemmaOutcome,
    pub le1: LemmaOutcome,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Preconditions {
    pub p_at_most_2: bool,
    #[serde(serialize_with = "crate::numfmt::ser_f64")]
    pub order_threshold: f64,
    pub order: bool,
    pub lambda: bool,
    pub min_degree: bool,
}

impl Preconditions {
    pub fn met(&self) -> bool {
        self.p_at_most_2 && self.order && self.lambda && self.min_degree
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Invariants {
    pub b1: Verdict,
    pub b2: Verdict,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Conclusions {
    /// δ(H) > (A − γ)k.
    pub c1: Verdict,
    /// k > A^{p/(γp−γ)} n.
    pub c2: Verdict,
    /// λ(H) k^{2/p−1} > Ak.
    pub c3: Verdict,
}

/// Certificate carried over from an exponent p > 2 to the run at p = 2.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PReduction {
    #[serde(serialize_with = "crate::numfmt::ser_f64")]
    pub original_p: f64,
    #[serde(serialize_with = "crate::numfmt::ser_f64")]
    pub lambda_original: f64,
    /// λ^(p)(G) n^{2/p−1}.
    #[serde(serialize_with = "crate::numfmt::ser_f64")]
    pub certificate: f64,
    #[serde(serialize_with = "crate::numfmt::ser_f64")]
    pub lambda_2: f64,
    /// λ^(2)(G) ≥ λ^(p)(G) n^{2/p−1}, up to the lemma tolerance.
    pub monotone: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtractionTrace {
    pub params: ExtractionParams,
    pub initial_order: usize,
    pub steps: Vec<ExtractionStep>,
    pub final_order: usize,
    /// Labels of H's vertices in the input graph.
    pub kept: Vec<usize>,
    #[serde(serialize_with = "crate::numfmt::ser_opt_f64")]
    pub final_lambda: Option<f64>,
    pub final_min_degree: usize,
    /// Every vertex was removed; the hypotheses cannot all have held.
    pub exhausted: bool,
    pub preconditions: Preconditions,
    pub preconditions_met: bool,
    pub invariants: Invariants,
    pub conclusions: Conclusions,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reduction: Option<PReduction>,
}

impl ExtractionTrace {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    /// δ(H) > (A − γ)k whenever H is nonempty.
    pub fn exit_condition_holds(&self) -> bool {
        self.final_order == 0 || self.final_min_degree as f64 > (self.params.a - self.params.gamma) * self.final_order as f64
    }
}

/// Runs the removal procedure: while δ(G_i) ≤ (A − γ)i, solve λ^(p)(G_i)
/// and delete the vertex with the smallest eigenvector entry (lowest index
/// on ties). The procedure always runs; the trace records which of the
/// guarantees were applicable and whether they held.
pub fn extract_dense_subgraph(g: &Graph, params: &ExtractionParams, opts: &SolveOptions) -> Result<(Graph, ExtractionTrace)> {
    params.validate()?;
    let n = g.order();
    if n == 0 {
        return Err(invalid("extraction needs a graph with at least one vertex"));
    }
    let p = params.p;
    let gap = params.a - params.gamma;
    let fraction = params.surviving_fraction();
    let scale = |lambda: f64, i: usize| lambda * (i as f64).powf(2.0 / p - 1.0);

    let mut cur = g.clone();
    let mut labels: Vec<usize> = (0..n).collect();
    let mut sol = Some(solve_lambda_p(&cur, p, opts)?);
    let initial = sol.as_ref().expect("n >= 1").lambda;
    let mut steps = Vec::new();

    while cur.order() > 0 && cur.min_degree() as f64 <= gap * cur.order() as f64 {
        let i = cur.order();
        let here = sol.take().expect("solved while nonempty");
        let u = here.min_entry_vertex().expect("nonempty vector");
        let next = cur.delete_vertex(u)?;
        let next_sol = if next.order() > 0 { Some(solve_lambda_p(&next, p, opts)?) } else { None };

        let le1 = match &next_sol {
            Some(s) => assert_lemma_le1_step(&cur, params, here.lambda, s.lambda),
            None => LemmaOutcome::NotApplicable { reason: "nothing left after removal".into() },
        };
        let b2 = next_sol.as_ref().filter(|_| i >= 3).map(|s| {
            let shrink = (1.0 - 1.0 / (i - 1) as f64).powf(params.shrink_exponent());
            scale(s.lambda, i - 1) >= shrink * scale(here.lambda, i) - LEMMA_TOL
        });
        steps.push(ExtractionStep {
            order: i,
            removed: labels[u],
            lambda: here.lambda,
            scaled_lambda: scale(here.lambda, i),
            min_degree: cur.min_degree(),
            sigma: sigma_of(here.vector.entries(), p)?,
            solver_status: here.status,
            b1: i as f64 > fraction * n as f64,
            b2,
            le0: assert_lemma_le0(&cur, params, &here)?,
            le1,
        });
        labels.remove(u);
        cur = next;
        sol = next_sol;
    }

    let k = cur.order();
    let preconditions = Preconditions {
        p_at_most_2: p <= 2.0,
        order_threshold: params.order_threshold(),
        order: n as f64 > params.order_threshold(),
        lambda: scale(initial, n) >= params.a * n as f64 - params.r / n as f64,
        min_degree: g.min_degree() as f64 <= gap * n as f64,
    };
    let invariants = Invariants { b1: aggregate(steps.iter().map(|s| Some(s.b1))), b2: aggregate(steps.iter().map(|s| s.b2)) };
    let final_lambda = sol.as_ref().map(|s| s.lambda);
    let conclusions = Conclusions {
        c1: Verdict::from_bool(k > 0 && cur.min_degree() as f64 > gap * k as f64),
        c2: Verdict::from_bool(k as f64 > fraction * n as f64),
        c3: match final_lambda {
            Some(l) => Verdict::from_bool(scale(l, k) > params.a * k as f64 - LEMMA_TOL),
            None => Verdict::NotApplicable,
        },
    };
    let trace = ExtractionTrace {
        params: *params,
        initial_order: n,
        final_order: k,
        kept: labels,
        final_lambda,
        final_min_degree: cur.min_degree(),
        exhausted: k == 0,
        preconditions_met: preconditions.met(),
        preconditions,
        invariants,
        conclusions,
        steps,
        reduction: None,
    };
    Ok((cur, trace))
}

fn aggregate(checks: impl Iterator<Item = Option<bool>>) -> Verdict {
    let mut seen = false;
    for c in checks.flatten() {
        if !c {
            return Verdict::Fail;
        }
        seen = true;
    }
    if seen {
        Verdict::Pass
    } else {
        Verdict::NotApplicable
    }
}

/// For p > 2: since λ^(p)(G) n^{2/p} is nonincreasing in p, the hypothesis
/// at p transfers to p = 2, so the procedure runs at p = 2. `params.p` is
/// the original exponent.
pub fn extract_with_p_reduction(g: &Graph, params: &ExtractionParams, opts: &SolveOptions) -> Result<(Graph, ExtractionTrace)> {
    params.validate()?;
    if !(params.p > 2.0) {
        return Err(invalid(format!("p reduction needs p > 2, got {}; run the procedure directly", params.p)));
    }
    if g.order() == 0 {
        return Err(invalid("extraction needs a graph with at least one vertex"));
    }
    let original: SolveResult = solve_lambda_p(g, params.p, opts)?;
    let at_two = ExtractionParams { p: 2.0, ..*params };
    let (h, mut trace) = extract_dense_subgraph(g, &at_two, opts)?;
    let n = g.order() as f64;
    let certificate = original.lambda * n.powf(2.0 / params.p - 1.0);
    let lambda_2 = trace.steps.first().map(|s| s.lambda).or(trace.final_lambda).expect("solved at p = 2");
    trace.reduction = Some(PReduction {
        original_p: params.p,
        lambda_original: original.lambda,
        certificate,
        lambda_2,
        monotone: lambda_2 >= certificate - LEMMA_TOL,
    });
    Ok((h, trace))
}
