//! Closed-form inequalities for λ^(p) with signed slack.
//!
//! Every check is phrased as `lhs ≤ rhs` and reports `slack = rhs − lhs`;
//! equalities report `slack = −|lhs − rhs|`. A report passes iff
//! `slack ≥ −1e−9`.
//!
//! The λ values fed in here usually come from [`crate::pspectral`], which
//! only produces lower bounds. A failed upper bound ("λ ≤ …") therefore
//! points at a solver or transcription bug, while a failed lower bound
//! ("… ≤ λ") may also mean the solver missed the global maximum.

use std::fmt;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::graph::{turan_graph, Graph};
use crate::numfmt::sig17;
use crate::pspectral::{quadratic_form, SolveResult};

/// Slack threshold for `pass`.
pub const SLACK_TOL: f64 = 1e-9;
/// Absolute threshold for raising the equality flag.
pub const EQUALITY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum BoundId {
    #[serde(rename = "max")]
    AbsoluteMax,
    #[serde(rename = "me")]
    EdgeUpper,
    #[serde(rename = "md")]
    UniformLower,
    #[serde(rename = "inc")]
    MonotoneInP,
    #[serde(rename = "in0")]
    CliqueEdge,
    #[serde(rename = "in1")]
    CliqueOrder,
    #[serde(rename = "l1")]
    TuranLagrangian,
    #[serde(rename = "le")]
    TuranEdgeBracket,
    #[serde(rename = "lv")]
    TuranOrderBracket,
    #[serde(rename = "te")]
    TuranEdgeLower,
    #[serde(rename = "edge-formula")]
    EdgeFormula,
    #[serde(rename = "motzkin-straus")]
    MotzkinStraus,
}

impl BoundId {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundId::AbsoluteMax => "max",
            BoundId::EdgeUpper => "me",
            BoundId::UniformLower => "md",
            BoundId::MonotoneInP => "inc",
            BoundId::CliqueEdge => "in0",
            BoundId::CliqueOrder => "in1",
            BoundId::TuranLagrangian => "l1",
            BoundId::TuranEdgeBracket => "le",
            BoundId::TuranOrderBracket => "lv",
            BoundId::TuranEdgeLower => "te",
            BoundId::EdgeFormula => "edge-formula",
            BoundId::MotzkinStraus => "motzkin-straus",
        }
    }
}

impl fmt::Display for BoundId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which half of a two-sided bracket a report covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Single,
    Lower,
    Upper,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct BoundContext {
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "crate::numfmt::ser_opt_f64")]
    pub p: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graph: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub bound_id: BoundId,
    pub side: Side,
    #[serde(serialize_with = "crate::numfmt::ser_f64")]
    pub lhs: f64,
    #[serde(serialize_with = "crate::numfmt::ser_f64")]
    pub rhs: f64,
    #[serde(serialize_with = "crate::numfmt::ser_f64")]
    pub slack: f64,
    pub pass: bool,
    pub equality: bool,
    pub context: BoundContext,
}

impl BoundReport {
    fn le(bound_id: BoundId, lhs: f64, rhs: f64, context: BoundContext) -> Self {
        Self::with_slack(bound_id, Side::Single, lhs, rhs, rhs - lhs, context)
    }

    fn eq(bound_id: BoundId, lhs: f64, rhs: f64, context: BoundContext) -> Self {
        Self::with_slack(bound_id, Side::Single, lhs, rhs, -(lhs - rhs).abs(), context)
    }

    fn with_slack(bound_id: BoundId, side: Side, lhs: f64, rhs: f64, slack: f64, context: BoundContext) -> Self {
        BoundReport { bound_id, side, lhs, rhs, slack, pass: slack >= -SLACK_TOL, equality: slack.abs() <= EQUALITY_TOL, context }
    }

    fn side(mut self, side: Side) -> Self {
        self.side = side;
        self
    }

    pub fn with_graph(mut self, label: impl Into<String>) -> Self {
        self.context.graph = Some(label.into());
        self
    }

    /// `le.lower`, `lv.upper`, or the bare id for one-sided checks.
    pub fn label(&self) -> String {
        match self.side {
            Side::Single => self.bound_id.to_string(),
            Side::Lower => format!("{}.lower", self.bound_id),
            Side::Upper => format!("{}.upper", self.bound_id),
        }
    }
}

fn ctx(n: usize, r: Option<usize>, p: Option<f64>) -> BoundContext {
    BoundContext { n, r, p, graph: None }
}

fn check_p(p: f64) -> Result<()> {
    if p >= 1.0 && p.is_finite() {
        Ok(())
    } else {
        Err(invalid(format!("p must be a finite real >= 1, got {p}")))
    }
}

/// λ ≤ (n − 1) / n^{2/p − 1}, attained by K_n.
pub fn check_absolute_max(n: usize, p: f64, lambda: f64) -> BoundReport {
    let nf = n as f64;
    let rhs = (nf - 1.0) / nf.powf(2.0 / p - 1.0);
    BoundReport::le(BoundId::AbsoluteMax, lambda, rhs, ctx(n, None, Some(p)))
}

/// λ ≤ (2e)^{1 − 1/p}.
pub fn check_edge_upper(e: usize, p: f64, lambda: f64) -> BoundReport {
    let rhs = (2.0 * e as f64).powf(1.0 - 1.0 / p);
    let mut report = BoundReport::le(BoundId::EdgeUpper, lambda, rhs, ctx(0, None, Some(p)));
    report.context.n = 0;
    report
}

/// 2e · n^{−2/p} ≤ λ (value of the uniform vector).
pub fn check_uniform_lower(e: usize, n: usize, p: f64, lambda: f64) -> BoundReport {
    let lhs = 2.0 * e as f64 * (n as f64).powf(-2.0 / p);
    BoundReport::le(BoundId::UniformLower, lhs, lambda, ctx(n, None, Some(p)))
}

/// λ(p)·n^{2/p} is nonincreasing in p. Entries are `(p, λ)` pairs; one
/// report per consecutive pair after sorting by p. A single entry yields no
/// reports (vacuous pass).
pub fn check_monotone_in_p(results: &[(f64, f64)], n: usize) -> Vec<BoundReport> {
    let mut sorted = results.to_vec();
    sorted.sort_by(|a, b| a.0.total_cmp(&b.0));
    let nf = n as f64;
    sorted
        .windows(2)
        .map(|w| {
            let (q, lq) = w[0];
            let (p, lp) = w[1];
            let lower_p = lq * nf.powf(2.0 / q);
            let higher_p = lp * nf.powf(2.0 / p);
            BoundReport::le(BoundId::MonotoneInP, higher_p, lower_p, ctx(n, None, Some(p)))
        })
        .collect()
}

/// For a K_{r+1}-free graph: (in0) λ ≤ (1 − 1/r)^{1/p} (2e)^{1 − 1/p} and
/// (in1) λ ≤ (1 − 1/r) n^{2 − 2/p}. The caller certifies K_{r+1}-freeness.
/// For p > 1 the in1 equality flag should be raised only by T_r(n) with r | n.
pub fn check_clique_bounds(lambda: f64, e: usize, n: usize, r: usize, p: f64) -> Result<(BoundReport, BoundReport)> {
    if r < 1 {
        return Err(invalid("clique bounds need r >= 1"));
    }
    check_p(p)?;
    let frac = 1.0 - 1.0 / r as f64;
    let in0 = frac.powf(1.0 / p) * (2.0 * e as f64).powf(1.0 - 1.0 / p);
    let in1 = frac * (n as f64).powf(2.0 - 2.0 / p);
    let c = ctx(n, Some(r), Some(p));
    Ok((BoundReport::le(BoundId::CliqueEdge, lambda, in0, c.clone()), BoundReport::le(BoundId::CliqueOrder, lambda, in1, c)))
}

/// e(T_r(n)) = C(r,2)(n² − t²)/r² + C(t,2), t = n mod r, in exact integers.
pub fn turan_edges_exact(r: usize, n: usize) -> Result<u64> {
    if r < 1 {
        return Err(invalid("turan_edges_exact needs r >= 1"));
    }
    let (r, n) = (r as u128, n as u128);
    let t = n % r;
    let num = r * (r - 1) * (n * n - t * t);
    let den = 2 * r * r;
    debug_assert_eq!(num % den, 0);
    let e = num / den + t * t.saturating_sub(1) / 2;
    u64::try_from(e).map_err(|_| invalid("edge count overflows u64"))
}

/// 2e(T_r(n)) ≥ (1 − 1/r) n² − r/4, decided exactly: multiplied through by
/// 4r the inequality is between integers.
pub fn check_turan_edge_lower(r: usize, n: usize) -> Result<BoundReport> {
    let e = turan_edges_exact(r, n)? as i128;
    let (ri, ni) = (r as i128, n as i128);
    let scaled_slack = 8 * ri * e - 4 * (ri - 1) * ni * ni + ri * ri;
    let lhs = (1.0 - 1.0 / r as f64) * (n * n) as f64 - r as f64 / 4.0;
    let slack = scaled_slack as f64 / (4 * r) as f64;
    let mut report = BoundReport::with_slack(BoundId::TuranEdgeLower, Side::Single, lhs, 2.0 * e as f64, slack, ctx(n, Some(r), None));
    report.pass = scaled_slack >= 0;
    report.equality = scaled_slack == 0;
    Ok(report)
}

/// Exact formula versus a direct count on the constructed T_r(n).
pub fn check_edge_formula(r: usize, n: usize) -> Result<BoundReport> {
    let formula = turan_edges_exact(r, n)?;
    let counted = turan_graph(r, n)?.edge_count() as u64;
    let mut report = BoundReport::eq(BoundId::EdgeFormula, formula as f64, counted as f64, ctx(n, Some(r), None));
    report.pass = formula == counted;
    report.equality = report.pass;
    Ok(report)
}

/// Two-sided estimates of λ^(p)(T_r(n)).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TuranBrackets {
    /// 2e(T) ≤ λ n^{2/p} ≤ 2e(T)(1 + r/(p n²)); only for p > 1.
    pub le: Option<[BoundReport; 2]>,
    /// (1 − 1/r) n² − r/4 ≤ λ n^{2/p} ≤ (1 − 1/r) n².
    pub lv: [BoundReport; 2],
    /// λ^(1)(T_r(n)) = 1 − 1/r; only for p = 1 and n ≥ r.
    pub l1: Option<BoundReport>,
}

impl TuranBrackets {
    pub fn reports(&self) -> Vec<&BoundReport> {
        self.le.iter().flatten().chain(&self.lv).chain(&self.l1).collect()
    }

    pub fn all_pass(&self) -> bool {
        self.reports().iter().all(|r| r.pass)
    }
}

/// Brackets for a computed λ^(p)(T_r(n)). The upper half of `le` is only
/// claimed for p > 1, so it is not evaluated at p = 1.
pub fn check_turan_lambda_brackets(r: usize, n: usize, p: f64, lambda: f64) -> Result<TuranBrackets> {
    check_p(p)?;
    if r < 1 || n < 1 {
        return Err(invalid("brackets need r >= 1 and n >= 1"));
    }
    let two_e = 2.0 * turan_edges_exact(r, n)? as f64;
    let nf = n as f64;
    let scaled = lambda * nf.powf(2.0 / p);
    let frac = 1.0 - 1.0 / r as f64;
    let c = ctx(n, Some(r), Some(p));

    let le = (p > 1.0).then(|| {
        let upper = two_e * (1.0 + r as f64 / (p * nf * nf));
        [
            BoundReport::le(BoundId::TuranEdgeBracket, two_e, scaled, c.clone()).side(Side::Lower),
            BoundReport::le(BoundId::TuranEdgeBracket, scaled, upper, c.clone()).side(Side::Upper),
        ]
    });
    let lv = [
        BoundReport::le(BoundId::TuranOrderBracket, frac * nf * nf - r as f64 / 4.0, scaled, c.clone()).side(Side::Lower),
        BoundReport::le(BoundId::TuranOrderBracket, scaled, frac * nf * nf, c.clone()).side(Side::Upper),
    ];
    let l1 = (p == 1.0 && n >= r).then(|| BoundReport::eq(BoundId::TuranLagrangian, lambda, frac, c));
    Ok(TuranBrackets { le, lv, l1 })
}

/// 2 Σ_{ij∈E} x_i x_j ≤ 1 − 1/r for simplex weights on a K_{r+1}-free graph.
pub fn motzkin_straus_check(g: &Graph, weights: &[f64], r: usize) -> Result<BoundReport> {
    if r < 1 {
        return Err(invalid("motzkin_straus_check needs r >= 1"));
    }
    if weights.len() != g.order() {
        return Err(Error::LengthMismatch { expected: g.order(), found: weights.len() });
    }
    if weights.iter().any(|w| !(*w >= 0.0)) {
        return Err(invalid("simplex weights must be nonnegative"));
    }
    let total: f64 = weights.iter().sum();
    if (total - 1.0).abs() > 1e-9 {
        return Err(invalid(format!("simplex weights must sum to 1, got {total}")));
    }
    let lhs = quadratic_form(g, weights)?;
    Ok(BoundReport::le(BoundId::MotzkinStraus, lhs, 1.0 - 1.0 / r as f64, ctx(g.order(), Some(r), None)))
}

/// (max), (me) and (md) for a solver result on `g`.
pub fn certify_solution(g: &Graph, p: f64, result: &SolveResult) -> Vec<BoundReport> {
    let (n, e) = (g.order(), g.edge_count());
    let mut me = check_edge_upper(e, p, result.lambda);
    me.context.n = n;
    vec![check_absolute_max(n, p, result.lambda), me, check_uniform_lower(e, n, p, result.lambda)]
}

pub const CSV_HEADER: &str = "bound_id,graph,n,r,p,lhs,rhs,slack,pass";

/// One CSV row per report, preceded by [`CSV_HEADER`].
pub fn to_csv(reports: &[BoundReport]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for rep in reports {
        let c = &rep.context;
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            rep.label(),
            c.graph.as_deref().unwrap_or(""),
            c.n,
            c.r.map(|r| r.to_string()).unwrap_or_default(),
            c.p.map(|p| sig17(p).get().to_owned()).unwrap_or_default(),
            sig17(rep.lhs).get(),
            sig17(rep.rhs).get(),
            sig17(rep.slack).get(),
            rep.pass
        )
        .unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn absolute_max_examples() {
        let r = check_absolute_max(3, 3.0, 2.0 * 3f64.powf(1.0 / 3.0));
        assert!(r.pass && r.equality);
        assert!(check_absolute_max(1, 2.0, 0.0).pass);
        assert!(!check_absolute_max(4, 2.0, 3.5).pass);
    }

    #[test]
    fn edge_upper_examples() {
        let r = check_edge_upper(1, 2.0, 1.0);
        assert!(r.pass);
        assert_abs_diff_eq!(r.slack, 2f64.sqrt() - 1.0, epsilon = 1e-12);
        assert!(check_edge_upper(0, 2.0, 0.0).pass);
        assert!(!check_edge_upper(6, 2.0, 4.0).pass);
    }

    #[test]
    fn uniform_lower_examples() {
        let r = check_uniform_lower(6, 4, 2.0, 3.0);
        assert!(r.pass && r.equality);
        let r = check_uniform_lower(5, 5, 2.0, 2.0);
        assert!(r.pass && r.equality);
        assert!(!check_uniform_lower(6, 4, 2.0, 2.9).pass);
    }

    #[test]
    fn monotone_examples() {
        // K_2: λ(p)·2^{2/p} = 2 for all p
        let reps = check_monotone_in_p(&[(2.0, 1.0), (1.0, 0.5)], 2);
        assert_eq!(reps.len(), 1);
        assert!(reps[0].pass && reps[0].equality);
        assert!(check_monotone_in_p(&[(2.0, 1.0)], 2).is_empty());
        // scaled values 5 at p = 2 and 6 at p = 3 on n = 2
        let reps = check_monotone_in_p(&[(2.0, 5.0 / 2.0), (3.0, 6.0 / 2f64.powf(2.0 / 3.0))], 2);
        assert!(!reps[0].pass);
    }

    #[test]
    fn clique_bound_examples() {
        let (in0, in1) = check_clique_bounds(2.0, 4, 4, 2, 2.0).unwrap();
        assert!(in1.pass && in1.equality);
        assert!(in0.pass && in0.equality);
        let (_, in1) = check_clique_bounds(6f64.sqrt(), 6, 5, 2, 2.0).unwrap();
        assert!(in1.pass && !in1.equality);
        assert_abs_diff_eq!(in1.rhs, 2.5, epsilon = 1e-12);
        assert!(check_clique_bounds(1.0, 1, 2, 0, 2.0).is_err());
    }

    #[test]
    fn turan_edge_examples() {
        assert_eq!(turan_edges_exact(2, 5).unwrap(), 6);
        assert_eq!(turan_edges_exact(3, 7).unwrap(), 16);
        let r = check_turan_edge_lower(2, 5).unwrap();
        assert!(r.pass && r.equality);
        assert_eq!(r.slack, 0.0);
        let r = check_turan_edge_lower(3, 7).unwrap();
        assert!(r.pass);
        assert_abs_diff_eq!(r.lhs, 49.0 * 2.0 / 3.0 - 0.75, epsilon = 1e-12);
        for r in 1..=6 {
            let rep = check_turan_edge_lower(r, 3 * r).unwrap();
            assert_eq!(rep.slack, r as f64 / 4.0);
        }
    }

    #[test]
    fn edge_formula_matches_construction() {
        for r in 1..=8 {
            for n in 1..=30 {
                assert!(check_edge_formula(r, n).unwrap().pass, "r={r} n={n}");
            }
        }
    }

    #[test]
    fn bracket_examples() {
        let b = check_turan_lambda_brackets(2, 3, 2.0, 2f64.sqrt()).unwrap();
        let [lo, hi] = b.le.as_ref().unwrap();
        assert!(lo.pass && hi.pass);
        assert_abs_diff_eq!(hi.rhs, 4.0 * (1.0 + 2.0 / 18.0), epsilon = 1e-12);
        assert_abs_diff_eq!(b.lv[1].rhs, 4.5, epsilon = 1e-12);
        assert!(b.all_pass() && b.l1.is_none());

        let b = check_turan_lambda_brackets(3, 6, 1.0, 2.0 / 3.0).unwrap();
        assert!(b.le.is_none());
        assert!(b.l1.as_ref().unwrap().pass);
        assert!(b.all_pass());
        assert!(check_turan_lambda_brackets(3, 6, 0.5, 1.0).is_err());
    }

    #[test]
    fn motzkin_straus_examples() {
        let c5 = Graph::cycle(5).unwrap();
        let r = motzkin_straus_check(&c5, &[0.2; 5], 2).unwrap();
        assert!(r.pass);
        assert_abs_diff_eq!(r.lhs, 0.4, epsilon = 1e-12);
        let r = motzkin_straus_check(&Graph::complete(2).unwrap(), &[0.5, 0.5], 2).unwrap();
        assert!(r.pass && r.equality);
        let r = motzkin_straus_check(&c5, &[1.0, 0.0, 0.0, 0.0, 0.0], 2).unwrap();
        assert_eq!(r.lhs, 0.0);
        assert!(motzkin_straus_check(&c5, &[0.5; 5], 2).is_err());
    }

    #[test]
    fn csv_layout() {
        let reps = vec![check_absolute_max(3, 2.0, 2.0).with_graph("Bw")];
        let csv = to_csv(&reps);
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some(CSV_HEADER));
        let row: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(row.len(), 9);
        assert_eq!(row[0], "max");
        assert_eq!(row[1], "Bw");
        assert_eq!(row[8], "true");
    }

    #[test]
    fn te_holds_exactly_for_all_small_parameters() {
        for r in 1..=10 {
            for n in 1..=100 {
                assert!(check_turan_edge_lower(r, n).unwrap().pass);
            }
        }
    }
}
