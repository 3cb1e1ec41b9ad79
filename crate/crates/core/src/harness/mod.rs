//! Desk-scale verification runs over enumerated and random graphs, with
//! deterministic JSON and CSV reports.

mod exhaustive;
mod sweeps;

pub use exhaustive::{
    check_joint_lemma, verify_clique_reformulation, verify_kr_plus_presence, verify_saturation_desk, verify_turan_extremal, GraphSource,
};
pub use sweeps::{regular_md_gaps, sweep_bounds, sweep_extraction, sweep_lemmas};

use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;
use std::time::Duration;

use serde::Serialize;

use crate::bounds::BoundReport;
use crate::error::{invalid, Error, Result};
use crate::numfmt::{h12, sig17};
use crate::pspectral::SolveOptions;

/// Gap required between the Turán graph and every competitor.
pub const MARGIN_THRESHOLD: f64 = 1e-7;
/// Threshold slack for "λ(G) ≥ λ(T_r(n))".
pub const THRESHOLD_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TheoremId {
    /// Turán graph maximizes λ^(p) among K_{r+1}-free graphs.
    Tur,
    /// Clique-number form: λ^(p)(G) ≤ λ^(p)(T_ω(n)).
    Clique,
    /// Joints above the Turán threshold.
    Js,
    /// K_r^+ containment above the Turán threshold.
    Se,
    Sweep,
    Lemmas,
    Extract,
}

impl TheoremId {
    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::Tur => "tur",
            TheoremId::Clique => "clique",
            TheoremId::Js => "js",
            TheoremId::Se => "se",
            TheoremId::Sweep => "sweep",
            TheoremId::Lemmas => "lemmas",
            TheoremId::Extract => "extract",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "tur" => TheoremId::Tur,
            "clique" => TheoremId::Clique,
            "js" => TheoremId::Js,
            "se" => TheoremId::Se,
            "sweep" => TheoremId::Sweep,
            "lemmas" => TheoremId::Lemmas,
            "extract" => TheoremId::Extract,
            other => return Err(invalid(format!("unknown theorem id {other:?}"))),
        })
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Grid {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(serialize_with = "crate::numfmt::ser_f64_slice")]
    pub p: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_max: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutcomeVerdict {
    Pass,
    Fail,
    /// Margin within the solver noise band even after a precise re-solve.
    Inconclusive,
    /// Outside the scope of the assertion (e.g. below threshold).
    Excluded,
    /// Recorded without an assertion.
    Reported,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GraphOutcome {
    pub graph6: String,
    #[serde(serialize_with = "crate::numfmt::ser_f64")]
    pub lambda: f64,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "crate::numfmt::ser_opt_f64")]
    pub margin: Option<f64>,
    pub verdict: OutcomeVerdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub joint_size: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub contains_pattern: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl GraphOutcome {
    fn new(graph6: String, lambda: f64, verdict: OutcomeVerdict) -> Self {
        GraphOutcome { graph6, lambda, margin: None, verdict, joint_size: None, contains_pattern: None, note: None }
    }
}

/// A named auxiliary assertion that is not tied to one enumerated graph.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), pass, detail: detail.into() }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
    pub excluded: usize,
    pub reported: usize,
    pub checks_failed: usize,
    pub bounds_failed: usize,
    #[serde(serialize_with = "crate::numfmt::ser_opt_f64")]
    pub worst_margin: Option<f64>,
    /// Wall-clock time; kept out of the JSON so reports stay byte-identical.
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub theorem_id: TheoremId,
    pub grid: Grid,
    pub outcomes: Vec<GraphOutcome>,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub bounds: Vec<BoundReport>,
    pub summary: Summary,
}

impl VerificationReport {
    /// Sorts outcomes by graph6 (stable, so labeled duplicates keep their
    /// generation order) and fills in the summary.
    fn assemble(
        theorem_id: TheoremId,
        grid: Grid,
        mut outcomes: Vec<GraphOutcome>,
        checks: Vec<Check>,
        bounds: Vec<BoundReport>,
        elapsed: Duration,
    ) -> Self {
        outcomes.sort_by(|a, b| a.graph6.cmp(&b.graph6));
        let mut s = Summary { total: outcomes.len(), elapsed, ..Default::default() };
        for o in &outcomes {
            match o.verdict {
                OutcomeVerdict::Pass => s.pass += 1,
                OutcomeVerdict::Fail => s.fail += 1,
                OutcomeVerdict::Inconclusive => s.inconclusive += 1,
                OutcomeVerdict::Excluded => s.excluded += 1,
                OutcomeVerdict::Reported => s.reported += 1,
            }
            if let Some(m) = o.margin {
                s.worst_margin = Some(s.worst_margin.map_or(m, |w: f64| w.min(m)));
            }
        }
        s.checks_failed = checks.iter().filter(|c| !c.pass).count();
        s.bounds_failed = bounds.iter().filter(|b| !b.pass).count();
        VerificationReport { theorem_id, grid, outcomes, checks, bounds, summary: s }
    }

    /// No failed outcome, check or bound. Inconclusive outcomes do not
    /// count as failures.
    pub fn passed(&self) -> bool {
        self.summary.fail == 0 && self.summary.checks_failed == 0 && self.summary.bounds_failed == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    pub const CSV_HEADER: &'static str = "graph6,lambda,margin,verdict,joint_size,contains_pattern";

    /// One row per graph outcome.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(Self::CSV_HEADER);
        out.push('\n');
        for o in &self.outcomes {
            let verdict = serde_json::to_value(o.verdict).expect("serializable");
            writeln!(
                out,
                "{},{},{},{},{},{}",
                o.graph6,
                sig17(o.lambda).get(),
                o.margin.map(|m| sig17(m).get().to_owned()).unwrap_or_default(),
                verdict.as_str().expect("string"),
                o.joint_size.map(|j| j.to_string()).unwrap_or_default(),
                o.contains_pattern.map(|c| c.to_string()).unwrap_or_default(),
            )
            .unwrap();
        }
        out
    }

    pub fn summary_line(&self) -> String {
        let s = &self.summary;
        let mut line = format!(
            "{} {}: {} graphs, {} pass, {} fail, {} inconclusive, {} excluded, {} reported",
            self.theorem_id,
            grid_label(&self.grid),
            s.total,
            s.pass,
            s.fail,
            s.inconclusive,
            s.excluded,
            s.reported
        );
        if !self.checks.is_empty() {
            write!(line, ", checks {}/{}", self.checks.len() - s.checks_failed, self.checks.len()).unwrap();
        }
        if !self.bounds.is_empty() {
            write!(line, ", bounds {}/{}", self.bounds.len() - s.bounds_failed, self.bounds.len()).unwrap();
        }
        if let Some(m) = s.worst_margin {
            write!(line, ", worst margin {}", h12(m)).unwrap();
        }
        write!(line, " [{}] ({:.2} s)", if self.passed() { "PASS" } else { "FAIL" }, s.elapsed.as_secs_f64()).unwrap();
        line
    }
}

fn grid_label(g: &Grid) -> String {
    let mut parts = Vec::new();
    if let Some(n) = g.n {
        parts.push(format!("n={n}"));
    }
    if let Some(r) = g.r {
        parts.push(format!("r={r}"));
    }
    if !g.p.is_empty() {
        parts.push(format!("p={}", g.p.iter().map(|p| h12(*p)).collect::<Vec<_>>().join(",")));
    }
    if let Some(t) = g.t {
        parts.push(format!("t={t}"));
    }
    if let Some(c) = g.count {
        parts.push(format!("count={c}"));
    }
    if let Some(m) = g.n_max {
        parts.push(format!("n_max={m}"));
    }
    if let Some(s) = g.seed {
        parts.push(format!("seed={s}"));
    }
    parts.join(" ")
}

/// Solver settings and worker count shared by every harness run.
#[derive(Debug, Clone, PartialEq)]
pub struct HarnessOptions {
    pub solve: SolveOptions,
    pub workers: usize,
}

impl Default for HarnessOptions {
    fn default() -> Self {
        HarnessOptions { solve: SolveOptions::default(), workers: 1 }
    }
}

impl HarnessOptions {
    /// Settings for re-solving near-ties.
    pub fn precise(&self) -> SolveOptions {
        SolveOptions { tol: 1e-13, restarts: 64, max_iter: self.solve.max_iter.max(1_000_000), ..self.solve.clone() }
    }

    fn run<T: Send>(&self, job: impl FnOnce() -> T + Send) -> Result<T> {
        if self.workers == 0 {
            return Err(invalid("worker count must be at least 1"));
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.workers)
            .build()
            .map_err(|e| invalid(format!("cannot start worker pool: {e}")))?;
        Ok(pool.install(job))
    }
}
