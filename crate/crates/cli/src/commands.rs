use std::path::PathBuf;

use clap::Args;
use pspec_core::bounds::{self, BoundReport};
use pspec_core::graph::turan_graph;
use pspec_core::harness::{
    check_joint_lemma, sweep_bounds, sweep_extraction, sweep_lemmas, verify_clique_reformulation, verify_kr_plus_presence,
    verify_saturation_desk, verify_turan_extremal, GraphSource, HarnessOptions, OutcomeVerdict, TheoremId, VerificationReport,
};
use pspec_core::numfmt::{h12, sig17};
use pspec_core::procedures::{extract_dense_subgraph, extract_with_p_reduction, symmetrize as symmetrize_graph, ExtractionParams};
use pspec_core::{clique_number, enumerate_graphs, is_isomorphic, joint_size, kr_plus, solve_lambda_p, write_graph6, Graph};

use crate::input::InputArgs;
use crate::{Format, SolverArgs};

/// `Ok(false)` means the command ran but a checked statement failed.
pub type Outcome = Result<bool, String>;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn check_p(p: f64) -> Result<(), String> {
    if p > 1.0 && p.is_finite() {
        Ok(())
    } else {
        Err(format!("--p must be a finite real > 1, got {p}"))
    }
}

pub fn lambda(input: &InputArgs, solver: &SolverArgs, format: Format) -> Outcome {
    check_p(solver.p)?;
    let graphs = input.graphs()?;
    let opts = solver.options();
    if format == Format::Csv {
        println!("graph6,n,e,p,lambda,residual,iterations,status");
    }
    for g in &graphs {
        let r = solve_lambda_p(g, solver.p, &opts).map_err(err)?;
        match format {
            Format::Json => println!("{}", r.to_json()),
            Format::Csv => {
                let status = serde_json::to_value(r.status).map_err(err)?;
                println!(
                    "{},{},{},{},{},{},{},{}",
                    write_graph6(g),
                    g.order(),
                    g.edge_count(),
                    sig17(solver.p),
                    sig17(r.lambda),
                    sig17(r.residual),
                    r.iterations,
                    status.as_str().unwrap_or_default()
                );
            }
            Format::Human => {
                if graphs.len() > 1 {
                    print!("{}  ", write_graph6(g));
                }
                let x: Vec<String> = r.vector.entries().iter().map(|v| h12(*v)).collect();
                println!(
                    "λ = {}  (p = {}, residual {}, {} iterations, {:?})\nx = [{}]",
                    h12(r.lambda),
                    h12(solver.p),
                    h12(r.residual),
                    r.iterations,
                    r.status,
                    x.join(", ")
                );
            }
        }
    }
    Ok(true)
}

/// Every applicable bound for one graph at one exponent.
pub fn bound_reports(g: &Graph, solver: &SolverArgs, r: Option<usize>) -> Result<Vec<BoundReport>, String> {
    check_p(solver.p)?;
    let p = solver.p;
    let sol = solve_lambda_p(g, p, &solver.options()).map_err(err)?;
    let (n, e) = (g.order(), g.edge_count());
    let omega = clique_number(g);
    let r = match r {
        Some(0) => return Err("--r must be at least 1".into()),
        Some(r) if r < omega => return Err(format!("graph contains K_{} so the clique bounds for r = {r} do not apply", r + 1)),
        Some(r) => r,
        None => omega.max(1),
    };
    let mut reports = bounds::certify_solution(g, p, &sol);
    let (in0, in1) = bounds::check_clique_bounds(sol.lambda, e, n, r, p).map_err(err)?;
    reports.push(in0);
    reports.push(in1);
    let mut w = sol.vector.simplex_weights();
    let total: f64 = w.iter().sum();
    w.iter_mut().for_each(|v| *v /= total);
    let mut ms = bounds::motzkin_straus_check(g, &w, r).map_err(err)?;
    ms.context.p = Some(p);
    reports.push(ms);
    if n >= 1 && is_isomorphic(g, &turan_graph(r, n).map_err(err)?) {
        let brackets = bounds::check_turan_lambda_brackets(r, n, p, sol.lambda).map_err(err)?;
        reports.extend(brackets.reports().into_iter().cloned());
        reports.push(bounds::check_turan_edge_lower(r, n).map_err(err)?);
        reports.push(bounds::check_edge_formula(r, n).map_err(err)?);
    }
    let label = write_graph6(g);
    Ok(reports.into_iter().map(|b| b.with_graph(label.clone())).collect())
}

pub fn bounds(input: &InputArgs, solver: &SolverArgs, r: Option<usize>, format: Format) -> Outcome {
    let mut all = Vec::new();
    for g in input.graphs()? {
        all.extend(bound_reports(&g, solver, r)?);
    }
    match format {
        Format::Json => println!("{}", serde_json::to_string(&all).map_err(err)?),
        Format::Csv => print!("{}", bounds::to_csv(&all)),
        Format::Human => {
            for b in &all {
                println!(
                    "{:<18} {:<12} {} <= {}  slack {}  {}{}",
                    b.label(),
                    b.context.graph.as_deref().unwrap_or(""),
                    h12(b.lhs),
                    h12(b.rhs),
                    h12(b.slack),
                    if b.pass { "PASS" } else { "FAIL" },
                    if b.equality { " (equality)" } else { "" }
                );
            }
        }
    }
    Ok(all.iter().all(|b| b.pass))
}

pub fn turan(r: usize, n: Option<usize>, st: Option<(usize, usize)>, format: Format) -> Outcome {
    let g = match (n, st) {
        (_, Some((s, t))) => kr_plus(r, s, t),
        (Some(n), None) => turan_graph(r, n),
        (None, None) => return Err("give --n, or --s and --t".into()),
    }
    .map_err(err)?;
    emit_graph(&g, format);
    Ok(true)
}

fn emit_graph(g: &Graph, format: Format) {
    let g6 = write_graph6(g);
    match format {
        Format::Human => println!("{g6}"),
        Format::Json => println!("{}", serde_json::json!({"graph6": g6, "n": g.order(), "e": g.edge_count()})),
        Format::Csv => println!("graph6,n,e\n{g6},{},{}", g.order(), g.edge_count()),
    }
}

pub fn joints(input: &InputArgs, r: usize, format: Format) -> Outcome {
    if r < 2 {
        return Err("--r must be at least 2".into());
    }
    let graphs = input.graphs()?;
    if format == Format::Csv {
        println!("graph6,r,joint_size");
    }
    for g in &graphs {
        let js = joint_size(g, r);
        let g6 = write_graph6(g);
        match format {
            Format::Human => println!("{g6}  js_{r} = {js}"),
            Format::Json => println!("{}", serde_json::json!({"graph6": g6, "r": r, "joint_size": js})),
            Format::Csv => println!("{g6},{r},{js}"),
        }
    }
    Ok(true)
}

pub fn symmetrize(input: &InputArgs, solver: &SolverArgs, weights: Option<Vec<f64>>, format: Format) -> Outcome {
    let g = input.single()?;
    let x = match weights {
        Some(w) => w,
        None => {
            check_p(solver.p)?;
            solve_lambda_p(&g, solver.p, &solver.options()).map_err(err)?.vector.entries().to_vec()
        }
    };
    let s = symmetrize_graph(&g, &x).map_err(err)?;
    let g6 = write_graph6(&s.graph);
    let parts: Vec<Vec<usize>> = s.parts.iter().map(|p| p.iter().collect()).collect();
    match format {
        Format::Json => {
            let mut v = serde_json::to_value(&s).map_err(err)?;
            v["graph6"] = g6.into();
            println!("{v}");
        }
        Format::Csv => {
            println!("graph6,parts,clique_number,dominates");
            let parts: Vec<String> = parts.iter().map(|p| p.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")).collect();
            println!("{g6},{},{},{}", parts.join("|"), s.clique_number, s.dominates());
        }
        Format::Human => {
            println!("{g6}  parts {parts:?}  ω = {}", s.clique_number);
            if s.dominates() {
                println!("weighted degrees dominate");
            } else {
                println!("weighted degrees drop at {:?}", s.deficits);
            }
        }
    }
    Ok(s.dominates())
}

pub fn extract(input: &InputArgs, solver: &SolverArgs, a: f64, gamma: f64, big_r: f64, format: Format) -> Outcome {
    let g = input.single()?;
    let params = ExtractionParams::new(solver.p, a, gamma, big_r).map_err(err)?;
    let opts = solver.options();
    let (h, trace) = if solver.p > 2.0 { extract_with_p_reduction(&g, &params, &opts) } else { extract_dense_subgraph(&g, &params, &opts) }
        .map_err(err)?;
    match format {
        Format::Json => println!("{}", trace.to_json()),
        Format::Csv => {
            println!("order,removed,lambda,scaled_lambda,min_degree,sigma,b1,b2");
            for s in &trace.steps {
                println!(
                    "{},{},{},{},{},{},{},{}",
                    s.order,
                    s.removed,
                    sig17(s.lambda),
                    sig17(s.scaled_lambda),
                    s.min_degree,
                    sig17(s.sigma),
                    s.b1,
                    s.b2.map_or(String::new(), |b| b.to_string())
                );
            }
        }
        Format::Human => {
            for s in &trace.steps {
                println!(
                    "order {:>3}: remove {:>3}  λ = {}  δ = {}  σ = {}",
                    s.order,
                    s.removed,
                    h12(s.lambda),
                    s.min_degree,
                    h12(s.sigma)
                );
            }
            println!(
                "H = {}  ({} of {} vertices kept{})",
                write_graph6(&h),
                trace.final_order,
                trace.initial_order,
                if trace.exhausted { ", exhausted" } else { "" }
            );
            println!(
                "preconditions {}  invariants b1 {:?} b2 {:?}  conclusions c1 {:?} c2 {:?} c3 {:?}",
                if trace.preconditions_met { "met" } else { "not met" },
                trace.invariants.b1,
                trace.invariants.b2,
                trace.conclusions.c1,
                trace.conclusions.c2,
                trace.conclusions.c3
            );
        }
    }
    let failed = [trace.invariants.b1, trace.invariants.b2, trace.conclusions.c1, trace.conclusions.c2, trace.conclusions.c3]
        .iter()
        .any(|v| v.is_fail())
        || !trace.exit_condition_holds()
        || trace.reduction.as_ref().is_some_and(|r| !r.monotone);
    Ok(!failed)
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// tur, clique, js, se, sweep, lemmas or extract
    #[arg(long)]
    pub theorem: TheoremId,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub r: Option<usize>,
    /// Exponent(s); sweep accepts a comma-separated list
    #[arg(long, value_delimiter = ',')]
    pub p: Vec<f64>,
    #[arg(long)]
    pub t: Option<usize>,
    #[arg(long)]
    pub count: Option<usize>,
    #[arg(long)]
    pub n_max: Option<usize>,
    #[arg(long, env = "PSPEC_SEED", default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = 16)]
    pub restarts: usize,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[arg(long, default_value_t = 100_000)]
    pub max_iter: usize,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    /// Graph6 file replacing the built-in enumeration
    #[arg(long)]
    pub source_file: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    pub format: Format,
}

impl VerifyArgs {
    fn need<T: Copy>(v: Option<T>, flag: &str, theorem: TheoremId) -> Result<T, String> {
        v.ok_or_else(|| format!("--theorem {theorem} requires --{flag}"))
    }

    fn single_p(&self) -> Result<f64, String> {
        match self.p.as_slice() {
            [] => Ok(2.0),
            [p] => Ok(*p),
            _ => Err(format!("--theorem {} takes a single --p", self.theorem)),
        }
    }

    pub fn report(&self) -> Result<VerificationReport, String> {
        let solver = SolverArgs { p: 2.0, restarts: self.restarts, tol: self.tol, max_iter: self.max_iter, seed: self.seed };
        let hopts = HarnessOptions { solve: solver.options(), workers: self.workers };
        let source = match &self.source_file {
            Some(path) => GraphSource::from_file(path).map_err(|e| format!("{}: {e}", path.display()))?,
            None => GraphSource::BuiltIn,
        };
        let th = self.theorem;
        let report = match th {
            TheoremId::Tur => {
                verify_turan_extremal(Self::need(self.n, "n", th)?, Self::need(self.r, "r", th)?, self.single_p()?, &source, &hopts)
            }
            TheoremId::Clique => verify_clique_reformulation(Self::need(self.n, "n", th)?, self.single_p()?, &source, &hopts),
            TheoremId::Js => {
                let (n, r) = (Self::need(self.n, "n", th)?, Self::need(self.r, "r", th)?);
                verify_saturation_desk(n, r, self.single_p()?, &source, &hopts).and_then(|mut rep| {
                    rep.checks.push(check_joint_lemma(n, r)?);
                    rep.summary.checks_failed = rep.checks.iter().filter(|c| !c.pass).count();
                    Ok(rep)
                })
            }
            TheoremId::Se => verify_kr_plus_presence(
                Self::need(self.n, "n", th)?,
                Self::need(self.r, "r", th)?,
                self.single_p()?,
                self.t.unwrap_or(1),
                &source,
                &hopts,
            ),
            TheoremId::Sweep => {
                let p = if self.p.is_empty() { vec![1.1, 1.5, 2.0, 3.0, 10.0] } else { self.p.clone() };
                sweep_bounds(self.count.unwrap_or(1000), self.n_max.unwrap_or(12), &p, self.seed, &hopts)
            }
            TheoremId::Lemmas => sweep_lemmas(self.count.unwrap_or(200), self.n_max.unwrap_or(10), self.seed, &hopts),
            TheoremId::Extract => sweep_extraction(self.count.unwrap_or(500), self.n_max.unwrap_or(12), self.seed, &hopts),
        };
        report.map_err(err)
    }
}

pub fn verify(args: &VerifyArgs) -> Outcome {
    let report = args.report()?;
    match args.format {
        Format::Json => println!("{}", report.to_json()),
        Format::Csv => print!("{}", report.to_csv()),
        Format::Human => {
            println!("{}", report.summary_line());
            let maximizer = report.outcomes.iter().find(|o| o.note.as_deref() == Some("turan"));
            if let Some(t) = maximizer.filter(|_| args.theorem == TheoremId::Tur) {
                let unique = t.verdict == OutcomeVerdict::Pass;
                let name = pspec_core::parse_graph6(&t.graph6).ok().and_then(|g| multipartite_name(&g)).unwrap_or_default();
                println!(
                    "maximizer {} {name}  λ = {}  runner-up margin {}{}",
                    t.graph6,
                    h12(t.lambda),
                    t.margin.map_or("none".into(), h12),
                    if unique { "  (unique)" } else { "" }
                );
            }
            for c in report.checks.iter() {
                println!("  {} {}: {}", if c.pass { "PASS" } else { "FAIL" }, c.name, c.detail);
            }
            for o in report.outcomes.iter().filter(|o| matches!(o.verdict, OutcomeVerdict::Fail | OutcomeVerdict::Inconclusive)) {
                println!("  {:?} {}  λ = {}", o.verdict, o.graph6, h12(o.lambda));
            }
        }
    }
    Ok(report.passed())
}

pub fn enumerate(n: usize, max_clique: Option<usize>, format: Format) -> Outcome {
    let graphs = enumerate_graphs(n, |g| max_clique.is_none_or(|k| clique_number(g) <= k)).map_err(err)?;
    match format {
        Format::Human => graphs.iter().for_each(|g| println!("{}", write_graph6(g))),
        Format::Csv => {
            println!("graph6,e,clique_number");
            for g in &graphs {
                println!("{},{},{}", write_graph6(g), g.edge_count(), clique_number(g));
            }
        }
        Format::Json => {
            let list: Vec<String> = graphs.iter().map(write_graph6).collect();
            println!("{}", serde_json::json!({"n": n, "count": list.len(), "graphs": list}));
        }
    }
    Ok(true)
}

/// "K_{2,3}" style name for a complete multipartite graph.
fn multipartite_name(g: &Graph) -> Option<String> {
    let mut sizes: Vec<usize> = g.multipartite_parts()?.iter().map(|p| p.len()).collect();
    sizes.sort_unstable();
    if sizes.iter().all(|&s| s == 1) {
        return Some(format!("K_{}", sizes.len()));
    }
    let sizes: Vec<String> = sizes.iter().map(|s| s.to_string()).collect();
    Some(format!("K_{{{}}}", sizes.join(",")))
}
