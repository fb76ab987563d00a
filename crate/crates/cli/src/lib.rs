//! Harness behind the `lcalab` binary: instance generators, query-sweep
//! drivers (sequential, permuted, parallel), verification, and the tree /
//! branching-process statistics commands. Everything is deterministic in
//! (instance, master seed): identical configs produce byte-identical reports.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::json;

use lcalab_core::coloring::{ColorAnswer, ColoringContext, ColoringParams};
use lcalab_core::mis::{MisContext, MisParams};
use lcalab_core::query_tree::{
    expected_size, fit_decay_rate, gw_model, sample_query_tree, simulate_gw_total, QueryTreeParams,
    RootRankMode,
};
use lcalab_core::{EntropyStream, Error, Graph, Hypergraph, Result};

// ---------------------------------------------------------------------------
// instance generators

/// N hyperedges of size k arranged in a cycle, consecutive edges sharing one
/// vertex: m = N(k-1) vertices, every edge intersecting exactly two others.
pub fn gen_hypergraph_cycle(n_edges: u64, k: u32) -> Result<Hypergraph> {
    if n_edges < 3 {
        return Err(Error::param("cycle needs at least 3 edges"));
    }
    if k < 3 {
        return Err(Error::param("cycle needs uniformity at least 3"));
    }
    let m = n_edges * (k as u64 - 1);
    let edges = (0..n_edges)
        .map(|e| (0..k as u64).map(|j| ((e * (k as u64 - 1) + j) % m) as u32).collect())
        .collect();
    Hypergraph::new(m, k, 2, edges)
}

/// Random graph with max degree <= d: proposes ~density * n * d / 2 uniform
/// pairs, dropping loops, duplicates, and proposals that would push an
/// endpoint past degree d.
pub fn gen_graph(n: u64, d: u32, density: f64, entropy: &mut EntropyStream) -> Result<Graph> {
    if n == 0 || d as u64 >= n {
        return Err(Error::param("need 0 <= d < n and n >= 1"));
    }
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::param("density must lie in [0, 1]"));
    }
    let proposals = (density * n as f64 * d as f64 / 2.0).ceil() as u64;
    let mut degree = vec![0u32; n as usize];
    let mut chosen = std::collections::HashSet::new();
    let mut edges = Vec::new();
    for _ in 0..proposals {
        let u = (entropy.next_u64() % n) as u32;
        let v = (entropy.next_u64() % n) as u32;
        let (a, b) = (u.min(v), u.max(v));
        if a == b || degree[a as usize] >= d || degree[b as usize] >= d {
            continue;
        }
        if chosen.insert((a, b)) {
            degree[a as usize] += 1;
            degree[b as usize] += 1;
            edges.push((a, b));
        }
    }
    Graph::new(n, d, &edges)
}

// ---------------------------------------------------------------------------
// parameter plumbing

/// Optional JSON overrides applied on top of the per-instance defaults.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ParamOverrides {
    pub k1: Option<u32>,
    pub k2: Option<u32>,
    pub k3: Option<u32>,
    pub c_color: Option<u32>,
    pub c2: Option<u32>,
    pub c3: Option<u32>,
    pub trials2: Option<u32>,
    pub c1: Option<u32>,
    pub rounds: Option<u32>,
    pub safety_cap: Option<u64>,
}

impl ParamOverrides {
    pub fn parse(json: Option<&str>) -> Result<ParamOverrides> {
        match json {
            None => Ok(ParamOverrides::default()),
            Some(s) => serde_json::from_str(s)
                .map_err(|e| Error::param(format!("bad --params json: {e}"))),
        }
    }

    pub fn coloring(&self, h: &Hypergraph) -> ColoringParams {
        let mut p = ColoringParams::defaults(h.k(), h.d(), h.n_edges());
        if let Some(v) = self.k1 {
            p.k1 = v;
        }
        if let Some(v) = self.k2 {
            p.k2 = v;
        }
        if let Some(v) = self.k3 {
            p.k3 = v;
        }
        if let Some(v) = self.c_color {
            p.c_color = v;
        }
        if let Some(v) = self.c2 {
            p.c2 = v;
        }
        if let Some(v) = self.c3 {
            p.c3 = v;
        }
        if let Some(v) = self.trials2 {
            p.trials2 = v;
        }
        if let Some(v) = self.safety_cap {
            p.safety_cap = v;
        }
        p
    }

    pub fn mis(&self) -> MisParams {
        let mut p = MisParams::default();
        if let Some(v) = self.c1 {
            p.c1 = v;
        }
        if let Some(v) = self.rounds {
            p.rounds = Some(v);
        }
        if let Some(v) = self.safety_cap {
            p.safety_cap = v;
        }
        p
    }
}

// ---------------------------------------------------------------------------
// reports

/// Deterministically serializable run summary: fixed field order, sorted
/// stats keys.
#[derive(Debug, Serialize)]
pub struct Report {
    pub subcommand: String,
    pub seed: String,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub stats: BTreeMap<String, serde_json::Value>,
}

impl Report {
    pub fn new(subcommand: &str, seed: &str) -> Report {
        Report {
            subcommand: subcommand.to_string(),
            seed: seed.to_string(),
            verdict: "pass".to_string(),
            witness: None,
            stats: BTreeMap::new(),
        }
    }

    pub fn fail(&mut self, witness: String) {
        self.verdict = "fail".to_string();
        self.witness.get_or_insert(witness);
    }

    pub fn passed(&self) -> bool {
        self.verdict == "pass"
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

// ---------------------------------------------------------------------------
// query sweeps

/// One per-vertex answer, comparable across runs and writable as a CSV row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Answer {
    Value { value: String, phase: u8 },
    Fail { reason: String },
}

impl Answer {
    fn from_color(a: ColorAnswer) -> Answer {
        match a {
            ColorAnswer::Colored { color, phase } => {
                Answer::Value { value: color.as_str().to_string(), phase }
            }
            ColorAnswer::Fail(r) => Answer::Fail { reason: format!("{r:?}") },
        }
    }

    fn csv_row(&self, vertex: u32) -> String {
        match self {
            Answer::Value { value, phase } => format!("{vertex},{value},{phase}"),
            Answer::Fail { reason } => format!("{vertex},fail:{reason},0"),
        }
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Answer::Fail { .. })
    }
}

/// Answers come back keyed by vertex and sorted by vertex id, whatever the
/// query order or dispatch, so runs compare element-wise.
fn run_queries<F>(order: &[u32], parallel: Option<usize>, query: F) -> Result<Vec<(u32, Answer)>>
where
    F: Fn(u32) -> Result<Answer> + Sync,
{
    let mut answers: Vec<(u32, Answer)> = match parallel {
        None => {
            let mut out = Vec::with_capacity(order.len());
            for &v in order {
                out.push((v, query(v)?));
            }
            out
        }
        Some(workers) => {
            use rayon::prelude::*;
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(workers)
                .build()
                .map_err(|e| Error::param(format!("worker pool: {e}")))?;
            let results: Vec<(u32, Result<Answer>)> =
                pool.install(|| order.par_iter().map(|&v| (v, query(v))).collect());
            let mut out = Vec::with_capacity(results.len());
            for (v, r) in results {
                out.push((v, r?));
            }
            out
        }
    };
    answers.sort_by_key(|&(v, _)| v);
    Ok(answers)
}

/// Budget overruns surface as per-query failures (they spend the same 1/N
/// failure budget); other errors propagate.
fn absorb_budget(r: Result<Answer>) -> Result<Answer> {
    match r {
        Err(Error::Budget(cap)) => Ok(Answer::Fail { reason: format!("Budget({cap})") }),
        other => other,
    }
}

pub fn color_sweep(
    ctx: &ColoringContext,
    order: &[u32],
    parallel: Option<usize>,
) -> Result<Vec<(u32, Answer)>> {
    run_queries(order, parallel, |v| absorb_budget(ctx.color_query(v).map(Answer::from_color)))
}

pub fn mis_sweep(
    ctx: &MisContext,
    order: &[u32],
    parallel: Option<usize>,
) -> Result<Vec<(u32, Answer)>> {
    run_queries(order, parallel, |v| {
        absorb_budget(ctx.mis_query(v).map(|a| Answer::Value {
            value: if a.in_mis { "1" } else { "0" }.to_string(),
            phase: a.phase,
        }))
    })
}

pub fn answers_csv(header: &str, answers: &[(u32, Answer)]) -> String {
    let mut out = String::from(header);
    out.push('\n');
    for (v, a) in answers {
        out.push_str(&a.csv_row(*v));
        out.push('\n');
    }
    out
}

/// Ascending vertex ids (the default `--all` query set).
pub fn ascending(m: u64) -> Vec<u32> {
    (0..m as u32).collect()
}

/// Fisher-Yates permutation of 0..m from the harness entropy domain.
pub fn permutation(m: u64, master: &[u8], index: u64) -> Vec<u32> {
    let mut stream = EntropyStream::with_index(master, "harness.perm", index);
    let mut order = ascending(m);
    for i in (1..order.len()).rev() {
        let j = (stream.next_u64() % (i as u64 + 1)) as usize;
        order.swap(i, j);
    }
    order
}

// ---------------------------------------------------------------------------
// instance files

pub enum Instance {
    Hypergraph(Hypergraph),
    Graph(Graph),
}

impl Instance {
    pub fn parse(text: &str) -> Result<Instance> {
        match text.trim_start().chars().next() {
            Some('H') => Ok(Instance::Hypergraph(Hypergraph::parse(text)?)),
            Some('G') => Ok(Instance::Graph(Graph::parse(text)?)),
            _ => Err(Error::load(1, "expected an `H ...` or `G ...` header")),
        }
    }

    pub fn size(&self) -> u64 {
        match self {
            Instance::Hypergraph(h) => h.m(),
            Instance::Graph(g) => g.n(),
        }
    }
}

// ---------------------------------------------------------------------------
// drivers

fn percentile(sorted: &[u64], p: f64) -> u64 {
    if sorted.is_empty() {
        return 0;
    }
    let idx = ((sorted.len() as f64 * p).ceil() as usize).clamp(1, sorted.len()) - 1;
    sorted[idx]
}

/// Full sweep + verification. For colorings also reports examined-set size
/// percentiles over every vertex.
pub fn run_full_verify(
    instance: &Instance,
    seed_hex: &str,
    overrides: &ParamOverrides,
    parallel: Option<usize>,
) -> Result<(Report, Vec<(u32, Answer)>)> {
    let master = lcalab_core::parse_hex_seed(seed_hex)?;
    let mut report = Report::new("verify", seed_hex);
    let answers = match instance {
        Instance::Hypergraph(h) => {
            let params = overrides.coloring(h);
            let ctx = ColoringContext::new(h.clone(), params, &master)?;
            if !ctx.warnings().is_empty() {
                report.stats.insert("warnings".into(), json!(ctx.warnings()));
            }
            let answers = color_sweep(&ctx, &ascending(h.m()), parallel)?;
            let fails = answers.iter().filter(|(_, a)| a.is_fail()).count() as u64;
            let mut phase_counts = [0u64; 3];
            let mut colors = Vec::with_capacity(answers.len());
            for (_, a) in &answers {
                if let Answer::Value { value, phase } = a {
                    phase_counts[*phase as usize - 1] += 1;
                    colors.push(if value == "blue" {
                        lcalab_core::Color::Blue
                    } else {
                        lcalab_core::Color::Red
                    });
                }
            }
            report.stats.insert("fails".into(), json!(fails));
            report
                .stats
                .insert("phase_counts".into(), json!({"1": phase_counts[0], "2": phase_counts[1], "3": phase_counts[2]}));
            report.stats.insert("rank_collisions".into(), json!(ctx.collision_count()));
            let mut examined: Vec<u64> = Vec::with_capacity(h.m() as usize);
            for v in 0..h.m() as u32 {
                examined.push(ctx.examined_counts(v)?.0);
            }
            examined.sort_unstable();
            report.stats.insert(
                "examined".into(),
                json!({
                    "p50": percentile(&examined, 0.50),
                    "p99": percentile(&examined, 0.99),
                    "max": examined.last().copied().unwrap_or(0),
                }),
            );
            if fails > 0 {
                report.fail(format!("{fails} queries failed"));
            } else {
                match lcalab_core::monochromatic_witness(h, &colors)? {
                    None => {}
                    Some(e) => report.fail(format!("monochromatic edge {e}")),
                }
            }
            answers
        }
        Instance::Graph(g) => {
            let ctx = MisContext::new(g.clone(), overrides.mis(), &master)?;
            let answers = mis_sweep(&ctx, &ascending(g.n()), parallel)?;
            let fails = answers.iter().filter(|(_, a)| a.is_fail()).count() as u64;
            let mut phase_counts = [0u64; 2];
            let mut membership = Vec::with_capacity(answers.len());
            for (_, a) in &answers {
                if let Answer::Value { value, phase } = a {
                    phase_counts[*phase as usize - 1] += 1;
                    membership.push(value == "1");
                }
            }
            report.stats.insert("fails".into(), json!(fails));
            report
                .stats
                .insert("phase_counts".into(), json!({"1": phase_counts[0], "2": phase_counts[1]}));
            if fails > 0 {
                report.fail(format!("{fails} queries failed"));
            } else {
                match lcalab_core::mis_witness(g, &membership)? {
                    None => {}
                    Some(v) => report.fail(format!("violation at vertex {v}")),
                }
            }
            answers
        }
    };
    Ok((report, answers))
}

/// Runs the full query set under P random permutations plus one parallel
/// batch, each on a fresh context, and checks all answer vectors agree.
pub fn run_consistency_check(
    instance: &Instance,
    seed_hex: &str,
    overrides: &ParamOverrides,
    permutations: u64,
    parallel: usize,
) -> Result<Report> {
    let master = lcalab_core::parse_hex_seed(seed_hex)?;
    let mut report = Report::new("consistency", seed_hex);
    let m = instance.size();

    let sweep = |order: &[u32], workers: Option<usize>| -> Result<Vec<(u32, Answer)>> {
        match instance {
            Instance::Hypergraph(h) => {
                let ctx = ColoringContext::new(h.clone(), overrides.coloring(h), &master)?;
                color_sweep(&ctx, order, workers)
            }
            Instance::Graph(g) => {
                let ctx = MisContext::new(g.clone(), overrides.mis(), &master)?;
                mis_sweep(&ctx, order, workers)
            }
        }
    };

    let baseline = sweep(&ascending(m), None)?;
    let mut runs = 0u64;
    for p in 0..permutations {
        let order = permutation(m, &master, p);
        let got = sweep(&order, None)?;
        runs += 1;
        if let Some(v) = (0..m as usize).find(|&v| got[v] != baseline[v]) {
            report.fail(format!("permutation {p} differs from ascending order at vertex {v}"));
            report.stats.insert("runs".into(), json!(runs));
            return Ok(report);
        }
    }
    let par = sweep(&ascending(m), Some(parallel))?;
    runs += 1;
    if let Some(v) = (0..m as usize).find(|&v| par[v] != baseline[v]) {
        report.fail(format!("parallel batch ({parallel} workers) differs at vertex {v}"));
    }
    report.stats.insert("runs".into(), json!(runs));
    report.stats.insert("queries_per_run".into(), json!(m));
    Ok(report)
}

/// Query-tree size statistics for one degree/mode cell, plus the CSV row
/// `(D, mode, samples, mean, q99, q_hi, truncated_count)` with q_hi the
/// (1 - 1/samples^2) quantile.
pub fn run_tree_stats(
    degree: u32,
    mode: RootRankMode,
    samples: u64,
    seed_hex: &str,
) -> Result<(Report, String)> {
    if samples == 0 {
        return Err(Error::param("empty sample"));
    }
    let master = lcalab_core::parse_hex_seed(seed_hex)?;
    let params = QueryTreeParams::new(degree, mode)?;
    let mut sizes = Vec::with_capacity(samples as usize);
    let mut truncated = 0u64;
    for i in 0..samples {
        let mut stream = EntropyStream::with_index(&master, "harness.tree", i);
        let t = sample_query_tree(&params, &mut stream)?;
        sizes.push(t.size);
        truncated += t.truncated as u64;
    }
    let mean = sizes.iter().sum::<u64>() as f64 / samples as f64;
    sizes.sort_unstable();
    let q99 = percentile(&sizes, 0.99);
    let q_hi = percentile(&sizes, 1.0 - 1.0 / (samples as f64 * samples as f64));
    let mode_name = match mode {
        RootRankMode::UniformRandom => "uniform",
        RootRankMode::WorstCaseOne => "worst",
    };
    let csv = format!(
        "D,mode,samples,mean,q99,q_hi,truncated_count\n{degree},{mode_name},{samples},{mean:.6},{q99},{q_hi},{truncated}\n"
    );
    let mut report = Report::new("tree-stats", seed_hex);
    report.stats.insert("degree".into(), json!(degree));
    report.stats.insert("mode".into(), json!(mode_name));
    report.stats.insert("samples".into(), json!(samples));
    report.stats.insert("mean".into(), json!(mean));
    report.stats.insert("q99".into(), json!(q99));
    report.stats.insert("q_hi".into(), json!(q_hi));
    report.stats.insert("truncated".into(), json!(truncated));
    if matches!(mode, RootRankMode::UniformRandom) {
        let want = expected_size(degree);
        report.stats.insert("expected_mean".into(), json!(want));
        report.stats.insert("mean_rel_error".into(), json!((mean - want).abs() / want));
    }
    Ok((report, csv))
}

/// Total-progeny simulation of the dominating branching process: sample
/// mean against (D+1)/... the subcritical mean, and the fitted tail decay
/// rate against ln(alpha).
pub fn run_gw_stats(degree: u32, samples: u64, seed_hex: &str) -> Result<Report> {
    if samples == 0 {
        return Err(Error::param("empty sample"));
    }
    let master = lcalab_core::parse_hex_seed(seed_hex)?;
    let model = gw_model(degree)?;
    let mut histogram = vec![0u64; 4096];
    let mut sum = 0u64;
    let mut truncated = 0u64;
    let mut stream = EntropyStream::new(&master, "harness.gw");
    for _ in 0..samples {
        let draw = simulate_gw_total(&model, &mut stream, 1_000_000);
        truncated += draw.truncated as u64;
        sum += draw.total;
        let bin = (draw.total as usize).min(histogram.len() - 1);
        histogram[bin] += 1;
    }
    let mean = sum as f64 / samples as f64;
    let slope = fit_decay_rate(&histogram, 20, 60);
    let mut report = Report::new("gw-stats", seed_hex);
    report.stats.insert("degree".into(), json!(degree));
    report.stats.insert("samples".into(), json!(samples));
    report.stats.insert("mean".into(), json!(mean));
    // subcritical total progeny: E[Z] = 1/(1 - offspring mean) = D + 1
    report.stats.insert("expected_mean".into(), json!(1.0 / (1.0 - model.mean())));
    report.stats.insert("alpha".into(), json!(model.alpha));
    report.stats.insert("ln_alpha".into(), json!(model.alpha.ln()));
    report.stats.insert("truncated".into(), json!(truncated));
    match slope {
        Some(s) => {
            report.stats.insert("fitted_rate".into(), json!(s));
            report
                .stats
                .insert("rate_rel_error".into(), json!((s - model.alpha.ln()).abs() / model.alpha.ln()));
        }
        None => report.fail("too few tail samples in [20, 60] to fit a rate".into()),
    }
    Ok(report)
}
