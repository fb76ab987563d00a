//! Three-phase local computation algorithm for two-coloring a k-uniform
//! hypergraph with bounded hyperedge intersection.
//!
//! Phase 1 colors vertices bottom-up along a pseudorandom ordering, freezing
//! the uncolored vertices of edges that turn dangerous. Phase 2 recolors the
//! frozen vertices of the queried vertex's component of survived edges, over
//! independent color tables, until a trial leaves only tiny surviving
//! components. Phase 3 brute-forces those. All phases are pure functions of
//! (instance, seeds), so answers are query-oblivious and consistent.

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::atomic::{AtomicU64, AtomicU8, Ordering as AtomicOrdering};
use std::sync::{Arc, RwLock};

use serde::Deserialize;

use crate::entropy::EntropyStream;
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::kwise::SampleSpace;
use crate::ordering::RandomOrdering;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Color {
    Red,
    Blue,
}

impl Color {
    pub fn from_bit(b: bool) -> Color {
        if b {
            Color::Blue
        } else {
            Color::Red
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Color::Red => "red",
            Color::Blue => "blue",
        }
    }
}

/// Phase-1 verdict for a vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexStatus {
    Colored(Color),
    Frozen,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(default)]
pub struct ColoringParams {
    pub k1: u32,
    pub k2: u32,
    pub k3: u32,
    /// Independence multiplier: color tables and the ordering are
    /// (c_color * ceil(log2 N))-wise independent.
    pub c_color: u32,
    /// Phase-2 component cap multiplier: abort above c2 * ceil(log2 N) edges.
    pub c2: u32,
    /// Good-trial cap multiplier: surviving components must have at most
    /// c3 * ceil(log2 log2 N) edges.
    pub c3: u32,
    /// Number of Phase-2 recoloring trials.
    pub trials2: u32,
    /// Per-query work cap (Phase-1 status computations).
    pub safety_cap: u64,
}

impl Default for ColoringParams {
    fn default() -> Self {
        ColoringParams { k1: 0, k2: 0, k3: 0, c_color: 4, c2: 16, c3: 8, trials2: 0, safety_cap: 1_000_000 }
    }
}

impl ColoringParams {
    /// Default parameterization for a k-uniform instance with N edges and
    /// intersection bound d: the smallest k1 = k2 satisfying the Phase-1/2
    /// feasibility inequality, the rest going to k3.
    pub fn defaults(k: u32, d: u32, n_edges: u64) -> ColoringParams {
        let bound = phase12_bound(d);
        let mut k1 = 1u32;
        while (1u64 << k1) <= bound && k1 < 63 {
            k1 += 1;
        }
        let k1 = k1.min(k.saturating_sub(2).max(1));
        let k3 = k.saturating_sub(2 * k1).max(1);
        ColoringParams {
            k1,
            k2: k1,
            k3,
            trials2: default_trials2(n_edges),
            ..ColoringParams::default()
        }
    }

    pub fn with_thresholds(mut self, k1: u32, k2: u32, k3: u32) -> ColoringParams {
        self.k1 = k1;
        self.k2 = k2;
        self.k3 = k3;
        self
    }

    /// Theorem feasibility inequalities; violations are warnings, not errors
    /// (verification oracles remain the arbiter).
    pub fn feasibility_warnings(&self, d: u32) -> Vec<String> {
        let mut w = Vec::new();
        let bound = phase12_bound(d);
        if (1u128 << self.k1) <= bound as u128 {
            w.push(format!("phase-1 threshold infeasible: 16d(d-1)^3(d+1) = {bound} >= 2^k1"));
        }
        if (1u128 << self.k2) <= bound as u128 {
            w.push(format!("phase-2 threshold infeasible: 16d(d-1)^3(d+1) = {bound} >= 2^k2"));
        }
        if 2.0 * std::f64::consts::E * (d as f64 + 1.0) >= (self.k3 as f64).exp2() {
            w.push("phase-3 threshold infeasible: 2e(d+1) >= 2^k3".to_string());
        }
        w
    }
}

fn phase12_bound(d: u32) -> u64 {
    let d = d as u64;
    16 * d * d.saturating_sub(1).pow(3) * (d + 1)
}

pub fn default_trials2(n_edges: u64) -> u32 {
    let l2 = (n_edges.max(2) as f64).log2();
    let ll2 = l2.log2().max(1.0);
    10 * (l2 / ll2).ceil() as u32
}

fn ceil_log2(n: u64) -> u32 {
    64 - n.max(2).saturating_sub(1).leading_zeros()
}

/// Why a query could not be answered (counted toward the failure budget).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FailReason {
    /// Survived component larger than c2 * ceil(log2 N).
    ComponentTooLarge { size: u64, cap: u64 },
    /// No Phase-2 trial produced a good coloring.
    NoGoodTrial { trials: u32 },
    /// Phase-3 search space too large to enumerate.
    SearchTooLarge { uncolored: u32 },
    /// Exhaustive search found no proper coloring: the thresholds are
    /// infeasible for this instance (distinct from budget failures).
    Infeasible,
}

#[derive(Debug, Clone)]
pub enum ColorAnswer {
    Colored { color: Color, phase: u8 },
    Fail(FailReason),
}

#[derive(Debug, Clone)]
pub enum Phase2Outcome {
    Colored(Color),
    Escalate(ResidualComponent),
    Fail(FailReason),
}

#[derive(Debug, Clone)]
pub enum Phase3Outcome {
    Colored(Color),
    Fail(FailReason),
}

/// A surviving component escalated to Phase 3: its edges and every color
/// already pinned on their vertices (Phase 1 + the good trial).
#[derive(Debug, Clone)]
pub struct ResidualComponent {
    pub edges: Vec<u32>,
    pub assigned: HashMap<u32, Color>,
}

#[derive(Debug)]
struct ResolvedComponent {
    good_trial: u32,
    /// Colors assigned by the good trial (Phase 2).
    trial_colors: HashMap<u32, Color>,
    /// Edge sets of the surviving components after the good trial.
    residual: Vec<Vec<u32>>,
    /// Colors assigned by exhaustive search (Phase 3).
    search_colors: HashMap<u32, Color>,
}

#[derive(Debug)]
struct ComponentResolution {
    result: std::result::Result<ResolvedComponent, FailReason>,
}

const ST_UNKNOWN: u8 = 0;
const ST_RED: u8 = 1;
const ST_BLUE: u8 = 2;
const ST_FROZEN: u8 = 3;

pub struct ColoringContext {
    h: Hypergraph,
    params: ColoringParams,
    ordering: RandomOrdering,
    ranks: Vec<u128>,
    color_tables: Vec<SampleSpace>,
    status: Vec<AtomicU8>,
    survived: Vec<AtomicU8>,
    components: RwLock<HashMap<u32, Arc<ComponentResolution>>>,
    collisions: AtomicU64,
    warnings: Vec<String>,
}

impl ColoringContext {
    pub fn new(h: Hypergraph, params: ColoringParams, master: &[u8]) -> Result<ColoringContext> {
        if params.k1 + params.k2 + params.k3 != h.k() {
            return Err(Error::param(format!(
                "thresholds k1+k2+k3 = {} must equal uniformity k = {}",
                params.k1 + params.k2 + params.k3,
                h.k()
            )));
        }
        if params.k1 == 0 || params.k2 == 0 || params.k3 == 0 || params.trials2 == 0 {
            return Err(Error::param("thresholds and trials2 must be positive"));
        }
        let warnings = params.feasibility_warnings(h.d());
        let m = h.m();
        let independence = (params.c_color as u64 * ceil_log2(h.n_edges()) as u64).clamp(2, m) as u32;
        let ordering = RandomOrdering::new(m, independence, &mut EntropyStream::new(master, "color.order"))?;
        let ranks = ordering.ranks();
        let mut table_entropy = EntropyStream::new(master, "color.tables");
        let color_tables = (0..=params.trials2)
            .map(|_| SampleSpace::new(m, independence, &mut table_entropy))
            .collect::<Result<Vec<_>>>()?;
        let status = (0..m).map(|_| AtomicU8::new(ST_UNKNOWN)).collect();
        let survived = (0..h.n_edges()).map(|_| AtomicU8::new(0)).collect();
        Ok(ColoringContext {
            h,
            params,
            ordering,
            ranks,
            color_tables,
            status,
            survived,
            components: RwLock::new(HashMap::new()),
            collisions: AtomicU64::new(0),
            warnings,
        })
    }

    pub fn hypergraph(&self) -> &Hypergraph {
        &self.h
    }

    pub fn params(&self) -> &ColoringParams {
        &self.params
    }

    pub fn ordering(&self) -> &RandomOrdering {
        &self.ordering
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// Rank collisions observed inside examined sets (reported toward the
    /// failure budget; not part of answer semantics).
    pub fn collision_count(&self) -> u64 {
        self.collisions.load(AtomicOrdering::Relaxed)
    }

    pub fn cap2_edges(&self) -> u64 {
        self.params.c2 as u64 * ceil_log2(self.h.n_edges()) as u64
    }

    pub fn cap3_edges(&self) -> u64 {
        let ll = ceil_log2(ceil_log2(self.h.n_edges()) as u64).max(1);
        self.params.c3 as u64 * ll as u64
    }

    /// Strict total order: rank, then index.
    #[inline]
    fn precedes(&self, u: u32, v: u32) -> bool {
        let (ru, rv) = (self.ranks[u as usize], self.ranks[v as usize]);
        if ru == rv && u != v {
            self.collisions.fetch_add(1, AtomicOrdering::Relaxed);
        }
        (ru, u) < (rv, v)
    }

    fn check_vertex(&self, x: u32) -> Result<()> {
        if (x as u64) < self.h.m() {
            Ok(())
        } else {
            Err(Error::param(format!("vertex {x} out of range 0..{}", self.h.m())))
        }
    }

    /// Phase 1: pure bottom-up coloring along the ordering; memoized.
    pub fn phase1_status(&self, x: u32) -> Result<VertexStatus> {
        self.check_vertex(x)?;
        let mut computed = 0u64;
        let mut stack = vec![x];
        while let Some(&v) = stack.last() {
            if self.status[v as usize].load(AtomicOrdering::Acquire) != ST_UNKNOWN {
                stack.pop();
                continue;
            }
            let mut pending = false;
            for &e in self.h.incident_edges(v) {
                for &u in self.h.edge(e) {
                    if u != v
                        && self.precedes(u, v)
                        && self.status[u as usize].load(AtomicOrdering::Acquire) == ST_UNKNOWN
                    {
                        stack.push(u);
                        pending = true;
                    }
                }
            }
            if pending {
                continue;
            }
            // all lower-ranked neighbors resolved: decide v
            let k1 = self.params.k1;
            let mut frozen = false;
            for &e in self.h.incident_edges(v) {
                let (mut red, mut blue) = (0u32, 0u32);
                for &u in self.h.edge(e) {
                    if u != v && self.precedes(u, v) {
                        match self.status[u as usize].load(AtomicOrdering::Acquire) {
                            ST_RED => red += 1,
                            ST_BLUE => blue += 1,
                            _ => {}
                        }
                    }
                }
                if (red >= k1 && blue == 0) || (blue >= k1 && red == 0) {
                    frozen = true;
                    break;
                }
            }
            let new = if frozen {
                ST_FROZEN
            } else if self.color_tables[0].bit_unchecked(v as u64) {
                ST_BLUE
            } else {
                ST_RED
            };
            self.status[v as usize].store(new, AtomicOrdering::Release);
            stack.pop();
            computed += 1;
            if computed > self.params.safety_cap {
                return Err(Error::Budget(self.params.safety_cap));
            }
        }
        Ok(match self.status[x as usize].load(AtomicOrdering::Acquire) {
            ST_RED => VertexStatus::Colored(Color::Red),
            ST_BLUE => VertexStatus::Colored(Color::Blue),
            _ => VertexStatus::Frozen,
        })
    }

    /// Size of the set of vertices the Phase-1 recursion for x ranges over
    /// (independent of memoization), plus the number of candidate
    /// inspections made while exploring it.
    pub fn examined_counts(&self, x: u32) -> Result<(u64, u64)> {
        self.check_vertex(x)?;
        let mut seen = HashSet::from([x]);
        let mut queue = VecDeque::from([x]);
        let mut inspected = 0u64;
        while let Some(v) = queue.pop_front() {
            for &e in self.h.incident_edges(v) {
                for &u in self.h.edge(e) {
                    if u != v {
                        inspected += 1;
                        if self.precedes(u, v) && seen.insert(u) {
                            queue.push_back(u);
                        }
                    }
                }
            }
        }
        Ok((seen.len() as u64, inspected))
    }

    /// An edge survives Phase 1 iff its vertices do not carry both colors.
    pub fn edge_survived(&self, e: u32) -> Result<bool> {
        if e as u64 >= self.h.n_edges() {
            return Err(Error::param(format!("edge id {e} out of range")));
        }
        let cached = self.survived[e as usize].load(AtomicOrdering::Acquire);
        if cached != 0 {
            return Ok(cached == 1);
        }
        let (mut red, mut blue) = (false, false);
        for &u in self.h.edge(e) {
            match self.phase1_status(u)? {
                VertexStatus::Colored(Color::Red) => red = true,
                VertexStatus::Colored(Color::Blue) => blue = true,
                VertexStatus::Frozen => {}
            }
        }
        let survived = !(red && blue);
        self.survived[e as usize].store(if survived { 1 } else { 2 }, AtomicOrdering::Release);
        Ok(survived)
    }

    /// Connected component of survived edges around vertex x (empty when no
    /// incident edge survived).
    fn survived_component(&self, x: u32) -> Result<Vec<u32>> {
        let mut comp: Vec<u32> = Vec::new();
        let mut seen: HashSet<u32> = HashSet::new();
        let mut queue: VecDeque<u32> = VecDeque::new();
        for &e in self.h.incident_edges(x) {
            if self.edge_survived(e)? && seen.insert(e) {
                queue.push_back(e);
            }
        }
        let cap = self.cap2_edges();
        while let Some(e) = queue.pop_front() {
            comp.push(e);
            if comp.len() as u64 > cap {
                // exceeding the cap: drain enough to report the overflow, no
                // need to explore the rest
                break;
            }
            for f in self.h.dependency_neighbors(e)? {
                if self.edge_survived(f)? && seen.insert(f) {
                    queue.push_back(f);
                }
            }
        }
        comp.sort_unstable();
        Ok(comp)
    }

    fn resolve_component(&self, x: u32) -> Result<Arc<ComponentResolution>> {
        let comp = self.survived_component(x)?;
        debug_assert!(!comp.is_empty(), "frozen vertex must lie in a survived edge");
        let key = comp[0];
        if let Some(r) = self.components.read().unwrap().get(&key) {
            return Ok(r.clone());
        }
        let resolution = Arc::new(ComponentResolution { result: self.compute_component(&comp)? });
        let mut map = self.components.write().unwrap();
        Ok(map.entry(key).or_insert(resolution).clone())
    }

    /// Phase-1 color of a vertex, if any (statuses are forced as needed).
    fn phase1_color(&self, v: u32) -> Result<Option<Color>> {
        Ok(match self.phase1_status(v)? {
            VertexStatus::Colored(c) => Some(c),
            VertexStatus::Frozen => None,
        })
    }

    fn compute_component(&self, comp: &[u32]) -> Result<std::result::Result<ResolvedComponent, FailReason>> {
        let cap2 = self.cap2_edges();
        if comp.len() as u64 > cap2 {
            return Ok(Err(FailReason::ComponentTooLarge { size: comp.len() as u64, cap: cap2 }));
        }
        // vertices of the component, frozen ones in ordering position
        let mut vertices: Vec<u32> = comp.iter().flat_map(|&e| self.h.edge(e).iter().copied()).collect();
        vertices.sort_unstable();
        vertices.dedup();
        let mut frozen: Vec<u32> = Vec::new();
        for &v in &vertices {
            if self.phase1_color(v)?.is_none() {
                frozen.push(v);
            }
        }
        frozen.sort_by_key(|&v| (self.ranks[v as usize], v));

        let k2 = self.params.k2;
        let cap3 = self.cap3_edges();
        for t in 0..self.params.trials2 {
            // trial t reads its own independent color table (table 0 belongs
            // to Phase 1)
            let table = &self.color_tables[t as usize + 1];
            let mut trial: HashMap<u32, Color> = HashMap::new();
            for &v in &frozen {
                let mut dangerous = false;
                for &e in self.h.incident_edges(v) {
                    let (mut red, mut blue) = (0u32, 0u32);
                    for &u in self.h.edge(e) {
                        let c = match self.phase1_color(u)? {
                            Some(c) => Some(c),
                            None => trial.get(&u).copied(),
                        };
                        match c {
                            Some(Color::Red) => red += 1,
                            Some(Color::Blue) => blue += 1,
                            None => {}
                        }
                    }
                    if (red >= k2 && blue == 0) || (blue >= k2 && red == 0) {
                        dangerous = true;
                        break;
                    }
                }
                if !dangerous {
                    trial.insert(v, Color::from_bit(table.bit_unchecked(v as u64)));
                }
            }
            // surviving edges of the component after this trial
            let mut s1: Vec<u32> = Vec::new();
            for &e in comp {
                let (mut red, mut blue) = (false, false);
                for &u in self.h.edge(e) {
                    match self.phase1_color(u)?.or_else(|| trial.get(&u).copied()) {
                        Some(Color::Red) => red = true,
                        Some(Color::Blue) => blue = true,
                        None => {}
                    }
                }
                if !(red && blue) {
                    s1.push(e);
                }
            }
            let residual = self.dependency_components(&s1)?;
            if residual.iter().all(|c| c.len() as u64 <= cap3) {
                // good trial: finish the few stragglers by exhaustive search
                let mut search_colors = HashMap::new();
                for rc in &residual {
                    let fixed = |u: u32| -> Option<Color> {
                        match self.phase1_status(u).expect("status already computed") {
                            VertexStatus::Colored(c) => Some(c),
                            VertexStatus::Frozen => trial.get(&u).copied(),
                        }
                    };
                    match self.brute_force(rc, &fixed) {
                        Ok(colors) => search_colors.extend(colors),
                        Err(reason) => return Ok(Err(reason)),
                    }
                }
                return Ok(Ok(ResolvedComponent { good_trial: t, trial_colors: trial, residual, search_colors }));
            }
        }
        Ok(Err(FailReason::NoGoodTrial { trials: self.params.trials2 }))
    }

    /// Connected components of the dependency graph restricted to `edges`.
    fn dependency_components(&self, edges: &[u32]) -> Result<Vec<Vec<u32>>> {
        let set: HashSet<u32> = edges.iter().copied().collect();
        let mut seen: HashSet<u32> = HashSet::new();
        let mut comps = Vec::new();
        for &start in edges {
            if seen.contains(&start) {
                continue;
            }
            let mut comp = vec![];
            let mut queue = VecDeque::from([start]);
            seen.insert(start);
            while let Some(e) = queue.pop_front() {
                comp.push(e);
                for f in self.h.dependency_neighbors(e)? {
                    if set.contains(&f) && seen.insert(f) {
                        queue.push_back(f);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        Ok(comps)
    }

    /// Exhaustive search over the uncolored vertices of a residual edge set,
    /// in ascending vertex id with the last vertex varying fastest; returns
    /// the first assignment leaving no edge monochromatic.
    fn brute_force(
        &self,
        rc_edges: &[u32],
        fixed: &dyn Fn(u32) -> Option<Color>,
    ) -> std::result::Result<HashMap<u32, Color>, FailReason> {
        let mut vertices: Vec<u32> = rc_edges.iter().flat_map(|&e| self.h.edge(e).iter().copied()).collect();
        vertices.sort_unstable();
        vertices.dedup();
        let uncolored: Vec<u32> = vertices.iter().copied().filter(|&v| fixed(v).is_none()).collect();
        let u = uncolored.len();
        if u > 30 {
            return Err(FailReason::SearchTooLarge { uncolored: u as u32 });
        }
        let position: HashMap<u32, usize> = uncolored.iter().enumerate().map(|(p, &v)| (v, p)).collect();
        'outer: for assign in 0u64..(1u64 << u) {
            let color_of = |v: u32| -> Color {
                fixed(v).unwrap_or_else(|| {
                    let p = position[&v];
                    Color::from_bit(assign >> (u - 1 - p) & 1 == 1)
                })
            };
            for &e in rc_edges {
                let mut it = self.h.edge(e).iter().map(|&v| color_of(v));
                let first = it.next().expect("nonempty edge");
                if it.all(|c| c == first) {
                    continue 'outer;
                }
            }
            return Ok(uncolored.iter().map(|&v| (v, color_of(v))).collect());
        }
        Err(FailReason::Infeasible)
    }

    /// Phase 2 for a Phase-1-frozen vertex.
    pub fn phase2_color(&self, x: u32) -> Result<Phase2Outcome> {
        self.check_vertex(x)?;
        if self.phase1_color(x)?.is_some() {
            return Err(Error::param(format!("phase 2 requires a frozen vertex, {x} is colored")));
        }
        let resolution = self.resolve_component(x)?;
        Ok(match &resolution.result {
            Err(reason) => Phase2Outcome::Fail(reason.clone()),
            Ok(resolved) => {
                if let Some(&c) = resolved.trial_colors.get(&x) {
                    Phase2Outcome::Colored(c)
                } else {
                    let rc_edges = resolved
                        .residual
                        .iter()
                        .find(|rc| rc.iter().any(|&e| self.h.edge(e).contains(&x)))
                        .cloned()
                        .expect("uncolored frozen vertex lies in a surviving edge");
                    let mut assigned = HashMap::new();
                    for &e in &rc_edges {
                        for &v in self.h.edge(e) {
                            let c = self.phase1_color(v)?.or_else(|| resolved.trial_colors.get(&v).copied());
                            if let Some(c) = c {
                                assigned.insert(v, c);
                            }
                        }
                    }
                    Phase2Outcome::Escalate(ResidualComponent { edges: rc_edges, assigned })
                }
            }
        })
    }

    /// Phase 3 on an escalated component.
    pub fn phase3_color(&self, x: u32, component: &ResidualComponent) -> Result<Phase3Outcome> {
        self.check_vertex(x)?;
        let fixed = |v: u32| component.assigned.get(&v).copied();
        Ok(match self.brute_force(&component.edges, &fixed) {
            Ok(colors) => match colors.get(&x) {
                Some(&c) => Phase3Outcome::Colored(c),
                None => {
                    return Err(Error::param(format!("vertex {x} not uncolored in the component")))
                }
            },
            Err(reason) => Phase3Outcome::Fail(reason),
        })
    }

    /// Full query dispatch: Phase 1, then 2, then 3.
    pub fn color_query(&self, x: u32) -> Result<ColorAnswer> {
        self.check_vertex(x)?;
        if let Some(c) = self.phase1_color(x)? {
            return Ok(ColorAnswer::Colored { color: c, phase: 1 });
        }
        let resolution = self.resolve_component(x)?;
        Ok(match &resolution.result {
            Err(reason) => ColorAnswer::Fail(reason.clone()),
            Ok(resolved) => {
                if let Some(&c) = resolved.trial_colors.get(&x) {
                    ColorAnswer::Colored { color: c, phase: 2 }
                } else if let Some(&c) = resolved.search_colors.get(&x) {
                    ColorAnswer::Colored { color: c, phase: 3 }
                } else {
                    unreachable!("frozen vertex neither trial- nor search-colored")
                }
            }
        })
    }

    /// Index of the good trial for x's component (experiment plumbing).
    pub fn good_trial(&self, x: u32) -> Result<Option<u32>> {
        let resolution = self.resolve_component(x)?;
        Ok(resolution.result.as_ref().ok().map(|r| r.good_trial))
    }
}

/// True iff every edge carries both colors.
pub fn verify_coloring(h: &Hypergraph, colors: &[Color]) -> Result<bool> {
    Ok(monochromatic_witness(h, colors)?.is_none())
}

/// First monochromatic edge, if any.
pub fn monochromatic_witness(h: &Hypergraph, colors: &[Color]) -> Result<Option<u32>> {
    if colors.len() as u64 != h.m() {
        return Err(Error::param(format!("need {} colors, got {}", h.m(), colors.len())));
    }
    for e in 0..h.n_edges() as u32 {
        let mut it = h.edge(e).iter().map(|&v| colors[v as usize]);
        let first = it.next().expect("nonempty edge");
        if it.all(|c| c == first) {
            return Ok(Some(e));
        }
    }
    Ok(None)
}
