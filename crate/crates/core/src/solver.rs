//! Exact maximum (total) mutual-visibility sets.
//!
//! [`max_mv_set`] and [`max_total_mv_set`] run an include/exclude
//! branch-and-bound over graphs of at most 64 vertices. Both properties are
//! hereditary, so the search only ever extends feasible sets and keeps, at
//! every node, the candidates that could still be added on their own. That
//! candidate filter is the expensive step; it is done with a *lane sweep*:
//! one breadth-first pass from a member `s` where each vertex carries a
//! 64-bit word whose bit `w` says "clean from `s` if candidate `w` were also
//! a blocker". A single pass therefore answers the question for every
//! candidate at once.
//!
//! [`brute_force_mv`] enumerates all subsets with the generic checkers and
//! exists to cross-check the search.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::construct::SetKind;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::graph::Graph;
use crate::set::VertexSet;
use crate::topology::{pos_mask, TopologyKind, TopologySpec};
use crate::visibility::{has_zero_total_mv, is_convex};

/// Hard ceiling of the 64-bit kernel.
pub const KERNEL_MAX_VERTICES: usize = 64;
pub const DEFAULT_MAX_VERTICES: usize = 40;
pub const BRUTE_FORCE_MAX_VERTICES: usize = 16;

/// Upper bound on how many members of a solution one group may hold.
///
/// Sound whenever each group induces a convex subgraph and `cap` is at
/// least the (total) mutual-visibility number of that subgraph: a solution
/// restricted to a convex subgraph is a solution of the subgraph.
#[derive(Clone, Debug)]
pub struct StructuralCap {
    name: String,
    groups: Vec<VertexSet>,
    cap: usize,
}

impl StructuralCap {
    /// Validates that the groups are pairwise disjoint and convex in `g`.
    pub fn new(g: &Graph, name: &str, groups: Vec<VertexSet>, cap: usize) -> Result<Self> {
        let mut seen = VertexSet::new(g.vertex_count());
        for grp in &groups {
            if grp.capacity() != g.vertex_count() || !seen.intersection(grp).is_empty() {
                return Err(Error::InvalidOptions(format!(
                    "cap {name}: groups must be disjoint"
                )));
            }
            if !is_convex(g, grp)? {
                return Err(Error::InvalidOptions(format!(
                    "cap {name}: group {grp:?} is not convex"
                )));
            }
            seen.union_with(grp);
        }
        Ok(StructuralCap {
            name: name.to_string(),
            groups,
            cap,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }
}

/// At most two members per butterfly column: a column is a convex path.
pub fn bf_column_caps(g: &Graph, d: usize) -> Result<StructuralCap> {
    let spec = TopologySpec::butterfly(d)?;
    let cols = 1usize << d;
    let groups = (0..cols)
        .map(|c| VertexSet::from_indices(spec.vertex_count(), (0..=d).map(|l| l * cols + c)))
        .collect();
    StructuralCap::new(g, "bf-columns", groups, 2)
}

/// Partitions of `Q_d` into subcubes that fix the bits at `fixed`, each
/// capped at `cap` (the optimum of the subcube).
pub fn hypercube_subcube_caps(
    g: &Graph,
    d: usize,
    fixed: &[usize],
    cap: usize,
) -> Result<StructuralCap> {
    let spec = TopologySpec::hypercube(d)?;
    let n = spec.vertex_count();
    let key = |x: usize| {
        fixed
            .iter()
            .fold(0usize, |k, &p| k << 1 | (x & pos_mask(d, p) != 0) as usize)
    };
    let groups = (0..1usize << fixed.len())
        .map(|k| VertexSet::from_indices(n, (0..n).filter(|&x| key(x) == k)))
        .collect();
    StructuralCap::new(g, &format!("q{d}-fix{fixed:?}"), groups, cap)
}

/// Every subcube family of `Q_d` with `d - sub_dim` fixed positions.
pub fn hypercube_all_subcube_caps(
    g: &Graph,
    d: usize,
    sub_dim: usize,
    cap: usize,
) -> Result<Vec<StructuralCap>> {
    if sub_dim >= d {
        return Err(Error::InvalidOptions(format!(
            "subcube dimension {sub_dim} must be below {d}"
        )));
    }
    let mut out = Vec::new();
    let fixed_count = d - sub_dim;
    for mask in 0u32..1 << d {
        if mask.count_ones() as usize == fixed_count {
            let fixed: Vec<usize> = (0..d).filter(|&p| mask >> p & 1 == 1).collect();
            out.push(hypercube_subcube_caps(g, d, &fixed, cap)?);
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Symmetry {
    #[default]
    None,
    /// The caller asserts the graph is vertex-transitive; the first vertex
    /// in branching order is then forced into the solution.
    VertexTransitive,
}

#[derive(Clone, Debug)]
pub struct SolveOptions {
    pub kind: SetKind,
    pub node_budget: Option<u64>,
    pub time_budget: Option<Duration>,
    /// Only sets strictly larger than this are searched for.
    pub initial_lower_bound: Option<usize>,
    pub caps: Vec<StructuralCap>,
    pub symmetry: Symmetry,
    pub exec: Exec,
    pub max_vertices: usize,
}

impl SolveOptions {
    pub fn new(kind: SetKind) -> Self {
        SolveOptions {
            kind,
            node_budget: None,
            time_budget: None,
            initial_lower_bound: None,
            caps: Vec::new(),
            symmetry: Symmetry::None,
            exec: Exec::default(),
            max_vertices: DEFAULT_MAX_VERTICES,
        }
    }

    pub fn mutual() -> Self {
        Self::new(SetKind::Mutual)
    }

    pub fn total() -> Self {
        Self::new(SetKind::Total)
    }

    pub fn with_node_budget(mut self, nodes: u64) -> Self {
        self.node_budget = Some(nodes);
        self
    }

    pub fn with_time_budget(mut self, t: Duration) -> Self {
        self.time_budget = Some(t);
        self
    }

    pub fn with_lower_bound(mut self, lb: usize) -> Self {
        self.initial_lower_bound = Some(lb);
        self
    }

    pub fn with_cap(mut self, cap: StructuralCap) -> Self {
        self.caps.push(cap);
        self
    }

    pub fn with_symmetry(mut self, s: Symmetry) -> Self {
        self.symmetry = s;
        self
    }

    pub fn with_exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }

    pub fn with_max_vertices(mut self, n: usize) -> Self {
        self.max_vertices = n;
        self
    }

    fn validate(&self, g: &Graph) -> Result<()> {
        if self.node_budget == Some(0) || self.time_budget == Some(Duration::ZERO) {
            return Err(Error::InvalidOptions("budgets must be positive".into()));
        }
        if self.max_vertices > KERNEL_MAX_VERTICES {
            return Err(Error::InvalidOptions(format!(
                "max_vertices {} above kernel limit {KERNEL_MAX_VERTICES}",
                self.max_vertices
            )));
        }
        let n = g.vertex_count();
        if n > self.max_vertices {
            return Err(Error::InstanceTooLarge {
                n,
                max: self.max_vertices,
            });
        }
        for c in &self.caps {
            if c.groups.iter().any(|grp| grp.capacity() != n) {
                return Err(Error::InvalidOptions(format!(
                    "cap {} built for another graph",
                    c.name
                )));
            }
        }
        Ok(())
    }
}

/// Solver output. `optimum` is the size of `witness`; `upper_bound` is set
/// only when the search ran to completion.
#[derive(Clone, Debug, Serialize)]
pub struct SolveReport {
    pub kind: SetKind,
    pub optimum: usize,
    pub witness: VertexSet,
    pub proven_optimal: bool,
    pub upper_bound: Option<usize>,
    pub budget_exhausted: bool,
    pub nodes_explored: u64,
    pub elapsed_secs: f64,
}

/// Largest mutual-visibility set of `g`.
pub fn max_mv_set(g: &Graph, opts: &SolveOptions) -> Result<SolveReport> {
    let mut opts = opts.clone();
    opts.kind = SetKind::Mutual;
    solve(g, &opts)
}

/// Largest total mutual-visibility set of `g`. Graphs without bypass
/// vertices short-circuit to the empty set.
pub fn max_total_mv_set(g: &Graph, opts: &SolveOptions) -> Result<SolveReport> {
    let mut opts = opts.clone();
    opts.kind = SetKind::Total;
    opts.validate(g)?;
    if g.vertex_count() >= 2 && has_zero_total_mv(g)? {
        return Ok(SolveReport {
            kind: SetKind::Total,
            optimum: 0,
            witness: VertexSet::new(g.vertex_count()),
            proven_optimal: opts.initial_lower_bound.unwrap_or(0) == 0,
            upper_bound: Some(opts.initial_lower_bound.unwrap_or(0)),
            budget_exhausted: false,
            nodes_explored: 0,
            elapsed_secs: 0.0,
        });
    }
    solve(g, &opts)
}

/// Dispatches on `opts.kind`.
pub fn solve(g: &Graph, opts: &SolveOptions) -> Result<SolveReport> {
    opts.validate(g)?;
    if opts.kind == SetKind::Total && g.vertex_count() >= 2 && has_zero_total_mv(g)? {
        return max_total_mv_set(g, opts);
    }
    let start = Instant::now();
    let kernel = Kernel::new(g, opts.kind);
    let search = Search::new(&kernel, opts, start);
    let outcome = search.run();
    let witness = VertexSet::from_indices(
        g.vertex_count(),
        kernel.bits(outcome.best_mask).map(|p| kernel.vertex_at[p]),
    );
    let optimum = witness.len();
    let seed = opts.initial_lower_bound.unwrap_or(0);
    let upper_bound = (!outcome.exhausted).then(|| optimum.max(seed));
    Ok(SolveReport {
        kind: opts.kind,
        optimum,
        proven_optimal: upper_bound == Some(optimum),
        upper_bound,
        witness,
        budget_exhausted: outcome.exhausted,
        nodes_explored: outcome.nodes,
        elapsed_secs: start.elapsed().as_secs_f64(),
    })
}

/// Convenience: options that a topology admits out of the box (symmetry
/// for vertex-transitive families, column caps for butterflies).
pub fn default_options_for(spec: TopologySpec, g: &Graph, kind: SetKind) -> Result<SolveOptions> {
    let mut opts = SolveOptions::new(kind);
    if spec.is_vertex_transitive() {
        opts.symmetry = Symmetry::VertexTransitive;
    }
    if spec.kind == TopologyKind::Butterfly {
        opts.caps.push(bf_column_caps(g, spec.d)?);
    }
    Ok(opts)
}

/// Dense 64-bit view of a graph with vertices renumbered in branching
/// order (descending degree, ties by index).
struct Kernel {
    n: usize,
    kind: SetKind,
    vertex_at: Vec<usize>,
    /// `order[s * n ..][..n - 1]`: vertices other than `s` in BFS order.
    order: Vec<u8>,
    /// Predecessors of `w` towards `s`: `preds[pred_start[s*n+w]..pred_start[s*n+w+1]]`.
    pred_start: Vec<u32>,
    preds: Vec<u8>,
}

impl Kernel {
    fn new(g: &Graph, kind: SetKind) -> Self {
        let n = g.vertex_count();
        assert!(n <= KERNEL_MAX_VERTICES);
        let mut vertex_at: Vec<usize> = (0..n).collect();
        vertex_at.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
        let mut pos_of = vec![0usize; n];
        for (p, &v) in vertex_at.iter().enumerate() {
            pos_of[v] = p;
        }
        let mut order = Vec::with_capacity(n * n);
        let mut pred_start = Vec::with_capacity(n * n + 1);
        let mut preds = Vec::new();
        pred_start.push(0);
        for s in 0..n {
            let dist = g.bfs(vertex_at[s]);
            let mut by_dist: Vec<usize> = (0..n).filter(|&p| p != s).collect();
            by_dist.sort_by_key(|&p| (dist[vertex_at[p]], p));
            order.extend(by_dist.iter().map(|&p| p as u8));
            order.push(s as u8); // padding so every row has n entries
            for &vw in &vertex_at {
                for u in g.neighbors(vw) {
                    if dist[u] + 1 == dist[vw] {
                        preds.push(pos_of[u] as u8);
                    }
                }
                pred_start.push(preds.len() as u32);
            }
        }
        Kernel {
            n,
            kind,
            vertex_at,
            order,
            pred_start,
            preds,
        }
    }

    fn all(&self) -> u64 {
        if self.n == 64 {
            !0
        } else {
            (1u64 << self.n) - 1
        }
    }

    fn bits(&self, mask: u64) -> impl Iterator<Item = usize> {
        let mut m = mask;
        std::iter::from_fn(move || {
            (m != 0).then(|| {
                let t = m.trailing_zeros() as usize;
                m &= m - 1;
                t
            })
        })
    }

    #[inline]
    fn preds_of(&self, s: usize, w: usize) -> &[u8] {
        let i = s * self.n + w;
        &self.preds[self.pred_start[i] as usize..self.pred_start[i + 1] as usize]
    }

    /// Candidates `w` in `cand` such that, with `blockers ∪ {w}` blocking,
    /// every target in `targets` is still clean from `s`. Candidates must
    /// also be clean themselves (they become endpoints).
    fn lane_filter(
        &self,
        s: usize,
        blockers: u64,
        targets: u64,
        cand: u64,
        lanes: &mut [u64; 64],
    ) -> u64 {
        let mut passable = [0u64; 64];
        lanes[s] = !0;
        passable[s] = !0;
        for &w in &self.order[s * self.n..s * self.n + self.n - 1] {
            let w = w as usize;
            let mut c = 0u64;
            for &p in self.preds_of(s, w) {
                c |= passable[p as usize];
            }
            lanes[w] = c;
            passable[w] = if blockers >> w & 1 == 1 {
                0
            } else {
                c & !(1u64 << w)
            };
        }
        let mut ok = cand;
        for t in self.bits(targets & !(1u64 << s)) {
            ok &= lanes[t];
        }
        for w in self.bits(ok) {
            if lanes[w] >> w & 1 == 0 {
                ok &= !(1u64 << w);
            }
        }
        ok
    }

    /// Candidates `w` for which `set ∪ {w}` is feasible, assuming `set` is.
    fn filter(&self, set: u64, cand: u64) -> u64 {
        let mut lanes = [0u64; 64];
        let mut ok = cand & !set;
        match self.kind {
            SetKind::Mutual => {
                for s in self.bits(set) {
                    if ok == 0 {
                        break;
                    }
                    ok = self.lane_filter(s, set, set, ok, &mut lanes);
                }
            }
            SetKind::Total => {
                let all = self.all();
                for s in 0..self.n {
                    if ok == 0 {
                        break;
                    }
                    // Candidates must see `s`, and every pair must stay visible.
                    ok = self.lane_filter(s, set, all, ok, &mut lanes);
                }
            }
        }
        ok
    }
}

/// Cap family in kernel numbering.
struct MaskCap {
    groups: Vec<u64>,
    cap: u32,
}

impl MaskCap {
    /// Drops candidates from groups that are already full.
    fn prune(&self, set: u64, cand: u64) -> u64 {
        let mut out = cand;
        for &g in &self.groups {
            if (set & g).count_ones() >= self.cap {
                out &= !g;
            }
        }
        out
    }

    fn bound(&self, set: u64, cand: u64) -> u32 {
        let mut covered = 0u64;
        let mut total = 0u32;
        for &g in &self.groups {
            covered |= g;
            let room = self.cap.saturating_sub((set & g).count_ones());
            total += room.min((cand & g).count_ones());
        }
        total + (cand & !covered).count_ones()
    }
}

struct Outcome {
    best_mask: u64,
    nodes: u64,
    exhausted: bool,
}

struct Search<'k> {
    kernel: &'k Kernel,
    caps: Vec<MaskCap>,
    exec: Exec,
    symmetry: Symmetry,
    node_budget: Option<u64>,
    deadline: Option<Instant>,
    best_size: AtomicUsize,
    best: Mutex<(usize, usize, u64)>,
    nodes: AtomicU64,
    stop: AtomicBool,
}

/// A subproblem: current set and its remaining candidates.
#[derive(Clone, Copy)]
struct Task {
    set: u64,
    cand: u64,
}

const BUDGET_CHECK_INTERVAL: u64 = 256;

impl<'k> Search<'k> {
    fn new(kernel: &'k Kernel, opts: &SolveOptions, start: Instant) -> Self {
        let pos_of = {
            let mut p = vec![0usize; kernel.n];
            for (i, &v) in kernel.vertex_at.iter().enumerate() {
                p[v] = i;
            }
            p
        };
        let caps = opts
            .caps
            .iter()
            .map(|c| MaskCap {
                groups: c
                    .groups
                    .iter()
                    .map(|grp| grp.iter().fold(0u64, |m, v| m | 1 << pos_of[v]))
                    .collect(),
                cap: c.cap as u32,
            })
            .collect();
        let seed = opts.initial_lower_bound.unwrap_or(0);
        Search {
            kernel,
            caps,
            exec: opts.exec,
            symmetry: opts.symmetry,
            node_budget: opts.node_budget,
            deadline: opts.time_budget.map(|t| start + t),
            best_size: AtomicUsize::new(seed),
            best: Mutex::new((seed, usize::MAX, 0)),
            nodes: AtomicU64::new(0),
            stop: AtomicBool::new(false),
        }
    }

    fn run(self) -> Outcome {
        let k = self.kernel;
        let mut root = Task {
            set: 0,
            cand: k.filter(0, k.all()),
        };
        if self.symmetry == Symmetry::VertexTransitive && root.cand & 1 == 1 {
            // Any solution can be mapped onto one containing vertex 0.
            root = Task {
                set: 1,
                cand: self.prune_caps(1, k.filter(1, root.cand & !1)),
            };
        } else if self.symmetry == Symmetry::VertexTransitive {
            // No single vertex is feasible, so by transitivity none is.
            root.cand = 0;
        }
        self.offer(root.set, 0);

        let mut tasks = Vec::new();
        let split = if self.exec.is_parallel() {
            (crate::exec::worker_count() * 16).max(1)
        } else {
            1
        };
        self.split(root, split, &mut tasks);
        let indexed: Vec<(usize, Task)> = tasks.into_iter().enumerate().collect();
        self.exec.for_each(indexed, |(i, t)| {
            let mut local = 0u64;
            self.dfs(t, i, &mut local);
            self.nodes.fetch_add(local, Ordering::Relaxed);
        });
        let best = *self.best.lock().unwrap();
        Outcome {
            best_mask: best.2,
            nodes: self.nodes.load(Ordering::Relaxed),
            exhausted: self.stop.load(Ordering::Relaxed),
        }
    }

    /// Breadth-first expansion of include/exclude branches until at least
    /// `want` open subproblems exist (in depth-first order).
    fn split(&self, root: Task, want: usize, out: &mut Vec<Task>) {
        let mut frontier = vec![root];
        while frontier.len() < want {
            let mut next = Vec::with_capacity(frontier.len() * 2);
            let mut grew = false;
            for t in frontier {
                if t.cand == 0 {
                    next.push(t);
                    continue;
                }
                grew = true;
                let (inc, exc) = self.branch(t);
                self.offer(inc.set, 0);
                next.push(inc);
                next.push(exc);
            }
            frontier = next;
            if !grew {
                break;
            }
        }
        out.extend(frontier);
    }

    fn prune_caps(&self, set: u64, cand: u64) -> u64 {
        self.caps.iter().fold(cand, |c, cap| cap.prune(set, c))
    }

    fn branch(&self, t: Task) -> (Task, Task) {
        let v = t.cand.trailing_zeros();
        let bit = 1u64 << v;
        let set = t.set | bit;
        let rest = t.cand & !bit;
        let inc = Task {
            set,
            cand: self.prune_caps(set, self.kernel.filter(set, rest)),
        };
        (
            inc,
            Task {
                set: t.set,
                cand: rest,
            },
        )
    }

    fn bound(&self, t: Task) -> usize {
        let size = t.set.count_ones();
        let extra = self
            .caps
            .iter()
            .map(|c| c.bound(t.set, t.cand))
            .fold(t.cand.count_ones(), u32::min);
        (size + extra) as usize
    }

    /// Keeps the largest set, ties going to the earliest task.
    fn offer(&self, set: u64, task: usize) {
        let size = set.count_ones() as usize;
        let mut b = self.best.lock().unwrap();
        if size > b.0 || (size == b.0 && task < b.1) {
            *b = (size, task, set);
            self.best_size.fetch_max(size, Ordering::Relaxed);
        }
    }

    fn out_of_budget(&self, local: &mut u64) -> bool {
        *local += 1;
        if local.is_multiple_of(BUDGET_CHECK_INTERVAL) {
            let total = self
                .nodes
                .fetch_add(BUDGET_CHECK_INTERVAL, Ordering::Relaxed)
                + BUDGET_CHECK_INTERVAL;
            *local -= BUDGET_CHECK_INTERVAL;
            let over_nodes = self.node_budget.is_some_and(|b| total >= b);
            let over_time = self.deadline.is_some_and(|d| Instant::now() >= d);
            if over_nodes || over_time {
                self.stop.store(true, Ordering::Relaxed);
            }
        }
        self.stop.load(Ordering::Relaxed)
    }

    fn dfs(&self, mut t: Task, task: usize, local: &mut u64) {
        loop {
            if self.out_of_budget(local) {
                return;
            }
            if t.set.count_ones() as usize > self.best_size.load(Ordering::Relaxed) {
                self.offer(t.set, task);
            }
            if t.cand == 0 || self.bound(t) <= self.best_size.load(Ordering::Relaxed) {
                return;
            }
            let (inc, exc) = self.branch(t);
            self.dfs(inc, task, local);
            t = exc;
        }
    }
}

/// Exhaustive search over all `2^n` subsets using the generic checkers.
pub fn brute_force_mv(g: &Graph, kind: SetKind) -> Result<SolveReport> {
    brute_force_mv_with(g, kind, Exec::default())
}

pub fn brute_force_mv_with(g: &Graph, kind: SetKind, exec: Exec) -> Result<SolveReport> {
    let n = g.vertex_count();
    if n > BRUTE_FORCE_MAX_VERTICES {
        return Err(Error::InstanceTooLarge {
            n,
            max: BRUTE_FORCE_MAX_VERTICES,
        });
    }
    let start = Instant::now();
    let total = 1usize << n;
    let chunk = 1usize << n.saturating_sub(6).min(10);
    let chunks = total.div_ceil(chunk);
    let per_chunk: Vec<Result<(usize, usize)>> = exec.map_collect(chunks, |c| {
        let (mut best, mut best_mask) = (0usize, 0usize);
        for mask in c * chunk..((c + 1) * chunk).min(total) {
            let size = mask.count_ones() as usize;
            if size <= best {
                continue;
            }
            let x = VertexSet::from_indices(n, (0..n).filter(|&v| mask >> v & 1 == 1));
            if kind.check(g, &x)?.valid {
                best = size;
                best_mask = mask;
            }
        }
        Ok((best, best_mask))
    });
    let mut best = (0usize, 0usize);
    for r in per_chunk {
        let (size, mask) = r?;
        if size > best.0 {
            best = (size, mask);
        }
    }
    let witness = VertexSet::from_indices(n, (0..n).filter(|&v| best.1 >> v & 1 == 1));
    Ok(SolveReport {
        kind,
        optimum: best.0,
        witness,
        proven_optimal: true,
        upper_bound: Some(best.0),
        budget_exhausted: false,
        nodes_explored: total as u64,
        elapsed_secs: start.elapsed().as_secs_f64(),
    })
}
