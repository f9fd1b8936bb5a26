//! Visibility, convexity and bypass primitives.
//!
//! Everything here is built on one kernel, the *clean sweep*: a breadth-first
//! pass from a source `s` that marks a vertex `w` clean when some neighbour
//! one layer closer to `s` is either `s` itself or a clean vertex outside the
//! blocker set `X`. A target `t` is then `X`-visible from `s` exactly when it
//! is clean, whether or not `t` belongs to `X`: endpoints never block.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::graph::Graph;
use crate::set::VertexSet;

/// Outcome of a set check, with the lexicographically first failing pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub valid: bool,
    pub failing_pair: Option<(usize, usize)>,
}

impl Verdict {
    fn from_failure(pair: Option<(usize, usize)>) -> Self {
        Verdict {
            valid: pair.is_none(),
            failing_pair: pair,
        }
    }
}

/// Scratch buffers for repeated sweeps over one graph.
pub(crate) struct Sweeper {
    dist: Vec<u32>,
    clean: Vec<bool>,
    queue: VecDeque<u32>,
}

impl Sweeper {
    pub(crate) fn new(n: usize) -> Self {
        Sweeper {
            dist: vec![u32::MAX; n],
            clean: vec![false; n],
            queue: VecDeque::with_capacity(n),
        }
    }

    /// Marks every vertex reachable from `src` along a shortest path whose
    /// internal vertices avoid `blockers`. `src` itself is reported clean.
    pub(crate) fn run(&mut self, g: &Graph, src: usize, blockers: &VertexSet) -> &[bool] {
        let Sweeper { dist, clean, queue } = self;
        dist.iter_mut().for_each(|d| *d = u32::MAX);
        clean.iter_mut().for_each(|c| *c = false);
        queue.clear();
        dist[src] = 0;
        clean[src] = true;
        queue.push_back(src as u32);
        // Layer k is fully popped before layer k + 1, so `clean[u]` is final
        // by the time `u` propagates.
        while let Some(u) = queue.pop_front() {
            let u = u as usize;
            let du = dist[u];
            let passable = u == src || (clean[u] && !blockers.contains(u));
            for &w in g.neighbor_slice(u) {
                let w = w as usize;
                if dist[w] == u32::MAX {
                    dist[w] = du + 1;
                    queue.push_back(w as u32);
                }
                if passable && dist[w] == du + 1 {
                    clean[w] = true;
                }
            }
        }
        clean
    }
}

/// All vertices on some shortest `u`–`v` path.
pub fn geodesic_interval(g: &Graph, u: usize, v: usize) -> Result<VertexSet> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    let du = g.bfs(u);
    let dv = g.bfs(v);
    let d = du[v];
    Ok(VertexSet::from_indices(
        g.vertex_count(),
        (0..g.vertex_count()).filter(|&w| du[w] + dv[w] == d),
    ))
}

/// True when every shortest path between members of `h` stays inside `h`.
pub fn is_convex(g: &Graph, h: &VertexSet) -> Result<bool> {
    is_convex_with(g, h, Exec::default())
}

pub fn is_convex_with(g: &Graph, h: &VertexSet, exec: Exec) -> Result<bool> {
    g.check_set(h)?;
    if h.is_empty() {
        return Err(Error::EmptySet);
    }
    let members = h.to_vec();
    let n = g.vertex_count();
    let escape = exec.find_map_first(members.len(), |i| {
        let src = members[i];
        let mut dist = vec![u32::MAX; n];
        let mut queue = VecDeque::with_capacity(n);
        g.bfs_into(src, &mut dist, &mut queue);
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&w| std::cmp::Reverse(dist[w]));
        // Walk back from every member of `h`; anything touched lies on a
        // shortest path from `src` to a member.
        let mut on_path: Vec<bool> = (0..n).map(|w| h.contains(w)).collect();
        for &w in &order {
            if !on_path[w] || dist[w] == 0 {
                continue;
            }
            for p in g.neighbors(w) {
                if dist[p] + 1 == dist[w] {
                    on_path[p] = true;
                }
            }
        }
        (0..n).find(|&w| on_path[w] && !h.contains(w))
    });
    Ok(escape.is_none())
}

/// True when some shortest `u`–`v` path has no internal vertex in `x`.
pub fn is_pair_visible(g: &Graph, u: usize, v: usize, x: &VertexSet) -> Result<bool> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    g.check_set(x)?;
    let mut sweeper = Sweeper::new(g.vertex_count());
    Ok(sweeper.run(g, u, x)[v])
}

/// Checks that the members of `x` are pairwise `x`-visible.
pub fn is_mutual_visibility_set(g: &Graph, x: &VertexSet) -> Result<Verdict> {
    is_mutual_visibility_set_with(g, x, Exec::default())
}

pub fn is_mutual_visibility_set_with(g: &Graph, x: &VertexSet, exec: Exec) -> Result<Verdict> {
    g.check_set(x)?;
    let members = x.to_vec();
    let n = g.vertex_count();
    let exec = small_input_sequential(exec, members.len(), g);
    let failure = exec.find_map_first(members.len(), |i| {
        let mut sweeper = Sweeper::new(n);
        let clean = sweeper.run(g, members[i], x);
        members[i + 1..]
            .iter()
            .find(|&&t| !clean[t])
            .map(|&t| (members[i], t))
    });
    Ok(Verdict::from_failure(failure))
}

/// Checks that every pair of vertices of `g` is `x`-visible.
pub fn is_total_mutual_visibility_set(g: &Graph, x: &VertexSet) -> Result<Verdict> {
    is_total_mutual_visibility_set_with(g, x, Exec::default())
}

pub fn is_total_mutual_visibility_set_with(
    g: &Graph,
    x: &VertexSet,
    exec: Exec,
) -> Result<Verdict> {
    g.check_set(x)?;
    let n = g.vertex_count();
    if x.is_empty() {
        return Ok(Verdict::from_failure(None));
    }
    let exec = small_input_sequential(exec, n, g);
    let failure = exec.find_map_first(n, |s| {
        let mut sweeper = Sweeper::new(n);
        let clean = sweeper.run(g, s, x);
        (s + 1..n).find(|&t| !clean[t]).map(|t| (s, t))
    });
    Ok(Verdict::from_failure(failure))
}

/// Below this many sweep-edges the thread hand-off costs more than it saves.
const PARALLEL_WORK_THRESHOLD: usize = 1 << 14;

fn small_input_sequential(exec: Exec, sources: usize, g: &Graph) -> Exec {
    if sources * (g.edge_count() + 1) < PARALLEL_WORK_THRESHOLD {
        Exec::Sequential
    } else {
        exec
    }
}

/// Bypass vertices and their count `bp(G)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BypassReport {
    pub bypass_vertices: VertexSet,
    pub bp: usize,
}

/// A vertex is *not* bypass when it is the middle of a convex `P3`: two of
/// its neighbours at distance 2 whose only common neighbour is the vertex.
pub fn bypass_vertices(g: &Graph) -> Result<BypassReport> {
    let n = g.vertex_count();
    if n < 2 {
        return Err(Error::TooFewVertices {
            required: 2,
            actual: n,
        });
    }
    let is_middle = Exec::default().map_collect(n, |u| is_convex_p3_middle(g, u));
    let bypass = VertexSet::from_indices(n, (0..n).filter(|&u| !is_middle[u]));
    Ok(BypassReport {
        bp: bypass.len(),
        bypass_vertices: bypass,
    })
}

fn is_convex_p3_middle(g: &Graph, u: usize) -> bool {
    let nb = g.neighbor_slice(u);
    for (i, &a) in nb.iter().enumerate() {
        for &b in &nb[i + 1..] {
            let (a, b) = (a as usize, b as usize);
            if !g.has_edge(a, b) && common_neighbors_at_most_one(g, a, b) {
                return true;
            }
        }
    }
    false
}

fn common_neighbors_at_most_one(g: &Graph, a: usize, b: usize) -> bool {
    let (x, y) = (g.neighbor_slice(a), g.neighbor_slice(b));
    let (mut i, mut j, mut common) = (0, 0, 0);
    while i < x.len() && j < y.len() {
        match x[i].cmp(&y[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                common += 1;
                if common > 1 {
                    return false;
                }
                i += 1;
                j += 1;
            }
        }
    }
    true
}

/// `μ_t(G) = 0` exactly when `G` has no bypass vertex.
pub fn has_zero_total_mv(g: &Graph) -> Result<bool> {
    Ok(bypass_vertices(g)?.bp == 0)
}
