//! Test-only oracles, written without the library's sweep kernels.
#![allow(dead_code)]

use std::collections::VecDeque;

use mutvis::{Graph, VertexSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn adjacency(g: &Graph) -> Vec<Vec<usize>> {
    (0..g.vertex_count())
        .map(|v| g.neighbors(v).collect())
        .collect()
}

/// BFS distances avoiding `removed` vertices (the source is never removed).
pub fn bfs(adj: &[Vec<usize>], src: usize, removed: &[bool]) -> Vec<Option<usize>> {
    let mut dist = vec![None; adj.len()];
    dist[src] = Some(0);
    let mut q = VecDeque::from([src]);
    while let Some(u) = q.pop_front() {
        let du = dist[u].unwrap();
        for &w in &adj[u] {
            if dist[w].is_none() && !removed[w] {
                dist[w] = Some(du + 1);
                q.push_back(w);
            }
        }
    }
    dist
}

/// `u`, `v` are X-visible iff deleting `X \ {u, v}` keeps their distance.
pub fn pair_visible(adj: &[Vec<usize>], x: &[bool], u: usize, v: usize) -> bool {
    if u == v {
        return true;
    }
    let full = bfs(adj, u, &vec![false; adj.len()])[v];
    let mut removed = x.to_vec();
    removed[u] = false;
    removed[v] = false;
    bfs(adj, u, &removed)[v] == full
}

pub fn to_mask(n: usize, set: &VertexSet) -> Vec<bool> {
    let mut m = vec![false; n];
    for v in set.iter() {
        m[v] = true;
    }
    m
}

pub fn mutual(g: &Graph, set: &VertexSet) -> bool {
    let adj = adjacency(g);
    let x = to_mask(g.vertex_count(), set);
    let members: Vec<usize> = set.iter().collect();
    members.iter().enumerate().all(|(i, &u)| {
        members[i + 1..]
            .iter()
            .all(|&v| pair_visible(&adj, &x, u, v))
    })
}

pub fn total(g: &Graph, set: &VertexSet) -> bool {
    let adj = adjacency(g);
    let n = g.vertex_count();
    let x = to_mask(n, set);
    (0..n).all(|u| (u + 1..n).all(|v| pair_visible(&adj, &x, u, v)))
}

/// Connected graph on `n` vertices: a random tree plus edges with
/// probability `p`.
pub fn random_connected(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.random_range(0..v), v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if !edges.contains(&(u, v)) && rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

pub fn seeded_graph(seed: u64, max_n: usize) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(1..=max_n);
    let p = rng.random_range(0.0..0.6);
    random_connected(&mut rng, n, p)
}

/// Every shortest `u`-`v` path, as vertex sequences.
pub fn all_shortest_paths(adj: &[Vec<usize>], u: usize, v: usize) -> Vec<Vec<usize>> {
    let n = adj.len();
    let dv = bfs(adj, v, &vec![false; n]);
    let mut out = Vec::new();
    let mut path = vec![u];
    fn walk(
        adj: &[Vec<usize>],
        dv: &[Option<usize>],
        path: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let cur = *path.last().unwrap();
        let d = dv[cur].unwrap();
        if d == 0 {
            out.push(path.clone());
            return;
        }
        for &w in &adj[cur] {
            if dv[w] == Some(d - 1) {
                path.push(w);
                walk(adj, dv, path, out);
                path.pop();
            }
        }
    }
    walk(adj, &dv, &mut path, &mut out);
    out
}

/// Number of shortest `u`-`v` paths by dynamic programming over BFS layers.
pub fn count_shortest_paths(adj: &[Vec<usize>], u: usize, v: usize) -> u64 {
    let n = adj.len();
    let du = bfs(adj, u, &vec![false; n]);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&w| du[w]);
    let mut count = vec![0u64; n];
    count[u] = 1;
    for &w in &order {
        for &x in &adj[w] {
            if du[x].zip(du[w]).is_some_and(|(a, b)| a == b + 1) {
                count[x] += count[w];
            }
        }
    }
    count[v]
}

/// Smallest convex superset: close under geodesic intervals until stable.
pub fn convex_hull(adj: &[Vec<usize>], seed: &[usize]) -> Vec<bool> {
    let n = adj.len();
    let dist: Vec<Vec<Option<usize>>> = (0..n).map(|s| bfs(adj, s, &vec![false; n])).collect();
    let mut inside = vec![false; n];
    for &s in seed {
        inside[s] = true;
    }
    loop {
        let members: Vec<usize> = (0..n).filter(|&v| inside[v]).collect();
        let mut grew = false;
        for &a in &members {
            for &b in &members {
                let dab = dist[a][b].unwrap();
                for w in 0..n {
                    if !inside[w] && dist[a][w].unwrap() + dist[w][b].unwrap() == dab {
                        inside[w] = true;
                        grew = true;
                    }
                }
            }
        }
        if !grew {
            return inside;
        }
    }
}

/// Greedy maximal set in a random order under `accept`.
pub fn greedy_set(
    g: &Graph,
    rng: &mut ChaCha8Rng,
    accept: impl Fn(&Graph, &VertexSet) -> bool,
) -> VertexSet {
    let n = g.vertex_count();
    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        order.swap(i, rng.random_range(0..=i));
    }
    let mut set = VertexSet::new(n);
    for v in order {
        set.insert(v);
        if !accept(g, &set) {
            set.remove(v);
        }
    }
    set
}
