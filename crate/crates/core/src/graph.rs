//! Immutable, connected, undirected graphs in compressed adjacency form.

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::set::VertexSet;
use crate::topology::{TopologySpec, VertexLabel};

/// Connected simple undirected graph with sorted adjacency lists.
///
/// Construction rejects self-loops, duplicate edges and disconnected input,
/// so every checker downstream can assume finite distances.
#[derive(Clone, Debug)]
pub struct Graph {
    offsets: Vec<usize>,
    neighbors: Vec<u32>,
    labels: Option<Arc<Vec<VertexLabel>>>,
    label_index: Option<Arc<HashMap<String, usize>>>,
    topology: Option<TopologySpec>,
}

/// Hop distances from one source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceRow {
    pub source: usize,
    pub dist: Vec<u32>,
}

impl DistanceRow {
    pub fn get(&self, v: usize) -> u32 {
        self.dist[v]
    }

    pub fn eccentricity(&self) -> u32 {
        self.dist.iter().copied().max().unwrap_or(0)
    }
}

impl Graph {
    /// Builds a graph from an edge list. Edges may be given in either
    /// orientation but each undirected edge only once.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::TooFewVertices {
                required: 1,
                actual: 0,
            });
        }
        if n > u32::MAX as usize {
            return Err(Error::Unsupported(format!("{n} vertices")));
        }
        let mut adj: Vec<Vec<u32>> = vec![Vec::new(); n];
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange {
                        vertex: x,
                        vertex_count: n,
                    });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adj[u].push(v as u32);
            adj[v].push(u as u32);
        }
        let mut offsets = Vec::with_capacity(n + 1);
        let mut neighbors = Vec::with_capacity(edges.len() * 2);
        offsets.push(0);
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                let v = w[0] as usize;
                return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
            }
            neighbors.extend_from_slice(list);
            offsets.push(neighbors.len());
        }
        let g = Graph {
            offsets,
            neighbors,
            labels: None,
            label_index: None,
            topology: None,
        };
        g.check_connected()?;
        Ok(g)
    }

    /// Attaches one label per vertex; label strings must be distinct.
    pub fn with_labels(mut self, labels: Vec<VertexLabel>) -> Result<Self> {
        if labels.len() != self.vertex_count() {
            return Err(Error::LabelCount {
                expected: self.vertex_count(),
                actual: labels.len(),
            });
        }
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.to_string(), i).is_some() {
                return Err(Error::DuplicateLabel(l.to_string()));
            }
        }
        self.labels = Some(Arc::new(labels));
        self.label_index = Some(Arc::new(index));
        Ok(self)
    }

    pub(crate) fn with_topology(mut self, spec: TopologySpec) -> Self {
        self.topology = Some(spec);
        self
    }

    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges)
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::TooFewVertices {
                required: 3,
                actual: n,
            });
        }
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges)
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, &edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.len() / 2
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.neighbors[self.offsets[v]..self.offsets[v + 1]]
            .iter()
            .map(|&w| w as usize)
    }

    pub(crate) fn neighbor_slice(&self, v: usize) -> &[u32] {
        &self.neighbors[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.neighbor_slice(u).binary_search(&(v as u32)).is_ok()
    }

    /// Edges with `u < v`, in increasing order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.vertex_count()).flat_map(move |u| {
            self.neighbors(u)
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    pub fn labels(&self) -> Option<&[VertexLabel]> {
        self.labels.as_deref().map(Vec::as_slice)
    }

    pub fn topology(&self) -> Option<TopologySpec> {
        self.topology
    }

    /// Display name of a vertex: its label when present, else its index.
    pub fn label_string(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].to_string(),
            None => v.to_string(),
        }
    }

    /// Resolves a label string (or a bare index for unlabelled graphs).
    pub fn index_of_label(&self, label: &str) -> Option<usize> {
        match &self.label_index {
            Some(idx) => idx.get(label).copied(),
            None => label
                .parse::<usize>()
                .ok()
                .filter(|&i| i < self.vertex_count() && label == i.to_string()),
        }
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.vertex_count() {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                vertex_count: self.vertex_count(),
            });
        }
        Ok(())
    }

    pub(crate) fn check_set(&self, set: &VertexSet) -> Result<()> {
        if set.capacity() != self.vertex_count() {
            return Err(Error::SetSizeMismatch {
                set: set.capacity(),
                graph: self.vertex_count(),
            });
        }
        Ok(())
    }

    /// Breadth-first hop distances from `source`.
    pub fn distances_from(&self, source: usize) -> Result<DistanceRow> {
        self.check_vertex(source)?;
        let dist = self.bfs(source);
        if let Some(unreachable) = dist.iter().position(|&d| d == u32::MAX) {
            return Err(Error::Disconnected {
                from: source,
                unreachable,
            });
        }
        Ok(DistanceRow { source, dist })
    }

    pub(crate) fn bfs(&self, source: usize) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.vertex_count()];
        self.bfs_into(source, &mut dist, &mut VecDeque::new());
        dist
    }

    pub(crate) fn bfs_into(&self, source: usize, dist: &mut [u32], queue: &mut VecDeque<u32>) {
        dist.iter_mut().for_each(|d| *d = u32::MAX);
        queue.clear();
        dist[source] = 0;
        queue.push_back(source as u32);
        while let Some(u) = queue.pop_front() {
            let du = dist[u as usize];
            for &w in self.neighbor_slice(u as usize) {
                if dist[w as usize] == u32::MAX {
                    dist[w as usize] = du + 1;
                    queue.push_back(w);
                }
            }
        }
    }

    fn check_connected(&self) -> Result<()> {
        let dist = self.bfs(0);
        match dist.iter().position(|&d| d == u32::MAX) {
            Some(unreachable) => Err(Error::Disconnected {
                from: 0,
                unreachable,
            }),
            None => Ok(()),
        }
    }

    /// Subgraph induced by `set`, renumbered in increasing index order.
    /// Returns the subgraph and the map from new to old indices.
    pub fn induced_subgraph(&self, set: &VertexSet) -> Result<(Graph, Vec<usize>)> {
        self.check_set(set)?;
        let old: Vec<usize> = set.to_vec();
        let mut new_of = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in old.iter().enumerate() {
            new_of[v] = i;
        }
        let edges: Vec<_> = self
            .edges()
            .filter(|&(u, v)| set.contains(u) && set.contains(v))
            .map(|(u, v)| (new_of[u], new_of[v]))
            .collect();
        let mut sub = Graph::from_edges(old.len(), &edges)?;
        if let Some(labels) = &self.labels {
            sub = sub.with_labels(old.iter().map(|&v| labels[v].clone()).collect())?;
        }
        Ok((sub, old))
    }
}

/// Cartesian product `g □ h`, vertex `(a, b)` numbered `a * n(h) + b`.
pub fn cartesian_product(g: &Graph, h: &Graph) -> Result<Graph> {
    let (ng, nh) = (g.vertex_count(), h.vertex_count());
    let mut edges = Vec::with_capacity(g.edge_count() * nh + h.edge_count() * ng);
    for a in 0..ng {
        for (b, b2) in h.edges() {
            edges.push((a * nh + b, a * nh + b2));
        }
    }
    for (a, a2) in g.edges() {
        for b in 0..nh {
            edges.push((a * nh + b, a2 * nh + b));
        }
    }
    Graph::from_edges(ng * nh, &edges)
}
