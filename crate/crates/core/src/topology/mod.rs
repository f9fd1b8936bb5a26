//! Hypercube, cube-connected-cycle and butterfly generators.
//!
//! Numbering is deterministic: a hypercube vertex is its bit string read as
//! a number; CCC and butterfly vertices are numbered level-major, i.e.
//! `level * 2^d + column`.

mod label;
mod routing;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use label::{BfLabel, BitString, CccLabel, VertexLabel};
pub use routing::{bf_level_span, bf_natural_route, ccc_natural_distance, RouteDirection};

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const MAX_HYPERCUBE_DIM: usize = 24;
pub const MAX_CCC_DIM: usize = 20;
pub const MAX_BUTTERFLY_DIM: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TopologyKind {
    Hypercube,
    Ccc,
    Butterfly,
}

impl TopologyKind {
    pub fn name(self) -> &'static str {
        match self {
            TopologyKind::Hypercube => "hypercube",
            TopologyKind::Ccc => "ccc",
            TopologyKind::Butterfly => "butterfly",
        }
    }

    fn min_dim(self) -> usize {
        match self {
            TopologyKind::Ccc => 3,
            _ => 1,
        }
    }

    fn max_dim(self) -> usize {
        match self {
            TopologyKind::Hypercube => MAX_HYPERCUBE_DIM,
            TopologyKind::Ccc => MAX_CCC_DIM,
            TopologyKind::Butterfly => MAX_BUTTERFLY_DIM,
        }
    }
}

impl fmt::Display for TopologyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TopologyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hypercube" => Ok(TopologyKind::Hypercube),
            "ccc" => Ok(TopologyKind::Ccc),
            "butterfly" => Ok(TopologyKind::Butterfly),
            other => Err(Error::Unsupported(format!("topology kind {other:?}"))),
        }
    }
}

/// A topology family together with its dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TopologySpec {
    pub kind: TopologyKind,
    pub d: usize,
}

impl fmt::Display for TopologySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.kind, self.d)
    }
}

impl TopologySpec {
    /// Validates the dimension against the family minimum and the resource guard.
    pub fn new(kind: TopologyKind, d: usize) -> Result<Self> {
        if d < kind.min_dim() {
            return Err(Error::InvalidDimension(format!(
                "d must be ≥ {} for {kind}, got {d}",
                kind.min_dim()
            )));
        }
        if d > kind.max_dim() {
            return Err(Error::ResourceGuard {
                kind: kind.name(),
                d,
                max: kind.max_dim(),
            });
        }
        Ok(TopologySpec { kind, d })
    }

    pub fn hypercube(d: usize) -> Result<Self> {
        Self::new(TopologyKind::Hypercube, d)
    }

    pub fn ccc(d: usize) -> Result<Self> {
        Self::new(TopologyKind::Ccc, d)
    }

    pub fn butterfly(d: usize) -> Result<Self> {
        Self::new(TopologyKind::Butterfly, d)
    }

    pub fn vertex_count(&self) -> usize {
        let cols = 1usize << self.d;
        match self.kind {
            TopologyKind::Hypercube => cols,
            TopologyKind::Ccc => self.d * cols,
            TopologyKind::Butterfly => (self.d + 1) * cols,
        }
    }

    /// Q_d and CCC_d are vertex-transitive; butterflies are not (levels 0
    /// and d have degree 2).
    pub fn is_vertex_transitive(&self) -> bool {
        matches!(self.kind, TopologyKind::Hypercube | TopologyKind::Ccc)
    }

    pub fn generate(&self) -> Result<Graph> {
        Self::new(self.kind, self.d)?;
        match self.kind {
            TopologyKind::Hypercube => gen_hypercube(self.d),
            TopologyKind::Ccc => gen_ccc(self.d),
            TopologyKind::Butterfly => gen_butterfly(self.d),
        }
    }

    pub fn label_of(&self, v: usize) -> VertexLabel {
        let d = self.d;
        let cols = 1usize << d;
        let bits = |x: usize| BitString::new_unchecked(x as u64, d);
        match self.kind {
            TopologyKind::Hypercube => VertexLabel::Hypercube(bits(v)),
            TopologyKind::Ccc => VertexLabel::Ccc(CccLabel {
                level: v / cols,
                ring: bits(v % cols),
            }),
            TopologyKind::Butterfly => VertexLabel::Butterfly(BfLabel {
                level: v / cols,
                column: bits(v % cols),
            }),
        }
    }

    /// Strictly parses a label in this topology's syntax and returns its index.
    pub fn parse_label(&self, s: &str) -> Result<usize> {
        let d = self.d;
        let cols = 1usize << d;
        match self.kind {
            TopologyKind::Hypercube => Ok(BitString::parse(s, d)?.value() as usize),
            TopologyKind::Ccc => {
                let (level, ring) = label::parse_pair(s, d)?;
                let l = CccLabel::new(level, ring)?;
                Ok(l.level * cols + l.ring.value() as usize)
            }
            TopologyKind::Butterfly => {
                let (level, column) = label::parse_pair(s, d)?;
                let l = BfLabel::new(level, column)?;
                Ok(l.level * cols + l.column.value() as usize)
            }
        }
    }
}

pub fn ccc_index(d: usize, l: CccLabel) -> usize {
    l.level * (1 << d) + l.ring.value() as usize
}

pub fn bf_index(d: usize, l: BfLabel) -> usize {
    l.level * (1 << d) + l.column.value() as usize
}

fn labelled(spec: TopologySpec, g: Graph) -> Result<Graph> {
    let labels = (0..g.vertex_count()).map(|v| spec.label_of(v)).collect();
    Ok(g.with_labels(labels)?.with_topology(spec))
}

/// Mask selecting bit position `pos` (from the left) of a `d`-bit number.
#[inline]
pub(crate) fn pos_mask(d: usize, pos: usize) -> usize {
    1 << (d - 1 - pos)
}

/// `Q_d`: bit strings adjacent at Hamming distance one.
pub fn gen_hypercube(d: usize) -> Result<Graph> {
    let spec = TopologySpec::hypercube(d)?;
    let n = 1usize << d;
    let mut edges = Vec::with_capacity(d * n / 2);
    for x in 0..n {
        for pos in 0..d {
            let y = x ^ pos_mask(d, pos);
            if x < y {
                edges.push((x, y));
            }
        }
    }
    labelled(spec, Graph::from_edges(n, &edges)?)
}

/// `CCC_d`: cycle edges join consecutive levels (mod d) of one ring string;
/// hypercube edges join `[l,x]` and `[l,x(l)]`.
pub fn gen_ccc(d: usize) -> Result<Graph> {
    let spec = TopologySpec::ccc(d)?;
    let cols = 1usize << d;
    let idx = |l: usize, x: usize| l * cols + x;
    let mut edges = Vec::with_capacity(3 * d * cols / 2);
    for x in 0..cols {
        for l in 0..d {
            edges.push((idx(l, x), idx((l + 1) % d, x)));
            let y = x ^ pos_mask(d, l);
            if x < y {
                edges.push((idx(l, x), idx(l, y)));
            }
        }
    }
    labelled(spec, Graph::from_edges(d * cols, &edges)?)
}

/// `BF(d)`: straight edges `[l,c]–[l+1,c]` and cross edges
/// `[l,c]–[l+1,c(l)]`, the cross edge between levels `l` and `l+1`
/// complementing bit position `l`.
pub fn gen_butterfly(d: usize) -> Result<Graph> {
    let spec = TopologySpec::butterfly(d)?;
    let cols = 1usize << d;
    let idx = |l: usize, c: usize| l * cols + c;
    let mut edges = Vec::with_capacity(2 * d * cols);
    for l in 0..d {
        for c in 0..cols {
            edges.push((idx(l, c), idx(l + 1, c)));
            edges.push((idx(l, c), idx(l + 1, c ^ pos_mask(d, l))));
        }
    }
    labelled(spec, Graph::from_edges((d + 1) * cols, &edges)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::set::VertexSet;
    use crate::visibility::is_convex;
    use std::collections::BTreeMap;

    fn degree_profile(g: &Graph) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for v in 0..g.vertex_count() {
            *m.entry(g.degree(v)).or_insert(0) += 1;
        }
        m
    }

    #[test]
    fn hypercube_shapes() {
        let q3 = gen_hypercube(3).unwrap();
        assert_eq!((q3.vertex_count(), q3.edge_count()), (8, 12));
        let q1 = gen_hypercube(1).unwrap();
        assert_eq!((q1.vertex_count(), q1.edge_count()), (2, 1));
        let q5 = gen_hypercube(5).unwrap();
        assert_eq!(degree_profile(&q5), BTreeMap::from([(5, 32)]));
        assert!(gen_hypercube(0).is_err());
        assert!(matches!(
            gen_hypercube(25),
            Err(Error::ResourceGuard { .. })
        ));
    }

    #[test]
    fn ccc_shapes() {
        let g = gen_ccc(3).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (24, 36));
        assert_eq!(degree_profile(&g), BTreeMap::from([(3, 24)]));
        let spec = TopologySpec::ccc(3).unwrap();
        let ix = |s: &str| spec.parse_label(s).unwrap();
        assert!(g.has_edge(ix("[0,000]"), ix("[2,000]")));
        assert!(g.has_edge(ix("[1,000]"), ix("[1,010]")));
        assert!(!g.has_edge(ix("[1,000]"), ix("[1,001]")));
        assert!(gen_ccc(2).is_err());
    }

    #[test]
    fn butterfly_shapes() {
        let g = gen_butterfly(3).unwrap();
        assert_eq!(g.vertex_count(), 32);
        assert_eq!(degree_profile(&g), BTreeMap::from([(2, 16), (4, 16)]));
        let b1 = gen_butterfly(1).unwrap();
        assert_eq!((b1.vertex_count(), b1.edge_count()), (4, 4));
        assert!((0..4).all(|v| b1.degree(v) == 2));
        let b2 = gen_butterfly(2).unwrap();
        assert_eq!((b2.vertex_count(), b2.edge_count()), (12, 16));
    }

    #[test]
    fn labels_round_trip() {
        for spec in [
            TopologySpec::hypercube(4).unwrap(),
            TopologySpec::ccc(3).unwrap(),
            TopologySpec::butterfly(3).unwrap(),
        ] {
            let g = spec.generate().unwrap();
            for v in 0..g.vertex_count() {
                let s = g.label_string(v);
                assert_eq!(spec.parse_label(&s).unwrap(), v);
                assert_eq!(g.index_of_label(&s), Some(v));
            }
        }
        let bf = TopologySpec::butterfly(2).unwrap();
        assert!(bf.parse_label("[3,00]").is_err());
        assert!(bf.parse_label("[2,000]").is_err());
        assert!(TopologySpec::ccc(3)
            .unwrap()
            .parse_label("[3,000]")
            .is_err());
    }

    #[test]
    fn subcubes_are_convex() {
        for d in 2..=6 {
            let g = gen_hypercube(d).unwrap();
            let n = 1usize << d;
            for pos in 0..d {
                for val in [0, 1] {
                    let h = VertexSet::from_indices(
                        n,
                        (0..n).filter(|&x| (x & pos_mask(d, pos) != 0) as usize == val),
                    );
                    assert!(is_convex(&g, &h).unwrap(), "d={d} pos={pos}");
                }
            }
        }
    }

    #[test]
    fn butterfly_columns_are_convex_paths() {
        for d in 1..=5 {
            let g = gen_butterfly(d).unwrap();
            let cols = 1usize << d;
            for c in 0..cols {
                let col = VertexSet::from_indices(g.vertex_count(), (0..=d).map(|l| l * cols + c));
                assert!(is_convex(&g, &col).unwrap());
                let (sub, _) = g.induced_subgraph(&col).unwrap();
                assert_eq!(sub.edge_count(), d);
                assert!((0..=d).all(|v| sub.degree(v) <= 2));
            }
        }
    }
}
