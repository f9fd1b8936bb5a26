//! File formats: graph JSON, DOT export and certificate files.
//!
//! Graph JSON is `{"n", "edges", "labels"?, "topology"?}`. A `topology`
//! entry must describe exactly the listed graph; it lets loaded files keep
//! their family (and with it, symmetry options in the solver).
//!
//! Certificates reference vertices by label string and carry a versioned
//! `format` tag. Both formats reject unknown fields.

use serde::{Deserialize, Serialize};

use crate::construct::{SetKind, Verification, VisibilityCertificate};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::set::VertexSet;
use crate::topology::{TopologyKind, TopologySpec, VertexLabel};
use crate::visibility::Verdict;

pub const CERT_FORMAT: &str = "mutvis-cert/1";

fn format_err(e: impl std::fmt::Display) -> Error {
    Error::Format(e.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub topology: Option<TopologySpec>,
}

impl GraphFile {
    pub fn from_graph(g: &Graph) -> Self {
        GraphFile {
            n: g.vertex_count(),
            edges: g.edges().collect(),
            labels: g
                .labels()
                .map(|ls| ls.iter().map(ToString::to_string).collect()),
            topology: g.topology(),
        }
    }

    pub fn into_graph(self) -> Result<Graph> {
        let g = Graph::from_edges(self.n, &self.edges)?;
        if let Some(spec) = self.topology {
            let spec = TopologySpec::new(spec.kind, spec.d)?;
            let generated = spec.generate()?;
            if generated.vertex_count() != g.vertex_count()
                || generated.edge_count() != g.edge_count()
                || g.edges().any(|(u, v)| !generated.has_edge(u, v))
            {
                return Err(Error::Format(format!("edges do not match topology {spec}")));
            }
            if let Some(labels) = &self.labels {
                for (i, l) in labels.iter().enumerate() {
                    if spec.parse_label(l)? != i {
                        return Err(Error::Format(format!(
                            "label {l:?} is not vertex {i} of {spec}"
                        )));
                    }
                }
            }
            return Ok(generated);
        }
        match self.labels {
            Some(labels) => g.with_labels(labels.into_iter().map(generic_label).collect()),
            None => Ok(g),
        }
    }
}

/// Label of an ingested vertex: decimal strings become indices.
fn generic_label(s: String) -> VertexLabel {
    match s.parse::<usize>() {
        Ok(i) if i.to_string() == s => VertexLabel::Index(i),
        _ => VertexLabel::Named(s),
    }
}

pub fn graph_to_json(g: &Graph) -> String {
    serde_json::to_string(&GraphFile::from_graph(g)).expect("graph file serializes")
}

pub fn graph_from_json(s: &str) -> Result<Graph> {
    serde_json::from_str::<GraphFile>(s)
        .map_err(format_err)?
        .into_graph()
}

/// Undirected DOT with label strings as node names.
pub fn graph_to_dot(g: &Graph) -> String {
    let quote = |s: String| format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""));
    let mut out = String::from("graph G {\n");
    for v in 0..g.vertex_count() {
        out.push_str(&format!("  {};\n", quote(g.label_string(v))));
    }
    for (u, v) in g.edges() {
        out.push_str(&format!(
            "  {} -- {};\n",
            quote(g.label_string(u)),
            quote(g.label_string(v))
        ));
    }
    out.push_str("}\n");
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum CertTopology {
    Hypercube { d: usize },
    Ccc { d: usize },
    Butterfly { d: usize },
    Generic { graph: GraphFile },
}

impl From<TopologySpec> for CertTopology {
    fn from(spec: TopologySpec) -> Self {
        match spec.kind {
            TopologyKind::Hypercube => CertTopology::Hypercube { d: spec.d },
            TopologyKind::Ccc => CertTopology::Ccc { d: spec.d },
            TopologyKind::Butterfly => CertTopology::Butterfly { d: spec.d },
        }
    }
}

impl CertTopology {
    fn spec(&self) -> Option<Result<TopologySpec>> {
        match *self {
            CertTopology::Hypercube { d } => Some(TopologySpec::hypercube(d)),
            CertTopology::Ccc { d } => Some(TopologySpec::ccc(d)),
            CertTopology::Butterfly { d } => Some(TopologySpec::butterfly(d)),
            CertTopology::Generic { .. } => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateFile {
    pub format: String,
    pub topology: CertTopology,
    pub set_kind: SetKind,
    pub vertices: Vec<String>,
    pub claimed_size: usize,
    pub source: String,
    #[serde(default)]
    pub verified: Verification,
}

impl From<&VisibilityCertificate> for CertificateFile {
    fn from(c: &VisibilityCertificate) -> Self {
        CertificateFile {
            format: CERT_FORMAT.to_string(),
            topology: c.topology.into(),
            set_kind: c.set_kind,
            vertices: c.vertices.iter().map(ToString::to_string).collect(),
            claimed_size: c.claimed_size,
            source: c.source.clone(),
            verified: c.verified,
        }
    }
}

impl CertificateFile {
    /// Certificate for a set on an arbitrary graph.
    pub fn generic(g: &Graph, set_kind: SetKind, set: &VertexSet, source: &str) -> Self {
        let topology = match g.topology() {
            Some(spec) => spec.into(),
            None => CertTopology::Generic {
                graph: GraphFile::from_graph(g),
            },
        };
        CertificateFile {
            format: CERT_FORMAT.to_string(),
            topology,
            set_kind,
            vertices: set.iter().map(|v| g.label_string(v)).collect(),
            claimed_size: set.len(),
            source: source.to_string(),
            verified: Verification::Unverified,
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let c: CertificateFile = serde_json::from_str(s).map_err(format_err)?;
        if c.format != CERT_FORMAT {
            return Err(Error::Format(format!(
                "unsupported format {:?}, expected {CERT_FORMAT:?}",
                c.format
            )));
        }
        if c.claimed_size != c.vertices.len() {
            return Err(Error::Format(format!(
                "claimed_size {} but {} vertices listed",
                c.claimed_size,
                c.vertices.len()
            )));
        }
        Ok(c)
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    /// The graph and the member set, with labels resolved strictly.
    pub fn resolve(&self) -> Result<(Graph, VertexSet)> {
        let g = match self.topology.spec() {
            Some(spec) => spec?.generate()?,
            None => match &self.topology {
                CertTopology::Generic { graph } => graph.clone().into_graph()?,
                _ => unreachable!("named topologies have a spec"),
            },
        };
        let mut set = VertexSet::new(g.vertex_count());
        for l in &self.vertices {
            let v = match g.topology() {
                Some(spec) => spec.parse_label(l)?,
                None => g.index_of_label(l).ok_or_else(|| Error::InvalidLabel {
                    label: l.clone(),
                    reason: "no such vertex".into(),
                })?,
            };
            if !set.insert(v) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Ok((g, set))
    }

    /// Runs the checker and records the outcome in `verified`.
    pub fn verify(&mut self) -> Result<Verdict> {
        let (g, set) = self.resolve()?;
        let verdict = self.set_kind.check(&g, &set)?;
        self.verified = if verdict.valid {
            Verification::Valid
        } else {
            Verification::Invalid
        };
        Ok(verdict)
    }
}
