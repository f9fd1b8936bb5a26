//! Mutual-visibility and total mutual-visibility sets in hypercube-like
//! interconnection networks.
//!
//! A set `X` of vertices is a *mutual-visibility set* when every two of its
//! members are joined by a shortest path with no internal vertex in `X`; it
//! is a *total* mutual-visibility set when that holds for every pair of
//! vertices of the graph. The crate provides:
//!
//! * [`graph`] and [`visibility`]: the graph type and the checkers;
//! * [`topology`]: generators and routing for `Q_d`, `CCC_d` and `BF(d)`;
//! * [`construct`]: explicit (total) mutual-visibility sets as certificates;
//! * [`solver`]: exact branch-and-bound search plus a brute-force oracle;
//! * [`bounds`]: closed-form bounds and approximation ratios;
//! * [`io`]: JSON/DOT graph files, certificate files and CSV tables.

pub mod bounds;
pub mod construct;
pub mod error;
pub mod exec;
pub mod graph;
pub mod io;
pub mod set;
pub mod solver;
pub mod topology;
pub mod visibility;

pub use bounds::{bf_exact, ccc_bounds, hamming_total_lower, hypercube_bounds, BoundsReport};
pub use construct::{Construction, SelfCheck, SetKind, Verification, VisibilityCertificate};
pub use error::{Error, Result};
pub use exec::Exec;
pub use graph::{cartesian_product, DistanceRow, Graph};
pub use io::{CertTopology, CertificateFile, GraphFile};
pub use set::VertexSet;
pub use solver::{
    brute_force_mv, max_mv_set, max_total_mv_set, SolveOptions, SolveReport, StructuralCap,
    Symmetry,
};
pub use topology::{TopologyKind, TopologySpec, VertexLabel};
pub use visibility::{
    bypass_vertices, geodesic_interval, has_zero_total_mv, is_convex, is_mutual_visibility_set,
    is_pair_visible, is_total_mutual_visibility_set, BypassReport, Verdict,
};
