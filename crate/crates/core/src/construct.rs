//! Explicit mutual-visibility and total mutual-visibility sets.
//!
//! Each construction returns a [`VisibilityCertificate`] holding vertex
//! labels rather than indices. Several of these sets repair ambiguities in
//! their source definitions, so by default debug builds run the checker on
//! the generated topology before handing a certificate out.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::set::VertexSet;
use crate::topology::{pos_mask, TopologySpec, VertexLabel};
use crate::visibility::{is_mutual_visibility_set, is_total_mutual_visibility_set, Verdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SetKind {
    Mutual,
    Total,
}

impl SetKind {
    pub fn check(self, g: &Graph, x: &VertexSet) -> Result<Verdict> {
        match self {
            SetKind::Mutual => is_mutual_visibility_set(g, x),
            SetKind::Total => is_total_mutual_visibility_set(g, x),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Verification {
    #[default]
    Unverified,
    Valid,
    Invalid,
}

/// A claimed (total) mutual-visibility set on a generated topology.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VisibilityCertificate {
    pub topology: TopologySpec,
    pub set_kind: SetKind,
    pub vertices: Vec<VertexLabel>,
    pub claimed_size: usize,
    pub verified: Verification,
    pub source: String,
}

impl VisibilityCertificate {
    fn new(topology: TopologySpec, set_kind: SetKind, members: VertexSet, source: &str) -> Self {
        let vertices: Vec<_> = members.iter().map(|v| topology.label_of(v)).collect();
        VisibilityCertificate {
            topology,
            set_kind,
            claimed_size: vertices.len(),
            vertices,
            verified: Verification::Unverified,
            source: source.to_string(),
        }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Member indices in the generated topology.
    pub fn to_set(&self) -> Result<VertexSet> {
        let mut set = VertexSet::new(self.topology.vertex_count());
        for l in &self.vertices {
            set.insert(self.topology.parse_label(&l.to_string())?);
        }
        Ok(set)
    }

    /// Runs the checker for `set_kind` on `g` and records the outcome.
    pub fn verify_on(&mut self, g: &Graph) -> Result<Verdict> {
        let x = self.to_set()?;
        let verdict = self.set_kind.check(g, &x)?;
        self.verified = if verdict.valid && self.claimed_size == x.len() {
            Verification::Valid
        } else {
            Verification::Invalid
        };
        Ok(verdict)
    }

    pub fn verify(&mut self) -> Result<Verdict> {
        let g = self.topology.generate()?;
        self.verify_on(&g)
    }
}

/// Whether a construction runs the checker before returning.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SelfCheck {
    Skip,
    Verify,
}

impl Default for SelfCheck {
    fn default() -> Self {
        if cfg!(debug_assertions) {
            SelfCheck::Verify
        } else {
            SelfCheck::Skip
        }
    }
}

/// Named constructions, as exposed on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Construction {
    HcMiddleLayers,
    HcStored,
    CccLevel0,
    Ccc3Stored,
    BfMv,
    BfTotal,
}

impl Construction {
    pub const ALL: [Construction; 6] = [
        Construction::HcMiddleLayers,
        Construction::HcStored,
        Construction::CccLevel0,
        Construction::Ccc3Stored,
        Construction::BfMv,
        Construction::BfTotal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Construction::HcMiddleLayers => "hc-middle-layers",
            Construction::HcStored => "hc-stored",
            Construction::CccLevel0 => "ccc-level0",
            Construction::Ccc3Stored => "ccc3-stored",
            Construction::BfMv => "bf-mv",
            Construction::BfTotal => "bf-total",
        }
    }

    pub fn build(self, d: usize, check: SelfCheck) -> Result<VisibilityCertificate> {
        let mut cert = match self {
            Construction::HcMiddleLayers => middle_layers(d)?,
            Construction::HcStored => hypercube_stored(d)?,
            Construction::CccLevel0 => ccc_level_zero(d)?,
            Construction::Ccc3Stored => {
                if d != 3 {
                    return Err(Error::Unsupported(format!(
                        "ccc3-stored is defined for d=3 only, got {d}"
                    )));
                }
                ccc3_stored()?
            }
            Construction::BfMv => bf_mv(d)?,
            Construction::BfTotal => bf_total(d)?,
        };
        if check == SelfCheck::Verify {
            let verdict = cert.verify()?;
            if let Some((u, v)) = verdict.failing_pair {
                return Err(Error::SelfCheckFailed {
                    name: self.name().to_string(),
                    d,
                    u,
                    v,
                });
            }
        }
        Ok(cert)
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Construction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Construction::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Unsupported(format!("unknown construction {s:?}")))
    }
}

/// Union of the hypercube layers with `⌊d/2⌋` and `⌊d/2⌋ + 3` ones.
pub fn hypercube_middle_layers(d: usize) -> Result<VisibilityCertificate> {
    Construction::HcMiddleLayers.build(d, SelfCheck::default())
}

/// Optimal sets found by exhaustive search for `Q_1` to `Q_5`.
pub fn hypercube_stored_optimum(d: usize) -> Result<VisibilityCertificate> {
    Construction::HcStored.build(d, SelfCheck::default())
}

/// Level-0 vertices `[0,x]` of `CCC_d` whose ring strings are zero outside
/// positions `1..⌈d/2⌉`.
pub fn ccc_level_zero_set(d: usize) -> Result<VisibilityCertificate> {
    Construction::CccLevel0.build(d, SelfCheck::default())
}

/// Optimal six-vertex set of `CCC_3`.
pub fn ccc3_stored_optimum() -> Result<VisibilityCertificate> {
    Construction::Ccc3Stored.build(3, SelfCheck::default())
}

/// Levels 0 and `d` of `BF(d)` without the all-ones column.
pub fn bf_mv_set(d: usize) -> Result<VisibilityCertificate> {
    Construction::BfMv.build(d, SelfCheck::default())
}

/// Extreme-level vertices of `BF(d)` in columns `i` with `i` odd and
/// `i ≤ 2^(d-1)`, or `i` even and `i ≥ 2^(d-1)`.
pub fn bf_total_mv_set(d: usize) -> Result<VisibilityCertificate> {
    Construction::BfTotal.build(d, SelfCheck::default())
}

fn middle_layers(d: usize) -> Result<VisibilityCertificate> {
    let spec = TopologySpec::hypercube(d)?;
    let p = (d / 2) as u32;
    let n = spec.vertex_count();
    let set = VertexSet::from_indices(
        n,
        (0..n).filter(|x| {
            let ones = x.count_ones();
            ones == p || ones == p + 3
        }),
    );
    Ok(VisibilityCertificate::new(
        spec,
        SetKind::Mutual,
        set,
        Construction::HcMiddleLayers.name(),
    ))
}

const STORED_Q: [&[&str]; 5] = [
    &["0", "1"],
    &["00", "01", "10"],
    &["000", "001", "100", "110", "011"],
    &[
        "0000", "0001", "0100", "0110", "0011", "1101", "1010", "1011", "1110",
    ],
    &[
        "00000", "00001", "00100", "00110", "00011", "01101", "01010", "01011", "01110", "10101",
        "10111", "11000", "11001", "11100", "11110", "11011",
    ],
];

const STORED_CCC3: [&str; 6] = [
    "[0,100]", "[1,110]", "[1,000]", "[0,001]", "[1,111]", "[0,011]",
];

fn stored(spec: TopologySpec, labels: &[&str]) -> Result<VertexSet> {
    let mut set = VertexSet::new(spec.vertex_count());
    for l in labels {
        set.insert(spec.parse_label(l)?);
    }
    Ok(set)
}

fn hypercube_stored(d: usize) -> Result<VisibilityCertificate> {
    if !(1..=5).contains(&d) {
        return Err(Error::Unsupported(format!(
            "no stored optimum for Q_{d} (only d=1..5)"
        )));
    }
    let spec = TopologySpec::hypercube(d)?;
    let set = stored(spec, STORED_Q[d - 1])?;
    Ok(VisibilityCertificate::new(
        spec,
        SetKind::Mutual,
        set,
        "stored-optimum",
    ))
}

fn ccc3_stored() -> Result<VisibilityCertificate> {
    let spec = TopologySpec::ccc(3)?;
    let set = stored(spec, &STORED_CCC3)?;
    Ok(VisibilityCertificate::new(
        spec,
        SetKind::Mutual,
        set,
        "stored-optimum",
    ))
}

fn ccc_level_zero(d: usize) -> Result<VisibilityCertificate> {
    let spec = TopologySpec::ccc(d)?;
    let half = d.div_ceil(2);
    let free: usize = (1..half).map(|p| pos_mask(d, p)).sum();
    let cols = 1usize << d;
    // Level 0 occupies indices 0..cols; keep ring strings inside `free`.
    let set = VertexSet::from_indices(spec.vertex_count(), (0..cols).filter(|&x| x & !free == 0));
    Ok(VisibilityCertificate::new(
        spec,
        SetKind::Mutual,
        set,
        Construction::CccLevel0.name(),
    ))
}

fn bf_mv(d: usize) -> Result<VisibilityCertificate> {
    let spec = TopologySpec::butterfly(d)?;
    let cols = 1usize << d;
    let ones = cols - 1;
    let set = VertexSet::from_indices(
        spec.vertex_count(),
        (0..cols)
            .filter(|&c| c != ones)
            .flat_map(|c| [c, d * cols + c]),
    );
    Ok(VisibilityCertificate::new(
        spec,
        SetKind::Mutual,
        set,
        Construction::BfMv.name(),
    ))
}

/// Column rule for the total set; `i == 2^(d-1)` is included among the
/// even columns so that exactly half of the columns qualify.
pub fn bf_total_column(d: usize, i: usize) -> bool {
    let half = 1usize << (d - 1);
    if i % 2 == 1 {
        i <= half
    } else {
        i >= half
    }
}

fn bf_total(d: usize) -> Result<VisibilityCertificate> {
    let spec = TopologySpec::butterfly(d)?;
    let cols = 1usize << d;
    let set = VertexSet::from_indices(
        spec.vertex_count(),
        (0..cols)
            .filter(|&c| bf_total_column(d, c))
            .flat_map(|c| [c, d * cols + c]),
    );
    Ok(VisibilityCertificate::new(
        spec,
        SetKind::Total,
        set,
        Construction::BfTotal.name(),
    ))
}
