//! Vertex labels for the generated topologies.
//!
//! Binary strings are read with position 0 as the leftmost character, which
//! is also the most significant bit when the string is taken as a number.

use std::fmt;

use crate::error::{Error, Result};

/// Fixed-width binary string, position 0 leftmost.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct BitString {
    value: u64,
    width: usize,
}

impl BitString {
    pub fn new(value: u64, width: usize) -> Result<Self> {
        if width == 0 || width > 63 {
            return Err(Error::InvalidDimension(format!(
                "bit width {width} not in 1..=63"
            )));
        }
        if value >> width != 0 {
            return Err(Error::InvalidLabel {
                label: value.to_string(),
                reason: format!("does not fit in {width} bits"),
            });
        }
        Ok(BitString { value, width })
    }

    pub(crate) fn new_unchecked(value: u64, width: usize) -> Self {
        debug_assert!(width <= 63 && value >> width == 0);
        BitString { value, width }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn width(self) -> usize {
        self.width
    }

    /// Bit at `pos`, counted from the left.
    pub fn bit(self, pos: usize) -> bool {
        debug_assert!(pos < self.width);
        self.value >> (self.width - 1 - pos) & 1 == 1
    }

    /// Complements position `pos` (the `x(i)` operation).
    pub fn flip(self, pos: usize) -> Self {
        debug_assert!(pos < self.width);
        BitString {
            value: self.value ^ (1 << (self.width - 1 - pos)),
            width: self.width,
        }
    }

    pub fn ones(self) -> u32 {
        self.value.count_ones()
    }

    /// Positions where `self` and `other` differ, ascending.
    pub fn diff_positions(self, other: BitString) -> Vec<usize> {
        (0..self.width)
            .filter(|&i| self.bit(i) != other.bit(i))
            .collect()
    }

    /// Strict parse: exactly `width` characters, each `0` or `1`.
    pub fn parse(s: &str, width: usize) -> Result<Self> {
        let bad = |reason: String| Error::InvalidLabel {
            label: s.to_string(),
            reason,
        };
        if s.len() != width {
            return Err(bad(format!("expected {width} bits, got {}", s.len())));
        }
        let mut value = 0u64;
        for c in s.chars() {
            value = value << 1
                | match c {
                    '0' => 0,
                    '1' => 1,
                    other => return Err(bad(format!("unexpected character {other:?}"))),
                };
        }
        BitString::new(value, width)
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:0w$b}", self.value, w = self.width)
    }
}

/// `[level,ring]` vertex of a cube-connected cycle; levels are taken mod `d`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct CccLabel {
    pub level: usize,
    pub ring: BitString,
}

/// `[level,column]` vertex of a butterfly; `level` ranges over `0..=d`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct BfLabel {
    pub level: usize,
    pub column: BitString,
}

impl CccLabel {
    pub fn new(level: usize, ring: BitString) -> Result<Self> {
        if level >= ring.width() {
            return Err(Error::InvalidLabel {
                label: format!("[{level},{ring}]"),
                reason: format!("level must be below {}", ring.width()),
            });
        }
        Ok(CccLabel { level, ring })
    }
}

impl BfLabel {
    pub fn new(level: usize, column: BitString) -> Result<Self> {
        if level > column.width() {
            return Err(Error::InvalidLabel {
                label: format!("[{level},{column}]"),
                reason: format!("level must be at most {}", column.width()),
            });
        }
        Ok(BfLabel { level, column })
    }
}

impl fmt::Display for CccLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.level, self.ring)
    }
}

impl fmt::Display for BfLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.level, self.column)
    }
}

/// Splits `[level,bits]` into its two parts.
pub(crate) fn parse_pair(s: &str, width: usize) -> Result<(usize, BitString)> {
    let bad = |reason: &str| Error::InvalidLabel {
        label: s.to_string(),
        reason: reason.to_string(),
    };
    let inner = s
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| bad("expected [level,bits]"))?;
    let (lvl, bits) = inner
        .split_once(',')
        .ok_or_else(|| bad("expected [level,bits]"))?;
    if lvl.is_empty() || !lvl.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad("level must be a non-negative integer"));
    }
    let level = lvl.parse().map_err(|_| bad("level out of range"))?;
    Ok((level, BitString::parse(bits, width)?))
}

/// Tagged vertex label.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum VertexLabel {
    Hypercube(BitString),
    Ccc(CccLabel),
    Butterfly(BfLabel),
    Index(usize),
    /// Free-form label carried by an ingested graph.
    Named(String),
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexLabel::Hypercube(b) => b.fmt(f),
            VertexLabel::Ccc(l) => l.fmt(f),
            VertexLabel::Butterfly(l) => l.fmt(f),
            VertexLabel::Index(i) => i.fmt(f),
            VertexLabel::Named(s) => f.write_str(s),
        }
    }
}
