//! Closed-form routing in CCC and butterflies, used as independent oracles
//! against breadth-first search on the generated graphs.

use super::label::{BfLabel, BitString, CccLabel};
use crate::error::{Error, Result};

fn check_width(d: usize, b: BitString) -> Result<()> {
    if b.width() != d {
        return Err(Error::InvalidLabel {
            label: b.to_string(),
            reason: format!("expected {d} bits"),
        });
    }
    Ok(())
}

/// Distance between two CCC vertices: the number of differing ring bits
/// plus the shortest walk on the level cycle from `u.level` to `v.level`
/// that visits every differing position.
pub fn ccc_natural_distance(d: usize, u: CccLabel, v: CccLabel) -> Result<usize> {
    check_width(d, u.ring)?;
    check_width(d, v.ring)?;
    if d < 3 || u.level >= d || v.level >= d {
        return Err(Error::InvalidDimension(format!(
            "CCC labels {u}, {v} for d={d}"
        )));
    }
    let required = u
        .ring
        .diff_positions(v.ring)
        .into_iter()
        .fold(0u64, |m, p| m | 1 << p);
    Ok(required.count_ones() as usize + covering_walk(d, u.level, v.level, required))
}

/// Shortest walk on the cycle `0..d` from `start` to `end` visiting every
/// index in `required`. Optimal walks on a cycle turn at most twice, so the
/// search enumerates a first leg in one direction, a second leg back, and a
/// final leg that resumes the first direction up to `end`.
fn covering_walk(d: usize, start: usize, end: usize, required: u64) -> usize {
    let step = |pos: usize, dir: isize| ((pos as isize + dir).rem_euclid(d as isize)) as usize;
    let mut best = usize::MAX;
    for dir in [1isize, -1] {
        for p in 0..=d {
            let mut seen = 1u64 << start;
            let mut pos = start;
            for _ in 0..p {
                pos = step(pos, dir);
                seen |= 1 << pos;
            }
            let (after_first, seen_first) = (pos, seen);
            for q in 0..=d {
                let (mut pos, mut seen) = (after_first, seen_first);
                for _ in 0..q {
                    pos = step(pos, -dir);
                    seen |= 1 << pos;
                }
                let r = if dir > 0 {
                    (end + d - pos) % d
                } else {
                    (pos + d - end) % d
                };
                for _ in 0..r {
                    pos = step(pos, dir);
                    seen |= 1 << pos;
                }
                if seen & required == required {
                    best = best.min(p + q + r);
                }
            }
        }
    }
    best
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RouteDirection {
    /// From `[0,i]` to `[d,j]`, fixing bits left to right.
    TopDown,
    /// From `[d,i]` to `[0,j]`, fixing bits right to left.
    BottomUp,
}

/// Bit-fixing route between opposite extreme levels of `BF(d)`.
pub fn bf_natural_route(
    d: usize,
    i: BitString,
    j: BitString,
    direction: RouteDirection,
) -> Result<Vec<BfLabel>> {
    check_width(d, i)?;
    check_width(d, j)?;
    let mut column = i;
    match direction {
        RouteDirection::TopDown => {
            let mut path = vec![BfLabel { level: 0, column }];
            for l in 0..d {
                if column.bit(l) != j.bit(l) {
                    column = column.flip(l);
                }
                path.push(BfLabel {
                    level: l + 1,
                    column,
                });
            }
            Ok(path)
        }
        RouteDirection::BottomUp => {
            let mut path = vec![BfLabel { level: d, column }];
            for l in (0..d).rev() {
                if column.bit(l) != j.bit(l) {
                    column = column.flip(l);
                }
                path.push(BfLabel { level: l, column });
            }
            Ok(path)
        }
    }
}

/// Inclusive band of levels that contains every shortest `u`–`v` path.
///
/// Bit position `k` can only change on an edge between levels `k` and
/// `k + 1`, so the band runs from `min(k', l_min)` to `max(k'' + 1, l_max)`
/// where `k'`, `k''` are the first and last differing column positions.
pub fn bf_level_span(d: usize, u: BfLabel, v: BfLabel) -> Result<(usize, usize)> {
    check_width(d, u.column)?;
    check_width(d, v.column)?;
    if u.level > d || v.level > d {
        return Err(Error::InvalidDimension(format!(
            "butterfly labels {u}, {v} for d={d}"
        )));
    }
    let (lmin, lmax) = (u.level.min(v.level), u.level.max(v.level));
    let diff = u.column.diff_positions(v.column);
    match (diff.first(), diff.last()) {
        (Some(&first), Some(&last)) => Ok((first.min(lmin), (last + 1).max(lmax))),
        _ => Ok((lmin, lmax)),
    }
}
