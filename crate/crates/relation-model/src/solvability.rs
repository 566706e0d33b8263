use serde::{Deserialize, Serialize};

use crate::relation::PreferenceRelation;
use crate::space::{Alt, Axis};

/// A bracketed target with no matching point on the line through `fixed`:
/// `x·a ≻ y ≻ x·c` along `axis` but no `b` with `x·b ∼ y`.
///
/// `a` is the lowest label strictly above `y` and `c` the highest strictly
/// below it, so each `(axis, fixed, y)` is reported once.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolvabilityGap {
    /// Axis whose label varies along the line.
    pub axis: Axis,
    /// Label held fixed on the other axis.
    pub fixed: usize,
    pub a: usize,
    pub c: usize,
    pub y: Alt,
}

impl SolvabilityGap {
    pub fn point(&self, label: usize) -> Alt {
        match self.axis {
            Axis::One => Alt(label, self.fixed),
            Axis::Two => Alt(self.fixed, label),
        }
    }
}

/// Finite restricted-solvability diagnostic.
pub fn solvability_gaps(rel: &PreferenceRelation) -> Vec<SolvabilityGap> {
    let space = rel.space();
    let mut out = Vec::new();
    for axis in [Axis::One, Axis::Two] {
        let m = space.size(axis);
        for fixed in 0..space.size(axis.other()) {
            let line = |b: usize| match axis {
                Axis::One => Alt(b, fixed),
                Axis::Two => Alt(fixed, b),
            };
            for y in space.alts() {
                if (0..m).any(|b| rel.indiff(line(b), y)) {
                    continue;
                }
                let above = (0..m).filter(|&b| rel.gt(line(b), y)).reduce(|u, v| {
                    if rel.gt(line(u), line(v)) {
                        v
                    } else {
                        u
                    }
                });
                let below = (0..m).filter(|&b| rel.gt(y, line(b))).reduce(|u, v| {
                    if rel.gt(line(v), line(u)) {
                        v
                    } else {
                        u
                    }
                });
                if let (Some(a), Some(c)) = (above, below) {
                    out.push(SolvabilityGap {
                        axis,
                        fixed,
                        a,
                        c,
                        y,
                    });
                }
            }
        }
    }
    out
}
