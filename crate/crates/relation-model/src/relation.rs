use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::space::{Alt, Axis, ProductSpace};

/// Outcome of comparing `x` with `y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Cmp {
    /// `x ≻ y`
    #[serde(rename = "P")]
    Pref,
    /// `x ∼ y`
    #[serde(rename = "I")]
    Indiff,
    /// `x ≺ y`
    #[serde(rename = "D")]
    Dispref,
}

impl Cmp {
    pub fn mirror(self) -> Cmp {
        match self {
            Cmp::Pref => Cmp::Dispref,
            Cmp::Indiff => Cmp::Indiff,
            Cmp::Dispref => Cmp::Pref,
        }
    }

    pub fn code(self) -> &'static str {
        match self {
            Cmp::Pref => "P",
            Cmp::Indiff => "I",
            Cmp::Dispref => "D",
        }
    }

    pub fn from_code(s: &str) -> Option<Cmp> {
        match s {
            "P" => Some(Cmp::Pref),
            "I" => Some(Cmp::Indiff),
            "D" => Some(Cmp::Dispref),
            _ => None,
        }
    }

    pub fn from_ordering(o: std::cmp::Ordering) -> Cmp {
        match o {
            std::cmp::Ordering::Greater => Cmp::Pref,
            std::cmp::Ordering::Equal => Cmp::Indiff,
            std::cmp::Ordering::Less => Cmp::Dispref,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RelationError {
    #[error("alternative {0:?} is not indifferent to itself")]
    NotReflexive(Alt),
    #[error("table entries for {0:?} and {1:?} are not mirror images")]
    NotMirrored(Alt, Alt),
    #[error("value of alternative {0:?} is not finite")]
    NotFinite(Alt),
}

/// Complete comparison table over `X₁ × X₂`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreferenceRelation {
    space: ProductSpace,
    table: Vec<Cmp>,
}

impl PreferenceRelation {
    /// Builds the table from `f(x, y)`; checks reflexivity and mirror symmetry.
    pub fn from_fn(
        space: ProductSpace,
        mut f: impl FnMut(Alt, Alt) -> Cmp,
    ) -> Result<Self, RelationError> {
        let n = space.len();
        let mut table = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                table.push(f(space.alt(x), space.alt(y)));
            }
        }
        let rel = PreferenceRelation { space, table };
        rel.validate()?;
        Ok(rel)
    }

    /// The relation `x ≽ y ⇔ u(x) ≥ u(y)` with exact float comparison.
    pub fn from_utility(
        space: ProductSpace,
        mut u: impl FnMut(Alt) -> f64,
    ) -> Result<Self, RelationError> {
        let vals: Vec<f64> = space.alts().map(&mut u).collect();
        for (id, v) in vals.iter().enumerate() {
            if !v.is_finite() {
                return Err(RelationError::NotFinite(space.alt(id)));
            }
        }
        let n = space.len();
        let mut table = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                table.push(Cmp::from_ordering(vals[x].total_cmp(&vals[y])));
            }
        }
        Ok(PreferenceRelation { space, table })
    }

    pub(crate) fn from_table_unchecked(space: ProductSpace, table: Vec<Cmp>) -> Self {
        PreferenceRelation { space, table }
    }

    fn validate(&self) -> Result<(), RelationError> {
        let n = self.space.len();
        for x in 0..n {
            if self.table[x * n + x] != Cmp::Indiff {
                return Err(RelationError::NotReflexive(self.space.alt(x)));
            }
            for y in x + 1..n {
                if self.table[x * n + y] != self.table[y * n + x].mirror() {
                    return Err(RelationError::NotMirrored(
                        self.space.alt(x),
                        self.space.alt(y),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn space(&self) -> &ProductSpace {
        &self.space
    }

    #[inline]
    pub fn cmp(&self, x: Alt, y: Alt) -> Cmp {
        let n = self.space.len();
        self.table[self.space.index(x) * n + self.space.index(y)]
    }

    /// `x ≽ y`
    #[inline]
    pub fn ge(&self, x: Alt, y: Alt) -> bool {
        self.cmp(x, y) != Cmp::Dispref
    }

    /// `x ≻ y`
    #[inline]
    pub fn gt(&self, x: Alt, y: Alt) -> bool {
        self.cmp(x, y) == Cmp::Pref
    }

    /// `x ∼ y`
    #[inline]
    pub fn indiff(&self, x: Alt, y: Alt) -> bool {
        self.cmp(x, y) == Cmp::Indiff
    }

    /// Copy with `x ? y` set to `c` (and the mirror entry updated).
    pub fn with_entry(&self, x: Alt, y: Alt, c: Cmp) -> Self {
        let mut out = self.clone();
        let n = self.space.len();
        let (ix, iy) = (self.space.index(x), self.space.index(y));
        if ix == iy {
            return out;
        }
        out.table[ix * n + iy] = c;
        out.table[iy * n + ix] = c.mirror();
        out
    }

    /// The same relation with the factors exchanged: `(p, a) ≽ᵀ (q, b) ⇔ (a, p) ≽ (b, q)`.
    pub fn transposed(&self) -> PreferenceRelation {
        let space = self.space.transposed();
        let n = space.len();
        let mut table = Vec::with_capacity(n * n);
        for x in 0..n {
            let ax = space.alt(x);
            for y in 0..n {
                let ay = space.alt(y);
                table.push(self.cmp(Alt(ax.1, ax.0), Alt(ay.1, ay.0)));
            }
        }
        PreferenceRelation { space, table }
    }

    /// Labels `a ≠ b` on `axis` with `a·p ∼ b·p` for every `p`, first in scan order.
    pub fn duplicate_labels(&self, axis: Axis) -> Option<(usize, usize)> {
        let m = self.space.size(axis);
        (0..m)
            .flat_map(|a| (a + 1..m).map(move |b| (a, b)))
            .find(|&(a, b)| self.labels_equivalent(axis, a, b))
    }

    fn labels_equivalent(&self, axis: Axis, a: usize, b: usize) -> bool {
        (0..self.space.size(axis.other())).all(|p| {
            let (x, y) = match axis {
                Axis::One => (Alt(a, p), Alt(b, p)),
                Axis::Two => (Alt(p, a), Alt(p, b)),
            };
            self.indiff(x, y)
        })
    }

    /// Collapses duplicated labels onto their first representative.
    pub fn merge_duplicates(&self) -> (PreferenceRelation, MergeMap) {
        let classes = |axis: Axis| -> (Vec<usize>, Vec<usize>) {
            let m = self.space.size(axis);
            let mut reps: Vec<usize> = Vec::new();
            let mut map = vec![0; m];
            for (a, slot) in map.iter_mut().enumerate() {
                match reps
                    .iter()
                    .position(|&r| self.labels_equivalent(axis, r, a))
                {
                    Some(k) => *slot = k,
                    None => {
                        *slot = reps.len();
                        reps.push(a);
                    }
                }
            }
            (reps, map)
        };
        let (r1, map1) = classes(Axis::One);
        let (r2, map2) = classes(Axis::Two);
        let space = ProductSpace::new(
            r1.iter()
                .map(|&a| self.space.label(Axis::One, a).to_string())
                .collect(),
            r2.iter()
                .map(|&p| self.space.label(Axis::Two, p).to_string())
                .collect(),
        )
        .expect("representative labels are unique");
        let n = space.len();
        let mut table = Vec::with_capacity(n * n);
        for x in 0..n {
            let ax = space.alt(x);
            for y in 0..n {
                let ay = space.alt(y);
                table.push(self.cmp(Alt(r1[ax.0], r2[ax.1]), Alt(r1[ay.0], r2[ay.1])));
            }
        }
        (
            PreferenceRelation { space, table },
            MergeMap {
                axis1: map1,
                axis2: map2,
            },
        )
    }
}

/// Original label index → index in the merged space, per axis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MergeMap {
    pub axis1: Vec<usize>,
    pub axis2: Vec<usize>,
}

impl MergeMap {
    pub fn identity(space: &ProductSpace) -> Self {
        MergeMap {
            axis1: (0..space.m1()).collect(),
            axis2: (0..space.m2()).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.axis1.iter().enumerate().all(|(i, &k)| i == k)
            && self.axis2.iter().enumerate().all(|(i, &k)| i == k)
    }

    pub fn axis(&self, axis: Axis) -> &[usize] {
        match axis {
            Axis::One => &self.axis1,
            Axis::Two => &self.axis2,
        }
    }

    /// Re-expands a per-label table of the merged space.
    pub fn expand<T: Clone>(&self, axis: Axis, merged: &[T]) -> Vec<T> {
        self.axis(axis).iter().map(|&k| merged[k].clone()).collect()
    }
}
