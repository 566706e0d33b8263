use serde::{Deserialize, Serialize};

use crate::relation::PreferenceRelation;
use crate::space::{Alt, Axis};

/// A weak order on the labels of one axis, as dense ranks (0 = lowest class).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeakOrder {
    ranks: Vec<usize>,
}

impl WeakOrder {
    pub fn from_ranks(ranks: Vec<usize>) -> Self {
        WeakOrder { ranks }
    }

    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn rank(&self, a: usize) -> usize {
        self.ranks[a]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn classes(&self) -> usize {
        self.ranks.iter().max().map_or(0, |m| m + 1)
    }

    /// `a ≽ b`
    pub fn ge(&self, a: usize, b: usize) -> bool {
        self.ranks[a] >= self.ranks[b]
    }

    pub fn is_max(&self, a: usize) -> bool {
        self.ranks[a] + 1 == self.classes()
    }

    pub fn is_min(&self, a: usize) -> bool {
        self.ranks[a] == 0
    }

    /// Labels sorted ascending, ties by index.
    pub fn ascending(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.ranks.len()).collect();
        v.sort_by_key(|&a| (self.ranks[a], a));
        v
    }
}

/// A strict reversal: `(a, c) ≻ (b, c)` and `(b, d) ≻ (a, d)`, where `a, b`
/// live on `axis` and `c, d` on the other axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparabilityWitness {
    pub axis: Axis,
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
}

impl SeparabilityWitness {
    pub fn points(&self) -> [Alt; 4] {
        let at = |x: usize, p: usize| match self.axis {
            Axis::One => Alt(x, p),
            Axis::Two => Alt(p, x),
        };
        [
            at(self.a, self.c),
            at(self.b, self.c),
            at(self.b, self.d),
            at(self.a, self.d),
        ]
    }

    /// True iff the reversal is present in `rel`.
    pub fn replays(&self, rel: &PreferenceRelation) -> bool {
        let [ac, bc, bd, ad] = self.points();
        rel.gt(ac, bc) && rel.gt(bd, ad)
    }
}

fn at(axis: Axis, x: usize, p: usize) -> Alt {
    match axis {
        Axis::One => Alt(x, p),
        Axis::Two => Alt(p, x),
    }
}

/// Derived order `a ≽ᵢ b ⇔ a·p ≽ b·p for all p`, or the first strict reversal
/// in `(a, b, c, d)` scan order.
pub fn coordinate_order(
    rel: &PreferenceRelation,
    axis: Axis,
) -> Result<WeakOrder, SeparabilityWitness> {
    let m = rel.space().size(axis);
    let k = rel.space().size(axis.other());
    for a in 0..m {
        for b in 0..m {
            if a == b {
                continue;
            }
            for c in 0..k {
                if !rel.gt(at(axis, a, c), at(axis, b, c)) {
                    continue;
                }
                if let Some(d) = (0..k).find(|&d| rel.gt(at(axis, b, d), at(axis, a, d))) {
                    return Err(SeparabilityWitness { axis, a, b, c, d });
                }
            }
        }
    }
    // Without reversals ≽ᵢ is complete; the number of labels each one
    // dominates is then a faithful score when ≽ is transitive.
    let ge = |a: usize, b: usize| (0..k).all(|c| rel.ge(at(axis, a, c), at(axis, b, c)));
    let score: Vec<usize> = (0..m)
        .map(|a| (0..m).filter(|&b| ge(a, b)).count())
        .collect();
    let mut levels = score.clone();
    levels.sort_unstable();
    levels.dedup();
    let ranks = score
        .iter()
        .map(|s| levels.binary_search(s).expect("present"))
        .collect();
    Ok(WeakOrder { ranks })
}

/// Both derived orders.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoordinateOrders {
    pub o1: WeakOrder,
    pub o2: WeakOrder,
}

impl CoordinateOrders {
    pub fn of(rel: &PreferenceRelation) -> Result<Self, SeparabilityWitness> {
        Ok(CoordinateOrders {
            o1: coordinate_order(rel, Axis::One)?,
            o2: coordinate_order(rel, Axis::Two)?,
        })
    }

    pub fn axis(&self, axis: Axis) -> &WeakOrder {
        match axis {
            Axis::One => &self.o1,
            Axis::Two => &self.o2,
        }
    }
}
