use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::altset::AltSet;
use crate::budget::{Budget, BudgetExceeded};
use crate::orders::{CoordinateOrders, SeparabilityWitness, WeakOrder};
use crate::relation::{MergeMap, PreferenceRelation};
use crate::space::{Alt, Axis, ProductSpace};
use crate::tc::{triple_cancellation, TcWitness};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ConeKind {
    #[serde(rename = "SE")]
    SE,
    #[serde(rename = "NW")]
    NW,
}

impl ConeKind {
    pub fn other(self) -> ConeKind {
        match self {
            ConeKind::SE => ConeKind::NW,
            ConeKind::NW => ConeKind::SE,
        }
    }
}

impl CoordinateOrders {
    /// `x ∈ SE(z)` (or `NW(z)`).
    pub fn in_cone(&self, z: Alt, kind: ConeKind, x: Alt) -> bool {
        match kind {
            ConeKind::SE => self.o1.ge(x.0, z.0) && self.o2.ge(z.1, x.1),
            ConeKind::NW => self.o2.ge(x.1, z.1) && self.o1.ge(z.0, x.0),
        }
    }

    pub fn cone(&self, space: &ProductSpace, z: Alt, kind: ConeKind) -> AltSet {
        AltSet::from_alts(space, space.alts().filter(|&x| self.in_cone(z, kind, x)))
    }

    /// `z` can anchor a cone of this kind in the region definition: for SE,
    /// `z₁` not maximal and `z₂` not minimal; mirrored for NW.
    pub fn is_anchor(&self, z: Alt, kind: ConeKind) -> bool {
        match kind {
            ConeKind::SE => !self.o1.is_max(z.0) && !self.o2.is_min(z.1),
            ConeKind::NW => !self.o1.is_min(z.0) && !self.o2.is_max(z.1),
        }
    }

    /// `x` sits on the boundary that the extreme clause of `kind` covers.
    pub fn on_boundary(&self, x: Alt, kind: ConeKind) -> bool {
        match kind {
            ConeKind::SE => self.o1.is_max(x.0) || self.o2.is_min(x.1),
            ConeKind::NW => self.o1.is_min(x.0) || self.o2.is_max(x.1),
        }
    }
}

/// `SE(z)` or `NW(z)` under the derived orders of `rel`.
pub fn cone(
    rel: &PreferenceRelation,
    z: Alt,
    kind: ConeKind,
) -> Result<AltSet, SeparabilityWitness> {
    let orders = CoordinateOrders::of(rel)?;
    Ok(orders.cone(rel.space(), z, kind))
}

/// Coordinates essential on `set`: `[axis 1, axis 2]`.
pub fn essential_on(rel: &PreferenceRelation, set: &AltSet) -> [bool; 2] {
    let members: Vec<Alt> = set.iter().collect();
    let mut out = [false; 2];
    for &x in &members {
        for &y in &members {
            if x.1 == y.1 && x.0 != y.0 && rel.gt(x, y) {
                out[0] = true;
            }
            if x.0 == y.0 && x.1 != y.1 && rel.gt(x, y) {
                out[1] = true;
            }
        }
        if out == [true, true] {
            break;
        }
    }
    out
}

/// Triple-cancellation outcome for every cone `SE(z)`, `NW(z)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeTable {
    pub se: Vec<bool>,
    pub nw: Vec<bool>,
    /// Cones actually scanned; the rest were inferred from nesting.
    pub scanned: usize,
}

impl ConeTable {
    pub fn passes(&self, space: &ProductSpace, z: Alt, kind: ConeKind) -> bool {
        let id = space.index(z);
        match kind {
            ConeKind::SE => self.se[id],
            ConeKind::NW => self.nw[id],
        }
    }

    /// Scans every cone, skipping those whose outcome follows from nesting:
    /// a cone inside a passing cone passes, one containing a failing cone fails.
    pub fn compute(
        rel: &PreferenceRelation,
        orders: &CoordinateOrders,
        budget: &mut Budget,
    ) -> Result<Self, BudgetExceeded> {
        let space = rel.space();
        let mut scanned = 0;
        let mut run = |kind: ConeKind| -> Result<Vec<bool>, BudgetExceeded> {
            let alts: Vec<Alt> = space.alts().collect();
            let cones: Vec<AltSet> = alts.iter().map(|&z| orders.cone(space, z, kind)).collect();
            // Largest first so that a passing cone settles many others.
            let mut order: Vec<usize> = (0..alts.len()).collect();
            order.sort_by_key(|&i| (std::cmp::Reverse(cones[i].count()), i));
            let mut known: Vec<Option<bool>> = vec![None; alts.len()];
            let mut done: Vec<usize> = Vec::new();
            for &i in &order {
                let inferred = done.iter().find_map(|&j| match known[j] {
                    Some(true) if cones[i].is_subset(&cones[j]) => Some(true),
                    Some(false) if cones[j].is_subset(&cones[i]) => Some(false),
                    _ => None,
                });
                let pass = match inferred {
                    Some(v) => v,
                    None => {
                        scanned += 1;
                        triple_cancellation(rel, &cones[i], budget)?.is_none()
                    }
                };
                known[i] = Some(pass);
                done.push(i);
            }
            Ok(known
                .into_iter()
                .map(|k| k.expect("all cones settled"))
                .collect())
        };
        let se = run(ConeKind::SE)?;
        let nw = run(ConeKind::NW)?;
        Ok(ConeTable { se, nw, scanned })
    }
}

/// Region membership per alternative plus per-region essentiality.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionLabeling {
    pub m1: usize,
    pub m2: usize,
    pub in_se: Vec<bool>,
    pub in_nw: Vec<bool>,
    /// `[axis 1, axis 2]` essential on SE.
    pub essential_se: [bool; 2],
    /// `[axis 1, axis 2]` essential on NW.
    pub essential_nw: [bool; 2],
    pub orders: CoordinateOrders,
}

impl RegionLabeling {
    fn id(&self, x: Alt) -> usize {
        x.0 * self.m2 + x.1
    }

    pub fn in_se(&self, x: Alt) -> bool {
        self.in_se[self.id(x)]
    }

    pub fn in_nw(&self, x: Alt) -> bool {
        self.in_nw[self.id(x)]
    }

    pub fn in_region(&self, x: Alt, kind: ConeKind) -> bool {
        match kind {
            ConeKind::SE => self.in_se(x),
            ConeKind::NW => self.in_nw(x),
        }
    }

    pub fn theta(&self, x: Alt) -> bool {
        self.in_se(x) && self.in_nw(x)
    }

    pub fn essential(&self, kind: ConeKind) -> [bool; 2] {
        match kind {
            ConeKind::SE => self.essential_se,
            ConeKind::NW => self.essential_nw,
        }
    }

    pub fn region_set(&self, space: &ProductSpace, kind: ConeKind) -> AltSet {
        AltSet::from_alts(space, space.alts().filter(|&x| self.in_region(x, kind)))
    }

    pub fn theta_set(&self, space: &ProductSpace) -> AltSet {
        AltSet::from_alts(space, space.alts().filter(|&x| self.theta(x)))
    }

    /// Θ point with `x₂` minimal or `x₁` maximal.
    pub fn is_extreme_se(&self, x: Alt) -> bool {
        self.theta(x) && self.orders.on_boundary(x, ConeKind::SE)
    }

    /// Θ point with `x₁` minimal or `x₂` maximal.
    pub fn is_extreme_nw(&self, x: Alt) -> bool {
        self.theta(x) && self.orders.on_boundary(x, ConeKind::NW)
    }

    pub fn is_extreme(&self, x: Alt) -> bool {
        self.is_extreme_se(x) || self.is_extreme_nw(x)
    }

    /// Labeling of the transposed relation: factors swap and so do SE/NW.
    pub fn transposed(&self) -> RegionLabeling {
        let (m1, m2) = (self.m2, self.m1);
        let pick = |v: &Vec<bool>| -> Vec<bool> {
            (0..m1 * m2)
                .map(|id| v[(id % m2) * self.m2 + id / m2])
                .collect()
        };
        RegionLabeling {
            m1,
            m2,
            in_se: pick(&self.in_nw),
            in_nw: pick(&self.in_se),
            essential_se: [self.essential_nw[1], self.essential_nw[0]],
            essential_nw: [self.essential_se[1], self.essential_se[0]],
            orders: CoordinateOrders {
                o1: self.orders.o2.clone(),
                o2: self.orders.o1.clone(),
            },
        }
    }

    /// Region members other than extreme Θ points, or the whole region if
    /// that leaves nothing.
    pub fn core_set(&self, space: &ProductSpace, kind: ConeKind) -> AltSet {
        let all = self.region_set(space, kind);
        let core = AltSet::from_alts(space, all.iter().filter(|&x| !self.is_extreme(x)));
        if core.is_empty() {
            all
        } else {
            core
        }
    }

    /// Labeling of the unmerged space: every original label takes the
    /// membership and rank of its representative.
    pub fn expand(&self, map: &MergeMap) -> RegionLabeling {
        let (m1, m2) = (map.axis1.len(), map.axis2.len());
        let pick = |v: &Vec<bool>| -> Vec<bool> {
            (0..m1 * m2)
                .map(|id| v[map.axis1[id / m2] * self.m2 + map.axis2[id % m2]])
                .collect()
        };
        RegionLabeling {
            m1,
            m2,
            in_se: pick(&self.in_se),
            in_nw: pick(&self.in_nw),
            essential_se: self.essential_se,
            essential_nw: self.essential_nw,
            orders: CoordinateOrders {
                o1: WeakOrder::from_ranks(map.expand(Axis::One, self.orders.o1.ranks())),
                o2: WeakOrder::from_ranks(map.expand(Axis::Two, self.orders.o2.ranks())),
            },
        }
    }

    /// Recomputes essentiality flags from `rel` for the current membership.
    pub fn refresh_essentiality(&mut self, rel: &PreferenceRelation) {
        let space = rel.space();
        self.essential_se = essential_on(rel, &self.core_set(space, ConeKind::SE));
        self.essential_nw = essential_on(rel, &self.core_set(space, ConeKind::NW));
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("weak separability fails: {0:?}")]
    NotSeparable(SeparabilityWitness),
    #[error(
        "alternative {z:?} lies in neither region (SE(z) witness {se:?}, NW(z) witness {nw:?})"
    )]
    Uncovered {
        z: Alt,
        se: Option<Box<TcWitness>>,
        nw: Option<Box<TcWitness>>,
    },
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
}

/// Region classification with the default scan budget.
pub fn classify_regions(rel: &PreferenceRelation) -> Result<RegionLabeling, ClassifyError> {
    classify_regions_with(rel, &mut Budget::default()).map(|(l, _)| l)
}

/// Region classification.
///
/// `x ∈ SE` iff some anchor `z` (`z₁` not maximal, `z₂` not minimal) has a
/// 3C cone `SE(z) ∋ x`, or `x₁` is maximal or `x₂` minimal and no
/// `y ∈ SE(x) \ {x}` has triple cancellation on `NW(y)`. NW is the mirror
/// image: anchors with `z₁` not minimal and `z₂` not maximal, cones `NW(z)`,
/// and the boundary clause for `x₁` minimal or `x₂` maximal testing `SE(y)`
/// over `y ∈ NW(x) \ {x}`.
///
/// Essentiality flags are computed on each region without its extreme Θ
/// points (on the whole region when nothing else is left).
pub fn classify_regions_with(
    rel: &PreferenceRelation,
    budget: &mut Budget,
) -> Result<(RegionLabeling, ConeTable), ClassifyError> {
    let space = rel.space();
    let orders = CoordinateOrders::of(rel).map_err(ClassifyError::NotSeparable)?;
    let table = ConeTable::compute(rel, &orders, budget)?;
    let n = space.len();
    let mut in_se = vec![false; n];
    let mut in_nw = vec![false; n];
    for kind in [ConeKind::SE, ConeKind::NW] {
        let target = match kind {
            ConeKind::SE => &mut in_se,
            ConeKind::NW => &mut in_nw,
        };
        for z in space.alts() {
            if orders.is_anchor(z, kind) && table.passes(space, z, kind) {
                for x in space.alts().filter(|&x| orders.in_cone(z, kind, x)) {
                    target[space.index(x)] = true;
                }
            }
        }
        for x in space.alts() {
            if target[space.index(x)] || !orders.on_boundary(x, kind) {
                continue;
            }
            let blocked = space
                .alts()
                .filter(|&y| y != x && orders.in_cone(x, kind, y))
                .any(|y| table.passes(space, y, kind.other()));
            if !blocked {
                target[space.index(x)] = true;
            }
        }
    }
    if let Some(id) = (0..n).find(|&id| !in_se[id] && !in_nw[id]) {
        let z = space.alt(id);
        let mut unlimited = Budget::unlimited();
        let mut wit = |kind| {
            triple_cancellation(rel, &orders.cone(space, z, kind), &mut unlimited)
                .expect("unlimited budget")
                .map(Box::new)
        };
        let se = wit(ConeKind::SE);
        let nw = wit(ConeKind::NW);
        return Err(ClassifyError::Uncovered { z, se, nw });
    }
    let mut labeling = RegionLabeling {
        m1: space.m1(),
        m2: space.m2(),
        in_se,
        in_nw,
        essential_se: [false; 2],
        essential_nw: [false; 2],
        orders,
    };
    labeling.refresh_essentiality(rel);
    Ok((labeling, table))
}
