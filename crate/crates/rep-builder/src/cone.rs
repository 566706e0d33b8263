use relation_model::{Alt, AltSet, Cmp, ConeKind, PreferenceRelation, RegionLabeling};
use serde::Serialize;
use thiserror::Error;

use crate::system::{lp_solve, HomSystem, Row, Sense};

/// Additive values on one cone: `v1` and `v2` are defined on the labels
/// that occur among the members.
#[derive(Debug, Clone, PartialEq)]
pub struct AdditiveCone {
    pub members: AltSet,
    pub v1: Vec<Option<f64>>,
    pub v2: Vec<Option<f64>>,
}

impl AdditiveCone {
    pub fn value(&self, x: Alt) -> Option<f64> {
        Some(self.v1[x.0]? + self.v2[x.1]?)
    }
}

/// The cone's constraint system: members sorted by the relation, one row per
/// consecutive pair.
#[derive(Debug, Clone)]
pub struct ConeSystem {
    pub system: HomSystem,
    /// Variable index of each label, per axis.
    pub var1: Vec<Option<usize>>,
    pub var2: Vec<Option<usize>>,
    /// `(lower, upper, relation)` for each row, in row order.
    pub pairs: Vec<(Alt, Alt, Cmp)>,
}

/// Members of `set` in ascending preference, keyed by how many members each
/// one weakly beats. For a weak order this is the preference order; for
/// other relations it is still a total preorder, so sorting never panics.
pub fn sorted_members(rel: &PreferenceRelation, set: &AltSet) -> Vec<Alt> {
    let xs: Vec<Alt> = set.iter().collect();
    let mut keyed: Vec<(usize, Alt)> = xs
        .iter()
        .map(|&x| (xs.iter().filter(|&&y| rel.ge(x, y)).count(), x))
        .collect();
    keyed.sort_by_key(|&(k, x)| (k, x.0, x.1));
    keyed.into_iter().map(|(_, x)| x).collect()
}

/// Builds `v1(y₁)+v2(y₂) − v1(x₁)−v2(x₂) > 0` (or `= 0`) for consecutive
/// members. With a weak order these rows imply every pairwise constraint.
pub fn cone_system(rel: &PreferenceRelation, members: &AltSet) -> ConeSystem {
    let space = rel.space();
    let mut var1 = vec![None; space.m1()];
    let mut var2 = vec![None; space.m2()];
    let mut vars = 0;
    for x in members.iter() {
        if var1[x.0].is_none() {
            var1[x.0] = Some(vars);
            vars += 1;
        }
    }
    for x in members.iter() {
        if var2[x.1].is_none() {
            var2[x.1] = Some(vars);
            vars += 1;
        }
    }
    let mut system = HomSystem::new(vars);
    let mut pairs = Vec::new();
    let order = sorted_members(rel, members);
    for w in order.windows(2) {
        let (x, y) = (w[0], w[1]);
        let c = rel.cmp(y, x);
        let sense = if c == Cmp::Indiff {
            Sense::Zero
        } else {
            Sense::Strict
        };
        let v = |var: &Vec<Option<usize>>, i: usize| var[i].expect("member label");
        system.push(Row::new(
            [
                (v(&var1, y.0), 1),
                (v(&var2, y.1), 1),
                (v(&var1, x.0), -1),
                (v(&var2, x.1), -1),
            ],
            sense,
        ));
        pairs.push((x, y, c));
    }
    ConeSystem {
        system,
        var1,
        var2,
        pairs,
    }
}

/// The cone admits no additive representation. The backend exposes no
/// irreducible subsystem, so the full constraint list is returned.
#[derive(Debug, Clone, PartialEq, Error, Serialize)]
#[error("no additive representation on {} members ({} constraints)", members, constraints.len())]
pub struct InfeasibleCone {
    pub members: usize,
    /// `(lower, upper, relation of upper to lower)` as label-index pairs.
    pub constraints: Vec<([usize; 2], [usize; 2], String)>,
}

/// Fits additive values on `members` with strict preferences separated by
/// at least `delta`.
pub fn fit_cone_additive(
    rel: &PreferenceRelation,
    members: &AltSet,
    delta: f64,
) -> Result<AdditiveCone, InfeasibleCone> {
    let cs = cone_system(rel, members);
    let Some(sol) = lp_solve(&cs.system, delta) else {
        return Err(InfeasibleCone {
            members: members.count(),
            constraints: cs
                .pairs
                .iter()
                .map(|&(x, y, c)| ([x.0, x.1], [y.0, y.1], c.code().to_string()))
                .collect(),
        });
    };
    let pick = |var: &Vec<Option<usize>>| var.iter().map(|v| v.map(|i| sol[i])).collect();
    Ok(AdditiveCone {
        members: members.clone(),
        v1: pick(&cs.var1),
        v2: pick(&cs.var2),
    })
}

/// Cones used for a region: `kind(z)` restricted to the region's core for
/// every non-extreme Θ anchor `z`, dropping cones contained in others.
pub fn region_cones(
    rel: &PreferenceRelation,
    labeling: &RegionLabeling,
    kind: ConeKind,
) -> Vec<(Alt, AltSet)> {
    let space = rel.space();
    let core = labeling.core_set(space, kind);
    let mut cones: Vec<(Alt, AltSet)> = Vec::new();
    for z in space.alts() {
        if !labeling.theta(z) || labeling.is_extreme(z) {
            continue;
        }
        let mut set = labeling.orders.cone(space, z, kind);
        set.intersect_with(&core);
        if !set.is_empty() {
            cones.push((z, set));
        }
    }
    let mut keep = Vec::new();
    for (i, (z, set)) in cones.iter().enumerate() {
        let dominated = cones
            .iter()
            .enumerate()
            .any(|(j, (_, other))| j != i && set.is_subset(other) && (set != other || j < i));
        if !dominated {
            keep.push((*z, set.clone()));
        }
    }
    keep
}
