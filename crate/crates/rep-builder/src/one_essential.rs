use relation_model::{Alt, AltSet, PreferenceRelation, RegionLabeling};
use serde_json::json;

use crate::capacity::Essentials;
use crate::cone::sorted_members;
use crate::fit::{build, fit_weights, Diagnosis, FitConfig, Stage};
use crate::refine::{chain, Weight};
use crate::representation::Representation;
use crate::verify::verify;

/// Which lattice operation a one-essential profile corresponds to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lattice {
    /// `ν = (0, 0)`: `C = min(f1, f2)`.
    Min,
    /// `ν = (1, 1)`: `C = max(f1, f2)`.
    Max,
}

/// The weights a profile fixes: a region with one essential coordinate
/// pins its weight to 0 or 1, a region with two leaves it free.
pub fn profile_weights(ess: Essentials) -> Option<[Weight; 2]> {
    let w1 = match ess.se {
        [true, true] => Weight::Free,
        [true, false] => Weight::Fixed(1.0),
        [false, true] => Weight::Fixed(0.0),
        [false, false] => return None,
    };
    let w2 = match ess.nw {
        [true, true] => Weight::Free,
        [false, true] => Weight::Fixed(1.0),
        [true, false] => Weight::Fixed(0.0),
        [false, false] => return None,
    };
    Some([w1, w2])
}

/// Dense rank of every alternative (by id) in the relation's weak order.
pub fn levels(rel: &PreferenceRelation) -> Vec<usize> {
    let space = rel.space();
    let order = sorted_members(rel, &AltSet::full(space));
    let mut out = vec![0; space.len()];
    let mut level = 0;
    for (i, &x) in order.iter().enumerate() {
        if i > 0 && rel.gt(x, order[i - 1]) {
            level += 1;
        }
        out[space.index(x)] = level;
    }
    out
}

/// Value functions read off the order for a min or max relation.
///
/// For min, `f1(a)` is the level of `(a, p*)` with `p*` a top label of
/// axis 2 and `f2(p)` the level of `(a*, p)` with `a*` a top label of axis
/// 1; for max the bottom labels are used instead. Values are levels times
/// `delta`.
pub fn lattice_values(
    rel: &PreferenceRelation,
    labeling: &RegionLabeling,
    op: Lattice,
    delta: f64,
) -> (Vec<f64>, Vec<f64>) {
    let space = rel.space();
    let lv = levels(rel);
    let (o1, o2) = (&labeling.orders.o1, &labeling.orders.o2);
    let pick = |m: usize, top: bool, o: &relation_model::WeakOrder| {
        (0..m)
            .find(|&i| if top { o.is_max(i) } else { o.is_min(i) })
            .unwrap_or(0)
    };
    let top = op == Lattice::Min;
    let a_star = pick(space.m1(), top, o1);
    let p_star = pick(space.m2(), top, o2);
    let f1 = (0..space.m1())
        .map(|a| lv[space.index(Alt(a, p_star))] as f64 * delta)
        .collect();
    let f2 = (0..space.m2())
        .map(|p| lv[space.index(Alt(a_star, p))] as f64 * delta)
        .collect();
    (f1, f2)
}

/// Min or max representation from [`lattice_values`], if it reproduces the
/// relation.
pub fn fit_lattice(
    rel: &PreferenceRelation,
    labeling: &RegionLabeling,
    op: Lattice,
    cfg: &FitConfig,
) -> Result<Representation, Diagnosis> {
    let (f1, f2) = lattice_values(rel, labeling, op, cfg.delta);
    let nu = if op == Lattice::Min { 0.0 } else { 1.0 };
    let rep = build(rel, labeling, f1, f2, nu, nu, cfg.tol);
    match verify(rel, &rep, cfg.tol).first_disagreement {
        None => Ok(rep),
        Some(d) => Err(Diagnosis {
            stage: Stage::OneEssential,
            message: format!("{op:?}: frontier pinning contradicts the relation"),
            witness: Some(json!(d)),
        }),
    }
}

/// Fits a relation where at least one region has a single essential
/// coordinate.
///
/// Min and max profiles use [`lattice_values`] directly. Other profiles fix
/// the weight of each one-essential region at 0 or 1 and search the free
/// weight with the value functions. Expects a relation without duplicate
/// labels.
pub fn fit_one_essential(
    rel: &PreferenceRelation,
    labeling: &RegionLabeling,
    cfg: &FitConfig,
) -> Result<Representation, Diagnosis> {
    let ess = Essentials {
        se: labeling.essential_se,
        nw: labeling.essential_nw,
    };
    let weights = profile_weights(ess).ok_or_else(|| Diagnosis {
        stage: Stage::OneEssential,
        message: format!("no essential coordinate in some region ({ess:?})"),
        witness: None,
    })?;
    let lattice = match weights {
        [Weight::Fixed(a), Weight::Fixed(b)] if a == 0.0 && b == 0.0 => Some(Lattice::Min),
        [Weight::Fixed(a), Weight::Fixed(b)] if a == 1.0 && b == 1.0 => Some(Lattice::Max),
        _ => None,
    };
    if let Some(op) = lattice {
        return fit_lattice(rel, labeling, op, cfg);
    }
    if !weights.contains(&Weight::Free) {
        return Err(Diagnosis {
            stage: Stage::OneEssential,
            message: format!("profile {ess:?} makes a coordinate inessential everywhere"),
            witness: None,
        });
    }
    let steps = chain(rel);
    fit_weights(rel, labeling, &steps, weights, &[], None, cfg)
}
