use relation_model::{
    coordinate_order, solvability_gaps, Alt, Axis, Budget, ConeKind, PreferenceRelation,
    RegionLabeling,
};

use crate::report::{cores, region_of, AxiomId, AxiomReport, Status, Witness};

fn over_budget(axiom: AxiomId, budget: &Budget) -> AxiomReport {
    AxiomReport::new(axiom, Status::BudgetExceeded)
        .with_note(format!("stopped after {} tuples", budget.limit()))
}

/// A1: transitivity of `≽` (completeness holds by construction).
pub fn check_weak_order(rel: &PreferenceRelation, budget: &mut Budget) -> AxiomReport {
    let s = rel.space();
    let alts: Vec<Alt> = s.alts().collect();
    for &x in &alts {
        if budget.spend((alts.len() * alts.len()) as u64).is_err() {
            return over_budget(AxiomId::A1, budget);
        }
        for &y in alts.iter().filter(|&&y| rel.ge(x, y)) {
            if let Some(&z) = alts.iter().find(|&&z| rel.ge(y, z) && !rel.ge(x, z)) {
                return AxiomReport::violated(AxiomId::A1, Witness::Transitivity { x, y, z });
            }
        }
    }
    AxiomReport::new(AxiomId::A1, Status::Ok)
}

/// A2: no strict reversal when the common label changes, axis 1 first.
pub fn check_weak_separability(rel: &PreferenceRelation) -> AxiomReport {
    for axis in [Axis::One, Axis::Two] {
        if let Err(w) = coordinate_order(rel, axis) {
            return AxiomReport::violated(AxiomId::A2, Witness::Separability(w));
        }
    }
    AxiomReport::new(AxiomId::A2, Status::Ok)
}

/// Structural assumption: no two labels on one axis are indifferent across
/// the whole other axis.
pub fn check_structural(rel: &PreferenceRelation) -> AxiomReport {
    for axis in [Axis::One, Axis::Two] {
        if let Some((a, b)) = rel.duplicate_labels(axis) {
            return AxiomReport::violated(AxiomId::Struct, Witness::Duplicate { axis, a, b });
        }
    }
    AxiomReport::new(AxiomId::Struct, Status::Ok)
}

fn bi_independence_scan(
    rel: &PreferenceRelation,
    lab: &RegionLabeling,
    mirrored: bool,
    budget: &mut Budget,
) -> Result<Option<Witness>, ()> {
    let s = rel.space();
    let (se, nw) = cores(s, lab);
    let (m1, m2) = (s.m1(), s.m2());
    for region in [ConeKind::SE, ConeKind::NW] {
        let reg = region_of(region, &se, &nw);
        for p in 0..m2 {
            budget.spend((m1 * m1 * m1 * m1) as u64).map_err(|_| ())?;
            for a in 0..m1 {
                for b in 0..m1 {
                    let (ap, bp) = (Alt(a, p), Alt(b, p));
                    if !(reg.contains(ap) && reg.contains(bp) && rel.gt(ap, bp)) {
                        continue;
                    }
                    for c in 0..m1 {
                        for d in 0..m1 {
                            let (cp, dp) = (Alt(c, p), Alt(d, p));
                            if !(reg.contains(cp) && reg.contains(dp)) || rel.gt(cp, dp) {
                                continue;
                            }
                            if let Some(q) = (0..m2).find(|&q| rel.gt(Alt(c, q), Alt(d, q))) {
                                return Ok(Some(Witness::BiIndependence {
                                    mirrored,
                                    region,
                                    a,
                                    b,
                                    c,
                                    d,
                                    p,
                                    q,
                                }));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

/// A6: within one region, a strict comparison along a line forces every
/// pair that is strictly ordered somewhere to be strictly ordered on that
/// line. The second-coordinate form runs on the transposed relation.
pub fn check_bi_independence(
    rel: &PreferenceRelation,
    lab: &RegionLabeling,
    budget: &mut Budget,
) -> AxiomReport {
    let first = bi_independence_scan(rel, lab, false, budget);
    let res = match first {
        Ok(None) => bi_independence_scan(&rel.transposed(), &lab.transposed(), true, budget),
        other => other,
    };
    match res {
        Ok(Some(w)) => AxiomReport::violated(AxiomId::A6, w),
        Ok(None) => AxiomReport::new(AxiomId::A6, Status::Ok),
        Err(()) => over_budget(AxiomId::A6, budget),
    }
}

/// A7: each axis carries a strict comparison with the other label fixed.
pub fn check_essentiality(rel: &PreferenceRelation) -> AxiomReport {
    let s = rel.space();
    let strict_on = |axis: Axis| {
        s.alts().any(|x| {
            s.alts()
                .any(|y| x.coord(axis.other()) == y.coord(axis.other()) && rel.gt(x, y))
        })
    };
    let (e1, e2) = (strict_on(Axis::One), strict_on(Axis::Two));
    if e1 && e2 {
        AxiomReport::new(AxiomId::A7, Status::Ok)
    } else {
        AxiomReport::violated(
            AxiomId::A7,
            Witness::Inessential {
                axis1: !e1,
                axis2: !e2,
            },
        )
    }
}

/// A8 on finite data: lists unsolved brackets; never a violation.
pub fn check_solvability(rel: &PreferenceRelation) -> AxiomReport {
    let gaps = solvability_gaps(rel);
    match gaps.first() {
        None => AxiomReport::new(AxiomId::A8, Status::Ok),
        Some(g) => {
            let s = rel.space();
            AxiomReport::new(AxiomId::A8, Status::Diagnostic).with_note(format!(
                "{} unsolved brackets; first: {} ≻ {} ≻ {} with no match on the line",
                gaps.len(),
                s.show(g.point(g.a)),
                s.show(g.y),
                s.show(g.point(g.c)),
            ))
        }
    }
}

/// A9 holds trivially on finite sets.
pub fn check_archimedean() -> AxiomReport {
    AxiomReport::new(AxiomId::A9, Status::Vacuous).with_note("finite")
}
