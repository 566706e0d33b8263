use relation_model::{
    cancellation_scan, AltSet, Budget, ConeKind, PreferenceRelation, RegionLabeling,
};

use crate::report::{cores, region_of, A4Clause, AxiomId, AxiomReport, Status, Witness};

/// True when the sides together use two labels on each axis; otherwise
/// every octuple repeats its labels and the conclusion holds trivially.
fn spans_two_labels(sides: &[AltSet; 4]) -> bool {
    let mut rows = std::collections::BTreeSet::new();
    let mut cols = std::collections::BTreeSet::new();
    for x in sides.iter().flat_map(|s| s.iter()) {
        rows.insert(x.0);
        cols.insert(x.1);
    }
    rows.len() >= 2 && cols.len() >= 2
}

/// A4: cancellation across regions.
///
/// Clause (a) scans each region on its own (NW first). Clause (b) puts the
/// `a, b` points in one region and the `c, d` points in the other and needs
/// coordinate 2 essential on the first region; clause (c) splits by rows,
/// `p, q` points in one region and `r, s` points in the other, and needs
/// coordinate 1 essential on the first. Each split is tried with NW first
/// and then SE first. Regions exclude their extreme Θ points. Reported
/// `vacuous` when no plan spans two labels on each axis.
pub fn check_a4(
    rel: &PreferenceRelation,
    lab: &RegionLabeling,
    budget: &mut Budget,
) -> AxiomReport {
    let s = rel.space();
    let (se, nw) = cores(s, lab);
    let mut instantiated = false;
    let mut plan: Vec<(A4Clause, ConeKind, [AltSet; 4])> = Vec::new();
    for region in [ConeKind::NW, ConeKind::SE] {
        let r = region_of(region, &se, &nw);
        plan.push((
            A4Clause::Single,
            region,
            [r.clone(), r.clone(), r.clone(), r],
        ));
    }
    for region in [ConeKind::NW, ConeKind::SE] {
        if lab.essential(region)[1] {
            let (f, o) = (
                region_of(region, &se, &nw),
                region_of(region.other(), &se, &nw),
            );
            plan.push((A4Clause::SplitColumns, region, [f.clone(), f, o.clone(), o]));
        }
    }
    for region in [ConeKind::NW, ConeKind::SE] {
        if lab.essential(region)[0] {
            let (f, o) = (
                region_of(region, &se, &nw),
                region_of(region.other(), &se, &nw),
            );
            plan.push((A4Clause::SplitRows, region, [f.clone(), o.clone(), f, o]));
        }
    }
    for (clause, region, sides) in &plan {
        if sides.iter().any(|x| x.is_empty()) {
            continue;
        }
        instantiated |= spans_two_labels(sides);
        match cancellation_scan(rel, [&sides[0], &sides[1], &sides[2], &sides[3]], budget) {
            Ok(None) => {}
            Ok(Some(tuple)) => {
                return AxiomReport::violated(
                    AxiomId::A4,
                    Witness::A4 {
                        clause: *clause,
                        region: *region,
                        tuple,
                    },
                )
            }
            Err(e) => {
                return AxiomReport::new(AxiomId::A4, Status::BudgetExceeded)
                    .with_note(e.to_string())
            }
        }
    }
    if instantiated {
        AxiomReport::new(AxiomId::A4, Status::Ok)
    } else {
        AxiomReport::new(AxiomId::A4, Status::Vacuous)
    }
}
