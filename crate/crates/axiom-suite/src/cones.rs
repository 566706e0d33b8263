use relation_model::{
    classify_regions_with, triple_cancellation, AltSet, Budget, ClassifyError, ConeKind, ConeTable,
    CoordinateOrders, PreferenceRelation, RegionLabeling,
};

use crate::report::{AxiomId, AxiomReport, Status, Witness};

/// Triple cancellation restricted to `subset`.
pub fn check_triple_cancellation(
    rel: &PreferenceRelation,
    subset: &AltSet,
    budget: &mut Budget,
) -> AxiomReport {
    match triple_cancellation(rel, subset, budget) {
        Ok(None) if subset.is_empty() => AxiomReport::new(AxiomId::Tc, Status::Vacuous),
        Ok(None) => AxiomReport::new(AxiomId::Tc, Status::Ok),
        Ok(Some(w)) => AxiomReport::violated(AxiomId::Tc, Witness::Cancellation(w)),
        Err(e) => AxiomReport::new(AxiomId::Tc, Status::BudgetExceeded).with_note(e.to_string()),
    }
}

pub(crate) fn a3_from_table(
    rel: &PreferenceRelation,
    orders: &CoordinateOrders,
    table: &ConeTable,
) -> AxiomReport {
    let s = rel.space();
    let failing = s
        .alts()
        .find(|&z| !table.passes(s, z, ConeKind::SE) && !table.passes(s, z, ConeKind::NW));
    match failing {
        None => AxiomReport::new(AxiomId::A3, Status::Ok),
        Some(z) => {
            let mut b = Budget::unlimited();
            let mut scan = |kind| {
                triple_cancellation(rel, &orders.cone(s, z, kind), &mut b)
                    .expect("unlimited budget")
                    .expect("cone recorded as failing")
            };
            let se = scan(ConeKind::SE);
            let nw = scan(ConeKind::NW);
            AxiomReport::violated(AxiomId::A3, Witness::A3 { z, se, nw })
        }
    }
}

/// A3: at every `z`, triple cancellation holds on `SE(z)` or on `NW(z)`.
/// Needs the derived orders; reports `skipped` without them.
pub fn check_a3(rel: &PreferenceRelation, budget: &mut Budget) -> AxiomReport {
    let Ok(orders) = CoordinateOrders::of(rel) else {
        return AxiomReport::new(AxiomId::A3, Status::Skipped).with_note("weak separability fails");
    };
    match ConeTable::compute(rel, &orders, budget) {
        Ok(table) => a3_from_table(rel, &orders, &table),
        Err(e) => AxiomReport::new(AxiomId::A3, Status::BudgetExceeded).with_note(e.to_string()),
    }
}

/// A3 and region classification together (they share the cone scans).
pub fn check_regions(
    rel: &PreferenceRelation,
    budget: &mut Budget,
) -> (AxiomReport, AxiomReport, Option<RegionLabeling>) {
    match classify_regions_with(rel, budget) {
        Ok((lab, table)) => {
            let a3 = a3_from_table(rel, &lab.orders, &table);
            let s = rel.space();
            let theta = lab.theta_set(s).count();
            let note = format!(
                "SE {}, NW {}, Θ {}; essential SE {:?}, NW {:?}; {} cones scanned",
                lab.region_set(s, ConeKind::SE).count(),
                lab.region_set(s, ConeKind::NW).count(),
                theta,
                lab.essential_se,
                lab.essential_nw,
                table.scanned
            );
            (
                a3,
                AxiomReport::new(AxiomId::Regions, Status::Ok).with_note(note),
                Some(lab),
            )
        }
        Err(ClassifyError::Uncovered { z, .. }) => {
            let a3 = check_a3(rel, &mut Budget::unlimited());
            (
                a3,
                AxiomReport::violated(AxiomId::Regions, Witness::Uncovered { z }),
                None,
            )
        }
        Err(ClassifyError::NotSeparable(_)) => (
            AxiomReport::new(AxiomId::A3, Status::Skipped).with_note("weak separability fails"),
            AxiomReport::new(AxiomId::Regions, Status::Skipped),
            None,
        ),
        Err(ClassifyError::Budget(e)) => (
            AxiomReport::new(AxiomId::A3, Status::BudgetExceeded).with_note(e.to_string()),
            AxiomReport::new(AxiomId::Regions, Status::BudgetExceeded),
            None,
        ),
    }
}
