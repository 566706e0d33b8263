use relation_model::{Budget, MergeMap, PreferenceRelation, RegionLabeling};

use crate::a4::check_a4;
use crate::a5::{check_a5, check_a5_sequences};
use crate::basic::{
    check_archimedean, check_bi_independence, check_essentiality, check_solvability,
    check_structural, check_weak_order, check_weak_separability,
};
use crate::cones::check_regions;
use crate::report::{AxiomId, AxiomReport, Status};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckConfig {
    /// Tuple ceiling per checker.
    pub budget: u64,
    /// Longest standard sequence enumerated by the A5-SEQ diagnostic.
    pub seq_len: usize,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            budget: Budget::default().limit(),
            seq_len: 5,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CheckOutcome {
    /// One report per axiom, in the order A1, A2, STRUCT, REGIONS, A3, A4,
    /// A5, A5-SEQ, A6, A7, A8, A9.
    pub reports: Vec<AxiomReport>,
    /// Labeling the region-based checks ran on, over the input space.
    pub labeling: Option<RegionLabeling>,
    /// Labeling from the region definition, over the input space.
    pub raw_labeling: Option<RegionLabeling>,
    /// How duplicate labels were merged before the region-based checks.
    pub merge: MergeMap,
}

impl CheckOutcome {
    pub fn has_violation(&self) -> bool {
        self.reports.iter().any(AxiomReport::is_violation)
    }

    pub fn report(&self, axiom: AxiomId) -> Option<&AxiomReport> {
        self.reports.iter().find(|r| r.axiom == axiom)
    }
}

fn skipped(axiom: AxiomId, why: &str) -> AxiomReport {
    AxiomReport::new(axiom, Status::Skipped).with_note(why)
}

/// Labels the regions of a relation from a representation that reproduces
/// it, or returns `None` when no such representation is found.
pub type Resolver<'a> = &'a dyn Fn(&PreferenceRelation) -> Option<RegionLabeling>;

/// Runs every checker with definition-based regions only.
pub fn check_all(rel: &PreferenceRelation, config: &CheckConfig) -> CheckOutcome {
    check_all_with(rel, config, None)
}

/// Runs every checker.
///
/// With finitely many alternatives a cone reaching across the frontier can
/// pass triple cancellation by accident, so the definition-based regions may
/// include points the representation puts on the other side. When A4 to A6
/// fail on those regions and a `resolver` is given, they are evaluated again
/// on the regions of the representation it returns (the axioms are necessary
/// relative to those).
///
/// A failing A1 skips everything else. A failing A2 skips the region-based
/// checks (REGIONS, A3 to A6). Duplicate labels (STRUCT) are merged and the
/// region-based checks run on the merged relation; their witnesses are
/// mapped back to the first label of each merged class.
pub fn check_all_with(
    rel: &PreferenceRelation,
    config: &CheckConfig,
    resolver: Option<Resolver>,
) -> CheckOutcome {
    let budget = || Budget::new(config.budget);
    let mut reports = Vec::new();
    let identity = MergeMap::identity(rel.space());

    let a1 = check_weak_order(rel, &mut budget());
    let a1_ok = a1.status == Status::Ok;
    reports.push(a1);
    if !a1_ok {
        for id in [
            AxiomId::A2,
            AxiomId::Struct,
            AxiomId::Regions,
            AxiomId::A3,
            AxiomId::A4,
            AxiomId::A5,
            AxiomId::A5Seq,
            AxiomId::A6,
            AxiomId::A7,
            AxiomId::A8,
            AxiomId::A9,
        ] {
            reports.push(skipped(id, "A1 fails"));
        }
        return CheckOutcome {
            reports,
            labeling: None,
            raw_labeling: None,
            merge: identity,
        };
    }

    let a2 = check_weak_separability(rel);
    let a2_ok = a2.status == Status::Ok;
    reports.push(a2);
    reports.push(check_structural(rel));

    let (merged, map) = rel.merge_duplicates();
    let reps = |axis: &[usize], n: usize| -> Vec<usize> {
        (0..n)
            .map(|k| {
                axis.iter()
                    .position(|&m| m == k)
                    .expect("every class has a member")
            })
            .collect()
    };
    let r1 = reps(&map.axis1, merged.space().m1());
    let r2 = reps(&map.axis2, merged.space().m2());
    let back = |mut r: AxiomReport| {
        r.witness = r.witness.map(|w| w.remap(&r1, &r2));
        r
    };

    let mut labeling = None;
    let mut raw_labeling = None;
    if a2_ok {
        let (a3, regions, lab) = check_regions(&merged, &mut budget());
        reports.push(back(regions));
        reports.push(back(a3));
        match lab {
            Some(raw) => {
                let mut region_reports = region_checks(&merged, &raw, config, &budget);
                let mut used = raw.clone();
                let raw_failed = region_reports.iter().any(AxiomReport::is_violation);
                if let (true, Some(resolve)) = (raw_failed, resolver) {
                    if let Some(resolved) = resolve(&merged) {
                        let first_raw = region_reports
                            .iter()
                            .find(|r| r.is_violation())
                            .map(|r| r.axiom.name())
                            .unwrap_or_default();
                        region_reports = region_checks(&merged, &resolved, config, &budget)
                            .into_iter()
                            .map(|r| {
                                let note = match &r.note {
                                    Some(n) => format!("{n}; "),
                                    None => String::new(),
                                };
                                r.clone().with_note(format!(
                                    "{note}regions resolved from a verified representation \
                                     (definition-based regions fail {first_raw})"
                                ))
                            })
                            .collect();
                        used = resolved;
                    }
                }
                reports.extend(region_reports.into_iter().map(back));
                raw_labeling = Some(raw.expand(&map));
                labeling = Some(used.expand(&map));
            }
            None => {
                for id in [AxiomId::A4, AxiomId::A5, AxiomId::A5Seq, AxiomId::A6] {
                    reports.push(skipped(id, "no region labeling"));
                }
            }
        }
    } else {
        for id in [
            AxiomId::Regions,
            AxiomId::A3,
            AxiomId::A4,
            AxiomId::A5,
            AxiomId::A5Seq,
            AxiomId::A6,
        ] {
            reports.push(skipped(id, "A2 fails"));
        }
    }

    reports.push(check_essentiality(rel));
    reports.push(check_solvability(rel));
    reports.push(check_archimedean());
    CheckOutcome {
        reports,
        labeling,
        raw_labeling,
        merge: map,
    }
}

fn region_checks(
    rel: &PreferenceRelation,
    lab: &RegionLabeling,
    config: &CheckConfig,
    budget: &dyn Fn() -> Budget,
) -> Vec<AxiomReport> {
    vec![
        check_a4(rel, lab, &mut budget()),
        check_a5(rel, lab, &mut budget()),
        check_a5_sequences(rel, lab, config.seq_len, &mut budget()),
        check_bi_independence(rel, lab, &mut budget()),
    ]
}
