mod common;

use axiom_suite::*;
use common::*;
use relation_model::{
    Alt, AltSet, Axis, Budget, Cmp, CoordinateOrders, PreferenceRelation, ProductSpace,
    RegionLabeling,
};

fn status(out: &CheckOutcome, id: AxiomId) -> Status {
    out.report(id).unwrap().status
}

fn util(m1: usize, m2: usize, u: impl Fn(usize, usize) -> f64) -> PreferenceRelation {
    PreferenceRelation::from_utility(ProductSpace::with_sizes(m1, m2), |x| u(x.0, x.1)).unwrap()
}

fn all_indifferent(m1: usize, m2: usize) -> PreferenceRelation {
    util(m1, m2, |_, _| 0.0)
}

fn assert_replays(out: &CheckOutcome, rel: &PreferenceRelation) {
    for r in out.reports.iter().filter(|r| r.is_violation()) {
        let w = r.witness.as_ref().expect("violations carry witnesses");
        assert!(
            w.replays(rel, out.labeling.as_ref()),
            "{} witness does not replay: {w:?}",
            r.axiom.name()
        );
    }
}

fn three_cycle() -> PreferenceRelation {
    // (a0,p0) ≻ (a1,p0) ≻ (a2,p0) ≻ (a0,p0)
    PreferenceRelation::from_fn(ProductSpace::with_sizes(3, 1), |x, y| {
        if x == y {
            Cmp::Indiff
        } else if (x.0 + 1) % 3 == y.0 {
            Cmp::Pref
        } else {
            Cmp::Dispref
        }
    })
    .unwrap()
}

#[test]
fn three_cycle_fails_a1_and_skips_the_rest() {
    let rel = three_cycle();
    let out = check_all(&rel, &CheckConfig::default());
    let a1 = out.report(AxiomId::A1).unwrap();
    assert_eq!(a1.status, Status::Violated);
    assert_eq!(
        a1.witness,
        Some(Witness::Transitivity {
            x: Alt(0, 0),
            y: Alt(1, 0),
            z: Alt(2, 0)
        })
    );
    assert_eq!(out.reports.len(), 12);
    assert!(out.reports[1..].iter().all(|r| r.status == Status::Skipped));
    assert_replays(&out, &rel);
}

#[test]
fn all_indifferent_passes_a1() {
    let rel = all_indifferent(3, 3);
    assert_eq!(
        check_weak_order(&rel, &mut Budget::default()).status,
        Status::Ok
    );
}

#[test]
fn separability_reversal_skips_region_checks() {
    // a0 better with p0, a1 better with p1.
    let rel = util(2, 2, |a, p| [[1.0, 0.0], [0.0, 1.0]][a][p]);
    let out = check_all(&rel, &CheckConfig::default());
    assert_eq!(status(&out, AxiomId::A1), Status::Ok);
    assert_eq!(status(&out, AxiomId::A2), Status::Violated);
    for id in [
        AxiomId::Regions,
        AxiomId::A3,
        AxiomId::A4,
        AxiomId::A5,
        AxiomId::A5Seq,
        AxiomId::A6,
    ] {
        assert_eq!(status(&out, id), Status::Skipped, "{}", id.name());
    }
    assert_eq!(status(&out, AxiomId::A7), Status::Ok);
    assert_eq!(status(&out, AxiomId::A9), Status::Vacuous);
    assert_replays(&out, &rel);
}

#[test]
fn single_row_is_separable() {
    let rel = util(1, 4, |_, p| p as f64);
    assert_eq!(check_weak_separability(&rel).status, Status::Ok);
}

#[test]
fn induced_instances_report_no_violations() {
    let mut r = rng(3);
    for (nu1, nu2) in [(0.5, 0.5), (0.5, 0.25), (0.0, 0.0), (1.0, 1.0), (0.7, 0.2)] {
        let rel = induced_distinct(&mut r, 5, 5, nu1, nu2);
        let out = check_all(&rel, &CheckConfig::default());
        for id in [
            AxiomId::A1,
            AxiomId::A2,
            AxiomId::Struct,
            AxiomId::Regions,
            AxiomId::A3,
            AxiomId::A7,
        ] {
            assert_eq!(
                status(&out, id),
                Status::Ok,
                "{} at ν=({nu1},{nu2})",
                id.name()
            );
        }
        assert_eq!(status(&out, AxiomId::A8), Status::Diagnostic);
        assert_eq!(status(&out, AxiomId::A9), Status::Vacuous);
        assert_eq!(
            out.report(AxiomId::A9).unwrap().note.as_deref(),
            Some("finite")
        );
    }
}

#[test]
fn min_relation_passes_bi_independence() {
    let mut r = rng(11);
    let rel = induced_distinct(&mut r, 6, 6, 0.0, 0.0);
    let out = check_all(&rel, &CheckConfig::default());
    assert_eq!(status(&out, AxiomId::A6), Status::Ok);
    assert_eq!(status(&out, AxiomId::A4), Status::Ok);
}

/// Labeling that puts every alternative in SE only.
fn se_only(rel: &PreferenceRelation) -> RegionLabeling {
    let n = rel.space().len();
    RegionLabeling {
        m1: rel.space().m1(),
        m2: rel.space().m2(),
        in_se: vec![true; n],
        in_nw: vec![false; n],
        essential_se: [true, true],
        essential_nw: [false, false],
        orders: CoordinateOrders::of(rel).unwrap(),
    }
}

#[test]
fn handcrafted_bi_independence_violation() {
    // On p1 the labels a1 and a2 tie while a3 ≻ a1; on p0 a2 ≻ a1.
    let rel = util(4, 3, |a, p| match p {
        1 => 10.0 + [0.0, 1.0, 1.0, 2.0][a],
        _ => 10.0 * p as f64 + a as f64,
    });
    let lab = se_only(&rel);
    let rep = check_bi_independence(&rel, &lab, &mut Budget::default());
    assert_eq!(rep.status, Status::Violated);
    let w = rep.witness.unwrap();
    assert!(w.replays(&rel, Some(&lab)));
    match w {
        Witness::BiIndependence {
            mirrored, c, d, p, ..
        } => {
            assert!(!mirrored);
            assert_eq!(p, 1);
            assert!(rel.indiff(Alt(c, 1), Alt(d, 1)));
        }
        other => panic!("unexpected witness {other:?}"),
    }
}

#[test]
fn essentiality_flags_constant_axes() {
    let rel = util(3, 3, |a, _| a as f64);
    let rep = check_essentiality(&rel);
    assert_eq!(
        rep.witness,
        Some(Witness::Inessential {
            axis1: false,
            axis2: true
        })
    );
    let rep = check_essentiality(&all_indifferent(2, 2));
    assert_eq!(
        rep.witness,
        Some(Witness::Inessential {
            axis1: true,
            axis2: true
        })
    );
    let mut r = rng(5);
    assert_eq!(
        check_essentiality(&induced_distinct(&mut r, 4, 4, 0.3, 0.6)).status,
        Status::Ok
    );
}

#[test]
fn triple_cancellation_examples() {
    let f1 = [0.0, 1.0, 2.5, 4.0];
    let f2 = [0.0, 0.7, 1.9, 3.3];
    let add = util(4, 4, |a, p| f1[a] + f2[p]);
    let full = AltSet::full(add.space());
    assert_eq!(
        check_triple_cancellation(&add, &full, &mut Budget::default()).status,
        Status::Ok
    );

    let min = induce(&[0.0, 2.0, 4.0, 6.0], &[1.0, 3.0, 5.0, 7.0], 0.0, 0.0);
    let rep = check_triple_cancellation(&min, &AltSet::full(min.space()), &mut Budget::default());
    assert_eq!(rep.status, Status::Violated);
    assert!(rep.witness.unwrap().replays(&min, None));

    let few = AltSet::from_alts(min.space(), [Alt(0, 0), Alt(1, 2), Alt(3, 3)]);
    assert_eq!(
        check_triple_cancellation(&min, &few, &mut Budget::default()).status,
        Status::Ok
    );
    let none = AltSet::empty(min.space());
    assert_eq!(
        check_triple_cancellation(&min, &none, &mut Budget::default()).status,
        Status::Vacuous
    );
}

/// Two piecewise-linear pieces whose kinks sit on different lines, so cones
/// around the middle straddle a kink in both directions.
fn two_kinks(n: usize) -> PreferenceRelation {
    util(n, n, |a, p| {
        let (a, p) = (a as f64 + 1.0, p as f64 + 1.0);
        a.max(2.0 * p) + (2.0 * a).max(p)
    })
}

#[test]
fn glued_kinks_fail_a3() {
    let rel = two_kinks(5);
    let out = check_all(&rel, &CheckConfig::default());
    assert_eq!(status(&out, AxiomId::A1), Status::Ok);
    assert_eq!(status(&out, AxiomId::A2), Status::Ok);
    assert_eq!(status(&out, AxiomId::A3), Status::Violated);
    assert_eq!(status(&out, AxiomId::Regions), Status::Violated);
    assert_eq!(status(&out, AxiomId::A4), Status::Skipped);
    assert_replays(&out, &rel);
    assert_eq!(
        check_a3(&rel, &mut Budget::default()),
        *out.report(AxiomId::A3).unwrap()
    );
}

#[test]
fn two_by_two_all_indifferent_passes_a3() {
    assert_eq!(
        check_a3(&all_indifferent(2, 2), &mut Budget::default()).status,
        Status::Ok
    );
}

/// Sum on SE, a continuous but non-affine reshaping of both value scales on
/// NW; both pieces are additive so the cones pass and the regions disagree.
fn distorted(n: usize) -> PreferenceRelation {
    let s = 1.4 / n as f64;
    util(n, n, |a, p| {
        let (a, b) = (0.1 + a as f64 * s, 0.1 + p as f64 * s);
        if a >= b {
            a + b
        } else {
            a * a / 2.0 + 2.0 * b - b * b / 2.0
        }
    })
}

#[test]
fn mismatched_scales_fail_a4_and_a5() {
    let rel = distorted(6);
    let out = check_all(&rel, &CheckConfig::default());
    assert_eq!(status(&out, AxiomId::A3), Status::Ok);
    assert_eq!(status(&out, AxiomId::A4), Status::Violated);
    assert_eq!(status(&out, AxiomId::A5), Status::Violated);
    assert_ne!(status(&out, AxiomId::A5Seq), Status::Ok);
    assert_replays(&out, &rel);
}

#[test]
fn degenerate_inputs_are_vacuous() {
    // No two distinct alternatives are indifferent.
    let rel = util(4, 4, |a, p| 10.0 * a as f64 + p as f64 * 1.3);
    let lab = se_only(&rel);
    assert_eq!(
        check_a5(&rel, &lab, &mut Budget::default()).status,
        Status::Vacuous
    );
    assert_eq!(
        check_a5_sequences(&rel, &lab, 5, &mut Budget::default()).status,
        Status::Vacuous
    );
    let flat = all_indifferent(3, 3);
    let lab = se_only(&flat);
    assert_eq!(
        check_a5_sequences(&flat, &lab, 5, &mut Budget::default()).status,
        Status::Vacuous
    );
    let point = util(1, 1, |_, _| 0.0);
    let out = check_all(&point, &CheckConfig::default());
    assert_eq!(status(&out, AxiomId::A4), Status::Vacuous);
}

#[test]
fn duplicate_labels_are_merged_and_reported() {
    // a1 duplicates a0; the merged relation is a min relation.
    let f1 = [0.0, 0.0, 2.0, 4.0, 6.0];
    let rel = induce(&f1, &[1.0, 3.0, 5.0, 7.0], 0.0, 0.0);
    let out = check_all(&rel, &CheckConfig::default());
    let st = out.report(AxiomId::Struct).unwrap();
    assert_eq!(
        st.witness,
        Some(Witness::Duplicate {
            axis: Axis::One,
            a: 0,
            b: 1
        })
    );
    assert_eq!(out.merge.axis1, vec![0, 0, 1, 2, 3]);
    let lab = out.labeling.as_ref().unwrap();
    assert_eq!((lab.m1, lab.m2), (5, 4));
    for p in 0..4 {
        assert_eq!(lab.in_se(Alt(0, p)), lab.in_se(Alt(1, p)));
    }
    assert_eq!(status(&out, AxiomId::A3), Status::Ok);
    assert_replays(&out, &rel);
}

#[test]
fn budget_exhaustion_is_its_own_status() {
    let mut r = rng(9);
    let rel = induced_distinct(&mut r, 6, 6, 0.4, 0.3);
    let out = check_all(
        &rel,
        &CheckConfig {
            budget: 10,
            seq_len: 5,
        },
    );
    assert_eq!(status(&out, AxiomId::A1), Status::BudgetExceeded);
    assert!(!out.has_violation());
}

#[test]
fn report_json_shape() {
    let rel = three_cycle();
    let out = check_all(&rel, &CheckConfig::default());
    let j = out.reports[0].to_json(rel.space());
    assert_eq!(j["axiom"], "A1");
    assert_eq!(j["status"], "violated");
    assert_eq!(
        j["witness"],
        serde_json::json!(["x=(a0, p0)", "y=(a1, p0)", "z=(a2, p0)"])
    );
    let j = out.reports[1].to_json(rel.space());
    assert_eq!(j["status"], "skipped");
    assert!(j["witness"].is_null());
}

#[test]
fn resolver_replaces_definition_regions() {
    let rel = distorted(6);
    let resolved = |r: &PreferenceRelation| Some(se_only(r));
    let out = check_all_with(&rel, &CheckConfig::default(), Some(&resolved));
    let raw = out.raw_labeling.as_ref().unwrap();
    assert_ne!(out.labeling.as_ref(), Some(raw));
    assert!(out
        .report(AxiomId::A4)
        .unwrap()
        .note
        .as_deref()
        .unwrap()
        .contains("resolved"));
    assert_replays(&out, &rel);
}
